// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit on any
// failure.  Every tolerance is pinned here in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "renyi/asymptotics.hpp"
#include "renyi/divergence.hpp"
#include "renyi/families.hpp"
#include "renyi/harness.hpp"
#include "renyi/ldp_bounds.hpp"
#include "renyi/specfun.hpp"

using namespace renyi;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& msg) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
  void note(const std::string& msg) {
    if (detail.empty()) detail = msg;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double rel_dev(double value, double target) {
  return std::fabs(value - target) / std::fabs(target);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criteria ----------------------------------------------------------

Check criterion1_exponential_oracle() {
  Check c;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double b : {0.5, 1.0, 2.0}) {
    const auto fam = FamilySpec::exponential(b);
    for (int i = 1; i <= 9; ++i) {
      const double s = i / 10.0;
      for (double eps : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        const double exact = s * b * eps;
        const double got = renyi_divergence(fam, 0.0, eps, RenyiOrder(s)).value;
        const double dev = rel_dev(got, exact);
        worst = std::fmax(worst, dev);
        if (dev > 1e-8) {
          c.fail("b=" + fmt(b) + " s=" + fmt(s) + " eps=" + fmt(eps) + " rel=" + fmt(dev));
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 5.0) c.fail("runtime " + fmt(elapsed) + "s >= 5s");
  c.note("worst rel dev " + fmt(worst) + ", " + fmt(elapsed) + "s");
  return c;
}

Check criterion2_uniform_oracle() {
  Check c;
  const auto fam = FamilySpec::uniform();
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double s = i / 10.0;
    for (double eps : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      const double exact = -std::log1p(-eps);
      const double got = renyi_divergence(fam, 0.0, eps, RenyiOrder(s)).value;
      const double dev = std::fabs(got - exact);
      worst = std::fmax(worst, dev);
      if (dev > 1e-10) c.fail("s=" + fmt(s) + " eps=" + fmt(eps) + " abs=" + fmt(dev));
    }
  }
  c.note("worst abs dev " + fmt(worst));
  return c;
}

Check criterion3_beta_half_power_regime() {
  Check c;
  const auto t0 = Clock::now();
  const auto fam = FamilySpec::beta(0.5, 0.5);
  double worst = 0.0;
  for (double s : {0.25, 0.5, 0.75}) {
    const double closed =
        (s * beta_fn((1.0 + s) / 2.0, 0.5) + (1.0 - s) * beta_fn(1.0 - s / 2.0, 0.5)) / M_PI;
    const double module_value = limit_constant(fam, s).value;
    if (rel_dev(module_value, closed) > 1e-12) {
      c.fail("module constant disagrees with the closed form at s=" + fmt(s));
    }
    const auto report = convergence_study(fam, s, 0.05, 2.0, 14);
    const double dev = rel_dev(report.extrapolated, closed);
    worst = std::fmax(worst, dev);
    if (dev > 0.01) c.fail("s=" + fmt(s) + " extrapolated rel dev " + fmt(dev));
  }
  // independent cross-check of the closed form: brute-force ratio at eps=1e-7
  {
    const double s = 0.5, eps = 1e-7;
    const double closed = (s * beta_fn((1.0 + s) / 2.0, 0.5) +
                           (1.0 - s) * beta_fn(1.0 - s / 2.0, 0.5)) / M_PI;
    const double delta = oracles::affinity_deficiency_bruteforce(fam, eps, s, 10000000);
    const double ratio = -std::log1p(-delta) / std::sqrt(eps);
    if (rel_dev(ratio, closed) > 0.005) {
      c.fail("brute-force ratio " + fmt(ratio) + " vs closed form " + fmt(closed));
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 30.0) c.fail("runtime " + fmt(elapsed) + "s >= 30s");
  c.note("worst rel dev " + fmt(worst) + ", " + fmt(elapsed) + "s");
  return c;
}

Check criterion4_between_one_and_two() {
  Check c;
  double worst = 0.0;
  for (const auto& fam : {FamilySpec::beta(1.5, 1.5), FamilySpec::weibull(1.5, 1.0)}) {
    for (double s : {0.25, 0.5, 0.75}) {
      const auto report = convergence_study(fam, s, 0.05, 2.0, 14);
      const double dev = rel_dev(report.extrapolated, report.closed_form);
      worst = std::fmax(worst, dev);
      if (dev > 0.01) c.fail(fam.to_string() + " s=" + fmt(s) + " rel dev " + fmt(dev));
    }
  }
  c.note("worst rel dev " + fmt(worst));
  return c;
}

Check criterion5_log_regime() {
  Check c;
  const auto report = convergence_study(FamilySpec::beta(2.0, 2.0), 0.5, 0.05, 2.0, 14);
  const double dev = rel_dev(report.extrapolated, 1.5);
  if (dev > 0.10) c.fail("extrapolated " + fmt(report.extrapolated) + " vs 1.5");
  c.note("extrapolated " + fmt(report.extrapolated) + " (rel dev " + fmt(dev) + ")");
  return c;
}

Check criterion6_quadratic_regime() {
  Check c;
  double worst = 0.0;
  for (double s : {0.25, 0.5, 0.75}) {
    const auto b33 = convergence_study(FamilySpec::beta(3.0, 3.0), s, 0.05, 2.0, 14);
    const double target_b = s * (1.0 - s) * 20.0;  // J_f = 40
    double dev = rel_dev(b33.extrapolated, target_b);
    worst = std::fmax(worst, dev);
    if (dev > 0.01) c.fail("beta(3,3) s=" + fmt(s) + " rel dev " + fmt(dev));

    const auto g = convergence_study(FamilySpec::gamma(2.5, 1.0), s, 0.05, 2.0, 14);
    const double target_g = s * (1.0 - s);  // J_f = 2
    dev = rel_dev(g.extrapolated, target_g);
    worst = std::fmax(worst, dev);
    if (dev > 0.01) c.fail("gamma(2.5,1) s=" + fmt(s) + " rel dev " + fmt(dev));
  }
  c.note("worst rel dev " + fmt(worst));
  return c;
}

Check criterion7_lemma_diagnostics() {
  Check c;
  for (double s : {0.3, 0.5, 0.8}) {
    const auto uni = lemma_study(FamilySpec::uniform(), Side::Left, 0.5, s, 0.05, 2.0, 10);
    for (const auto& row : uni.rows) {
      if (std::fabs(row.ratio - (-s)) > 1e-9) {
        c.fail("uniform left ratio " + fmt(row.ratio) + " at eps=" + fmt(row.eps));
      }
    }
  }
  const auto b33 = lemma_study(FamilySpec::beta(3.0, 3.0), Side::Right, 0.5, 0.5, 0.05, 2.0, 14);
  const double target = -0.5 * (1.0 - 0.5) * 10.0;  // J+ = 20
  const double dev = rel_dev(b33.extrapolated, target);
  if (dev > 0.01) c.fail("beta(3,3) right tail rel dev " + fmt(dev));
  c.note("beta(3,3) right tail extrapolated " + fmt(b33.extrapolated));
  return c;
}

Check criterion8_order_symmetry() {
  Check c;
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> sdraw(0.05, 0.95);
  std::uniform_real_distribution<double> logeps(std::log(1e-4), std::log(0.2));
  std::uniform_real_distribution<double> shape(0.4, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    FamilySpec fam = [&]() {
      switch (rng() % 5) {
        case 0: return FamilySpec::beta(shape(rng), shape(rng));
        case 1: return FamilySpec::gamma(shape(rng), shape(rng));
        case 2: return FamilySpec::weibull(shape(rng), shape(rng));
        case 3: return FamilySpec::uniform();
        default: return FamilySpec::exponential(shape(rng));
      }
    }();
    const double s = sdraw(rng);
    const double eps = std::exp(logeps(rng));
    const double lhs = renyi_divergence(fam, 0.0, eps, RenyiOrder(s)).value;
    const double rhs = renyi_divergence(fam, eps, -eps, RenyiOrder(1.0 - s)).value;
    const double dev = std::fabs(lhs - rhs);
    worst = std::fmax(worst, dev);
    if (dev > 1e-10) c.fail(fam.to_string() + " s=" + fmt(s) + " dev=" + fmt(dev));
  }
  c.note("worst abs dev " + fmt(worst) + " over 100 triples");
  return c;
}

Check criterion9_kl_relation() {
  Check c;
  for (double b : {0.5, 1.0, 2.0}) {
    const auto fam = FamilySpec::exponential(b);
    for (double eps : {0.01, 0.1}) {
      const double kl = kl_divergence(fam, eps).value;
      if (rel_dev(kl, b * eps) > 1e-8) {
        c.fail("kl b=" + fmt(b) + " eps=" + fmt(eps) + " rel " + fmt(rel_dev(kl, b * eps)));
      }
      // Eq-style route: I^s(f_(theta+eps) || f_theta)/(s(1-s)) at s = 0.999
      const double s = 0.999;
      const double route =
          renyi_divergence(fam, eps, -eps, RenyiOrder(s)).value / (s * (1.0 - s));
      if (rel_dev(route, kl) > 0.005) {
        c.fail("s->1 route b=" + fmt(b) + " eps=" + fmt(eps) + " rel " + fmt(rel_dev(route, kl)));
      }
    }
  }
  c.note("kl = b*eps and the s->1 route agree");
  return c;
}

Check criterion10_flatness() {
  Check c;
  for (const auto& fam : {FamilySpec::beta(3.0, 3.0), FamilySpec::gamma(2.5, 1.0)}) {
    const double ref = limit_constant(fam, 0.5).value / 0.25;
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
      const double s = i / 100.0;
      const double v = limit_constant(fam, s).value / (s * (1.0 - s));
      worst = std::fmax(worst, std::fabs(v - ref) / std::fabs(ref));
    }
    if (worst > 1e-12) c.fail(fam.to_string() + " flatness " + fmt(worst));
    c.note("max spread " + fmt(worst));
  }
  return c;
}

Check criterion11_ldp_bounds() {
  Check c;
  auto expect = [&](const char* label, double got, double want) {
    if (std::fabs(got - want) > 1e-8 * std::fmax(1.0, std::fabs(want))) {
      c.fail(std::string(label) + ": got " + fmt(got) + ", want " + fmt(want));
    }
  };
  expect("uniform alpha1", alpha1_bar(FamilySpec::uniform()).value, 2.0);
  expect("uniform alpha2", alpha2_bar(FamilySpec::uniform()).value, 2.0);
  for (double b : {0.5, 1.0, 2.0}) {
    expect(("exp alpha1 b=" + fmt(b)).c_str(), alpha1_bar(FamilySpec::exponential(b)).value,
           2.0 * b);
    expect(("exp alpha2 b=" + fmt(b)).c_str(), alpha2_bar(FamilySpec::exponential(b)).value, b);
  }
  expect("gamma(2.5,1) alpha2", alpha2_bar(FamilySpec::gamma(2.5, 1.0)).value, 1.0);
  c.note("all bounds within 1e-8");
  return c;
}

Check criterion12_assembly_identity() {
  Check c;
  const std::vector<FamilySpec> families = {
      FamilySpec::beta(0.5, 0.5),  FamilySpec::beta(0.5, 3.0),   FamilySpec::uniform(),
      FamilySpec::exponential(1.0), FamilySpec::beta(1.5, 1.5),  FamilySpec::weibull(1.5, 1.0),
      FamilySpec::beta(2.0, 2.0),  FamilySpec::beta(2.0, 3.0),   FamilySpec::weibull(2.0, 1.0),
      FamilySpec::beta(3.0, 3.0),  FamilySpec::gamma(2.5, 1.0),  FamilySpec::gamma(0.7, 1.0)};
  double worst = 0.0;
  for (const auto& fam : families) {
    const double cpoint = canonical_split_point(fam);
    for (double s : {0.2, 0.5, 0.8}) {
      const auto lc = limit_constant(fam, s);
      double sum = 0.0;
      if (side_scaling_regime(fam, Side::Left) == lc.regime) {
        sum += endpoint_limit_constant(fam, Side::Left, s, cpoint);
      }
      if (side_scaling_regime(fam, Side::Right) == lc.regime) {
        sum += endpoint_limit_constant(fam, Side::Right, s, cpoint);
      }
      const double dev = std::fabs(lc.value + sum) / std::fmax(1.0, std::fabs(lc.value));
      worst = std::fmax(worst, dev);
      if (dev > 1e-12) c.fail(fam.to_string() + " s=" + fmt(s) + " dev " + fmt(dev));
    }
  }
  c.note("worst dev " + fmt(worst) + " across five regimes");
  return c;
}

Check criterion13_determinism() {
  Check c;
  auto render = [](const ConvergenceReport& report) {
    std::ostringstream out;
    emit_report(report, ReportFormat::Csv, out);
    std::ostringstream outj;
    emit_report(report, ReportFormat::Json, outj);
    return out.str() + outj.str();
  };
  const auto fam = FamilySpec::beta(0.5, 0.5);
  const std::string first = render(convergence_study(fam, 0.5, 0.05, 2.0, 10));
  const std::string second = render(convergence_study(fam, 0.5, 0.05, 2.0, 10));
  if (first != second) c.fail("repeated runs differ");

  setenv("RENYI_THREADS", "1", 1);
  const std::string sequential = render(convergence_study(fam, 0.25, 0.05, 2.0, 10));
  setenv("RENYI_THREADS", "8", 1);
  const std::string parallel = render(convergence_study(fam, 0.25, 0.05, 2.0, 10));
  unsetenv("RENYI_THREADS");
  if (sequential != parallel) c.fail("parallel and sequential reports differ");
  c.note("byte-identical across repeats and thread counts");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 exponential exact oracle (rel 1e-8, < 5s)", criterion1_exponential_oracle},
      {"2 uniform exact oracle (abs 1e-10)", criterion2_uniform_oracle},
      {"3 beta(0.5,0.5) power regime within 1% (< 30s)", criterion3_beta_half_power_regime},
      {"4 beta(1.5,1.5)/weibull(1.5,1) within 1%", criterion4_between_one_and_two},
      {"5 beta(2,2) log regime within 10%", criterion5_log_regime},
      {"6 beta(3,3)/gamma(2.5,1) quadratic regime within 1%", criterion6_quadratic_regime},
      {"7 endpoint decomposition diagnostics", criterion7_lemma_diagnostics},
      {"8 order symmetry on 100 random triples (1e-10)", criterion8_order_symmetry},
      {"9 KL relation via the s->1 route", criterion9_kl_relation},
      {"10 quadratic-regime flatness (1e-12)", criterion10_flatness},
      {"11 LDP bounds closed forms (1e-8)", criterion11_ldp_bounds},
      {"12 assembly identity (1e-12)", criterion12_assembly_identity},
      {"13 determinism of study reports", criterion13_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    if (!result.ok) ++failures;
    std::printf("%s  criterion %s%s%s\n", result.ok ? "PASS" : "FAIL", criterion.name,
                result.detail.empty() ? "" : " — ", result.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
