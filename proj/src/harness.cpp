#include "renyi/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace renyi {

namespace {

constexpr double kNoiseGuard = 0.01;  // err_estimate above 1% of the value is noise-limited

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Iterated Aitken delta-squared.  Falls back to the deepest well-conditioned
// stage; a fully converged or constant tail returns the last ratio unchanged.
double aitken_extrapolate(const std::vector<double>& seq) {
  if (seq.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> cur = seq;
  double best = cur.back();
  while (cur.size() >= 3) {
    std::vector<double> next;
    bool ok = true;
    for (size_t i = 0; i + 2 < cur.size(); ++i) {
      const double d1 = cur[i + 1] - cur[i];
      const double d2 = cur[i + 2] - cur[i + 1];
      if (std::fabs(d1) + std::fabs(d2) <= 1e-13 * std::fabs(cur[i + 2])) {
        return cur[i + 2];  // sequence already at its noise floor
      }
      const double den = d2 - d1;
      if (den == 0.0 || std::fabs(den) < 1e-14 * std::fabs(d2 * d2)) {
        ok = false;
        break;
      }
      next.push_back(cur[i + 2] - d2 * d2 / den);
    }
    if (!ok || next.empty()) break;
    best = next.back();
    cur = std::move(next);
  }
  return best;
}

// Quadratic extrapolation of the ratios to u = 0 in u = 1/log(1/eps); the
// kappa = 2 corrections form a power series in u.
double log_variable_extrapolate(const std::vector<StudyRow>& rows) {
  const size_t n = rows.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  if (n < 3) return rows.back().ratio;
  double u[3], r[3];
  for (int i = 0; i < 3; ++i) {
    const auto& row = rows[n - 3 + i];
    u[i] = 1.0 / std::log(1.0 / row.eps);
    r[i] = row.ratio;
  }
  const double p01 = (u[0] * r[1] - u[1] * r[0]) / (u[0] - u[1]);
  const double p12 = (u[1] * r[2] - u[2] * r[1]) / (u[1] - u[2]);
  return (u[0] * p12 - u[2] * p01) / (u[0] - u[2]);
}

double extrapolate(const ScalingRegime& regime, const std::vector<StudyRow>& rows) {
  if (regime.kind == ScalingRegime::Kind::EpsSqLog) return log_variable_extrapolate(rows);
  std::vector<double> ratios;
  ratios.reserve(rows.size());
  for (const auto& row : rows) ratios.push_back(row.ratio);
  return aitken_extrapolate(ratios);
}

// Deterministic fan-out: worker w computes slots w, w+threads, ...; every
// result lands in its own slot, so the assembled output cannot depend on
// scheduling.  The lowest-index exception wins, matching sequential order.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn) {
  const int threads = std::min(study_thread_cap(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
}

struct ProbeResult {
  DivergenceResult res;
  bool failed = false;
  QuadratureError error{"", 0.0, 0.0};
};

ConvergenceReport assemble_study(ConvergenceReport report, const ScalingRegime& regime,
                                 std::vector<StudyRow> rows, std::vector<ProbeResult> probes,
                                 const StudyConfig& cfg) {
  report.noise_limited = false;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (probes[i].failed) {
      throw StudyError(probes[i].error, report);
    }
    if (probes[i].res.err_estimate > kNoiseGuard * std::fabs(probes[i].res.value)) {
      report.noise_limited = true;
      break;
    }
    report.rows.push_back(rows[i]);
  }
  if (report.rows.empty()) {
    throw StudyError(
        QuadratureError("study is noise-limited at the first sweep point", 0.0, 0.0), report);
  }
  report.extrapolated = extrapolate(regime, report.rows);
  report.converged = std::fabs(report.extrapolated - report.closed_form) <=
                     cfg.converge_rel_tol * std::fabs(report.closed_form);
  return report;
}

void validate_sweep(double eps0, double factor, int steps) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
    throw std::domain_error("sweep: eps0 must be finite and > 0");
  }
  if (!(factor > 1.0)) throw std::domain_error("sweep: factor must be > 1");
  if (steps < 4) throw std::domain_error("sweep: steps must be >= 4");
}

}  // namespace

StudyError::StudyError(const QuadratureError& cause, ConvergenceReport partial)
    : QuadratureError(Preformatted{}, cause.what(), cause.last_value(), cause.previous_value()),
      partial_(std::move(partial)) {}

int study_thread_cap() {
  if (const char* env = std::getenv("RENYI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

ConvergenceReport convergence_study(const FamilySpec& fam, double s, double eps0, double factor,
                                    int steps, const StudyConfig& cfg) {
  validate_sweep(eps0, factor, steps);
  const RenyiOrder order(s);
  const ScalingRegime regime = scaling_regime(fam);
  const double closed = limit_constant(fam, s).value;

  ConvergenceReport report;
  report.family = fam.to_string();
  report.s = s;
  report.regime = regime;
  report.closed_form = closed;

  std::vector<StudyRow> rows(steps);
  std::vector<ProbeResult> probes(steps);
  parallel_for_index(steps, [&](int k) {
    const double eps = eps0 * std::pow(factor, -k);
    try {
      const auto res = renyi_divergence(fam, 0.0, eps, order, cfg.quad);
      const double g = g_of(regime, eps);
      const double ratio = res.value / g;
      rows[k] = {eps, res.value, g, ratio, closed, std::fabs(ratio - closed) / std::fabs(closed)};
      probes[k].res = res;
    } catch (const QuadratureError& e) {
      probes[k].failed = true;
      probes[k].error = e;
    }
  });
  return assemble_study(std::move(report), regime, std::move(rows), std::move(probes), cfg);
}

ConvergenceReport lemma_study(const FamilySpec& fam, Side side, double c, double s, double eps0,
                              double factor, int steps, const StudyConfig& cfg) {
  validate_sweep(eps0, factor, steps);
  const RenyiOrder order(s);
  const ScalingRegime regime = side_scaling_regime(fam, side);
  const double closed = endpoint_limit_constant(fam, side, s, c);

  ConvergenceReport report;
  report.family = fam.to_string();
  report.s = s;
  report.regime = regime;
  report.side = side;
  report.c = c;
  report.closed_form = closed;

  std::vector<StudyRow> rows(steps);
  std::vector<ProbeResult> probes(steps);
  parallel_for_index(steps, [&](int k) {
    const double eps = eps0 * std::pow(factor, -k);
    try {
      const auto res = endpoint_contribution_result(fam, side, c, order, eps, cfg.quad);
      const double g = g_of(regime, eps);
      const double ratio = res.value / g;
      rows[k] = {eps, res.value, g, ratio, closed, std::fabs(ratio - closed) / std::fabs(closed)};
      probes[k].res = res;
    } catch (const QuadratureError& e) {
      probes[k].failed = true;
      probes[k].error = e;
    }
  });
  return assemble_study(std::move(report), regime, std::move(rows), std::move(probes), cfg);
}

UniformityReport uniformity_study(const FamilySpec& fam, const std::vector<double>& s_grid,
                                  double eps0, double factor, int steps,
                                  const StudyConfig& cfg) {
  validate_sweep(eps0, factor, steps);
  if (s_grid.empty()) throw std::domain_error("uniformity_study: empty s grid");
  for (size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.01) || !(s_grid[i] <= 0.99)) {
      throw std::domain_error("uniformity_study: s grid must lie in [0.01, 0.99]");
    }
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw std::domain_error("uniformity_study: s grid must be strictly increasing");
    }
  }
  const ScalingRegime regime = scaling_regime(fam);
  const int ns = static_cast<int>(s_grid.size());

  std::vector<double> closed(ns);
  for (int j = 0; j < ns; ++j) closed[j] = limit_constant(fam, s_grid[j]).value;

  std::vector<double> dev(static_cast<size_t>(steps) * ns);
  parallel_for_index(steps * ns, [&](int idx) {
    const int k = idx / ns;
    const int j = idx % ns;
    const double eps = eps0 * std::pow(factor, -k);
    const auto res = renyi_divergence(fam, 0.0, eps, RenyiOrder(s_grid[j]), cfg.quad);
    dev[idx] = std::fabs(res.value / g_of(regime, eps) - closed[j]);
  });

  UniformityReport report;
  report.family = fam.to_string();
  report.s_grid = s_grid;
  report.rows.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    double sup = 0.0;
    for (int j = 0; j < ns; ++j) sup = std::fmax(sup, dev[static_cast<size_t>(k) * ns + j]);
    report.rows.push_back({eps0 * std::pow(factor, -k), sup});
  }
  report.monotone = true;
  const int tail = std::min<int>(3, static_cast<int>(report.rows.size()));
  for (int i = static_cast<int>(report.rows.size()) - tail + 1;
       i < static_cast<int>(report.rows.size()); ++i) {
    if (report.rows[i].sup_abs_dev > report.rows[i - 1].sup_abs_dev) report.monotone = false;
  }
  return report;
}

namespace {

nlohmann::ordered_json regime_json(const ScalingRegime& regime) {
  const char* kind = regime.kind == ScalingRegime::Kind::PowerKappa ? "PowerKappa"
                     : regime.kind == ScalingRegime::Kind::EpsSqLog ? "EpsSqLog"
                                                                    : "EpsSq";
  return {{"kind", kind}, {"kappa", regime.kappa}};
}

}  // namespace

void emit_report(const ConvergenceReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv) {
    out << "eps,I_s,g_eps,ratio,closed_form,rel_err\n";
    for (const auto& r : report.rows) {
      out << fmt17(r.eps) << ',' << fmt17(r.I_s) << ',' << fmt17(r.g_eps) << ','
          << fmt17(r.ratio) << ',' << fmt17(r.closed_form) << ',' << fmt17(r.rel_err) << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["family"] = report.family;
  j["s"] = report.s;
  j["regime"] = regime_json(report.regime);
  if (report.side) j["side"] = *report.side == Side::Left ? "left" : "right";
  if (report.c) j["c"] = *report.c;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"eps", r.eps},
                         {"I_s", r.I_s},
                         {"g_eps", r.g_eps},
                         {"ratio", r.ratio},
                         {"closed_form", r.closed_form},
                         {"rel_err", r.rel_err}});
  }
  j["extrapolated"] = report.extrapolated;
  j["closed_form"] = report.closed_form;
  j["converged"] = report.converged;
  j["noise_limited"] = report.noise_limited;
  out << j.dump(2) << '\n';
}

void emit_report(const UniformityReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv) {
    out << "eps,sup_abs_dev\n";
    for (const auto& r : report.rows) {
      out << fmt17(r.eps) << ',' << fmt17(r.sup_abs_dev) << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["family"] = report.family;
  j["s_grid"] = report.s_grid;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"eps", r.eps}, {"sup_abs_dev", r.sup_abs_dev}});
  }
  j["monotone"] = report.monotone;
  out << j.dump(2) << '\n';
}

namespace {

template <typename Report>
void emit_to_path(const Report& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
  emit_report(report, format, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
}

}  // namespace

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  emit_to_path(report, format, path);
}

void emit_report(const UniformityReport& report, ReportFormat format, const std::string& path) {
  emit_to_path(report, format, path);
}

}  // namespace renyi
