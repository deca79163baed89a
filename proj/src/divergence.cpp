#include "renyi/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace renyi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual tail mass below exp(-43) keeps truncation error under 2e-19,
// far inside every tolerance used by the library.
constexpr double kAffinityTailLog = 43.0;
constexpr double kKlTailLog = 50.0;

// f(x) - f^(1-s)(x) f^s(x+eps), given the two log-densities.  The expm1 form
// keeps full relative precision when the two densities are close; the guarded
// branches take over when the ratio is extreme enough to overflow expm1.
double difference_term(double log_f0, double log_f1, double s) {
  if (std::isinf(log_f0)) {
    // -inf: f(x) = 0 and the product vanishes with it.  +inf would mean the
    // density overflowed; pass it through so the engine reports it.
    return log_f0 < 0.0 ? 0.0 : log_f0;
  }
  if (std::isinf(log_f1) && log_f1 < 0.0) return std::exp(log_f0);
  const double t = s * (log_f1 - log_f0);
  if (t > 700.0) return -std::exp(log_f0 + t);
  if (t < -700.0) return std::exp(log_f0);
  return -std::exp(log_f0) * std::expm1(t);
}

void require_positive_eps(double eps) {
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    throw std::domain_error("shift eps must be finite and > 0");
  }
}

}  // namespace

RenyiOrder::RenyiOrder(double s) : value(s) {
  if (!std::isfinite(s) || s < 1e-6 || s > 1.0 - 1e-6) {
    throw std::domain_error("RenyiOrder: s must lie in [1e-6, 1-1e-6]");
  }
}

DivergenceResult affinity_deficiency_result(const FamilySpec& fam, double eps, RenyiOrder s,
                                            const QuadratureConfig& cfg) {
  require_positive_eps(eps);
  const auto& sup = fam.support();
  const double sv = s.value;

  double delta, err;
  long evals;
  if (sup.is_interval()) {
    const double width = sup.width();
    if (!(eps < width)) {
      throw std::domain_error("eps >= support width: the distributions are mutually singular");
    }
    auto diff = [&](double, double dl, double dr) {
      const double l0 = log_density_from_edges(fam, dl, dr + eps);
      const double l1 = log_density_from_edges(fam, dl + eps, dr);
      return difference_term(l0, l1, sv);
    };
    const auto part = integrate_interval(diff, sup.lower, sup.upper - eps, cfg);
    // mass of f over the strip (b-eps, b) that the shifted copy no longer covers
    const double off = width - eps;
    auto strip = [&](double, double dl, double dr) {
      return std::exp(log_density_from_edges(fam, dl + off, dr));
    };
    const auto lost = integrate_interval(strip, sup.upper - eps, sup.upper, cfg);
    delta = part.value + lost.value;
    err = part.err_estimate + lost.err_estimate;
    evals = part.evaluations + lost.evaluations;
  } else {
    const double cutoff = tail_cutoff(fam, kAffinityTailLog);
    auto diff = [&](double, double dl, double) {
      const double l0 = log_density_from_edges(fam, dl, kInf);
      const double l1 = log_density_from_edges(fam, dl + eps, kInf);
      return difference_term(l0, l1, sv);
    };
    const auto part = integrate_interval(diff, sup.lower, sup.lower + cutoff, cfg);
    delta = part.value;
    err = part.err_estimate;
    evals = part.evaluations;
  }
  if (delta < 0.0) delta = 0.0;  // quadrature noise floor at eps -> 0
  if (delta > 1.0) delta = 1.0;
  return {delta, err, evals};
}

double affinity_deficiency(const FamilySpec& fam, double eps, RenyiOrder s,
                           const QuadratureConfig& cfg) {
  return affinity_deficiency_result(fam, eps, s, cfg).value;
}

DivergenceResult renyi_divergence(const FamilySpec& fam, double theta, double eps, RenyiOrder s,
                                  const QuadratureConfig& cfg) {
  if (!std::isfinite(theta) || !std::isfinite(eps)) {
    throw std::domain_error("renyi_divergence: theta and eps must be finite");
  }
  (void)theta;  // location invariance: I^s(f_theta || f_(theta+eps)) depends on eps only
  if (eps == 0.0) return {0.0, 0.0, 0};
  const double order = eps > 0.0 ? s.value : 1.0 - s.value;
  const auto d = affinity_deficiency_result(fam, std::fabs(eps), RenyiOrder(order), cfg);
  const double value = -std::log1p(-d.value);
  const double err = d.value < 1.0 ? d.err_estimate / (1.0 - d.value) : kInf;
  return {value, err, d.evaluations};
}

DivergenceResult kl_divergence(const FamilySpec& fam, double eps, const QuadratureConfig& cfg) {
  require_positive_eps(eps);
  if (fam.support().is_interval()) {
    throw std::domain_error("kl_divergence: interval support overhang makes KL infinite");
  }
  auto integrand_from = [&](double offset) {
    return [&fam, eps, offset](double, double dl, double) {
      const double l0 = log_density_from_edges(fam, dl + offset, kInf);
      if (std::isinf(l0)) return 0.0;
      const double l1 = log_density_from_edges(fam, dl + offset + eps, kInf);
      return std::exp(l0) * (l0 - l1);
    };
  };
  const double lower = fam.support().lower;
  const double cutoff = tail_cutoff(fam, kKlTailLog);
  const auto main = integrate_interval(integrand_from(0.0), lower, lower + cutoff, cfg);
  // A convergent integral has essentially no mass past the cutoff; detectable
  // growth there means the integral diverges.
  const auto probe =
      integrate_interval(integrand_from(cutoff), lower, lower + 3.0 * cutoff, cfg);
  const long evals = main.evaluations + probe.evaluations;
  if (std::fabs(probe.value) > std::fmax(100.0 * cfg.abs_tol, 1e-8 * std::fabs(main.value))) {
    return {kInf, 0.0, evals};
  }
  return {std::fmax(main.value + probe.value, 0.0), main.err_estimate + probe.err_estimate,
          evals};
}

double hellinger_sq(const FamilySpec& fam, double eps, const QuadratureConfig& cfg) {
  if (!std::isfinite(eps)) throw std::domain_error("hellinger_sq: eps must be finite");
  if (eps == 0.0) return 0.0;
  // H^2 = 2(1 - affinity) at s = 1/2, which is shift-direction symmetric.
  return 2.0 * affinity_deficiency(fam, std::fabs(eps), RenyiOrder(0.5), cfg);
}

DivergenceResult endpoint_contribution_result(const FamilySpec& fam, Side side, double c,
                                              RenyiOrder s, double eps,
                                              const QuadratureConfig& cfg) {
  require_positive_eps(eps);
  const auto& sup = fam.support();
  if (!(c > sup.lower) || (sup.is_interval() && !(c < sup.upper))) {
    throw std::domain_error("endpoint_contribution: c must lie strictly inside the support");
  }
  if (sup.is_interval() && !(eps < sup.upper - c)) {
    throw std::domain_error("endpoint_contribution: requires eps < b - c");
  }
  const double sv = s.value;
  const double correction =
      density(fam, c) * sv * eps + 0.5 * sv * density_prime(fam, c) * eps * eps;

  if (side == Side::Left) {
    const double off_r = sup.is_interval() ? sup.upper - c - eps : kInf;
    auto diff = [&](double, double dl, double dr) {
      const double l0 = sup.is_interval()
                            ? log_density_from_edges(fam, dl, dr + off_r + eps)
                            : log_density_from_edges(fam, dl, kInf);
      const double l1 = sup.is_interval()
                            ? log_density_from_edges(fam, dl + eps, dr + off_r)
                            : log_density_from_edges(fam, dl + eps, kInf);
      return difference_term(l0, l1, sv);
    };
    const auto part = integrate_interval(diff, sup.lower, c, cfg);
    return {-part.value - correction, part.err_estimate, part.evaluations};
  }

  const double off_l = c - sup.lower;
  if (sup.is_interval()) {
    auto diff = [&](double, double dl, double dr) {
      const double l0 = log_density_from_edges(fam, dl + off_l, dr + eps);
      const double l1 = log_density_from_edges(fam, dl + off_l + eps, dr);
      return difference_term(l0, l1, sv);
    };
    const auto core = integrate_interval(diff, c, sup.upper - eps, cfg);
    const double strip_off = sup.width() - eps;
    auto strip = [&](double, double dl, double dr) {
      return std::exp(log_density_from_edges(fam, dl + strip_off, dr));
    };
    const auto lost = integrate_interval(strip, sup.upper - eps, sup.upper, cfg);
    return {-core.value - lost.value + correction, core.err_estimate + lost.err_estimate,
            core.evaluations + lost.evaluations};
  }

  const double cutoff = std::fmax(tail_cutoff(fam, kAffinityTailLog), 2.0 * c + 1.0);
  auto diff = [&](double, double dl, double) {
    const double l0 = log_density_from_edges(fam, dl + off_l, kInf);
    const double l1 = log_density_from_edges(fam, dl + off_l + eps, kInf);
    return difference_term(l0, l1, sv);
  };
  const auto core = integrate_interval(diff, c, sup.lower + cutoff, cfg);
  return {-core.value + correction, core.err_estimate, core.evaluations};
}

double endpoint_contribution(const FamilySpec& fam, Side side, double c, RenyiOrder s,
                             double eps, const QuadratureConfig& cfg) {
  return endpoint_contribution_result(fam, side, c, s, eps, cfg).value;
}

}  // namespace renyi
