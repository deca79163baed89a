#include "renyi/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "renyi/quadrature.hpp"
#include "renyi/specfun.hpp"

namespace renyi {

namespace {

enum class KappaClass { Below1, One, Between12, Two, Above2 };

KappaClass classify_kappa(double kappa) {
  if (kappa == 1.0) return KappaClass::One;
  if (kappa == 2.0) return KappaClass::Two;
  if (std::fabs(kappa - 1.0) < 1e-9 || std::fabs(kappa - 2.0) < 1e-9) {
    throw std::domain_error("kappa is within 1e-9 of a regime boundary without being exactly "
                            "on it; refusing to dispatch");
  }
  if (kappa < 1.0) return KappaClass::Below1;
  if (kappa < 2.0) return KappaClass::Between12;
  return KappaClass::Above2;
}

ScalingRegime regime_of_kappa(double kappa) {
  switch (classify_kappa(kappa)) {
    case KappaClass::Below1:
    case KappaClass::One:
    case KappaClass::Between12:
      return {ScalingRegime::Kind::PowerKappa, kappa};
    case KappaClass::Two:
      return {ScalingRegime::Kind::EpsSqLog, 2.0};
    case KappaClass::Above2:
      return {ScalingRegime::Kind::EpsSq, kappa};
  }
  throw std::logic_error("unreachable");
}

void require_order(double s) {
  if (!std::isfinite(s) || !(s > 0.0) || !(s < 1.0)) {
    throw std::domain_error("limit constants are defined for 0 < s < 1 only");
  }
}

constexpr double kFisherTol = 1e-13;

double tail_fisher(const FamilySpec& fam, double c, Side side) {
  auto j = fisher_integral_tail(fam, c, side, kFisherTol);
  if (!j) {
    throw QuadratureError("one-sided Fisher integral diverges at this endpoint", 0.0, 0.0);
  }
  return *j;
}

// Magnitude of one endpoint's term in its own normalization; the lemma-level
// limit is the negative of this, and the assembled constant sums the
// magnitudes of the endpoints sharing the family regime.  `w` is s for the
// left endpoint and 1-s for the right one.
double side_term_magnitude(const FamilySpec& fam, Side side, double s,
                           std::optional<double> c) {
  const auto& sup = fam.support();
  const bool tail_of_half_line = side == Side::Right && !sup.is_interval();
  auto need_c = [&]() -> double {
    if (!c) {
      throw std::invalid_argument(
          "endpoint constant: this branch involves a one-sided Fisher integral; "
          "supply the split point c");
    }
    return *c;
  };
  if (tail_of_half_line) {
    return 0.5 * s * (1.0 - s) * tail_fisher(fam, need_c(), Side::Right);
  }
  const EndpointBehavior ep =
      side == Side::Left ? fam.left_endpoint() : *fam.right_endpoint();
  const double kappa = ep.kappa;
  const double amp = ep.amplitude;
  const double w = side == Side::Left ? s : 1.0 - s;
  switch (classify_kappa(kappa)) {
    case KappaClass::Below1:
      return (1.0 - kappa) / kappa * amp * w * beta_fn(w + kappa * (1.0 - w), 1.0 - kappa);
    case KappaClass::One:
      return amp * w;
    case KappaClass::Between12:
      return amp * w * (1.0 - w * (kappa - 1.0)) *
             beta_fn(w + kappa * (1.0 - w), 2.0 - kappa) / kappa;
    case KappaClass::Two:
      return amp * s * (1.0 - s) / 2.0;
    case KappaClass::Above2:
      return 0.5 * s * (1.0 - s) * tail_fisher(fam, need_c(), side);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string ScalingRegime::to_string() const {
  switch (kind) {
    case Kind::PowerKappa: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "PowerKappa(%.17g)", kappa);
      return buf;
    }
    case Kind::EpsSqLog:
      return "EpsSqLog";
    case Kind::EpsSq:
      return "EpsSq";
  }
  return "?";
}

ScalingRegime scaling_regime(const FamilySpec& fam) {
  return regime_of_kappa(fam.min_kappa());
}

ScalingRegime side_scaling_regime(const FamilySpec& fam, Side side) {
  if (side == Side::Right && !fam.support().is_interval()) {
    return {ScalingRegime::Kind::EpsSq, 2.0};
  }
  const EndpointBehavior ep =
      side == Side::Left ? fam.left_endpoint() : *fam.right_endpoint();
  return regime_of_kappa(ep.kappa);
}

double g_of(const ScalingRegime& regime, double eps) {
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    throw std::domain_error("g_of: eps must be finite and > 0");
  }
  switch (regime.kind) {
    case ScalingRegime::Kind::PowerKappa:
      return std::pow(eps, regime.kappa);
    case ScalingRegime::Kind::EpsSqLog:
      if (!(eps < 1.0)) throw std::domain_error("g_of: -eps^2 log eps requires eps < 1");
      return -eps * eps * std::log(eps);
    case ScalingRegime::Kind::EpsSq:
      return eps * eps;
  }
  throw std::logic_error("unreachable");
}

double canonical_split_point(const FamilySpec& fam) {
  const auto& sup = fam.support();
  if (sup.is_interval()) return 0.5 * (sup.lower + sup.upper);
  const auto& p = fam.params();
  switch (fam.kind()) {
    case FamilyKind::Gamma:
    case FamilyKind::Exponential:
      return sup.lower + 1.0 / p.back();
    case FamilyKind::Weibull:
      return sup.lower + std::pow(p[1], -1.0 / p[0]);
    default:
      return sup.lower + 1.0;
  }
}

LimitConstant limit_constant(const FamilySpec& fam, double s) {
  require_order(s);
  const ScalingRegime regime = scaling_regime(fam);
  const double c = canonical_split_point(fam);
  double left = 0.0, right = 0.0;
  if (side_scaling_regime(fam, Side::Left) == regime) {
    left = side_term_magnitude(fam, Side::Left, s, c);
  }
  if (side_scaling_regime(fam, Side::Right) == regime) {
    right = side_term_magnitude(fam, Side::Right, s, c);
  }
  return {left + right, regime, left, right};
}

double endpoint_limit_constant(const FamilySpec& fam, Side side, double s,
                               std::optional<double> c) {
  require_order(s);
  return -side_term_magnitude(fam, side, s, c);
}

double finsler_metric(const FamilySpec& fam) {
  const double kappa = fam.min_kappa();
  const auto regime = scaling_regime(fam);
  if (regime.kind != ScalingRegime::Kind::PowerKappa) {
    throw std::domain_error("finsler_metric: defined for the power regime 0 < kappa < 2");
  }
  return std::pow(2.0 * limit_constant(fam, 0.5).value, 1.0 / kappa);
}

}  // namespace renyi
