#pragma once

#include <optional>
#include <string>

#include "renyi/families.hpp"

namespace renyi {

/// Normalization g(eps) under which I^s(f_theta || f_(theta+eps)) / g(eps)
/// has a finite positive limit as eps -> +0:
///   eps^kappa        for 0 < kappa < 2,
///   -eps^2 log eps   for kappa = 2,
///   eps^2            for kappa > 2.
struct ScalingRegime {
  enum class Kind { PowerKappa, EpsSqLog, EpsSq };
  Kind kind;
  double kappa;

  bool operator==(const ScalingRegime& other) const {
    if (kind != other.kind) return false;
    return kind != Kind::PowerKappa || kappa == other.kappa;
  }
  std::string to_string() const;  // "PowerKappa(0.5)", "EpsSqLog", "EpsSq"
};

/// Regime of the family, keyed on the smallest endpoint exponent.  kappa is
/// taken analytically from the parameters; values within 1e-9 of 1 or 2
/// without being exactly 1 or 2 are rejected as ambiguous.
ScalingRegime scaling_regime(const FamilySpec& fam);

/// Regime governing one endpoint's own contribution.  Same as
/// scaling_regime of that endpoint's exponent, except the upper tail of a
/// half-line, which always scales as eps^2.
ScalingRegime side_scaling_regime(const FamilySpec& fam, Side side);

double g_of(const ScalingRegime& regime, double eps);

/// The limiting constant of I^s / g(eps), assembled from the two endpoint
/// terms.  An endpoint whose own regime decays faster than the family regime
/// contributes 0 (equivalently: its amplitude is substituted by 0, and
/// kappa by the smaller exponent).
struct LimitConstant {
  double value;  // = left_term + right_term
  ScalingRegime regime;
  double left_term;
  double right_term;
};
LimitConstant limit_constant(const FamilySpec& fam, double s);

/// Limit of the endpoint decomposition I-_s/g (side = left) or I+_s/g
/// (side = right) in that side's own normalization; always <= 0.  The split
/// point c is required whenever the value involves a one-sided Fisher
/// integral (side exponent > 2, or the upper tail of a half-line).
double endpoint_limit_constant(const FamilySpec& fam, Side side, double s,
                               std::optional<double> c = std::nullopt);

/// Interior point used to split the Fisher integral when assembling the
/// kappa > 2 limit constants.
double canonical_split_point(const FamilySpec& fam);

/// Minkowski (Finsler) norm of the unit tangent vector,
/// F = (2 C(1/2))^(1/kappa) with C(1/2) the s = 1/2 limit constant; defined
/// for the power regime 0 < kappa < 2.  Reads the defining H as the squared
/// Hellinger distance, the only reading under which the stated exponent
/// yields a finite nonzero limit.
double finsler_metric(const FamilySpec& fam);

}  // namespace renyi
