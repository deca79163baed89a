#pragma once

#include "renyi/families.hpp"
#include "renyi/quadrature.hpp"

namespace renyi {

/// Order of the relative Renyi entropy I^s(p||q) = -log integral p^s q^(1-s).
/// Defined for 0 < s < 1 only; values closer than 1e-6 to either end are
/// rejected rather than clamped.
struct RenyiOrder {
  explicit RenyiOrder(double s);
  double value;
};

struct DivergenceResult {
  // Divergence values are >= 0 (+infinity possible for KL); the same carrier
  // transports endpoint contributions, which are negative.
  double value = 0.0;
  double err_estimate = 0.0;  // propagated quadrature level-difference
  long evaluations = 0;
};

/// delta = 1 - integral f^(1-s)(x) f^s(x+eps) dx, for eps > 0.
///
/// Computed in the difference form
///   delta = integral over the overlap of (f - f^(1-s)(x) f^s(x+eps)) dx
///         + mass of f over the lost strip (b-eps, b)     [interval case]
/// with the product term evaluated as f(x)*expm1(s*(log f(x+eps) - log f(x))),
/// so the result keeps full relative precision as eps -> 0; integrating the
/// product directly would return 1 - O(eps^kappa) and lose the signal.
double affinity_deficiency(const FamilySpec& fam, double eps, RenyiOrder s,
                           const QuadratureConfig& cfg = {});

/// Same, with the quadrature error estimate and evaluation count attached.
DivergenceResult affinity_deficiency_result(const FamilySpec& fam, double eps, RenyiOrder s,
                                            const QuadratureConfig& cfg = {});

/// I^s(f_theta || f_(theta+eps)) = -log1p(-delta); theta-independent by
/// location invariance.  eps = 0 short-circuits to 0.  Negative eps is
/// evaluated through I^s(p||q) = I^(1-s)(q||p), reducing to a positive shift
/// of order 1-s; the two directional limits genuinely differ for kappa < 2,
/// so the density is never mirrored.
DivergenceResult renyi_divergence(const FamilySpec& fam, double theta, double eps, RenyiOrder s,
                                  const QuadratureConfig& cfg = {});

/// D(f_(theta+eps) || f_theta) = integral f(y) [log f(y) - log f(y+eps)] dy,
/// for half-line families (interval supports overhang and make it infinite:
/// domain error).  Reports value = +infinity when the integral is detected to
/// diverge.
DivergenceResult kl_divergence(const FamilySpec& fam, double eps,
                               const QuadratureConfig& cfg = {});

/// Squared Hellinger distance H^2 = 2(1 - integral sqrt(f_theta f_(theta+eps))).
double hellinger_sq(const FamilySpec& fam, double eps, const QuadratureConfig& cfg = {});

/// Endpoint decompositions used by the limit diagnostics; eps > 0, c interior.
///   left:  I-_s(c,f,eps) = int_a^c f^(1-s)(x) f^s(x+eps) dx - int_a^c f
///                          - f(c) s eps - (s/2) f'(c) eps^2
///   right: I+_s(c,f,eps) = int_c^(b-eps) f^(1-s)(x) f^s(x+eps) dx - int_c^b f
///                          + f(c) s eps + (s/2) f'(c) eps^2
/// (upper limits b-eps and b read as infinity on half-lines).
double endpoint_contribution(const FamilySpec& fam, Side side, double c, RenyiOrder s,
                             double eps, const QuadratureConfig& cfg = {});

DivergenceResult endpoint_contribution_result(const FamilySpec& fam, Side side, double c,
                                              RenyiOrder s, double eps,
                                              const QuadratureConfig& cfg = {});

}  // namespace renyi
