#pragma once

#include "renyi/families.hpp"

namespace renyi::oracles {

// Independent route to delta = 1 - integral f^(1-s)(x) f^s(x+eps) dx:
// composite-midpoint integration of the product itself (no difference form,
// no log-space evaluation), with the substitution x = endpoint_dist^(1/kappa)
// absorbing singular endpoints where kappa < 1.
double affinity_deficiency_bruteforce(const FamilySpec& fam, double eps, double s, long panels);

// Same style for D(f_(theta+eps) || f_theta) on half-lines.
double kl_bruteforce(const FamilySpec& fam, double eps, long panels);

}  // namespace renyi::oracles
