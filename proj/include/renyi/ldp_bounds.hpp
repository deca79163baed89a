#pragma once

#include <functional>

#include "renyi/families.hpp"

namespace renyi {

enum class OptimizeMode { Sup, Inf };

/// The optimum runs over the open interval (0,1), so it may only be attained
/// in the limit at an endpoint; such results carry a boundary location and an
/// extrapolated limiting value instead of an interior argmax.
enum class ArgLocation { Interior, LowerBoundary, UpperBoundary };

struct BoundResult {
  double value;
  double arg_s;
  ArgLocation location;
  OptimizeMode mode;
};

/// Grid scan (1024 points on [1e-6, 1-1e-6]) followed by golden-section
/// refinement of a bracketed interior extremum to |delta s| <= tol.  Objectives
/// monotone into a boundary are extrapolated to their boundary limit and
/// tagged.  A non-finite objective value at a grid point is a numerical error.
BoundResult optimize_over_s(const std::function<double(double)>& objective, OptimizeMode mode,
                            double tol);

/// Large-deviation upper bounds over the s-family of limit constants C(s):
///   alpha1 = 2^kappa sup C(s)          (kappa < 2)
///            4       sup C(s)          (kappa >= 2)
///   alpha2 = sup C(s)/(s(1-s)) * m_kappa(s)   (kappa < 1)
///            2 C(1/2)                          (kappa = 1)
///            inf C(s)/(s(1-s)) * m_kappa(s)   (1 < kappa < 2)
///            inf C(s)/(s(1-s))                 (kappa >= 2)
/// with the weight m_kappa(s) = (s^(1/(kappa-1)) + (1-s)^(1/(kappa-1)))^(kappa-1).
/// For location-shift families the constants are theta-free, so the bounds
/// take no theta argument.
BoundResult alpha1_bar(const FamilySpec& fam);
BoundResult alpha2_bar(const FamilySpec& fam);

}  // namespace renyi
