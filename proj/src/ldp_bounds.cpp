#include "renyi/ldp_bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "renyi/asymptotics.hpp"
#include "renyi/quadrature.hpp"

namespace renyi {

namespace {

constexpr double kLo = 1e-6;
constexpr double kHi = 1.0 - 1e-6;
constexpr int kGridPoints = 1024;

double checked_eval(const std::function<double(double)>& f, double s) {
  const double v = f(s);
  if (!std::isfinite(v)) {
    throw QuadratureError("objective is non-finite at s=" + std::to_string(s), v, s);
  }
  return v;
}

// Quadratic (Neville) extrapolation of the objective to the boundary through
// three interior points; exact for polynomials of degree <= 2, which covers
// every boundary-attained objective in the catalog.
double boundary_limit(const std::function<double(double)>& f, double edge, double inward) {
  const double h = 1e-6;
  const double s1 = edge + 4.0 * h * inward;
  const double s2 = edge + 2.0 * h * inward;
  const double s3 = edge + 1.0 * h * inward;
  const double v1 = checked_eval(f, s1);
  const double v2 = checked_eval(f, s2);
  const double v3 = checked_eval(f, s3);
  // Neville at s = edge
  const double p12 = ((edge - s1) * v2 - (edge - s2) * v1) / (s2 - s1);
  const double p23 = ((edge - s2) * v3 - (edge - s3) * v2) / (s3 - s2);
  return ((edge - s1) * p23 - (edge - s3) * p12) / (s3 - s1);
}

double golden_section(const std::function<double(double)>& f, double a, double b, bool maximize,
                      double tol) {
  constexpr double phi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = checked_eval(f, x1);
  double f2 = checked_eval(f, x2);
  while (b - a > tol) {
    const bool keep_left = maximize ? (f1 > f2) : (f1 < f2);
    if (keep_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = checked_eval(f, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = checked_eval(f, x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

BoundResult optimize_over_s(const std::function<double(double)>& objective, OptimizeMode mode,
                            double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_over_s: tol must be > 0");
  const bool maximize = mode == OptimizeMode::Sup;

  std::vector<double> grid(kGridPoints), vals(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = kLo + (kHi - kLo) * i / (kGridPoints - 1);
    vals[i] = checked_eval(objective, grid[i]);
  }

  int best = 0;
  double vmin = vals[0], vmax = vals[0];
  for (int i = 1; i < kGridPoints; ++i) {
    vmin = std::fmin(vmin, vals[i]);
    vmax = std::fmax(vmax, vals[i]);
    const bool better = maximize ? vals[i] > vals[best] : vals[i] < vals[best];
    if (better) best = i;
  }

  // Flat objective: report the canonical midpoint argument.
  if (vmax - vmin <= 1e-13 * std::fmax(1.0, std::fabs(vmax))) {
    return {checked_eval(objective, 0.5), 0.5, ArgLocation::Interior, mode};
  }

  if (best == 0 || best == kGridPoints - 1) {
    const bool upper = best == kGridPoints - 1;
    const double edge = upper ? 1.0 : 0.0;
    const double limit = boundary_limit(objective, edge, upper ? -1.0 : 1.0);
    return {limit, upper ? kHi : kLo, upper ? ArgLocation::UpperBoundary : ArgLocation::LowerBoundary,
            mode};
  }

  const double arg =
      golden_section(objective, grid[best - 1], grid[best + 1], maximize, tol);
  return {checked_eval(objective, arg), arg, ArgLocation::Interior, mode};
}

namespace {

// (s^(1/(kappa-1)) + (1-s)^(1/(kappa-1)))^(kappa-1), in log space: the inner
// powers overflow for kappa near 1 long before the weight itself leaves (0,1].
double alpha2_weight(double s, double kappa) {
  const double p = 1.0 / (kappa - 1.0);
  const double a = p * std::log(s);
  const double b = p * std::log1p(-s);
  const double m = std::fmax(a, b);
  const double lse = m + std::log1p(std::exp(std::fmin(a, b) - m));
  return std::exp((kappa - 1.0) * lse);
}

constexpr double kOptTol = 1e-10;

}  // namespace

BoundResult alpha1_bar(const FamilySpec& fam) {
  const double kappa = fam.min_kappa();
  const double scale = kappa < 2.0 ? std::pow(2.0, kappa) : 4.0;
  auto objective = [&fam](double s) { return limit_constant(fam, s).value; };
  BoundResult r = optimize_over_s(objective, OptimizeMode::Sup, kOptTol);
  r.value *= scale;
  return r;
}

BoundResult alpha2_bar(const FamilySpec& fam) {
  const double kappa = fam.min_kappa();
  if (kappa == 1.0) {
    // 2 C(1/2) exactly; no optimization involved.
    return {2.0 * limit_constant(fam, 0.5).value, 0.5, ArgLocation::Interior,
            OptimizeMode::Sup};
  }
  if (kappa > 2.0) {
    // C(s)/(s(1-s)) is constant = J_f/2.
    const auto j = fisher_integral(fam, 1e-12);
    if (!j) throw QuadratureError("alpha2_bar: Fisher integral diverges", 0.0, 0.0);
    return {0.5 * *j, 0.5, ArgLocation::Interior, OptimizeMode::Inf};
  }
  if (kappa == 2.0) {
    auto objective = [&fam](double s) {
      return limit_constant(fam, s).value / (s * (1.0 - s));
    };
    return optimize_over_s(objective, OptimizeMode::Inf, kOptTol);
  }
  // kappa < 1 takes the sup of the weighted objective, 1 < kappa < 2 the inf.
  auto objective = [&fam, kappa](double s) {
    return limit_constant(fam, s).value / (s * (1.0 - s)) * alpha2_weight(s, kappa);
  };
  const OptimizeMode mode = kappa < 1.0 ? OptimizeMode::Sup : OptimizeMode::Inf;
  return optimize_over_s(objective, mode, kOptTol);
}

}  // namespace renyi
