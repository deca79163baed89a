#include "renyi/quadrature.hpp"

#include <cmath>
#include <limits>

namespace renyi {

namespace {

constexpr double kPiHalf = 1.5707963267948966;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Beyond these the transformed node distance or weight underflows/overflows;
// the skipped region contributes below double precision for any integrand
// satisfying the engine's preconditions.
constexpr double kTanhSinhTMax = 6.5;
constexpr double kExpSinhTMax = 6.8;

[[noreturn]] void fail_nonfinite(double x, double v) {
  throw QuadratureError("integrand returned a non-finite value at x=" + std::to_string(x), v, x);
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
  }
  if (cfg.max_levels < 4) {
    throw std::invalid_argument("QuadratureConfig: max_levels must be >= 4");
  }
}

QuadratureError::QuadratureError(const std::string& what, double last, double previous)
    : std::runtime_error(what + " [last level " + std::to_string(last) + ", previous level " +
                         std::to_string(previous) + "]"),
      last_(last),
      prev_(previous) {}

QuadratureResult integrate_interval(const EdgeIntegrand& f, double lower, double upper,
                                    const QuadratureConfig& cfg) {
  validate(cfg);
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw std::invalid_argument("integrate_interval: requires finite lower < upper");
  }
  const double half = 0.5 * (upper - lower);

  double sum = 0.0;  // unweighted-by-h accumulator, reused across levels
  long evals = 0;

  // x = mid + half*tanh(u), u = (pi/2) sinh(t).  Node distances to the nearer
  // endpoint are formed from exp(-2|u|) so they stay exact near the edges.
  auto add_node = [&](double t) {
    const double u = kPiHalf * std::sinh(t);
    const double au = std::fabs(u);
    const double e2 = std::exp(-2.0 * au);
    const double denom = 1.0 + e2;
    const double d_near = half * 2.0 * e2 / denom;
    if (d_near <= 0.0) return;  // node collapsed onto an endpoint
    const double d_far = half * 2.0 / denom;
    const double w = half * kPiHalf * std::cosh(t) * (4.0 * e2 / (denom * denom));
    if (w <= 0.0 || !std::isfinite(w)) return;
    double x, dl, dr;
    if (u >= 0.0) {
      dr = d_near;
      dl = d_far;
      x = upper - dr;
    } else {
      dl = d_near;
      dr = d_far;
      x = lower + dl;
    }
    const double v = f(x, dl, dr);
    ++evals;
    if (!std::isfinite(v)) fail_nonfinite(x, v);
    sum += w * v;
  };

  double h = 1.0;
  add_node(0.0);
  for (double t = h; t <= kTanhSinhTMax; t += h) {
    add_node(t);
    add_node(-t);
  }
  double prev = h * sum;

  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTanhSinhTMax; t += 2.0 * h) {
      add_node(t);
      add_node(-t);
    }
    const double cur = h * sum;
    const double diff = std::fabs(cur - prev);
    if (level >= 3 && diff <= std::fmax(cfg.abs_tol, cfg.rel_tol * std::fabs(cur))) {
      return {cur, diff, evals, level};
    }
    if (level == cfg.max_levels) {
      throw QuadratureError("tanh-sinh quadrature did not converge", cur, prev);
    }
    prev = cur;
  }
  throw QuadratureError("tanh-sinh quadrature did not converge", prev, prev);
}

QuadratureResult integrate_half_line(const EdgeIntegrand& f, double lower,
                                     const QuadratureConfig& cfg) {
  validate(cfg);
  if (!std::isfinite(lower)) {
    throw std::invalid_argument("integrate_half_line: requires finite lower bound");
  }

  double sum = 0.0;
  long evals = 0;

  // x = lower + exp(u), u = (pi/2) sinh(t); covers (lower, inf).
  auto add_node = [&](double t) {
    const double u = kPiHalf * std::sinh(t);
    if (u > 700.0 || u < -740.0) return;  // distance would overflow/underflow
    const double d = std::exp(u);
    const double w = kPiHalf * std::cosh(t) * d;
    const double v = f(lower + d, d, kInf);
    ++evals;
    if (!std::isfinite(v)) fail_nonfinite(lower + d, v);
    if (v == 0.0) return;
    sum += w * v;
  };

  double h = 1.0;
  add_node(0.0);
  for (double t = h; t <= kExpSinhTMax; t += h) {
    add_node(t);
    add_node(-t);
  }
  double prev = h * sum;

  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= kExpSinhTMax; t += 2.0 * h) {
      add_node(t);
      add_node(-t);
    }
    const double cur = h * sum;
    const double diff = std::fabs(cur - prev);
    if (level >= 3 && diff <= std::fmax(cfg.abs_tol, cfg.rel_tol * std::fabs(cur))) {
      return {cur, diff, evals, level};
    }
    if (level == cfg.max_levels) {
      throw QuadratureError("exp-sinh quadrature did not converge", cur, prev);
    }
    prev = cur;
  }
  throw QuadratureError("exp-sinh quadrature did not converge", prev, prev);
}

QuadratureResult integrate_singular(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureConfig& cfg) {
  // Nodes can sit closer to a nonzero endpoint than one ulp of it, where the
  // plain-x value rounds onto the endpoint itself; those are below this
  // interface's resolution and are dropped.  Integrands singular at a nonzero
  // endpoint need the EdgeIntegrand form to keep full precision.
  auto wrapped = [&f, lower, upper](double x, double, double) {
    if (x <= lower || x >= upper) return 0.0;
    return f(x);
  };
  if (std::isinf(upper)) return integrate_half_line(wrapped, lower, cfg);
  return integrate_interval(wrapped, lower, upper, cfg);
}

}  // namespace renyi
