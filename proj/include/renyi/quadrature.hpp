#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace renyi {

/// Every quantity in this library is ultimately an integral with (at worst)
/// power-law endpoint singularities, so one double-exponential engine serves
/// all of them: tanh-sinh on finite intervals, exp-sinh on half-lines.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_levels = 12;
};

/// Throws std::invalid_argument unless tolerances > 0 and max_levels >= 4.
void validate(const QuadratureConfig& cfg);

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;  // difference between the last two refinement levels
  long evaluations = 0;
  int levels = 0;
};

/// Raised when the level-doubling loop fails to meet tolerance.  Carries the
/// last two level values so callers (and the CLI) can report them.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double last, double previous);
  double last_value() const { return last_; }
  double previous_value() const { return prev_; }

 protected:
  struct Preformatted {};
  QuadratureError(Preformatted, const std::string& message, double last, double previous)
      : std::runtime_error(message), last_(last), prev_(previous) {}

 private:
  double last_;
  double prev_;
};

/// Integrand evaluated as f(x, dist_to_lower, dist_to_upper).  The distances
/// are computed in the transformed variable and stay accurate down to the
/// underflow threshold, which is what singular endpoint factors need; x itself
/// saturates at the endpoints long before that.  dist_to_upper is +infinity
/// on half-lines.
using EdgeIntegrand = std::function<double(double, double, double)>;

QuadratureResult integrate_interval(const EdgeIntegrand& f, double lower, double upper,
                                    const QuadratureConfig& cfg = {});

QuadratureResult integrate_half_line(const EdgeIntegrand& f, double lower,
                                     const QuadratureConfig& cfg = {});

/// Plain-x convenience front end.  `upper` may be +infinity.
QuadratureResult integrate_singular(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureConfig& cfg = {});

}  // namespace renyi
