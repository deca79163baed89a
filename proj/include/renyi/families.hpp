#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace renyi {

enum class FamilyKind { Beta, Gamma, Weibull, Uniform, Exponential };
enum class SupportKind { Interval, HalfLine };
enum class Side { Left, Right };

struct Support {
  SupportKind kind;
  double lower;
  double upper;  // +infinity for half-lines
  double width() const { return upper - lower; }
  bool is_interval() const { return kind == SupportKind::Interval; }
};

/// Near an endpoint the density behaves like amplitude * d^(kappa-1) in the
/// distance d to that endpoint.  kappa drives all regime dispatch, so it is
/// always taken from the family parameters, never re-fitted numerically.
struct EndpointBehavior {
  double kappa;
  double amplitude;
};

/// A generator density f on an open interval or half-line.  Shifted copies
/// f(x - theta) of one FamilySpec form the location family under study.
///
/// Parameterizations:
///   beta:a,b      x^(a-1) (1-x)^(b-1) / B(a,b)            on (0,1)
///   gamma:a,b     b^a/Gamma(a) x^(a-1) exp(-b x)          on (0,inf)
///   weibull:a,b   a b x^(a-1) exp(-b x^a)                 on (0,inf)
///   uniform       1                                        on (0,1)
///   exp:b         b exp(-b x)                              on (0,inf)
/// All parameters strictly positive.  Construction verifies the density
/// integrates to 1 within 1e-10.
class FamilySpec {
 public:
  static FamilySpec beta(double alpha, double beta);
  static FamilySpec gamma(double alpha, double rate);
  static FamilySpec weibull(double alpha, double rate);
  static FamilySpec uniform();
  static FamilySpec exponential(double rate);

  /// Parses "beta:0.5,0.5", "gamma:2.5,1", "weibull:1.5,1", "uniform", "exp:2".
  static FamilySpec parse(const std::string& text);
  /// Reads {"name": "beta", "params": [0.5, 0.5]}.
  static FamilySpec from_json_file(const std::string& path);
  static FamilySpec from_json_text(const std::string& text);

  FamilyKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const Support& support() const { return support_; }
  EndpointBehavior left_endpoint() const { return left_; }
  std::optional<EndpointBehavior> right_endpoint() const { return right_; }
  double min_kappa() const;
  double log_norm() const { return log_norm_; }  // additive constant of log f
  std::string to_string() const;

 private:
  FamilySpec(FamilyKind kind, std::vector<double> params);
  FamilyKind kind_;
  std::vector<double> params_;
  Support support_;
  EndpointBehavior left_;
  std::optional<EndpointBehavior> right_;
  double log_norm_ = 0.0;
};

/// f(x); exactly 0 outside the open support.
double density(const FamilySpec& fam, double x);
/// log f(x) for x strictly inside the support; domain error otherwise.
double log_density(const FamilySpec& fam, double x);
/// f'(x) for x strictly inside the support; domain error otherwise.
double density_prime(const FamilySpec& fam, double x);

/// log f expressed in distances to the support endpoints (dist_right ignored
/// for half-lines).  The quadrature layer supplies these distances directly,
/// which preserves precision where x itself would round onto an endpoint.
double log_density_from_edges(const FamilySpec& fam, double dist_left, double dist_right);
/// (log f)'(x) in the same edge coordinates.
double log_density_slope_from_edges(const FamilySpec& fam, double dist_left, double dist_right);

std::pair<EndpointBehavior, std::optional<EndpointBehavior>> endpoint_behavior(
    const FamilySpec& fam);

/// J_f = integral of (f')^2 / f over the support.  Empty when an endpoint
/// exponent makes the integral diverge (kappa < 2 with kappa != 1, or
/// kappa == 2).
std::optional<double> fisher_integral(const FamilySpec& fam, double tol);

/// One-sided Fisher integral from the given endpoint up to (or from) c.
std::optional<double> fisher_integral_tail(const FamilySpec& fam, double c, Side side,
                                           double tol);

/// Smallest T (measured from the lower endpoint) with
/// integral of f over (T, inf) <= exp(-neg_log_tail).  Half-line families only.
double tail_cutoff(const FamilySpec& fam, double neg_log_tail);

/// f_theta(x) = f(x - theta).
struct LocationShift {
  FamilySpec family;
  double theta;
};
double density(const LocationShift& shifted, double x);

}  // namespace renyi
