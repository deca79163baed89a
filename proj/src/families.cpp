#include "renyi/families.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "renyi/quadrature.hpp"
#include "renyi/specfun.hpp"

namespace renyi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_param(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": parameters must be finite and > 0");
  }
}

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Beta: return "beta";
    case FamilyKind::Gamma: return "gamma";
    case FamilyKind::Weibull: return "weibull";
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::Exponential: return "exp";
  }
  return "?";
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FamilySpec::FamilySpec(FamilyKind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
  for (double p : params_) require_positive_param(p, kind_name(kind_));
  switch (kind_) {
    case FamilyKind::Beta: {
      const double a = params_[0], b = params_[1];
      support_ = {SupportKind::Interval, 0.0, 1.0};
      log_norm_ = -log_beta(a, b);
      const double amp = std::exp(log_norm_);
      left_ = {a, amp};
      right_ = EndpointBehavior{b, amp};
      break;
    }
    case FamilyKind::Gamma: {
      const double a = params_[0], b = params_[1];
      support_ = {SupportKind::HalfLine, 0.0, kInf};
      log_norm_ = a * std::log(b) - ln_gamma(a);
      left_ = {a, std::exp(log_norm_)};
      right_ = std::nullopt;
      break;
    }
    case FamilyKind::Weibull: {
      const double a = params_[0], b = params_[1];
      support_ = {SupportKind::HalfLine, 0.0, kInf};
      log_norm_ = std::log(a * b);
      left_ = {a, a * b};
      right_ = std::nullopt;
      break;
    }
    case FamilyKind::Uniform: {
      support_ = {SupportKind::Interval, 0.0, 1.0};
      left_ = {1.0, 1.0};
      right_ = EndpointBehavior{1.0, 1.0};
      break;
    }
    case FamilyKind::Exponential: {
      const double b = params_[0];
      support_ = {SupportKind::HalfLine, 0.0, kInf};
      log_norm_ = std::log(b);
      left_ = {1.0, b};
      right_ = std::nullopt;
      break;
    }
  }

  // Audit the normalization; catches bad parameterizations immediately.
  const QuadratureConfig cfg{1e-13, 1e-12, 14};
  auto dens = [this](double, double dl, double dr) {
    return std::exp(log_density_from_edges(*this, dl, dr));
  };
  double mass;
  if (support_.is_interval()) {
    mass = integrate_interval(dens, support_.lower, support_.upper, cfg).value;
  } else {
    mass = integrate_half_line(dens, support_.lower, cfg).value;
  }
  if (std::fabs(mass - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(kind_name(kind_)) +
                                ": density does not integrate to 1 (got " +
                                std::to_string(mass) + ")");
  }
}

FamilySpec FamilySpec::beta(double alpha, double beta) {
  return FamilySpec(FamilyKind::Beta, {alpha, beta});
}
FamilySpec FamilySpec::gamma(double alpha, double rate) {
  return FamilySpec(FamilyKind::Gamma, {alpha, rate});
}
FamilySpec FamilySpec::weibull(double alpha, double rate) {
  return FamilySpec(FamilyKind::Weibull, {alpha, rate});
}
FamilySpec FamilySpec::uniform() { return FamilySpec(FamilyKind::Uniform, {}); }
FamilySpec FamilySpec::exponential(double rate) {
  return FamilySpec(FamilyKind::Exponential, {rate});
}

FamilySpec FamilySpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      size_t used = 0;
      double v;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("family spec: bad numeric parameter '" + item + "'");
      }
      if (used != item.size()) {
        throw std::invalid_argument("family spec: bad numeric parameter '" + item + "'");
      }
      params.push_back(v);
    }
  }
  auto expect = [&](size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("family spec '" + name + "': expected " + std::to_string(n) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "beta") {
    expect(2);
    return beta(params[0], params[1]);
  }
  if (name == "gamma") {
    expect(2);
    return gamma(params[0], params[1]);
  }
  if (name == "weibull") {
    expect(2);
    return weibull(params[0], params[1]);
  }
  if (name == "uniform") {
    expect(0);
    return uniform();
  }
  if (name == "exp") {
    expect(1);
    return exponential(params[0]);
  }
  throw std::invalid_argument("unknown family '" + name + "' (expected beta|gamma|weibull|uniform|exp)");
}

FamilySpec FamilySpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("family json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name")) {
    throw std::invalid_argument("family json: expected {\"name\": ..., \"params\": [...]}");
  }
  std::string spec;
  try {
    spec = j["name"].get<std::string>();
    if (j.contains("params")) {
      const auto& p = j["params"];
      if (!p.is_array()) throw std::invalid_argument("family json: params must be an array");
      std::string tail;
      for (const auto& v : p) {
        tail += (tail.empty() ? "" : ",") + format_param(v.get<double>());
      }
      if (!tail.empty()) spec += ":" + tail;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("family json: ") + e.what());
  }
  return parse(spec);
}

FamilySpec FamilySpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open family file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

double FamilySpec::min_kappa() const {
  double k = left_.kappa;
  if (right_) k = std::fmin(k, right_->kappa);
  return k;
}

std::string FamilySpec::to_string() const {
  std::string out = kind_name(kind_);
  for (size_t i = 0; i < params_.size(); ++i) {
    out += (i == 0 ? ":" : ",") + format_param(params_[i]);
  }
  return out;
}

double log_density_from_edges(const FamilySpec& fam, double dl, double dr) {
  const auto& p = fam.params();
  switch (fam.kind()) {
    case FamilyKind::Beta:
      return fam.log_norm() + (p[0] - 1.0) * std::log(dl) + (p[1] - 1.0) * std::log(dr);
    case FamilyKind::Gamma:
      return fam.log_norm() + (p[0] - 1.0) * std::log(dl) - p[1] * dl;
    case FamilyKind::Weibull:
      return fam.log_norm() + (p[0] - 1.0) * std::log(dl) - p[1] * std::pow(dl, p[0]);
    case FamilyKind::Uniform:
      return 0.0;
    case FamilyKind::Exponential:
      return fam.log_norm() - p[0] * dl;
  }
  return 0.0;
}

double log_density_slope_from_edges(const FamilySpec& fam, double dl, double dr) {
  const auto& p = fam.params();
  switch (fam.kind()) {
    case FamilyKind::Beta:
      return (p[0] - 1.0) / dl - (p[1] - 1.0) / dr;
    case FamilyKind::Gamma:
      return (p[0] - 1.0) / dl - p[1];
    case FamilyKind::Weibull:
      return (p[0] - 1.0) / dl - p[0] * p[1] * std::pow(dl, p[0] - 1.0);
    case FamilyKind::Uniform:
      return 0.0;
    case FamilyKind::Exponential:
      return -p[0];
  }
  return 0.0;
}

namespace {

bool strictly_inside(const FamilySpec& fam, double x) {
  const auto& s = fam.support();
  if (!(x > s.lower)) return false;
  return s.is_interval() ? x < s.upper : true;
}

void require_inside(const FamilySpec& fam, double x) {
  if (!std::isfinite(x) || !strictly_inside(fam, x)) {
    throw std::domain_error(fam.to_string() + ": x=" + std::to_string(x) +
                            " is outside the open support");
  }
}

}  // namespace

double density(const FamilySpec& fam, double x) {
  if (!std::isfinite(x) || !strictly_inside(fam, x)) return 0.0;
  const auto& s = fam.support();
  return std::exp(log_density_from_edges(fam, x - s.lower, s.upper - x));
}

double log_density(const FamilySpec& fam, double x) {
  require_inside(fam, x);
  const auto& s = fam.support();
  return log_density_from_edges(fam, x - s.lower, s.upper - x);
}

double density_prime(const FamilySpec& fam, double x) {
  require_inside(fam, x);
  const auto& s = fam.support();
  const double dl = x - s.lower, dr = s.upper - x;
  return std::exp(log_density_from_edges(fam, dl, dr)) *
         log_density_slope_from_edges(fam, dl, dr);
}

std::pair<EndpointBehavior, std::optional<EndpointBehavior>> endpoint_behavior(
    const FamilySpec& fam) {
  return {fam.left_endpoint(), fam.right_endpoint()};
}

namespace {

// The Fisher integrand behaves like A (kappa-1)^2 d^(kappa-3) near an endpoint
// with exponent kappa: integrable iff kappa > 2, except that kappa = 1 is also
// fine because the slope stays bounded there.
bool endpoint_integrable(double kappa) { return kappa > 2.0 || kappa == 1.0; }

QuadratureConfig fisher_cfg(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("fisher_integral: tol must be > 0");
  return QuadratureConfig{1e-280, tol, 14};
}

double fisher_quadrature(const FamilySpec& fam, double lo, double hi, double offset_left,
                         bool right_open, const QuadratureConfig& cfg) {
  // offset_left: distance from the family's lower endpoint to `lo`.
  const auto& s = fam.support();
  auto integrand = [&](double, double dl, double dr) {
    const double dl_fam = dl + offset_left;
    const double dr_fam =
        s.is_interval() ? (right_open ? dr : dr + (s.upper - hi)) : kInf;
    const double f = std::exp(log_density_from_edges(fam, dl_fam, dr_fam));
    if (f == 0.0) return 0.0;  // node too deep to contribute; avoids 0*inf
    const double slope = log_density_slope_from_edges(fam, dl_fam, dr_fam);
    return f * slope * slope;
  };
  if (right_open && !s.is_interval()) {
    return integrate_half_line(integrand, lo, cfg).value;
  }
  return integrate_interval(integrand, lo, hi, cfg).value;
}

}  // namespace

std::optional<double> fisher_integral(const FamilySpec& fam, double tol) {
  const auto cfg = fisher_cfg(tol);
  if (!endpoint_integrable(fam.left_endpoint().kappa)) return std::nullopt;
  if (fam.right_endpoint() && !endpoint_integrable(fam.right_endpoint()->kappa)) {
    return std::nullopt;
  }
  if (fam.kind() == FamilyKind::Uniform) return 0.0;
  const auto& s = fam.support();
  if (s.is_interval()) {
    return fisher_quadrature(fam, s.lower, s.upper, 0.0, false, cfg);
  }
  return fisher_quadrature(fam, s.lower, kInf, 0.0, true, cfg);
}

std::optional<double> fisher_integral_tail(const FamilySpec& fam, double c, Side side,
                                           double tol) {
  const auto cfg = fisher_cfg(tol);
  const auto& s = fam.support();
  if (!std::isfinite(c) || !(c > s.lower) || (s.is_interval() && !(c < s.upper))) {
    throw std::domain_error("fisher_integral_tail: c must lie strictly inside the support");
  }
  if (fam.kind() == FamilyKind::Uniform) return 0.0;
  if (side == Side::Left) {
    if (!endpoint_integrable(fam.left_endpoint().kappa)) return std::nullopt;
    return fisher_quadrature(fam, s.lower, c, 0.0, false, cfg);
  }
  if (s.is_interval()) {
    if (!endpoint_integrable(fam.right_endpoint()->kappa)) return std::nullopt;
    return fisher_quadrature(fam, c, s.upper, c - s.lower, false, cfg);
  }
  // Half-line upper tail: regular for every catalog family.
  return fisher_quadrature(fam, c, kInf, c - s.lower, true, cfg);
}

double tail_cutoff(const FamilySpec& fam, double neg_log_tail) {
  if (fam.support().is_interval()) {
    throw std::domain_error("tail_cutoff: interval support has no upper tail");
  }
  const auto& p = fam.params();
  switch (fam.kind()) {
    case FamilyKind::Exponential:
      return neg_log_tail / p[0];
    case FamilyKind::Weibull:
      // tail mass beyond T is exactly exp(-b T^a)
      return std::pow(neg_log_tail / p[1], 1.0 / p[0]);
    case FamilyKind::Gamma: {
      const double a = p[0], b = p[1];
      const double log_amp = a * std::log(b) - ln_gamma(a) + std::log(2.0 / b);
      // valid bound once b*T >= 2a: tail <= A T^(a-1) e^(-bT) * 2/b
      double t = std::fmax(2.0 * a / b, 1.0 / b);
      while (log_amp + (a - 1.0) * std::log(t) - b * t > -neg_log_tail) t *= 1.25;
      return t;
    }
    default:
      break;
  }
  throw std::logic_error("tail_cutoff: unhandled family");
}

double density(const LocationShift& shifted, double x) {
  return density(shifted.family, x - shifted.theta);
}

}  // namespace renyi
