#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "renyi/asymptotics.hpp"
#include "renyi/divergence.hpp"
#include "renyi/families.hpp"

namespace renyi {

struct StudyRow {
  double eps;
  double I_s;          // divergence (or endpoint contribution) at this eps
  double g_eps;        // normalization g(eps)
  double ratio;        // I_s / g_eps
  double closed_form;  // limiting constant the ratio should approach
  double rel_err;      // |ratio - closed_form| / |closed_form|
};

struct ConvergenceReport {
  std::string family;
  double s;
  ScalingRegime regime;
  std::optional<Side> side;  // set for endpoint-decomposition studies
  std::optional<double> c;
  std::vector<StudyRow> rows;   // eps strictly decreasing by the sweep factor
  double extrapolated;
  double closed_form;
  bool converged;
  bool noise_limited;  // sweep stopped early on a signal-to-noise guard
};

struct StudyConfig {
  QuadratureConfig quad{};
  double converge_rel_tol = 0.01;  // empirical: the ratios carry no a-priori rate
};

/// Rows at eps_k = eps0 * factor^(-k), k = 0..steps-1, comparing
/// I^s(f_theta || f_(theta+eps)) / g(eps) against limit_constant.  The
/// extrapolation runs Aitken delta-squared on the ratio sequence for the
/// power and eps^2 regimes and polynomial extrapolation in 1/log(1/eps) for
/// the logarithmic (kappa = 2) regime, falling back to the last ratio when
/// ill-conditioned.  The sweep stops early (noise_limited) once the quadrature
/// error estimate exceeds 1% of the current value.
ConvergenceReport convergence_study(const FamilySpec& fam, double s, double eps0, double factor,
                                    int steps, const StudyConfig& cfg = {});

/// Same row structure for one endpoint's decomposition I+-_s(c, f, eps)
/// against endpoint_limit_constant, in that side's own normalization.
ConvergenceReport lemma_study(const FamilySpec& fam, Side side, double c, double s, double eps0,
                              double factor, int steps, const StudyConfig& cfg = {});

struct UniformityRow {
  double eps;
  double sup_abs_dev;  // sup over the s-grid of |ratio(s,eps) - C(s)|
};

struct UniformityReport {
  std::string family;
  std::vector<double> s_grid;
  std::vector<UniformityRow> rows;
  bool monotone;  // sup sequence non-increasing over the last 3 sweep points
};

UniformityReport uniformity_study(const FamilySpec& fam, const std::vector<double>& s_grid,
                                  double eps0, double factor, int steps,
                                  const StudyConfig& cfg = {});

enum class ReportFormat { Csv, Json };

/// CSV columns: eps,I_s,g_eps,ratio,closed_form,rel_err (17 significant
/// digits, '.' decimal separator, '\n' line endings).  JSON carries the same
/// rows plus family, s, regime, extrapolated, closed_form, converged.
void emit_report(const ConvergenceReport& report, ReportFormat format, std::ostream& out);
void emit_report(const UniformityReport& report, ReportFormat format, std::ostream& out);
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);
void emit_report(const UniformityReport& report, ReportFormat format, const std::string& path);

/// Worker cap for study fan-out: RENYI_THREADS when set, hardware concurrency
/// otherwise.  Results are byte-identical to sequential execution.
int study_thread_cap();

/// Raised when a quadrature failure interrupts a sweep; carries the rows
/// computed so far.
class StudyError : public QuadratureError {
 public:
  StudyError(const QuadratureError& cause, ConvergenceReport partial);
  const ConvergenceReport& partial_report() const { return partial_; }

 private:
  ConvergenceReport partial_;
};

}  // namespace renyi
