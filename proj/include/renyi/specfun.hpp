#pragma once

namespace renyi {

/// Natural log of the Gamma function for x > 0.
/// Lanczos approximation, relative error below 1e-13 on (0, 170].
double ln_gamma(double x);

/// ln B(x,y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x+y), x > 0, y > 0.
double log_beta(double x, double y);

/// B(x,y), evaluated as exp(log_beta) so small arguments do not overflow.
double beta_fn(double x, double y);

}  // namespace renyi
