#pragma once

namespace fracvx {

/// Gamma function for x > 0. Throws DomainError at x <= 0.
double gamma_fn(double x);

/// Natural log of Gamma(x) for x > 0. Throws DomainError at x <= 0.
double log_gamma(double x);

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), a > 0, b > 0.
/// Evaluated through log-Gamma so moderately large arguments do not overflow.
double beta_fn(double a, double b);

/// Digamma psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

}  // namespace fracvx
