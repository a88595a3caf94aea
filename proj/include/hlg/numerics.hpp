#ifndef HLG_NUMERICS_HPP
#define HLG_NUMERICS_HPP

#include <functional>

namespace hlg::numerics {

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol;
/// the integrand must be smooth on the closed interval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Double-exponential (tanh-sinh) quadrature on the open interval (a, b),
/// tolerant of integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol);

/// Double-exponential quadrature of integral_0^inf g(h) dh (exp-sinh
/// variant), tolerant of an integrable singularity at h = 0.
double exp_sinh(const std::function<double(double)>& g, double tol);

/// Upper incomplete gamma Gamma(s, x) for s in roughly (0, 3], x > 0.
double upper_incomplete_gamma(double s, double x);

} // namespace hlg::numerics

#endif
