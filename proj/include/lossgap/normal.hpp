#pragma once

namespace lossgap {

// Standard normal CDF, Phi(x) = erfc(-x/sqrt(2))/2.
//
// erfc is evaluated with Cody's rational Chebyshev approximations
// (W. J. Cody, "Rational Chebyshev approximation for the error function",
// Math. Comp. 23, 1969), the same scheme used by SPECFUN/calerf.
// Absolute error is below 1e-15 on [-8, 8].
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

}  // namespace lossgap
