#pragma once

#include <complex>

namespace udw::specfun {

inline constexpr double kSqrtPi = 1.7724538509055160273;

// Accuracy policy for the series / continued-fraction loops below.
struct SpecFunAccuracy {
  double target_abs_err;
  int max_terms;
};
inline constexpr SpecFunAccuracy kAccuracy{1e-14, 200};

// Complementary error function, |abs error| <= 1e-13 on the real line.
double erfc(double x);

// Dawson integral D(x) = e^{-x^2} \int_0^x e^{t^2} dt, odd in x.
double dawson(double x);

// e^{-x^2} Erfc(ix) = e^{-x^2} - (2/sqrt(pi)) D(x) i.  Bounded for all real x,
// unlike Erfc(ix) itself which grows like e^{x^2}.
std::complex<double> erfc_imag_scaled(double x);

}  // namespace udw::specfun
