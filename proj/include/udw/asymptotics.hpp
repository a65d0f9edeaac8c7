#pragma once

#include <complex>
#include <string>

#include "udw/harvest.hpp"

namespace udw::asymptotics {

using Complex = std::complex<double>;

// Closed-form regimes.  Validity predicates are soft: approx_x/approx_p never
// refuse to evaluate, callers may deliberately probe breakdown regions.
enum class Regime {
  small_rate,          // a*sigma or 2 pi T*sigma << 1
  small_rate_small_l,  // additionally L/sigma << 1; returns |X|
  small_rate_p,        // transition probability expansion in T_U
  large_al,            // L >> a sigma^2 > sigma and a >> Omega; returns |X|
};

struct RegimeValidity {
  bool ok = true;
  std::string message;
};

// rate is on the shared axis a*sigma = 2 pi T_U sigma throughout.
RegimeValidity check_regime(Regime regime, double gap, double rate, double L);

// Small-rate expansion of X (complex); first term is the static-vacuum closed
// form, the second the leading rate^2 correction.
Complex approx_x_small_rate(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                            double rate, double L);

// Small-rate, small-L modulus expansion of |X|.
double approx_x_small_rate_small_l(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                                   double rate, double L);

// Large-separation modulus expansion of |X| (decays as L^-2 accelerated,
// L^-1 thermal).
double approx_x_large_al(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                         double rate, double L);

// Dispatcher mirroring the regime enum; modulus-only regimes return the
// modulus in the real part.
Complex approx_x(Regime regime, harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                 double rate, double L);

// Small-temperature transition probability; temperature = T_U * sigma.
double approx_p(const harvest::DetectorParams& det, double temperature);

// 2 Omega^2 sigma^2 - 1: positive iff |X_acc| exceeds |X_th| in the
// small-rate small-L regime.
double sign_criterion(const harvest::DetectorParams& det);

}  // namespace udw::asymptotics
