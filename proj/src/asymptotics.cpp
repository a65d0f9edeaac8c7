#include "udw/asymptotics.hpp"

#include <cmath>

#include "udw/errors.hpp"
#include "udw/specfun.hpp"

namespace udw::asymptotics {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kSqrtPi = specfun::kSqrtPi;

void validate(const harvest::DetectorParams& det, double L) {
  if (!(det.gap >= 0.0)) throw DomainError("approx_x: gap must be >= 0");
  if (!(L > 0.0)) throw DomainError("approx_x: L must be > 0");
}

bool accelerated_kind(harvest::ScenarioKind kind) {
  return kind == harvest::ScenarioKind::parallel_acc;
}

void require_comparable_kind(harvest::ScenarioKind kind) {
  if (kind != harvest::ScenarioKind::parallel_acc &&
      kind != harvest::ScenarioKind::thermal_static) {
    throw ContractError("approx_x: only parallel_acc and thermal_static have closed forms");
  }
}

}  // namespace

RegimeValidity check_regime(Regime regime, double gap, double rate, double L) {
  switch (regime) {
    case Regime::small_rate:
      if (rate > 0.2) return {false, "small_rate expansion expects rate << 1"};
      return {};
    case Regime::small_rate_small_l:
      if (rate > 0.2) return {false, "small_rate_small_l expects rate << 1"};
      if (L > 0.2) return {false, "small_rate_small_l expects L << 1"};
      return {};
    case Regime::small_rate_p:
      if (rate > 1.3) return {false, "small_rate_p expects T*sigma << 1"};
      return {};
    case Regime::large_al:
      if (!(rate > 1.0)) return {false, "large_al expects a*sigma > 1"};
      if (!(L > 4.0 * rate)) return {false, "large_al expects L >> a sigma^2"};
      if (!(rate > 4.0 * gap)) return {false, "large_al expects a >> Omega"};
      return {};
  }
  return {};
}

Complex approx_x_small_rate(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                            double rate, double L) {
  require_comparable_kind(kind);
  validate(det, L);
  const double lam2 = det.coupling * det.coupling;
  const double om = det.gap;
  const double t_u = rate / kTwoPi;
  const double eo = std::exp(-om * om);
  const Complex leading = harvest::x_vacuum_static(det, L);
  if (accelerated_kind(kind)) {
    // rate^2 correction for acceleration: a polynomial prefactor under the
    // same Gaussian e^{-(L^2 + 4 Omega^2)/4} envelope.
    const double L2 = L * L;
    const double L4 = L2 * L2;
    const double poly = 3.0 * (4.0 * L2 + 4.0 - L4) * om * om - 9.0 * L2 - 6.0 + 2.0 * L4;
    const double envelope = eo * std::exp(-0.25 * L2);
    const Complex corr =
        Complex(0.0, -1.0) * lam2 * std::pow(kPi, 1.5) * t_u * t_u / (24.0 * L) * envelope * poly;
    return leading + corr;
  }
  // thermal: real correction -lambda^2 pi T^2 e^{-Omega^2}/6
  return leading - lam2 * kPi * t_u * t_u * eo / 6.0;
}

double approx_x_small_rate_small_l(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                                   double rate, double L) {
  require_comparable_kind(kind);
  validate(det, L);
  const double lam2 = det.coupling * det.coupling;
  const double om = det.gap;
  const double t_u = rate / kTwoPi;
  const double eo = std::exp(-om * om);
  const double common = lam2 * eo / (4.0 * kSqrtPi * L) -
                        lam2 * eo * L * (kPi - 2.0) / (16.0 * std::pow(kPi, 1.5));
  if (accelerated_kind(kind)) {
    return common +
           lam2 * eo / (4.0 * L) * (2.0 * om * om - 1.0) * std::pow(kPi, 1.5) * t_u * t_u;
  }
  return common + lam2 * eo * std::sqrt(kPi) / 6.0 * L * t_u * t_u;
}

double approx_x_large_al(harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                         double rate, double L) {
  require_comparable_kind(kind);
  validate(det, L);
  const double lam2 = det.coupling * det.coupling;
  const double om = det.gap;
  const double t_u = rate / kTwoPi;
  const double eo = std::exp(-om * om);
  if (accelerated_kind(kind)) {
    const double term1 = lam2 * eo / (2.0 * kPi * L * L);
    const double term2 = lam2 / (2.0 * std::pow(kPi, 3) * t_u * t_u * std::pow(L, 4)) *
                         std::exp(8.0 * kPi * kPi * t_u * t_u - om * om) *
                         std::cos(4.0 * kPi * t_u * om);
    return term1 + term2;
  }
  return lam2 * t_u * eo / (2.0 * L);
}

Complex approx_x(Regime regime, harvest::ScenarioKind kind, const harvest::DetectorParams& det,
                 double rate, double L) {
  switch (regime) {
    case Regime::small_rate:
      return approx_x_small_rate(kind, det, rate, L);
    case Regime::small_rate_small_l:
      return {approx_x_small_rate_small_l(kind, det, rate, L), 0.0};
    case Regime::large_al:
      return {approx_x_large_al(kind, det, rate, L), 0.0};
    case Regime::small_rate_p:
      throw ContractError("approx_x: small_rate_p belongs to approx_p");
  }
  throw ContractError("approx_x: unknown regime");
}

double approx_p(const harvest::DetectorParams& det, double temperature) {
  if (!(det.gap >= 0.0)) throw DomainError("approx_p: gap must be >= 0");
  if (!(temperature >= 0.0)) throw DomainError("approx_p: temperature must be >= 0");
  const double lam2 = det.coupling * det.coupling;
  const double om = det.gap;
  const double eo = std::exp(-om * om);
  const double closed = lam2 / (4.0 * kPi) * (eo - kSqrtPi * om * specfun::erfc(om));
  return closed + lam2 * kPi / 6.0 * temperature * temperature * eo;
}

double sign_criterion(const harvest::DetectorParams& det) {
  return 2.0 * det.gap * det.gap - 1.0;
}

}  // namespace udw::asymptotics
