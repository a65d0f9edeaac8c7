#include "udw/wightman.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw::wightman {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite input");
}

// coth of a complex argument, stable for large |Re z|.
Complex ccoth(Complex z) {
  if (z.real() < 0.0) return -ccoth(-z);
  const Complex e = std::exp(-2.0 * z);
  return (1.0 + e) / (1.0 - e);
}

// Closed-form integral of the image tail plus Euler-Maclaurin corrections:
// tail = sum_{|m| > n} 1/((w - i m/T)^2 - r^2) with w = dt - i eps.
// Derivatives enter through the partial-fraction form
//   d^k/dx^k 1/((w -+ i x/T)^2 - r^2)
//     = (+-i/T)^k k!/(2r) [ (v -+ r)^{-k-1} - ... ]  evaluated at x = N.
Complex image_tail(Complex w, double r, double temperature, long n, double* residual) {
  const double T = temperature;
  const double N = static_cast<double>(n + 1);
  const Complex z = w - Complex(0.0, N / T);  // +m branch
  const Complex y = w + Complex(0.0, N / T);  // -m branch
  // (i/T)^k for k = 1, 3, 5, 7 alternate between +-i/T^k.
  const double iT1 = 1.0 / T;
  const double iT3 = iT1 * iT1 * iT1;
  const double iT5 = iT3 * iT1 * iT1;
  const double iT7 = iT5 * iT1 * iT1;
  Complex integral, f0, f1, f3, f5, f7;
  if (r > 0.0) {
    integral = Complex(0.0, -T / (2.0 * r)) * std::log((z - r) / (z + r)) +
               Complex(0.0, T / (2.0 * r)) * std::log((y - r) / (y + r));
    // Inverse powers (.)^{-k-1} for k = 0,1,3,5,7 -> exponents 1,2,4,6,8.
    auto powers = [](Complex base, Complex out[5]) {
      const Complex p1 = 1.0 / base;
      const Complex p2 = p1 * p1;
      const Complex p4 = p2 * p2;
      out[0] = p1;
      out[1] = p2;
      out[2] = p4;
      out[3] = p4 * p2;
      out[4] = p4 * p4;
    };
    Complex zm[5], zp[5], ym[5], yp[5];
    powers(z - r, zm);
    powers(z + r, zp);
    powers(y - r, ym);
    powers(y + r, yp);
    const double half_r = 0.5 / r;
    auto deriv = [&](int idx, double fact, double itk) -> Complex {
      const Complex az = zm[idx] - zp[idx];
      const Complex ay = ym[idx] - yp[idx];
      // (i/T)^k az + (-i/T)^k ay; k odd here except idx 0 (k = 0).
      if (idx == 0) return fact * half_r * (az + ay);
      return fact * half_r * Complex(0.0, itk) * (az - ay);
    };
    f0 = deriv(0, 1.0, 0.0);
    f1 = deriv(1, 1.0, iT1);
    f3 = deriv(2, 6.0, -iT3);
    f5 = deriv(3, 120.0, iT5);
    f7 = deriv(4, 5040.0, -iT7);
  } else {
    integral = Complex(0.0, T) / z - Complex(0.0, T) / y;
    // z^{-k-2} for k = 0,1,3,5,7 -> exponents 2,3,5,7,9.
    auto powers = [](Complex base, Complex out[5]) {
      const Complex p1 = 1.0 / base;
      const Complex p2 = p1 * p1;
      const Complex p4 = p2 * p2;
      out[0] = p2;
      out[1] = p2 * p1;
      out[2] = p4 * p1;
      out[3] = p4 * p2 * p1;
      out[4] = p4 * p4 * p1;
    };
    Complex zs[5], ys[5];
    powers(z, zs);
    powers(y, ys);
    auto deriv = [&](int idx, double fact, double itk) -> Complex {
      if (idx == 0) return fact * (zs[idx] + ys[idx]);
      return fact * Complex(0.0, itk) * (zs[idx] - ys[idx]);
    };
    f0 = deriv(0, 1.0, 0.0);
    f1 = deriv(1, 2.0, iT1);
    f3 = deriv(2, 24.0, -iT3);
    f5 = deriv(3, 720.0, iT5);
    f7 = deriv(4, 40320.0, -iT7);
  }
  if (residual) *residual = std::abs(f7) / 1209600.0;
  return integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0 - f5 / 30240.0;
}

}  // namespace

double spatial_distance(const SpacetimePoint& p, const SpacetimePoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

SpacetimePoint Trajectory::point(double tau) const {
  switch (kind) {
    case TrajectoryKind::parallel_a:
    case TrajectoryKind::antiparallel_a:
    case TrajectoryKind::perpendicular_a: {
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      const double ia = 1.0 / accel;
      return {ia * std::sinh(accel * tau), ia * std::cosh(accel * tau), 0.0, 0.0};
    }
    case TrajectoryKind::parallel_b: {
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      const double ia = 1.0 / accel;
      return {ia * std::sinh(accel * tau), ia * std::cosh(accel * tau) + separation, 0.0, 0.0};
    }
    case TrajectoryKind::antiparallel_b: {
      // Mirror-wedge partner: tau = 0 separation is exactly L and the
      // worldlines never intersect (gap >= L for all tau).
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      const double ia = 1.0 / accel;
      return {ia * std::sinh(accel * tau), -ia * std::cosh(accel * tau) - separation + 2.0 * ia,
              0.0, 0.0};
    }
    case TrajectoryKind::perpendicular_b: {
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      const double ia = 1.0 / accel;
      return {ia * std::sinh(accel * tau), separation + ia, ia * (std::cosh(accel * tau) - 1.0),
              0.0};
    }
    case TrajectoryKind::static_at_origin:
      return {tau, 0.0, 0.0, 0.0};
    case TrajectoryKind::static_at_l:
      return {tau, separation, 0.0, 0.0};
  }
  throw ContractError("Trajectory: unknown kind");
}

double Trajectory::coordinate_time(double tau) const {
  switch (kind) {
    case TrajectoryKind::static_at_origin:
    case TrajectoryKind::static_at_l:
      return tau;
    default:
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      return std::sinh(accel * tau) / accel;
  }
}

double Trajectory::proper_time_at(double t) const {
  switch (kind) {
    case TrajectoryKind::static_at_origin:
    case TrajectoryKind::static_at_l:
      return t;
    default:
      if (!(accel > 0.0)) throw DomainError("Trajectory: accel must be > 0 for accelerated kinds");
      return std::asinh(accel * t) / accel;
  }
}

Trajectory Trajectory::parallel_a(double a) { return {TrajectoryKind::parallel_a, a, 0.0}; }
Trajectory Trajectory::parallel_b(double a, double L) { return {TrajectoryKind::parallel_b, a, L}; }
Trajectory Trajectory::antiparallel_a(double a) { return {TrajectoryKind::antiparallel_a, a, 0.0}; }
Trajectory Trajectory::antiparallel_b(double a, double L) {
  return {TrajectoryKind::antiparallel_b, a, L};
}
Trajectory Trajectory::perpendicular_a(double a) { return {TrajectoryKind::perpendicular_a, a, 0.0}; }
Trajectory Trajectory::perpendicular_b(double a, double L) {
  return {TrajectoryKind::perpendicular_b, a, L};
}
Trajectory Trajectory::static_at_origin() { return {TrajectoryKind::static_at_origin, 0.0, 0.0}; }
Trajectory Trajectory::static_at_l(double L) { return {TrajectoryKind::static_at_l, 0.0, L}; }

Complex vacuum_wightman(double dt, double r, double eps) {
  require_finite(dt, "vacuum_wightman");
  require_finite(r, "vacuum_wightman");
  const Complex d = Complex(dt, -eps);
  return -1.0 / (kFourPiSq * (d * d - r * r));
}

Complex thermal_image_term(double dt, double r, double temperature, long m, double eps) {
  require_finite(dt, "thermal_image_term");
  if (!(temperature > 0.0)) throw DomainError("thermal_image_term: temperature must be > 0");
  const Complex d = Complex(dt, -(eps + static_cast<double>(m) / temperature));
  return -1.0 / (kFourPiSq * (d * d - r * r));
}

Complex thermal_wightman_sum(double dt, double r, double temperature, long n_max, double eps) {
  if (n_max < 0) throw ContractError("thermal_wightman_sum: n_max must be >= 0");
  Complex sum = thermal_image_term(dt, r, temperature, 0, eps);
  for (long m = 1; m <= n_max; ++m) {
    sum += thermal_image_term(dt, r, temperature, m, eps) +
           thermal_image_term(dt, r, temperature, -m, eps);
  }
  return sum;
}

Complex thermal_wightman_adaptive(double dt, double r, double temperature, double eps) {
  if (!(temperature > 0.0)) throw DomainError("thermal_wightman_adaptive: temperature must be > 0");
  if (r < 0.0) throw DomainError("thermal_wightman_adaptive: r must be >= 0");
  constexpr long kHardCap = 1000000;
  const Complex w(dt, -eps);
  // N/T must dominate |w| + r so the tail integrals stay on the principal
  // branch and the Euler-Maclaurin corrections converge.
  long n = std::max<long>(64, static_cast<long>(
                                  std::ceil(2.0 * temperature * (r + std::abs(dt) + 1.0))));
  for (;;) {
    Complex raw = -kFourPiSq * thermal_wightman_sum(dt, r, temperature, n, eps);  // bare sum
    double residual = 0.0;
    const Complex tail = image_tail(w, r, temperature, n, &residual);
    const Complex total = raw + tail;
    if (residual <= 1e-15 * (1.0 + std::abs(total)) || n >= kHardCap) {
      if (n >= kHardCap && residual > 1e-12 * (1.0 + std::abs(total))) {
        throw AccuracyError("thermal_wightman_adaptive: image sum not converged",
                            {-total / kFourPiSq, residual / kFourPiSq});
      }
      return -total / kFourPiSq;
    }
    n *= 2;
  }
}

Complex thermal_wightman_closed(double dt, double L, double temperature, double eps) {
  require_finite(dt, "thermal_wightman_closed");
  if (!(L > 0.0)) throw DomainError("thermal_wightman_closed: coincident detectors (L must be > 0)");
  if (!(temperature > 0.0)) throw DomainError("thermal_wightman_closed: temperature must be > 0");
  const double piT = kPi * temperature;
  const Complex arg1 = piT * Complex(L - dt, eps);
  const Complex arg2 = piT * Complex(L + dt, -eps);
  return temperature / (8.0 * kPi * L) * (ccoth(arg1) + ccoth(arg2));
}

Complex thermal_wightman_coincident(double dt, double temperature, double eps) {
  require_finite(dt, "thermal_wightman_coincident");
  if (!(temperature > 0.0)) throw DomainError("thermal_wightman_coincident: temperature must be > 0");
  const Complex s = std::sinh(kPi * temperature * Complex(dt, -eps));
  return -temperature * temperature / (4.0 * s * s);
}

Complex WightmanEvaluator::operator()(double dt, double r, double eps) const {
  switch (kind) {
    case WightmanKind::vacuum:
      return vacuum_wightman(dt, r, eps);
    case WightmanKind::thermal_closed:
      if (r < 1e-12) return thermal_wightman_coincident(dt, temperature, eps);
      return thermal_wightman_closed(dt, r, temperature, eps);
    case WightmanKind::thermal_sum:
      if (image_cutoff > 0) return thermal_wightman_sum(dt, r, temperature, image_cutoff, eps);
      return thermal_wightman_adaptive(dt, r, temperature, eps);
  }
  throw ContractError("WightmanEvaluator: unknown kind");
}

WightmanEvaluator WightmanEvaluator::vacuum(quad::RegulatorPolicy policy) {
  return {WightmanKind::vacuum, 0.0, std::move(policy), 0};
}

WightmanEvaluator WightmanEvaluator::thermal_closed(double temperature,
                                                    quad::RegulatorPolicy policy) {
  if (!(temperature > 0.0)) throw DomainError("WightmanEvaluator: temperature must be > 0");
  return {WightmanKind::thermal_closed, temperature, std::move(policy), 0};
}

WightmanEvaluator WightmanEvaluator::thermal_sum(double temperature, quad::RegulatorPolicy policy,
                                                 long image_cutoff) {
  if (!(temperature > 0.0)) throw DomainError("WightmanEvaluator: temperature must be > 0");
  if (image_cutoff < 0) throw ContractError("WightmanEvaluator: image_cutoff must be >= 0");
  return {WightmanKind::thermal_sum, temperature, std::move(policy), image_cutoff};
}

}  // namespace udw::wightman
