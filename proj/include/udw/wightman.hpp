#pragma once

#include <complex>

#include "udw/quad.hpp"

namespace udw::wightman {

using Complex = std::complex<double>;

// Laboratory-frame event in sigma = 1 units.
struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double spatial_distance(const SpacetimePoint& p, const SpacetimePoint& q);

enum class TrajectoryKind {
  parallel_a,
  parallel_b,
  antiparallel_a,
  antiparallel_b,
  perpendicular_a,
  perpendicular_b,
  static_at_origin,
  static_at_l,
};

// Detector worldline parametrised by proper time.  Accelerated kinds follow
// the standard x-boost hyperbola; the B-partner placements keep the tau = 0
// laboratory separation equal to `separation`.
struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::static_at_origin;
  double accel = 0.0;       // a*sigma, > 0 for accelerated kinds
  double separation = 0.0;  // L/sigma

  SpacetimePoint point(double tau) const;
  double coordinate_time(double tau) const;
  double proper_time_at(double t) const;  // inverse of coordinate_time

  static Trajectory parallel_a(double a);
  static Trajectory parallel_b(double a, double L);
  static Trajectory antiparallel_a(double a);
  static Trajectory antiparallel_b(double a, double L);
  static Trajectory perpendicular_a(double a);
  static Trajectory perpendicular_b(double a, double L);
  static Trajectory static_at_origin();
  static Trajectory static_at_l(double L);
};

// W(x, x') for the massless vacuum:  -1/(4 pi^2 [(dt - i eps)^2 - r^2]),
// with dt the coordinate-time difference (first minus second argument).
Complex vacuum_wightman(double dt, double r, double eps);

// Single image term of the thermal sum, m in Z:
//   -1/(4 pi^2 [(dt - i m/T - i eps)^2 - r^2]).
Complex thermal_image_term(double dt, double r, double temperature, long m, double eps);

// Partial image sum over |m| <= n_max (raw, no tail correction).
Complex thermal_wightman_sum(double dt, double r, double temperature, long n_max, double eps);

// Converged image sum: exact partial sum plus an Euler-Maclaurin tail with
// closed-form integral, accurate to ~1e-15 relative.  r = 0 (coincident
// spatial points) is supported.
Complex thermal_wightman_adaptive(double dt, double r, double temperature, double eps);

// Closed form for static detectors at fixed spatial separation L > 0:
//   (T/(8 pi L)) { coth[pi T (L - dt + i eps)] + coth[pi T (L + dt - i eps)] }.
Complex thermal_wightman_closed(double dt, double L, double temperature, double eps);

// Coincident-point (r = 0) closed form of the same image sum:
//   -T^2 / (4 sinh^2[pi T (dt - i eps)]).
Complex thermal_wightman_coincident(double dt, double temperature, double eps);

enum class WightmanKind { vacuum, thermal_closed, thermal_sum };

// Two-point-function callback consumed by the generic engine.  thermal_closed
// is only valid when the spatial separation of the sampled points is the
// constant L of a static pair; thermal_sum works for any geometry.
struct WightmanEvaluator {
  WightmanKind kind = WightmanKind::vacuum;
  double temperature = 0.0;  // T*sigma, > 0 for thermal kinds
  quad::RegulatorPolicy regulator = quad::RegulatorPolicy::standard();
  long image_cutoff = 0;  // thermal_sum: 0 = adaptive, > 0 = fixed partial sum

  Complex operator()(double dt, double r, double eps) const;

  static WightmanEvaluator vacuum(quad::RegulatorPolicy policy = quad::RegulatorPolicy::standard());
  static WightmanEvaluator thermal_closed(double temperature,
                                          quad::RegulatorPolicy policy = quad::RegulatorPolicy::standard());
  static WightmanEvaluator thermal_sum(double temperature,
                                       quad::RegulatorPolicy policy = quad::RegulatorPolicy::standard(),
                                       long image_cutoff = 0);
};

}  // namespace udw::wightman
