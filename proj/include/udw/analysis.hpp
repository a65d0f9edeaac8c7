#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udw/harvest.hpp"

namespace udw::analysis {

// Concurrence threshold below which harvesting "almost does not occur":
// under the combined quadrature error of the production evaluators, above
// accumulated rounding noise.
inline constexpr double kLmaxThreshold = 1e-8;

// Parameter sweep request.  axis selects which of (separation, rate) the grid
// runs over; the other is held at its fixed_* value.  rate is on the shared
// axis a*sigma = 2 pi T*sigma.
struct SweepSpec {
  harvest::ScenarioKind kind = harvest::ScenarioKind::vacuum_static;
  harvest::DetectorParams det;
  enum class Axis { separation, rate } axis = Axis::separation;
  std::vector<double> grid;  // strictly increasing
  double fixed_rate = 0.0;
  double fixed_separation = 1.0;
  double tol = 1e-6;
};

struct SweepRow {
  double axis_value = 0.0;
  double p = 0.0;
  double x_abs = 0.0;
  double concurrence = 0.0;
  double err = 0.0;  // +inf sentinel on per-point failure
};

struct RootResult {
  double value = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;
  int iterations = 0;
};

// Largest separation with concurrence above kLmaxThreshold * lambda^2.
// Bracket grown geometrically from L = 0.1, then bisected to tol_l.
// rate = 0 selects vacuum_static regardless of kind.
RootResult find_l_max(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double rate,
                      double tol_l = 1e-3, double tol = 1e-6);

// Critical separation below which parallel accelerated detectors harvest more
// than static ones in a bath at the matched Unruh temperature T = a/(2 pi).
// Absent when the accelerated concurrence never exceeds the thermal one.
std::optional<RootResult> find_l_crit(const harvest::DetectorParams& det, double a,
                                      double tol_l = 1e-3, double tol = 1e-6);

// One row per grid point; failures are recorded in-row (err = +inf) without
// aborting.  Output order equals grid order regardless of scheduling.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

struct Extremum {
  std::size_t index = 0;
  bool is_maximum = true;
};

// Interior extrema of a sampled series: discrete slope sign changes with both
// adjacent slopes above the noise floor.
std::vector<Extremum> detect_extrema(std::span<const std::pair<double, double>> series,
                                     double noise_floor = 0.0);

// Index-parallel helper with deterministic output ordering.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace udw::analysis
