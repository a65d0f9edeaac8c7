#pragma once

#include <complex>
#include <optional>

#include "udw/quad.hpp"
#include "udw/wightman.hpp"

namespace udw::harvest {

using Complex = std::complex<double>;

// Identical detector pair; all quantities in sigma = 1 units.
struct DetectorParams {
  double gap = 1.0;       // Omega*sigma, >= 0
  double coupling = 1.0;  // lambda, > 0
};

enum class ScenarioKind {
  parallel_acc,
  antiparallel_acc,
  perpendicular_acc,
  thermal_static,
  vacuum_static,
};

// rate is a*sigma for accelerated kinds and T*sigma for thermal_static
// (ignored for vacuum_static).  from_unruh_rate applies the Unruh map
// a*sigma = 2 pi T*sigma so thermal scenarios can be specified on the same
// axis as accelerations.
struct Scenario {
  ScenarioKind kind = ScenarioKind::vacuum_static;
  double rate = 0.0;
  double separation = 1.0;  // L/sigma

  static Scenario from_unruh_rate(ScenarioKind kind, double unruh_rate, double separation);
};

// gamma = Omega/(pi T_U), alpha = 1/(2 pi T_U sigma)^2 for the reduced
// transition-probability integrand.
struct ReducedIntegrandParams {
  double gamma = 0.0;
  double alpha = 0.0;

  static ReducedIntegrandParams from_rate(double gap, double rate_a_sigma);
};

struct ErrorBudget {
  double p_a = 0.0;
  double p_b = 0.0;
  double corr_c = 0.0;
  double corr_x = 0.0;
  double concurrence = 0.0;
};

struct HarvestOutcome {
  double p_a = 0.0;
  double p_b = 0.0;
  std::optional<Complex> corr_c;  // only the generic engine fills this
  Complex corr_x{0.0, 0.0};
  double concurrence = 0.0;
  ErrorBudget err;
};

struct RealResult {
  double value = 0.0;
  double abs_err = 0.0;
};

struct ComplexResult {
  Complex value{0.0, 0.0};
  double abs_err = 0.0;
};

// Transition probability of a single detector: closed vacuum term plus, for
// rate > 0, the reduced 1D integral.  rate = a*sigma; by the Unruh
// equivalence the same value serves a static detector in a bath at
// T*sigma = rate/(2 pi).  rate = 0 selects the closed vacuum term only.
double transition_probability(const DetectorParams& det, double rate, double tol = 1e-9);
RealResult transition_probability_result(const DetectorParams& det, double rate, double tol = 1e-9);

// Correlation term X for static detectors in the Minkowski vacuum (closed form).
Complex x_vacuum_static(const DetectorParams& det, double L);

// Correlation term X for static detectors in a thermal bath at T = T*sigma,
// with the s = L pole handled exactly by PV + delta.
Complex x_thermal(const DetectorParams& det, double temperature, double L, double tol = 1e-10);
ComplexResult x_thermal_result(const DetectorParams& det, double temperature, double L,
                               double tol = 1e-10);

// Correlation term X for parallel uniformly accelerated detectors, a = a*sigma.
// Inner poles handled by PV + delta at the analytically known roots.
Complex x_accelerated(const DetectorParams& det, double a, double L, double tol = 1e-10);
ComplexResult x_accelerated_result(const DetectorParams& det, double a, double L,
                                   double tol = 1e-10);

// Validator path: the same double integral evaluated at one fixed regulator
// epsilon (no PV decomposition); used to cross-check the prescription via
// eps-sequence extrapolation.
Complex x_accelerated_eps(const DetectorParams& det, double a, double L, double eps,
                          double tol = 1e-9);

// Concurrence at leading order: 2 max(0, |X| - sqrt(P_A P_B)).
double concurrence(double p_a, double p_b, double x_abs);

// Full scenario evaluation through the reduced evaluators, or through the
// generic engine for the antiparallel/perpendicular kinds.
HarvestOutcome evaluate_scenario(const DetectorParams& det, const Scenario& sc, double tol = 1e-6);

// Generic trajectory-driven engine: direct 2D quadrature of the P, C and X
// integrals with the regulator sequence of the evaluator extrapolated to
// eps -> 0.  This is the oracle path, not the production path.
HarvestOutcome generic_udw(const wightman::Trajectory& traj_a, const wightman::Trajectory& traj_b,
                           const wightman::WightmanEvaluator& w, const DetectorParams& det,
                           double tol = 1e-7);

// Just the transition probability of one detector through the same engine.
RealResult generic_transition_probability(const wightman::Trajectory& traj,
                                          const wightman::WightmanEvaluator& w,
                                          const DetectorParams& det, double tol = 1e-7);

// Just the correlation term X through the same engine.
ComplexResult generic_x(const wightman::Trajectory& traj_a, const wightman::Trajectory& traj_b,
                        const wightman::WightmanEvaluator& w, const DetectorParams& det,
                        double tol = 1e-7);

// Smallest supported separation; X diverges like 1/L below it.
inline constexpr double kMinSeparation = 1e-3;

}  // namespace udw::harvest
