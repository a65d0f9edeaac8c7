#include "udw/harvest.hpp"

#include <cmath>
#include <vector>

#include "udw/errors.hpp"
#include "udw/specfun.hpp"

namespace udw::harvest {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kSqrtPi = specfun::kSqrtPi;
constexpr double kMaxRate = 20.0;  // sinh overflow guard for the reduced integrands

void validate_detector(const DetectorParams& det) {
  if (!(det.gap >= 0.0) || !std::isfinite(det.gap)) {
    throw DomainError("DetectorParams: gap must be finite and >= 0");
  }
  if (!(det.coupling > 0.0) || !std::isfinite(det.coupling)) {
    throw DomainError("DetectorParams: coupling must be finite and > 0");
  }
}

void validate_separation(double L) {
  if (!(L >= kMinSeparation) || !std::isfinite(L)) {
    throw DomainError("separation must be finite and >= 1e-3 (X diverges like 1/L)");
  }
}

// (sinh^2 s - s^2)/(s^2 sinh^2 s) = 1/s^2 - csch^2(s), extended continuously
// to 1/3 at s = 0.  Series below s = 0.2, direct difference above.
double reduced_p_integrand_core(double s) {
  if (s < 0.2) {
    const double s2 = s * s;
    // 1/3 - s^2/15 + 2 s^4/189 - s^6/675 + 2 s^8/10395 - 1382 s^10/58046625
    return 1.0 / 3.0 +
           s2 * (-1.0 / 15.0 +
                 s2 * (2.0 / 189.0 +
                       s2 * (-1.0 / 675.0 +
                             s2 * (2.0 / 10395.0 - s2 * (1382.0 / 58046625.0)))));
  }
  if (s > 350.0) return 1.0 / (s * s);  // csch^2 underflows
  const double sh = std::sinh(s);
  return 1.0 / (s * s) - 1.0 / (sh * sh);
}

// coth for real argument, stable for large |y|.
double coth_stable(double y) {
  if (y < 0.0) return -coth_stable(-y);
  if (y > 19.0) return 1.0;
  const double e = std::exp(-2.0 * y);
  return (1.0 + e) / (1.0 - e);
}

// asinh that survives arguments near the double overflow limit.
double asinh_big(double s) {
  if (s > 1e8) return std::log(2.0 * s);
  return std::asinh(s);
}

struct XAccGeometry {
  double beta;  // pi T_U = a/2
  double b;     // beta * L
};

}  // namespace

Scenario Scenario::from_unruh_rate(ScenarioKind kind, double unruh_rate, double separation) {
  Scenario sc;
  sc.kind = kind;
  sc.separation = separation;
  sc.rate = (kind == ScenarioKind::thermal_static) ? unruh_rate / kTwoPi : unruh_rate;
  if (kind == ScenarioKind::vacuum_static) sc.rate = 0.0;
  return sc;
}

ReducedIntegrandParams ReducedIntegrandParams::from_rate(double gap, double rate_a_sigma) {
  if (!(rate_a_sigma > 0.0)) throw DomainError("ReducedIntegrandParams: rate must be > 0");
  // T_U = a/(2 pi):  gamma = Omega/(pi T_U) = 2 Omega/a,  alpha = 1/(a sigma)^2.
  return {2.0 * gap / rate_a_sigma, 1.0 / (rate_a_sigma * rate_a_sigma)};
}

RealResult transition_probability_result(const DetectorParams& det, double rate, double tol) {
  validate_detector(det);
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("transition_probability: rate must be >= 0");
  if (rate > kMaxRate) throw DomainError("transition_probability: rate above supported maximum 20");
  const double lam2 = det.coupling * det.coupling;
  const double om = det.gap;
  const double closed = lam2 / (4.0 * kPi) * (std::exp(-om * om) - kSqrtPi * om * specfun::erfc(om));
  if (rate == 0.0) return {closed, 0.0};

  const auto par = ReducedIntegrandParams::from_rate(om, rate);
  auto f = [&](double s) -> Complex {
    const double expo = par.alpha * s * s;
    if (expo > 745.0) return {0.0, 0.0};
    return {std::cos(par.gamma * s) * std::exp(-expo) * reduced_p_integrand_core(s), 0.0};
  };
  const quad::QuadResult integral = quad::integrate_semi_inf(f, 0.0, 1e-16, tol);
  const double pref = lam2 * rate / (4.0 * kPi * kSqrtPi);  // lambda^2 T_U sigma / (2 sqrt(pi))
  return {pref * integral.value.real() + closed, std::abs(pref) * integral.abs_err};
}

double transition_probability(const DetectorParams& det, double rate, double tol) {
  return transition_probability_result(det, rate, tol).value;
}

Complex x_vacuum_static(const DetectorParams& det, double L) {
  validate_detector(det);
  validate_separation(L);
  const double lam2 = det.coupling * det.coupling;
  const Complex eis = specfun::erfc_imag_scaled(0.5 * L);
  return Complex(0.0, -1.0) * lam2 * std::exp(-det.gap * det.gap) * eis / (4.0 * L * kSqrtPi);
}

ComplexResult x_thermal_result(const DetectorParams& det, double temperature, double L, double tol) {
  validate_detector(det);
  validate_separation(L);
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("x_thermal: temperature must be > 0");
  }
  if (kTwoPi * temperature > kMaxRate) throw DomainError("x_thermal: temperature above supported maximum");
  const double lam2 = det.coupling * det.coupling;
  const double piT = kPi * temperature;
  const double S = quad::WindowSpec::gauss_quarter().truncation_radius;

  auto window = [](double s) { return std::exp(-0.25 * s * s); };
  auto coth_term = [&](double s) -> Complex { return {window(s) * coth_stable(piT * (L + s)), 0.0}; };
  quad::QuadResult i1 = quad::integrate_1d(coth_term, 0.0, S, 1e-14, tol);

  quad::QuadResult i2;
  if (L < S - 1e-6) {
    // PV + delta through the simple pole at s = L of cosh/sinh(piT(L-s)).
    auto g = [&](double s) -> Complex { return {window(s) * std::cosh(piT * (L - s)), 0.0}; };
    auto u = [&](double s) { return std::sinh(piT * (L - s)); };
    auto du = [&](double s) { return -piT * std::cosh(piT * (L - s)); };
    i2 = quad::integrate_pv_delta(g, u, du, {L}, 0.0, S, 1e-14, tol);
  } else {
    auto reg = [&](double s) -> Complex { return {window(s) * coth_stable(piT * (L - s)), 0.0}; };
    i2 = quad::integrate_1d(reg, 0.0, S, 1e-14, tol);
  }

  const double pref = -lam2 * std::exp(-det.gap * det.gap) * temperature / (4.0 * kSqrtPi * L);
  return {pref * (i1.value + i2.value), std::abs(pref) * (i1.abs_err + i2.abs_err)};
}

Complex x_thermal(const DetectorParams& det, double temperature, double L, double tol) {
  return x_thermal_result(det, temperature, L, tol).value;
}

ComplexResult x_accelerated_result(const DetectorParams& det, double a, double L, double tol) {
  validate_detector(det);
  validate_separation(L);
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("x_accelerated: acceleration must be > 0");
  if (a > kMaxRate) throw DomainError("x_accelerated: acceleration above supported maximum 20");
  const double lam2 = det.coupling * det.coupling;
  const double t_u = a / kTwoPi;
  const XAccGeometry geo{0.5 * a, 0.5 * a * L};
  const double R = quad::WindowSpec::gauss_quarter().truncation_radius;
  const double om = det.gap;

  long inner_evals = 0;
  double inner_err_max = 0.0;
  const double inner_rel = 0.2 * tol;

  auto inner = [&](double xt) -> Complex {
    auto g = [](double yt) { return std::exp(-0.25 * yt * yt); };
    Complex total{0.0, 0.0};
    // Term sign = +1: u = b^2 + 2 b sinh(beta xt) S - S^2 with S = sinh(beta y)
    // factors exactly as -(S - p)(S + q), p = b e^{beta xt}, q = b e^{-beta xt};
    // sign = -1 swaps p and q.  The factored form stays fully accurate
    // arbitrarily close to the root, where the expanded quadratic cancels.
    for (int sign : {+1, -1}) {
      const double p = geo.b * std::exp(sign * geo.beta * xt);
      const double q = geo.b * std::exp(-sign * geo.beta * xt);
      auto u = [&](double yt) {
        const double s = std::sinh(geo.beta * yt);
        return -(s - p) * (s + q);
      };
      auto du = [&](double yt) {
        const double s = std::sinh(geo.beta * yt);
        const double c = std::cosh(geo.beta * yt);
        return -geo.beta * c * (2.0 * s + q - p);
      };
      if (p < 1e-300) continue;  // PV and delta both bounded by ~log(1/p)/q -> 0
      const double root = asinh_big(p) / geo.beta;
      quad::QuadResult r;
      try {
        if (root < R - 1e-12) {
          r = quad::integrate_pv_delta(g, u, du, {root}, 0.0, R, 1e-13, inner_rel);
        } else {
          auto reg = [&](double yt) -> Complex { return {g(yt) / u(yt), 0.0}; };
          r = quad::integrate_1d(reg, 0.0, R, 1e-13, inner_rel);
        }
      } catch (const AccuracyError& e) {
        // Slices that bottom out on roundoff noise before reaching the
        // relative target are accepted as long as the leftover error is
        // negligible, absolutely or against the slice's own magnitude.
        if (e.best().abs_err > 1e-6 * std::max(1.0, std::abs(e.best().value))) throw;
        r = {e.best().value, e.best().abs_err, 0};
      }
      total += r.value;
      inner_evals += r.evaluations;
      inner_err_max = std::max(inner_err_max, r.abs_err);
    }
    const double w = std::exp(-0.25 * xt * xt);
    return w * Complex(std::cos(om * xt), -std::sin(om * xt)) * total;
  };

  quad::QuadResult outer = quad::integrate_1d(inner, -R, R, 1e-13, tol);
  const double pref = -lam2 * t_u * t_u / 8.0;
  const double err = std::abs(pref) * (outer.abs_err + 2.0 * R * inner_err_max);
  quad::QuadResult result{pref * outer.value, err, outer.evaluations + inner_evals};
  return {result.value, result.abs_err};
}

Complex x_accelerated(const DetectorParams& det, double a, double L, double tol) {
  return x_accelerated_result(det, a, L, tol).value;
}

Complex x_accelerated_eps(const DetectorParams& det, double a, double L, double eps, double tol) {
  validate_detector(det);
  validate_separation(L);
  if (!(a > 0.0)) throw DomainError("x_accelerated_eps: acceleration must be > 0");
  if (!(eps > 0.0)) throw DomainError("x_accelerated_eps: eps must be > 0");
  const double lam2 = det.coupling * det.coupling;
  const double t_u = a / kTwoPi;
  const double beta = 0.5 * a;
  const double b = beta * L;
  const double R = quad::WindowSpec::gauss_quarter().truncation_radius;
  const double om = det.gap;

  auto integrand = [&](double xt, double yt) -> Complex {
    const double s = std::sinh(beta * yt);
    const double p = b * std::exp(beta * xt);
    const double q = b * std::exp(-beta * xt);
    const double u1 = -(s - p) * (s + q);
    const double u2 = -(s - q) * (s + p);
    const Complex f = 1.0 / Complex(u1, -eps) + 1.0 / Complex(u2, -eps);
    const double w = std::exp(-0.25 * (xt * xt + yt * yt));
    return w * Complex(std::cos(om * xt), -std::sin(om * xt)) * f;
  };
  quad::QuadResult q = quad::integrate_2d(integrand, -R, R, 0.0, R, 1e-13, tol);
  return -lam2 * t_u * t_u / 8.0 * q.value;
}

double concurrence(double p_a, double p_b, double x_abs) {
  if (!(p_a >= 0.0) || !(p_b >= 0.0) || !(x_abs >= 0.0)) {
    throw DomainError("concurrence: inputs must be >= 0");
  }
  return 2.0 * std::max(0.0, x_abs - std::sqrt(p_a * p_b));
}

namespace {

// One 2D quadrature of a chi chi' e^{-i Omega (...)} W kernel at fixed eps.
// type P/C: phase e^{-i Omega (tau - tau')}, no time ordering.
// type X:   phase e^{-i Omega (tau + tau')}, theta-ordered kernel split at
//           the proper time where the coordinate times coincide.
enum class KernelType { transition, cross, exchange };

Complex engine_integral(const wightman::Trajectory& ta, const wightman::Trajectory& tb,
                        const wightman::WightmanEvaluator& w, double gap, double eps,
                        KernelType type, double tol, double* err_out, long* evals_out) {
  const double R = quad::WindowSpec::gauss_unit().truncation_radius;
  long inner_evals = 0;
  double inner_err_max = 0.0;
  const double inner_rel = 0.25 * tol;

  auto chi = [](double tau) { return std::exp(-0.5 * tau * tau); };
  auto phase = [](double ang) { return Complex(std::cos(ang), std::sin(ang)); };  // e^{i ang}

  // Inner slices in dead window regions may bottom out on roundoff noise;
  // accept them when the leftover absolute error is negligible.
  auto inner_quad = [&](auto& fn, double lo, double hi) -> quad::QuadResult {
    try {
      return quad::integrate_1d(fn, lo, hi, 1e-16, inner_rel);
    } catch (const AccuracyError& e) {
      if (e.best().abs_err > 1e-6 * std::max(1.0, std::abs(e.best().value))) throw;
      return {e.best().value, e.best().abs_err, 0};
    }
  };

  auto outer_fn = [&](double tau) -> Complex {
    const wightman::SpacetimePoint pa = ta.point(tau);
    Complex acc{0.0, 0.0};
    if (type != KernelType::exchange) {
      // e^{-i Omega (tau - tau')}: factor e^{+i Omega tau'} here.
      auto fy = [&](double taup) -> Complex {
        const wightman::SpacetimePoint pb = tb.point(taup);
        const double r = wightman::spatial_distance(pa, pb);
        const Complex wv = w(pa.t - pb.t, r, eps);
        return chi(taup) * phase(gap * taup) * wv;
      };
      quad::QuadResult ri = inner_quad(fy, -R, R);
      inner_evals += ri.evaluations;
      inner_err_max = std::max(inner_err_max, ri.abs_err);
      acc = ri.value;
    } else {
      // e^{-i Omega (tau + tau')} with theta ordering:
      // theta(t' - t) W(x_A(t), x_B(t')) + theta(t - t') W(x_B(t'), x_A(t)),
      // split at tau'* with t_B(tau'*) = t_A(tau).
      double split = tb.proper_time_at(pa.t);
      split = std::clamp(split, -R, R);
      auto late = [&](double taup) -> Complex {  // t' > t
        const wightman::SpacetimePoint pb = tb.point(taup);
        const double r = wightman::spatial_distance(pa, pb);
        return chi(taup) * phase(-gap * taup) * w(pa.t - pb.t, r, eps);
      };
      auto early = [&](double taup) -> Complex {  // t' < t
        const wightman::SpacetimePoint pb = tb.point(taup);
        const double r = wightman::spatial_distance(pa, pb);
        return chi(taup) * phase(-gap * taup) * w(pb.t - pa.t, r, eps);
      };
      if (split > -R) {
        quad::QuadResult r1 = inner_quad(early, -R, split);
        inner_evals += r1.evaluations;
        inner_err_max = std::max(inner_err_max, r1.abs_err);
        acc += r1.value;
      }
      if (split < R) {
        quad::QuadResult r2 = inner_quad(late, split, R);
        inner_evals += r2.evaluations;
        inner_err_max = std::max(inner_err_max, r2.abs_err);
        acc += r2.value;
      }
    }
    return chi(tau) * phase(-gap * tau) * acc;  // e^{-i Omega tau} both kernel types
  };

  quad::QuadResult outer = quad::integrate_1d(outer_fn, -R, R, 1e-16, tol);
  if (err_out) *err_out = outer.abs_err + 2.0 * R * inner_err_max;
  if (evals_out) *evals_out = outer.evaluations + inner_evals;
  return outer.value;
}

}  // namespace

HarvestOutcome generic_udw(const wightman::Trajectory& traj_a, const wightman::Trajectory& traj_b,
                           const wightman::WightmanEvaluator& w, const DetectorParams& det,
                           double tol) {
  validate_detector(det);
  const auto& eps_seq = w.regulator.eps_sequence;
  if (eps_seq.size() < 2) throw ContractError("generic_udw: regulator needs >= 2 eps samples");
  const double lam2 = det.coupling * det.coupling;

  std::vector<std::pair<double, Complex>> pa_s, pb_s, c_s, x_s;
  double quad_err_pa = 0.0, quad_err_pb = 0.0, quad_err_c = 0.0, quad_err_x = 0.0;
  for (double eps : eps_seq) {
    double e1, e2, e3, e4;
    const Complex pa = engine_integral(traj_a, traj_a, w, det.gap, eps, KernelType::transition,
                                       tol, &e1, nullptr);
    const Complex pb = engine_integral(traj_b, traj_b, w, det.gap, eps, KernelType::transition,
                                       tol, &e2, nullptr);
    const Complex c = engine_integral(traj_a, traj_b, w, det.gap, eps, KernelType::cross,
                                      tol, &e3, nullptr);
    const Complex x = engine_integral(traj_a, traj_b, w, det.gap, eps, KernelType::exchange,
                                      tol, &e4, nullptr);
    pa_s.emplace_back(eps, pa);
    pb_s.emplace_back(eps, pb);
    c_s.emplace_back(eps, c);
    x_s.emplace_back(eps, x);
    quad_err_pa = std::max(quad_err_pa, e1);
    quad_err_pb = std::max(quad_err_pb, e2);
    quad_err_c = std::max(quad_err_c, e3);
    quad_err_x = std::max(quad_err_x, e4);
  }
  const int order = w.regulator.extrapolation_order;
  const auto [pa0, pa_err] = quad::extrapolate_eps(pa_s, order);
  const auto [pb0, pb_err] = quad::extrapolate_eps(pb_s, order);
  const auto [c0, c_err] = quad::extrapolate_eps(c_s, order);
  const auto [x0, x_err] = quad::extrapolate_eps(x_s, order);

  HarvestOutcome out;
  out.p_a = lam2 * pa0.real();
  out.p_b = lam2 * pb0.real();
  out.corr_c = lam2 * c0;
  out.corr_x = -lam2 * x0;
  out.err.p_a = lam2 * (pa_err + quad_err_pa + std::abs(pa0.imag()));
  out.err.p_b = lam2 * (pb_err + quad_err_pb + std::abs(pb0.imag()));
  out.err.corr_c = lam2 * (c_err + quad_err_c);
  out.err.corr_x = lam2 * (x_err + quad_err_x);
  const double pa_c = std::max(0.0, out.p_a);
  const double pb_c = std::max(0.0, out.p_b);
  out.concurrence = concurrence(pa_c, pb_c, std::abs(out.corr_x));
  const double geo = std::sqrt(pa_c * pb_c);
  const double dgeo = (geo > 0.0)
                          ? 0.5 * (out.err.p_a * std::sqrt(pb_c / pa_c) + out.err.p_b * std::sqrt(pa_c / pb_c))
                          : 0.5 * (out.err.p_a + out.err.p_b);
  out.err.concurrence = 2.0 * (out.err.corr_x + dgeo);
  return out;
}

RealResult generic_transition_probability(const wightman::Trajectory& traj,
                                          const wightman::WightmanEvaluator& w,
                                          const DetectorParams& det, double tol) {
  validate_detector(det);
  const auto& eps_seq = w.regulator.eps_sequence;
  if (eps_seq.size() < 2) throw ContractError("generic engine: regulator needs >= 2 eps samples");
  std::vector<std::pair<double, Complex>> samples;
  double quad_err = 0.0;
  for (double eps : eps_seq) {
    double e = 0.0;
    samples.emplace_back(eps, engine_integral(traj, traj, w, det.gap, eps,
                                              KernelType::transition, tol, &e, nullptr));
    quad_err = std::max(quad_err, e);
  }
  const auto [p0, p_err] = quad::extrapolate_eps(samples, w.regulator.extrapolation_order);
  const double lam2 = det.coupling * det.coupling;
  return {lam2 * p0.real(), lam2 * (p_err + quad_err + std::abs(p0.imag()))};
}

ComplexResult generic_x(const wightman::Trajectory& traj_a, const wightman::Trajectory& traj_b,
                        const wightman::WightmanEvaluator& w, const DetectorParams& det,
                        double tol) {
  validate_detector(det);
  const auto& eps_seq = w.regulator.eps_sequence;
  if (eps_seq.size() < 2) throw ContractError("generic engine: regulator needs >= 2 eps samples");
  std::vector<std::pair<double, Complex>> samples;
  double quad_err = 0.0;
  for (double eps : eps_seq) {
    double e = 0.0;
    samples.emplace_back(eps, engine_integral(traj_a, traj_b, w, det.gap, eps,
                                              KernelType::exchange, tol, &e, nullptr));
    quad_err = std::max(quad_err, e);
  }
  const auto [x0, x_err] = quad::extrapolate_eps(samples, w.regulator.extrapolation_order);
  const double lam2 = det.coupling * det.coupling;
  return {-lam2 * x0, lam2 * (x_err + quad_err)};
}

HarvestOutcome evaluate_scenario(const DetectorParams& det, const Scenario& sc, double tol) {
  validate_detector(det);
  validate_separation(sc.separation);
  HarvestOutcome out;
  switch (sc.kind) {
    case ScenarioKind::vacuum_static: {
      const RealResult p = transition_probability_result(det, 0.0, tol * 1e-3);
      const Complex x = x_vacuum_static(det, sc.separation);
      out.p_a = out.p_b = p.value;
      out.corr_x = x;
      out.err.p_a = out.err.p_b = p.abs_err;
      out.err.corr_x = 1e-15 * std::abs(x);
      break;
    }
    case ScenarioKind::thermal_static: {
      if (!(sc.rate > 0.0)) throw DomainError("thermal_static: rate (T*sigma) must be > 0");
      const RealResult p = transition_probability_result(det, kTwoPi * sc.rate, tol * 1e-3);
      const ComplexResult x = x_thermal_result(det, sc.rate, sc.separation, tol * 1e-3);
      out.p_a = out.p_b = p.value;
      out.corr_x = x.value;
      out.err.p_a = out.err.p_b = p.abs_err;
      out.err.corr_x = x.abs_err;
      break;
    }
    case ScenarioKind::parallel_acc: {
      if (!(sc.rate > 0.0)) throw DomainError("parallel_acc: rate (a*sigma) must be > 0");
      const RealResult p = transition_probability_result(det, sc.rate, tol * 1e-3);
      const ComplexResult x = x_accelerated_result(det, sc.rate, sc.separation, tol * 1e-3);
      out.p_a = out.p_b = p.value;
      out.corr_x = x.value;
      out.err.p_a = out.err.p_b = p.abs_err;
      out.err.corr_x = x.abs_err;
      break;
    }
    case ScenarioKind::antiparallel_acc:
    case ScenarioKind::perpendicular_acc: {
      if (!(sc.rate > 0.0)) throw DomainError("accelerated scenario: rate (a*sigma) must be > 0");
      const bool anti = sc.kind == ScenarioKind::antiparallel_acc;
      const wightman::Trajectory ta = anti ? wightman::Trajectory::antiparallel_a(sc.rate)
                                           : wightman::Trajectory::perpendicular_a(sc.rate);
      const wightman::Trajectory tb = anti
                                          ? wightman::Trajectory::antiparallel_b(sc.rate, sc.separation)
                                          : wightman::Trajectory::perpendicular_b(sc.rate, sc.separation);
      return generic_udw(ta, tb, wightman::WightmanEvaluator::vacuum(), det, tol);
    }
  }
  const double pa_c = std::max(0.0, out.p_a);
  out.concurrence = concurrence(pa_c, pa_c, std::abs(out.corr_x));
  out.err.concurrence = 2.0 * (out.err.corr_x + out.err.p_a);
  return out;
}

}  // namespace udw::harvest
