#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "udw/errors.hpp"

namespace udw::quad {

using Complex = std::complex<double>;

struct QuadResult {
  Complex value{0.0, 0.0};
  double abs_err = 0.0;
  long evaluations = 0;
};

// Houses the regulator epsilon of the i-epsilon prescription: the sequence of
// finite regulators evaluated before polynomial extrapolation to eps -> 0.
struct RegulatorPolicy {
  std::vector<double> eps_sequence;  // strictly descending, all > 0
  int extrapolation_order = 2;

  static RegulatorPolicy standard() { return {{1e-2, 5e-3, 2.5e-3, 1.25e-3}, 2}; }
  static RegulatorPolicy fine() { return {{5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4}, 3}; }
};

// Truncation window for Gaussian-damped integrands.  The defaults keep the
// neglected tail mass below ~2e-22.
struct WindowSpec {
  double truncation_radius;
  double tol;

  // window e^{-x^2/4} (sigma = 1): radius 10*sqrt(2)
  static WindowSpec gauss_quarter() { return {14.142135623730951, 1e-21}; }
  // window e^{-x^2}: radius 10
  static WindowSpec gauss_unit() { return {10.0, 1e-21}; }
};

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule (QUADPACK).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double err;
  double resabs;  // integral of |f|, the roundoff scale of this panel
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

template <class F>
Panel gk15(F& f, double a, double b, long& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex f0 = f(mid);
  Complex k = kWgk[7] * f0;
  Complex g = kWg[3] * f0;
  double resabs = kWgk[7] * std::abs(f0);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const Complex fp = f(mid + dx);
    const Complex fm = f(mid - dx);
    const Complex fi = fp + fm;
    k += kWgk[i] * fi;
    resabs += kWgk[i] * (std::abs(fp) + std::abs(fm));
    if (i % 2 == 1) g += kWg[i / 2] * fi;
  }
  evals += 15;
  k *= half;
  g *= half;
  resabs *= half;
  return {a, b, k, std::abs(k - g), resabs};
}

inline bool splittable(double a, double b) {
  return (b - a) > 8.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(a) + std::abs(b) + 1.0);
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature of a complex-valued integrand on
// [a, b].  Stops once the accumulated error estimate drops below
// max(abs_tol, rel_tol * |I|).  Throws AccuracyError carrying the best
// estimate if the panel budget is exhausted while still far from tolerance.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, double abs_tol,
                        double rel_tol = 0.0, int max_panels = 20000) {
  if (!(a < b)) {
    if (a == b) return {Complex{0.0, 0.0}, 0.0, 0};
    throw ContractError("integrate_1d: requires a < b");
  }
  long evals = 0;
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> heap;
  detail::Panel p0 = detail::gk15(f, a, b, evals);
  Complex total = p0.value;
  double err = p0.err;
  double resabs = p0.resabs;
  heap.push(p0);
  int panels = 1;
  // The achievable floor is machine epsilon times the integral of |f|.
  auto target = [&] {
    return std::max({abs_tol, rel_tol * std::abs(total), 100.0 * 2.2e-16 * resabs});
  };
  while (err > target() && panels < max_panels) {
    detail::Panel worst = heap.top();
    if (!detail::splittable(worst.a, worst.b)) break;  // roundoff floor reached
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left = detail::gk15(f, worst.a, mid, evals);
    detail::Panel right = detail::gk15(f, mid, worst.b, evals);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (err > 10.0 * target()) {
    throw AccuracyError("integrate_1d: tolerance not reached", {total, err});
  }
  return {total, err, evals};
}

// Semi-infinite range [a, inf) mapped to [0, 1) via x = a + t/(1-t).
// The integrand must return exact zero once its own window has decayed.
template <class F>
QuadResult integrate_semi_inf(F&& f, double a, double abs_tol,
                              double rel_tol = 0.0, int max_panels = 20000) {
  auto mapped = [&](double t) -> Complex {
    const double om = 1.0 - t;
    const double x = a + t / om;
    if (!std::isfinite(x)) return {0.0, 0.0};
    const Complex v = f(x);
    return v / (om * om);
  };
  return integrate_1d(mapped, 0.0, 1.0, abs_tol, rel_tol, max_panels);
}

// Iterated 2D quadrature over [ax,bx] x [ay,by].  The inner (y) integral runs
// at a tolerance scaled so its accumulated contribution stays below the outer
// target.
template <class F2>
QuadResult integrate_2d(F2&& f, double ax, double bx, double ay, double by,
                        double abs_tol, double rel_tol = 0.0,
                        int max_panels = 20000) {
  long inner_evals = 0;
  double inner_err_max = 0.0;
  const double inner_abs = 0.25 * abs_tol / std::max(1.0, bx - ax);
  const double inner_rel = 0.5 * rel_tol;
  auto outer = [&](double x) -> Complex {
    auto fy = [&](double y) { return f(x, y); };
    QuadResult r = integrate_1d(fy, ay, by, inner_abs, inner_rel, max_panels);
    inner_evals += r.evaluations;
    inner_err_max = std::max(inner_err_max, r.abs_err);
    return r.value;
  };
  QuadResult out = integrate_1d(outer, ax, bx, 0.5 * abs_tol, rel_tol, max_panels);
  out.abs_err += (bx - ax) * inner_err_max;
  out.evaluations += inner_evals;
  return out;
}

template <class F2>
QuadResult integrate_2d(F2&& f, const WindowSpec& window, double abs_tol,
                        double rel_tol = 0.0, int max_panels = 20000) {
  const double r = window.truncation_radius;
  return integrate_2d(std::forward<F2>(f), -r, r, -r, r, abs_tol, rel_tol, max_panels);
}

namespace detail {

// Numerical derivative for the PV overload without an analytic one.
template <class U>
double stencil_derivative(U& u, double x) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (-u(x + 2 * h) + 8.0 * u(x + h) - 8.0 * u(x - h) + u(x - 2 * h)) / (12.0 * h);
}

}  // namespace detail

// Cauchy principal value of int_a^b g(s)/u(s) ds through the simple zeros
// u_roots of u, plus the i*pi sum of delta contributions:
//
//   lim_{eps->0+} int g(s)/(u(s) - i eps) ds
//     = PV int g/u + i pi sum_k g(s_k)/|u'(s_k)|.
//
// Each root is excised by a symmetric window where the antisymmetrised pair
// phi(h) = g(s+h)/u(s+h) + g(s-h)/u(s-h) is integrated instead; phi extends
// smoothly through h = 0, so ordinary adaptive panels converge.
template <class G, class U, class DU>
QuadResult integrate_pv_delta(G&& g, U&& u, DU&& du,
                              const std::vector<double>& u_roots, double a,
                              double b, double abs_tol, double rel_tol = 0.0,
                              int max_panels = 20000) {
  if (!(a < b)) throw ContractError("integrate_pv_delta: requires a < b");
  std::vector<double> roots = u_roots;
  std::sort(roots.begin(), roots.end());
  for (double s : roots) {
    if (!(s > a && s < b)) throw ContractError("integrate_pv_delta: root not inside (a, b)");
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i] - roots[i - 1] <= 10.0 * abs_tol) {
      throw ContractError("integrate_pv_delta: roots closer than 10*tol");
    }
  }

  QuadResult out;
  Complex delta_sum{0.0, 0.0};
  std::vector<std::pair<double, double>> windows;  // (root, half width)
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double s = roots[i];
    const double slope = du(s);
    if (std::abs(slope) < 1e-10) {
      throw DegeneracyError("integrate_pv_delta: |u'| below 1e-10 at a root");
    }
    double avail = std::min(s - a, b - s);
    if (i > 0) avail = std::min(avail, 0.5 * (s - roots[i - 1]));
    if (i + 1 < roots.size()) avail = std::min(avail, 0.5 * (roots[i + 1] - s));
    const double w = std::min(0.9 * avail, 0.5);
    windows.emplace_back(s, w);
    delta_sum += Complex(g(s)) / std::abs(slope);
  }

  // Regular segments between the excision windows.
  double cursor = a;
  auto add_regular = [&](double lo, double hi) {
    if (hi - lo < 4e-16 * (std::abs(lo) + std::abs(hi) + 1.0)) return;
    auto integrand = [&](double s) -> Complex { return Complex(g(s)) / u(s); };
    QuadResult r = integrate_1d(integrand, lo, hi, abs_tol, rel_tol, max_panels);
    out.value += r.value;
    out.abs_err += r.abs_err;
    out.evaluations += r.evaluations;
  };
  for (const auto& [s, w] : windows) {
    add_regular(cursor, s - w);
    if (w > 1e-300) {
      auto phi = [&](double h) -> Complex {
        return Complex(g(s + h)) / u(s + h) + Complex(g(s - h)) / u(s - h);
      };
      // phi is even and smooth through h = 0 analytically, but evaluating
      // u(s +- h) loses all digits to cancellation as h -> 0.  Below
      // h0 = 1e-3 w the contribution is modelled by the even quadratic
      // through phi(h0/2), phi(h0):  int_0^h0 phi = h0 (8 phi(h0/2) +
      // phi(h0))/9 + O(h0^5).
      const double h0 = 1e-3 * w;
      const Complex p_half = phi(0.5 * h0);
      const Complex p_full = phi(h0);
      out.value += h0 * (8.0 * p_half + p_full) / 9.0;
      out.abs_err += 0.1 * h0 * std::abs(p_full - p_half);
      out.evaluations += 4;
      QuadResult r = integrate_1d(phi, h0, w, abs_tol, rel_tol, max_panels);
      out.value += r.value;
      out.abs_err += r.abs_err;
      out.evaluations += r.evaluations;
    }
    cursor = s + w;
  }
  add_regular(cursor, b);

  constexpr double kPi = 3.14159265358979323846;
  out.value += Complex(0.0, kPi) * delta_sum;
  return out;
}

template <class G, class U>
QuadResult integrate_pv_delta(G&& g, U&& u, const std::vector<double>& u_roots,
                              double a, double b, double abs_tol,
                              double rel_tol = 0.0, int max_panels = 20000) {
  auto du = [&](double s) { return detail::stencil_derivative(u, s); };
  return integrate_pv_delta(std::forward<G>(g), std::forward<U>(u), du, u_roots,
                            a, b, abs_tol, rel_tol, max_panels);
}

// Polynomial extrapolation of samples (eps_i, I(eps_i)) to eps = 0.
// Sliding Neville windows of the given order; the discrepancy between the
// last two extrapolants serves as the error proxy.
std::pair<Complex, double> extrapolate_eps(
    std::span<const std::pair<double, Complex>> samples, int order);

// Full-order convenience overload (order = samples.size() - 1).
std::pair<Complex, double> extrapolate_eps(
    std::span<const std::pair<double, Complex>> samples);

}  // namespace udw::quad
