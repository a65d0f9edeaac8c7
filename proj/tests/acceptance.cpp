// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code = number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "udw/analysis.hpp"
#include "udw/asymptotics.hpp"
#include "udw/cli.hpp"
#include "udw/harvest.hpp"
#include "udw/quad.hpp"
#include "udw/specfun.hpp"
#include "udw/wightman.hpp"

namespace hv = udw::harvest;
namespace wm = udw::wightman;
namespace an = udw::analysis;
namespace as = udw::asymptotics;
using Complex = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Summary {
  int failed = 0;
  std::vector<std::string> notes;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(Summary& s, int id, bool pass, const std::string& text) {
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", id, text.c_str());
  if (!pass) ++s.failed;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double closed_p(double gap) {
  return 1.0 / (4.0 * kPi) *
         (std::exp(-gap * gap) - udw::specfun::kSqrtPi * gap * udw::specfun::erfc(gap));
}

// ---------------------------------------------------------------------------

void criterion_1(Summary& s) {
  const auto t0 = Clock::now();
  const double a = 1.0;
  const double T = a / kTwoPi;
  double worst_p = 0.0, worst_x = 0.0, worst_xth = 0.0;
  for (double gap : {0.5, 1.0, 2.0}) {
    const hv::DetectorParams det{gap, 1.0};
    const double p9 = hv::transition_probability(det, a);
    const auto p_gen = hv::generic_transition_probability(
        wm::Trajectory::parallel_a(a), wm::WightmanEvaluator::vacuum(), det, 1e-7);
    worst_p = std::max(worst_p, rel(p_gen.value, p9));
    for (double L : {0.5, 1.0, 2.0}) {
      const Complex x10 = hv::x_accelerated(det, a, L);
      const auto x_gen = hv::generic_x(wm::Trajectory::parallel_a(a),
                                       wm::Trajectory::parallel_b(a, L),
                                       wm::WightmanEvaluator::vacuum(), det, 1e-7);
      worst_x = std::max(worst_x, rel(x_gen.value, x10));
      const Complex x14 = hv::x_thermal(det, T, L);
      const auto xth_gen = hv::generic_x(wm::Trajectory::static_at_origin(),
                                         wm::Trajectory::static_at_l(L),
                                         wm::WightmanEvaluator::thermal_closed(T), det, 1e-7);
      worst_xth = std::max(worst_xth, rel(xth_gen.value, x14));
    }
  }
  const double dt = seconds_since(t0);
  const bool pass = worst_p <= 1e-3 && worst_x <= 1e-3 && worst_xth <= 1e-3 && dt <= 180.0;
  std::ostringstream os;
  os << "oracle equivalence reduced vs generic over the 9-point grid "
     << "(worst rel: P " << worst_p << ", X_acc " << worst_x << ", X_th " << worst_xth << "; "
     << dt << " s <= 180 s)";
  report(s, 1, pass, os.str());
}

void criterion_2(Summary& s) {
  const double a = 1.0;
  double worst = 0.0;
  for (double gap : {0.5, 1.0, 2.0}) {  // P is L-independent: 3 values cover the grid
    const hv::DetectorParams det{gap, 1.0};
    const double p9 = hv::transition_probability(det, a, 1e-11);
    const auto p_th = hv::generic_transition_probability(
        wm::Trajectory::static_at_origin(),
        wm::WightmanEvaluator::thermal_sum(a / kTwoPi, udw::quad::RegulatorPolicy::fine()), det,
        1e-8);
    worst = std::max(worst, rel(p_th.value, p9));
  }
  std::ostringstream os;
  os << "Unruh single-detector equivalence, reduced response vs generic thermal response "
     << "(worst rel " << worst << " <= 1e-4)";
  report(s, 2, worst <= 1e-4, os.str());
}

void criterion_3(Summary& s) {
  double worst_p = 0.0;
  for (double gap : {0.5, 1.0, 2.0}) {
    const hv::DetectorParams det{gap, 1.0};
    worst_p = std::max(worst_p, rel(hv::transition_probability(det, 1e-3), closed_p(gap)));
  }
  double worst_w = 0.0;
  for (double dt : {0.0, 0.25, 0.5}) {
    for (double L : {1.0, 1.5, 2.5}) {
      const Complex th = wm::thermal_wightman_closed(dt, L, 1e-5, 1e-9);
      const Complex vac = wm::vacuum_wightman(dt, L, 1e-9);
      worst_w = std::max(worst_w, std::abs(th - vac) / std::abs(vac));
    }
  }
  double worst_sum = 0.0;
  {
    struct Pt {
      double dt, L, T;
    };
    for (const Pt& p : {Pt{0.4, 1.0, 0.2}, Pt{0.0, 2.0, 0.5}, Pt{3.0, 0.5, 0.1}}) {
      const Complex sum = wm::thermal_wightman_adaptive(p.dt, p.L, p.T, 1e-6);
      const Complex closed = wm::thermal_wightman_closed(p.dt, p.L, p.T, 1e-6);
      worst_sum = std::max(worst_sum, std::abs(sum - closed));
    }
  }
  const bool pass = worst_p <= 1e-4 && worst_w <= 1e-6 && worst_sum <= 1e-10;
  std::ostringstream os;
  os << "closed-form limits (rate->0 P rel " << worst_p << " <= 1e-4; T->0 Wightman rel "
     << worst_w << " <= 1e-6; image sum vs closed form " << worst_sum << " <= 1e-10)";
  report(s, 3, pass, os.str());
}

void criterion_4(Summary& s) {
  const hv::DetectorParams det1{1.0, 1.0};
  auto res_acc = [&](double rate) {
    return std::abs(hv::x_accelerated(det1, rate, 1.0, 1e-12) -
                    as::approx_x_small_rate(hv::ScenarioKind::parallel_acc, det1, rate, 1.0));
  };
  auto res_th = [&](double rate) {
    return std::abs(hv::x_thermal(det1, rate / kTwoPi, 1.0, 1e-12) -
                    as::approx_x_small_rate(hv::ScenarioKind::thermal_static, det1, rate, 1.0));
  };
  const double ratio_acc = res_acc(0.04) / res_acc(0.02);
  const double ratio_th = res_th(0.04) / res_th(0.02);
  const bool ok_15 = ratio_acc >= 12.0 && ratio_acc <= 20.0;
  const bool ok_16 = ratio_th >= 12.0 && ratio_th <= 20.0;
  // context: the imaginary part of the accelerated expansion is complete and
  // does scale as rate^4
  auto res_acc_im = [&](double rate) {
    return std::abs(hv::x_accelerated(det1, rate, 1.0, 1e-12).imag() -
                    as::approx_x_small_rate(hv::ScenarioKind::parallel_acc, det1, rate, 1.0).imag());
  };
  const double ratio_acc_im = res_acc_im(0.04) / res_acc_im(0.02);

  double worst_1718 = 0.0;
  for (double gap : {0.5, 1.0}) {
    const hv::DetectorParams det{gap, 1.0};
    for (double L : {0.05, 0.1}) {
      const double xa = std::abs(hv::x_accelerated(det, 0.05, L, 1e-11));
      const double aa = as::approx_x_small_rate_small_l(hv::ScenarioKind::parallel_acc, det, 0.05, L);
      worst_1718 = std::max(worst_1718, std::abs(xa - aa) / xa);
      const double xt = std::abs(hv::x_thermal(det, 0.05 / kTwoPi, L, 1e-12));
      const double at =
          as::approx_x_small_rate_small_l(hv::ScenarioKind::thermal_static, det, 0.05, L);
      worst_1718 = std::max(worst_1718, std::abs(xt - at) / xt);
    }
  }
  const bool ok_1718 = worst_1718 <= 5e-2;

  const double r19 =
      std::abs(hv::transition_probability(det1, kTwoPi * 0.1, 1e-12) - as::approx_p(det1, 0.1)) /
      std::abs(hv::transition_probability(det1, kTwoPi * 0.05, 1e-12) - as::approx_p(det1, 0.05));
  const bool ok_19 = r19 >= 10.0;

  auto fit_slope = [](auto&& value_at) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double L : {8.0, 10.0, 12.0, 14.0, 16.0}) {
      const double lx = std::log(L), ly = std::log(value_at(L));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const hv::DetectorParams det01{0.1, 1.0};
  const double s_acc =
      fit_slope([&](double L) { return std::abs(hv::x_accelerated(det01, 2.0, L, 1e-10)); });
  const double s_th =
      fit_slope([&](double L) { return std::abs(hv::x_thermal(det01, 2.0 / kTwoPi, L, 1e-11)); });
  const bool ok_slopes = s_acc > -2.6 && s_acc < -1.6 && s_th > -1.4 && s_th < -0.7;

  const bool pass = ok_15 && ok_16 && ok_1718 && ok_19 && ok_slopes;
  std::ostringstream os;
  os << "asymptotic regime checks (small-rate accelerated ratio " << ratio_acc
     << (ok_15 ? "" : " OUT OF [12,20]") << ", small-rate thermal ratio " << ratio_th
     << ", small-separation worst " << worst_1718 << " <= 0.05, small-temperature ratio "
     << r19 << " >= 10, slopes acc " << s_acc << " / th " << s_th << ")";
  if (!ok_15) {
    os << " [known limitation: the accelerated small-rate expansion carries only the "
          "imaginary O(rate^2) correction, so its full residual is O(rate^2); the "
          "imaginary-part residual ratio is "
       << ratio_acc_im << ", the expected fourth-order scaling of the term it does carry]";
  }
  report(s, 4, pass, os.str());
}

void criterion_5(Summary& s) {
  auto diff = [](double gap) {
    const hv::DetectorParams det{gap, 1.0};
    return std::abs(hv::x_accelerated(det, 0.05, 0.1, 1e-11)) -
           std::abs(hv::x_thermal(det, 0.05 / kTwoPi, 0.1, 1e-12));
  };
  const double lo = diff(0.6), hi = diff(0.8);
  const bool pass = lo < 0.0 && hi > 0.0;
  std::ostringstream os;
  os << "sign-flip zero of |X_acc|-|X_th| bracketed in [0.6, 0.8] (f(0.6) = " << lo
     << ", f(0.8) = " << hi << ", theory boundary 0.707)";
  report(s, 5, pass, os.str());
}

void criterion_6(Summary& s) {
  auto conc = [](double gap, hv::ScenarioKind kind, double rate, double L) {
    return hv::evaluate_scenario({gap, 1.0}, hv::Scenario::from_unruh_rate(kind, rate, L))
        .concurrence;
  };
  bool panel_b = true;
  for (double L = 0.25; L <= 1.501; L += 0.25) {
    panel_b = panel_b && conc(0.5, hv::ScenarioKind::thermal_static, 1.0, L) >
                             conc(0.5, hv::ScenarioKind::parallel_acc, 1.0, L);
  }
  bool panel_g = true;
  for (double L = 0.25; L <= 1.501; L += 0.25) {
    const double ca = conc(2.0, hv::ScenarioKind::parallel_acc, 0.5, L);
    const double ct = conc(2.0, hv::ScenarioKind::thermal_static, 0.5, L);
    if (ca > 0.0 || ct > 0.0) panel_g = panel_g && ca >= ct - 1e-10;
  }
  bool vac_dom = true;
  for (double gap : {0.5, 1.2, 2.0}) {
    for (double rate : {0.5, 1.0, 3.0}) {
      for (double L = 0.25; L <= 1.501; L += 0.25) {
        vac_dom = vac_dom && conc(gap, hv::ScenarioKind::vacuum_static, 0.0, L) >=
                                 conc(gap, hv::ScenarioKind::thermal_static, rate, L) - 1e-10;
      }
    }
  }
  const bool pass = panel_b && panel_g && vac_dom;
  std::ostringstream os;
  os << "figure-1 orderings (panel b thermal > accelerated: " << (panel_b ? "yes" : "NO")
     << "; panel g accelerated >= thermal: " << (panel_g ? "yes" : "NO")
     << "; vacuum >= thermal on all panels: " << (vac_dom ? "yes" : "NO") << ")";
  report(s, 6, pass, os.str());
}

void criterion_7(Summary& s) {
  // concurrence vs acceleration at (gap 2, L 0.5)
  std::vector<std::pair<double, double>> acc_series, th_series;
  double max_err = 0.0;
  for (double a = 0.1; a <= 3.001; a += 0.1) {
    const auto oa = hv::evaluate_scenario(
        {2.0, 1.0}, hv::Scenario::from_unruh_rate(hv::ScenarioKind::parallel_acc, a, 0.5));
    acc_series.emplace_back(a, oa.concurrence);
    max_err = std::max(max_err, oa.err.concurrence);
    const auto ot = hv::evaluate_scenario(
        {2.0, 1.0}, hv::Scenario::from_unruh_rate(hv::ScenarioKind::thermal_static, a, 0.5));
    th_series.emplace_back(a, ot.concurrence);
  }
  bool acc_bump = false;
  for (const auto& e : an::detect_extrema(acc_series, 2.0 * max_err)) {
    acc_bump = acc_bump || e.is_maximum;
  }
  bool th_monotone = true;
  for (std::size_t i = 1; i < th_series.size(); ++i) {
    th_monotone = th_monotone && th_series[i].second <= th_series[i - 1].second + 1e-7;
  }

  // L_max vs acceleration at gap 3
  std::vector<std::pair<double, double>> lmax_acc, lmax_th;
  for (double a = 0.2; a <= 4.001; a += 0.2) {
    lmax_acc.emplace_back(a,
                          an::find_l_max(hv::ScenarioKind::parallel_acc, {3.0, 1.0}, a).value);
    try {
      lmax_th.emplace_back(a,
                           an::find_l_max(hv::ScenarioKind::thermal_static, {3.0, 1.0}, a).value);
    } catch (const udw::DomainError&) {
      lmax_th.emplace_back(a, 0.0);  // thermal harvesting extinguished
    }
  }
  bool lmax_bump = false;
  for (const auto& e : an::detect_extrema(lmax_acc, 2e-3)) lmax_bump = lmax_bump || e.is_maximum;
  bool lmax_th_monotone = true;
  for (std::size_t i = 1; i < lmax_th.size(); ++i) {
    lmax_th_monotone = lmax_th_monotone && lmax_th[i].second <= lmax_th[i - 1].second + 2e-3;
  }

  const bool pass = acc_bump && th_monotone && lmax_bump && lmax_th_monotone;
  std::ostringstream os;
  os << "anti-Unruh signatures (concurrence-vs-a interior max: " << (acc_bump ? "yes" : "NO")
     << "; thermal counterpart monotone: " << (th_monotone ? "yes" : "NO")
     << "; L_max-vs-a interior max at gap 3: " << (lmax_bump ? "yes" : "NO")
     << "; thermal L_max monotone: " << (lmax_th_monotone ? "yes" : "NO") << ")";
  report(s, 7, pass, os.str());
}

void criterion_8(Summary& s) {
  const bool absent_small_gap = !an::find_l_crit({0.5, 1.0}, 0.5).has_value();
  bool present = true;
  for (double gap : {1.0, 1.2, 2.0}) {
    present = present && an::find_l_crit({gap, 1.0}, 0.5).has_value();
  }
  // figure-3 trend at gap 0.8: the curve decreases and terminates (hits zero)
  // once |X_th| exceeds |X_acc| at every separation; an absent crossing is
  // the curve at zero.
  bool decreasing = true;
  double prev = 1e300;
  std::ostringstream vals;
  for (double a : {1.0, 2.0, 3.0, 4.0}) {
    const auto r = an::find_l_crit({0.8, 1.0}, a);
    const double v = r ? r->value : 0.0;
    vals << ' ' << v;
    decreasing = decreasing && v <= prev + 2e-3;
    prev = v;
  }
  const bool pass = absent_small_gap && present && decreasing;
  std::ostringstream os;
  os << "L_crit gate (absent at gap 0.5: " << (absent_small_gap ? "yes" : "NO")
     << "; present at gaps {1.0, 1.2, 2.0}: " << (present ? "yes" : "NO")
     << "; nonincreasing in a at gap 0.8, values{" << vals.str()
     << " }: " << (decreasing ? "yes" : "NO") << ")";
  report(s, 8, pass, os.str());
}

void criterion_9(Summary& s) {
  namespace fs = std::filesystem;
  // single point timing
  auto t0 = Clock::now();
  const auto o = hv::evaluate_scenario(
      {1.0, 1.0}, hv::Scenario::from_unruh_rate(hv::ScenarioKind::parallel_acc, 1.0, 1.0), 1e-6);
  const double t_point = seconds_since(t0);
  (void)o;

  // figure-1 full sweep at 8 threads, twice, byte-identical
  const fs::path dir1 = fs::temp_directory_path() / "udw_acc_fig1_a";
  const fs::path dir2 = fs::temp_directory_path() / "udw_acc_fig1_b";
  udw::cli::RunConfig cfg;
  cfg.threads = 8;
  cfg.quad_tol = 1e-6;
  cfg.output_path = dir1.string();
  t0 = Clock::now();
  udw::cli::run_figure(1, cfg);
  const double t_fig = seconds_since(t0);
  cfg.output_path = dir2.string();
  udw::cli::run_figure(1, cfg);
  bool identical = true;
  for (char panel = 'a'; panel <= 'i'; ++panel) {
    const std::string name = std::string("fig1_") + panel + ".csv";
    std::ifstream f1(dir1 / name), f2(dir2 / name);
    std::ostringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    identical = identical && s1.str() == s2.str() && !s1.str().empty();
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  const bool pass = t_point <= 1.0 && t_fig <= 300.0 && identical;
  std::ostringstream os;
  os << "determinism and performance (single point " << t_point << " s <= 1 s; figure-1 sweep "
     << t_fig << " s <= 300 s at 8 threads; repeated runs byte-identical: "
     << (identical ? "yes" : "NO") << ")";
  report(s, 9, pass, os.str());
}

}  // namespace

int main() {
  Summary s;
  const auto t0 = Clock::now();
  criterion_1(s);
  criterion_2(s);
  criterion_3(s);
  criterion_4(s);
  criterion_5(s);
  criterion_6(s);
  criterion_7(s);
  criterion_8(s);
  criterion_9(s);
  std::printf("---\n%d of 9 criteria passed (total %.1f s)\n", 9 - s.failed,
              seconds_since(t0));
  return s.failed;
}
