#include "udw/analysis.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "udw/errors.hpp"

namespace udw::analysis {

namespace {

double concurrence_at(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double rate,
                      double L, double tol) {
  const harvest::Scenario sc = harvest::Scenario::from_unruh_rate(kind, rate, L);
  return harvest::evaluate_scenario(det, sc, tol).concurrence;
}

}  // namespace

RootResult find_l_max(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double rate,
                      double tol_l, double tol) {
  if (rate == 0.0) kind = harvest::ScenarioKind::vacuum_static;
  const double threshold = kLmaxThreshold * det.coupling * det.coupling;
  auto f = [&](double L) { return concurrence_at(kind, det, rate, L, tol) - threshold; };

  double lo = 0.1;
  double f_lo = f(lo);
  if (f_lo <= 0.0) throw DomainError("find_l_max: no harvesting at L = 0.1");
  double hi = lo;
  double f_hi = f_lo;
  int iterations = 0;
  while (f_hi > 0.0) {
    hi *= 2.0;
    if (hi > 1e3) throw DomainError("find_l_max: concurrence still above threshold at L = 1e3");
    f_hi = f(hi);
    ++iterations;
  }
  lo = 0.5 * hi;  // last grown point with f > 0
  while (hi - lo > tol_l) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    ++iterations;
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double value = 0.5 * (lo + hi);
  return {value, {lo, hi}, std::abs(f(value)), iterations};
}

std::optional<RootResult> find_l_crit(const harvest::DetectorParams& det, double a, double tol_l,
                                      double tol) {
  if (!(a > 0.0)) throw DomainError("find_l_crit: acceleration must be > 0");
  const double threshold = kLmaxThreshold * det.coupling * det.coupling;
  auto conc_acc = [&](double L) {
    return concurrence_at(harvest::ScenarioKind::parallel_acc, det, a, L, tol);
  };
  auto conc_th = [&](double L) {
    return concurrence_at(harvest::ScenarioKind::thermal_static, det, a, L, tol);
  };
  auto g = [&](double L) { return conc_acc(L) - conc_th(L); };

  // Scan the harvesting-achievable range left to right; the leftmost sign
  // change + -> - defines L_crit (infimum of the crossing set).  The scan
  // starts at the smallest supported separation (geometric steps below 0.05)
  // so crossings close to coincidence are not missed.
  const double step = 0.05;
  std::vector<double> grid;
  for (double L = harvest::kMinSeparation; L < step; L *= 2.0) grid.push_back(L);
  for (double L = step; L < 1e3; L += step) grid.push_back(L);
  double prev_l = grid.front();
  double ca = conc_acc(prev_l);
  double ct = conc_th(prev_l);
  double prev_g = ca - ct;
  if (prev_g <= 0.0) return std::nullopt;
  int iterations = 1;
  for (std::size_t gi = 1; gi < grid.size(); ++gi) {
    const double L = grid[gi];
    ca = conc_acc(L);
    ct = conc_th(L);
    ++iterations;
    const double cur_g = ca - ct;
    if (cur_g < 0.0) {
      // bisect [prev_l, L]
      double lo = prev_l, hi = L;
      while (hi - lo > tol_l) {
        const double mid = 0.5 * (lo + hi);
        ++iterations;
        if (g(mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double value = 0.5 * (lo + hi);
      return RootResult{value, {lo, hi}, std::abs(g(value)), iterations};
    }
    if (ca <= threshold && ct <= threshold) {
      // accelerated dominates over the whole achievable range
      return RootResult{L, {prev_l, L}, std::abs(cur_g), iterations};
    }
    prev_l = L;
    prev_g = cur_g;
  }
  (void)prev_g;
  throw DomainError("find_l_crit: harvesting range did not close below L = 1e3");
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.grid.empty()) throw ContractError("run_sweep: empty grid");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw ContractError("run_sweep: grid must be strictly increasing");
    }
  }
  if (!(spec.tol > 0.0)) throw ContractError("run_sweep: tol must be > 0");

  std::vector<SweepRow> rows(spec.grid.size());
  parallel_for(spec.grid.size(), threads, [&](std::size_t i) {
    const double v = spec.grid[i];
    SweepRow row;
    row.axis_value = v;
    try {
      const double rate = (spec.axis == SweepSpec::Axis::rate) ? v : spec.fixed_rate;
      const double sep = (spec.axis == SweepSpec::Axis::separation) ? v : spec.fixed_separation;
      const harvest::Scenario sc = harvest::Scenario::from_unruh_rate(spec.kind, rate, sep);
      const harvest::HarvestOutcome o = harvest::evaluate_scenario(spec.det, sc, spec.tol);
      row.p = o.p_a;
      row.x_abs = std::abs(o.corr_x);
      row.concurrence = o.concurrence;
      row.err = o.err.concurrence;
    } catch (const std::exception&) {
      row.p = row.x_abs = row.concurrence = std::numeric_limits<double>::quiet_NaN();
      row.err = std::numeric_limits<double>::infinity();
    }
    rows[i] = row;
  });
  return rows;
}

std::vector<Extremum> detect_extrema(std::span<const std::pair<double, double>> series,
                                     double noise_floor) {
  if (series.size() < 3) throw ContractError("detect_extrema: need >= 3 points");
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!(series[i].first > series[i - 1].first)) {
      throw ContractError("detect_extrema: abscissae must be strictly increasing");
    }
  }
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double left = series[i].second - series[i - 1].second;
    const double right = series[i + 1].second - series[i].second;
    if (std::abs(left) <= noise_floor || std::abs(right) <= noise_floor) continue;
    if (left > 0.0 && right < 0.0) out.push_back({i, true});
    if (left < 0.0 && right > 0.0) out.push_back({i, false});
  }
  return out;
}

}  // namespace udw::analysis
