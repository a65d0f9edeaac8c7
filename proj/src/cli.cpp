#include "udw/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "udw/errors.hpp"

namespace udw::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

harvest::ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "parallel") return harvest::ScenarioKind::parallel_acc;
  if (name == "antiparallel") return harvest::ScenarioKind::antiparallel_acc;
  if (name == "perpendicular") return harvest::ScenarioKind::perpendicular_acc;
  if (name == "thermal") return harvest::ScenarioKind::thermal_static;
  if (name == "vacuum") return harvest::ScenarioKind::vacuum_static;
  throw DomainError("unknown scenario '" + name + "'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file '" + path + "'");
  return os;
}

void finish_output(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write failed for '" + path + "'");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':') {
    throw DomainError("grid must be start:stop:step, got '" + text + "'");
  }
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  if (!(stop >= start)) throw DomainError("grid stop must be >= start");
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = start + static_cast<double>(i) * step;
  return grid;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<analysis::SweepRow>& rows) {
  os << "axis,P,Xabs,concurrence,err\n";
  for (const auto& r : rows) {
    os << format_double(r.axis_value) << ',' << format_double(r.p) << ','
       << format_double(r.x_abs) << ',' << format_double(r.concurrence) << ','
       << format_double(r.err) << '\n';
  }
}

std::vector<analysis::SweepRow> read_sweep_csv(std::istream& is) {
  std::vector<analysis::SweepRow> rows;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    analysis::SweepRow r;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    if (!(ls >> r.axis_value >> r.p >> r.x_abs >> r.concurrence >> r.err)) {
      throw IoError("malformed CSV row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

void write_sweep_json(std::ostream& os, const std::vector<analysis::SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"axis", r.axis_value},
                   {"P", r.p},
                   {"Xabs", r.x_abs},
                   {"concurrence", r.concurrence},
                   {"err", r.err}});
  }
  os << ordered_json{{"rows", arr}}.dump(2) << '\n';
}

namespace {

// ---- figure machinery ----------------------------------------------------

struct Series {
  std::string name;
  std::vector<double> value;
  std::vector<double> err;
};

void write_panel_csv(const std::string& path, const std::string& axis_name,
                     const std::vector<double>& axis, const std::vector<Series>& series) {
  std::ofstream os = open_output(path);
  os << axis_name;
  for (const auto& s : series) os << ',' << s.name;
  for (const auto& s : series) os << ',' << s.name << "_err";
  os << '\n';
  for (std::size_t i = 0; i < axis.size(); ++i) {
    os << format_double(axis[i]);
    for (const auto& s : series) os << ',' << format_double(s.value[i]);
    for (const auto& s : series) os << ',' << format_double(s.err[i]);
    os << '\n';
  }
  finish_output(os, path);
}

void write_gnuplot(const std::string& path, const std::string& body) {
  std::ofstream os = open_output(path);
  os << "set datafile separator comma\nset key top right\nset grid\n" << body;
  finish_output(os, path);
}

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// Concurrence of one scenario at (shared-axis rate, L); NaN sentinel on failure.
void eval_conc_point(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double rate,
                     double L, double tol, double* value, double* err) {
  try {
    const auto sc = harvest::Scenario::from_unruh_rate(kind, rate, L);
    const auto o = harvest::evaluate_scenario(det, sc, tol);
    *value = o.concurrence;
    *err = o.err.concurrence;
  } catch (const std::exception&) {
    *value = nan_value();
    *err = std::numeric_limits<double>::infinity();
  }
}

void eval_lmax_point(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double rate,
                     double tol, double* value, double* err) {
  try {
    const auto r = analysis::find_l_max(kind, det, rate, 1e-3, tol);
    *value = r.value;
    *err = 0.5 * (r.bracket.second - r.bracket.first);
  } catch (const std::exception&) {
    *value = nan_value();
    *err = std::numeric_limits<double>::infinity();
  }
}

std::string panel_letter(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

void figure_1(const RunConfig& cfg, const fs::path& dir) {
  const std::vector<double> gaps = {0.50, 1.20, 2.00};
  const std::vector<double> rates = {0.50, 1.00, 3.00};
  const std::vector<double> grid =
      cfg.grid.empty() ? parse_grid("0.20:2.00:0.05") : cfg.grid;
  struct Job {
    std::size_t panel, idx;
    harvest::ScenarioKind kind;
    double gap, rate, L;
  };
  std::vector<Job> jobs;
  const harvest::ScenarioKind kinds[3] = {harvest::ScenarioKind::parallel_acc,
                                          harvest::ScenarioKind::thermal_static,
                                          harvest::ScenarioKind::vacuum_static};
  std::vector<std::array<Series, 3>> panels(9);
  std::size_t p = 0;
  for (double gap : gaps) {
    for (double rate : rates) {
      for (int k = 0; k < 3; ++k) {
        panels[p][k].name = (k == 0) ? "acc" : (k == 1 ? "thermal" : "vacuum");
        panels[p][k].value.resize(grid.size());
        panels[p][k].err.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          jobs.push_back({p, i, kinds[k], gap, rate, grid[i]});
        }
      }
      ++p;
    }
  }
  analysis::parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const int k = (job.kind == harvest::ScenarioKind::parallel_acc)
                      ? 0
                      : (job.kind == harvest::ScenarioKind::thermal_static ? 1 : 2);
    eval_conc_point(job.kind, {job.gap, cfg.det.coupling}, job.rate, job.L, cfg.quad_tol,
                    &panels[job.panel][k].value[job.idx], &panels[job.panel][k].err[job.idx]);
  });
  for (std::size_t i = 0; i < 9; ++i) {
    write_panel_csv((dir / ("fig1_" + panel_letter(i) + ".csv")).string(), "L",
                    grid, {panels[i][0], panels[i][1], panels[i][2]});
  }
  std::ostringstream gp;
  gp << "set xlabel 'L/sigma'\nset ylabel 'concurrence / lambda^2'\n";
  for (std::size_t i = 0; i < 9; ++i) {
    gp << "set title 'fig1(" << panel_letter(i) << ")'\n"
       << "plot 'fig1_" << panel_letter(i) << ".csv' using 1:2 with lines title 'accelerated', \\\n"
       << "     '' using 1:3 with lines title 'thermal', \\\n"
       << "     '' using 1:4 with lines dashtype 2 title 'vacuum static'\n"
       << "pause -1\n";
  }
  write_gnuplot((dir / "fig1.gp").string(), gp.str());
}

void figure_2(const RunConfig& cfg, const fs::path& dir) {
  const std::vector<double> gaps = {0.50, 1.20, 2.00};
  const std::vector<double> seps = {0.50, 1.00, 2.00};
  const std::vector<double> grid =
      cfg.grid.empty() ? parse_grid("0.10:3.00:0.05") : cfg.grid;
  std::vector<std::array<Series, 3>> panels(9);
  struct Job {
    std::size_t panel, idx;
    int k;
    double gap, rate, L;
  };
  std::vector<Job> jobs;
  std::size_t p = 0;
  for (double gap : gaps) {
    for (double L : seps) {
      for (int k = 0; k < 3; ++k) {
        panels[p][k].name = (k == 0) ? "acc" : (k == 1 ? "thermal" : "vacuum");
        panels[p][k].value.resize(grid.size());
        panels[p][k].err.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back({p, i, k, gap, grid[i], L});
      }
      ++p;
    }
  }
  analysis::parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const harvest::ScenarioKind kind =
        (job.k == 0) ? harvest::ScenarioKind::parallel_acc
                     : (job.k == 1 ? harvest::ScenarioKind::thermal_static
                                   : harvest::ScenarioKind::vacuum_static);
    const double rate = (job.k == 2) ? 0.0 : job.rate;  // vacuum dashed: a = 0
    eval_conc_point(kind, {job.gap, cfg.det.coupling}, rate, job.L, cfg.quad_tol,
                    &panels[job.panel][job.k].value[job.idx], &panels[job.panel][job.k].err[job.idx]);
  });
  for (std::size_t i = 0; i < 9; ++i) {
    write_panel_csv((dir / ("fig2_" + panel_letter(i) + ".csv")).string(), "a",
                    grid, {panels[i][0], panels[i][1], panels[i][2]});
  }
  std::ostringstream gp;
  gp << "set xlabel 'a sigma = 2 pi T sigma'\nset ylabel 'concurrence / lambda^2'\n";
  for (std::size_t i = 0; i < 9; ++i) {
    gp << "set title 'fig2(" << panel_letter(i) << ")'\n"
       << "plot 'fig2_" << panel_letter(i) << ".csv' using 1:2 with lines title 'accelerated', \\\n"
       << "     '' using 1:3 with lines title 'thermal', \\\n"
       << "     '' using 1:4 with lines dashtype 2 title 'vacuum static'\n"
       << "pause -1\n";
  }
  write_gnuplot((dir / "fig2.gp").string(), gp.str());
}

void figure_3(const RunConfig& cfg, const fs::path& dir) {
  const std::vector<double> gaps = {0.80, 1.00, 1.20, 1.50, 2.00};
  const std::vector<double> grid =
      cfg.grid.empty() ? parse_grid("0.25:4.00:0.25") : cfg.grid;
  std::vector<Series> series(gaps.size() + 1);
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    char name[32];
    std::snprintf(name, sizeof name, "lcrit_gap%.2f", gaps[g]);
    series[g].name = name;
    series[g].value.resize(grid.size());
    series[g].err.resize(grid.size());
  }
  series.back().name = "l_ref";
  series.back().value.resize(grid.size());
  series.back().err.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) series.back().value[i] = 1.0 / grid[i];

  struct Job {
    std::size_t g, i;
  };
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back({g, i});
  }
  analysis::parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    try {
      const auto r = analysis::find_l_crit({gaps[job.g], cfg.det.coupling}, grid[job.i], 1e-3,
                                           cfg.quad_tol);
      series[job.g].value[job.i] = r ? r->value : nan_value();
      series[job.g].err[job.i] = r ? 0.5 * (r->bracket.second - r->bracket.first) : 0.0;
    } catch (const std::exception&) {
      series[job.g].value[job.i] = nan_value();
      series[job.g].err[job.i] = std::numeric_limits<double>::infinity();
    }
  });
  write_panel_csv((dir / "fig3.csv").string(), "a", grid, series);
  std::ostringstream gp;
  gp << "set xlabel 'a sigma'\nset ylabel 'L_crit/sigma'\nset title 'fig3'\n"
     << "plot 'fig3.csv' using 1:2 with linespoints title 'gap 0.80', \\\n"
     << "     '' using 1:3 with linespoints title 'gap 1.00', \\\n"
     << "     '' using 1:4 with linespoints title 'gap 1.20', \\\n"
     << "     '' using 1:5 with linespoints title 'gap 1.50', \\\n"
     << "     '' using 1:6 with linespoints title 'gap 2.00', \\\n"
     << "     '' using 1:7 with lines dashtype 2 lc 'black' title 'L = 1/a'\n"
     << "pause -1\n";
  write_gnuplot((dir / "fig3.gp").string(), gp.str());
}

void figure_4(const RunConfig& cfg, const fs::path& dir) {
  const std::vector<double> gaps = {0.50, 1.00, 3.00};
  const std::vector<double> grid =
      cfg.grid.empty() ? parse_grid("0.25:4.00:0.25") : cfg.grid;
  std::vector<std::array<Series, 3>> panels(gaps.size());
  struct Job {
    std::size_t panel, idx;
    int k;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < gaps.size(); ++p) {
    for (int k = 0; k < 3; ++k) {
      panels[p][k].name = (k == 0) ? "acc" : (k == 1 ? "thermal" : "vacuum");
      panels[p][k].value.resize(grid.size());
      panels[p][k].err.resize(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back({p, i, k});
    }
  }
  analysis::parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const harvest::DetectorParams det{gaps[job.panel], cfg.det.coupling};
    if (job.k == 2) {
      eval_lmax_point(harvest::ScenarioKind::vacuum_static, det, 0.0, cfg.quad_tol,
                      &panels[job.panel][2].value[job.idx], &panels[job.panel][2].err[job.idx]);
    } else {
      const auto kind = (job.k == 0) ? harvest::ScenarioKind::parallel_acc
                                     : harvest::ScenarioKind::thermal_static;
      eval_lmax_point(kind, det, grid[job.idx], cfg.quad_tol,
                      &panels[job.panel][job.k].value[job.idx],
                      &panels[job.panel][job.k].err[job.idx]);
    }
  });
  for (std::size_t p = 0; p < gaps.size(); ++p) {
    write_panel_csv((dir / ("fig4_" + panel_letter(p) + ".csv")).string(), "a", grid,
                    {panels[p][0], panels[p][1], panels[p][2]});
  }
  std::ostringstream gp;
  gp << "set xlabel 'a sigma = 2 pi T sigma'\nset ylabel 'L_max/sigma'\n";
  for (std::size_t p = 0; p < gaps.size(); ++p) {
    gp << "set title 'fig4(" << panel_letter(p) << ")'\n"
       << "plot 'fig4_" << panel_letter(p) << ".csv' using 1:2 with linespoints title 'accelerated', \\\n"
       << "     '' using 1:3 with linespoints title 'thermal', \\\n"
       << "     '' using 1:4 with lines dashtype 2 title 'vacuum static'\n"
       << "pause -1\n";
  }
  write_gnuplot((dir / "fig4.gp").string(), gp.str());
}

// L_max for the generic-engine scenarios, using the reduced single-detector
// response (every uniformly accelerated kind rides a congruent worldline) and
// the engine only for X.  Bisection at a coarser dL suited to a figure.
double lmax_generic_kind(harvest::ScenarioKind kind, const harvest::DetectorParams& det, double a,
                         double tol, double* err) {
  const bool anti = kind == harvest::ScenarioKind::antiparallel_acc;
  const double p = harvest::transition_probability(det, a, tol * 1e-2);
  const double thr = analysis::kLmaxThreshold * det.coupling * det.coupling;
  auto conc = [&](double L) {
    const auto ta = anti ? wightman::Trajectory::antiparallel_a(a)
                         : wightman::Trajectory::perpendicular_a(a);
    const auto tb = anti ? wightman::Trajectory::antiparallel_b(a, L)
                         : wightman::Trajectory::perpendicular_b(a, L);
    const auto x = harvest::generic_x(ta, tb, wightman::WightmanEvaluator::vacuum(), det, tol);
    return harvest::concurrence(p, p, std::abs(x.value)) - thr;
  };
  double lo = 0.1;
  if (conc(lo) <= 0.0) throw DomainError("no harvesting at L = 0.1");
  double hi = lo;
  while (conc(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 64.0) throw DomainError("harvesting range beyond the figure scale");
  }
  lo = 0.5 * hi;
  const double tol_l = 0.01;
  while (hi - lo > tol_l) {
    const double mid = 0.5 * (lo + hi);
    if (conc(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (err) *err = 0.5 * (hi - lo);
  return 0.5 * (lo + hi);
}

void figure_5(const RunConfig& cfg, const fs::path& dir) {
  const double gap = 2.00;
  const std::vector<double> grid =
      cfg.grid.empty() ? parse_grid("0.50:4.00:0.50") : cfg.grid;
  std::vector<Series> series(4);
  const char* names[4] = {"parallel", "antiparallel", "perpendicular", "static"};
  const harvest::ScenarioKind kinds[3] = {harvest::ScenarioKind::parallel_acc,
                                          harvest::ScenarioKind::antiparallel_acc,
                                          harvest::ScenarioKind::perpendicular_acc};
  for (int k = 0; k < 4; ++k) {
    series[k].name = names[k];
    series[k].value.resize(grid.size());
    series[k].err.resize(grid.size());
  }
  struct Job {
    std::size_t i;
    int k;
  };
  std::vector<Job> jobs;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < grid.size(); ++i) jobs.push_back({i, k});
  }
  const harvest::DetectorParams det{gap, cfg.det.coupling};
  analysis::parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    if (job.k == 0) {
      eval_lmax_point(kinds[0], det, grid[job.i], cfg.quad_tol, &series[0].value[job.i],
                      &series[0].err[job.i]);
      return;
    }
    try {
      series[job.k].value[job.i] = lmax_generic_kind(kinds[job.k], det, grid[job.i], cfg.quad_tol,
                                                     &series[job.k].err[job.i]);
    } catch (const std::exception&) {
      series[job.k].value[job.i] = nan_value();
      series[job.k].err[job.i] = std::numeric_limits<double>::infinity();
    }
  });
  double static_lmax = nan_value();
  double static_err = std::numeric_limits<double>::infinity();
  eval_lmax_point(harvest::ScenarioKind::vacuum_static, det, 0.0, cfg.quad_tol, &static_lmax,
                  &static_err);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    series[3].value[i] = static_lmax;
    series[3].err[i] = static_err;
  }
  write_panel_csv((dir / "fig5.csv").string(), "a", grid, series);
  std::ostringstream gp;
  gp << "set xlabel 'a sigma'\nset ylabel 'L_max/sigma'\nset title 'fig5'\n"
     << "plot 'fig5.csv' using 1:2 with linespoints title 'parallel', \\\n"
     << "     '' using 1:3 with linespoints title 'antiparallel', \\\n"
     << "     '' using 1:4 with linespoints title 'perpendicular', \\\n"
     << "     '' using 1:5 with lines dashtype 2 title 'static'\n"
     << "pause -1\n";
  write_gnuplot((dir / "fig5.gp").string(), gp.str());
}

}  // namespace

void run_figure(int fig_id, const RunConfig& config) {
  const fs::path dir = config.output_path.empty() ? fs::path(".") : fs::path(config.output_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create figure output directory '" + dir.string() + "'");
  }
  switch (fig_id) {
    case 1: figure_1(config, dir); return;
    case 2: figure_2(config, dir); return;
    case 3: figure_3(config, dir); return;
    case 4: figure_4(config, dir); return;
    case 5: figure_5(config, dir); return;
    default: throw DomainError("figure id must be 1..5");
  }
}

namespace {

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Flat `key = value` config files with `#` comments; anything else is a
// parse error reported with its line number.
void validate_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);
    const auto key_end = body.find_first_of(" \t=");
    const std::string key = body.substr(0, key_end);
    bool ok = !key.empty() &&
              key.find_first_not_of(
                  "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") ==
                  std::string::npos;
    if (ok) {
      // only whitespace may sit between the key and a single '='
      auto pos = key_end;
      while (pos != std::string::npos && pos < body.size() &&
             (body[pos] == ' ' || body[pos] == '\t')) {
        ++pos;
      }
      ok = pos != std::string::npos && pos < body.size() && body[pos] == '=' &&
           pos + 1 < body.size();
    }
    if (!ok) {
      throw DomainError("config parse error at line " + std::to_string(lineno) + ": '" + body +
                        "' is not 'key = value'");
    }
  }
}

void prevalidate_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      validate_config_file(argv[i + 1]);
    } else if (arg.rfind("--config=", 0) == 0) {
      validate_config_file(arg.substr(9));
    }
  }
}

struct ParsedArgs {
  RunConfig config;
  bool help_only = false;
};

ParsedArgs do_parse(int argc, const char* const* argv) {
  prevalidate_config(argc, argv);
  ParsedArgs out;
  RunConfig& cfg = out.config;
  cfg.threads = default_threads();

  CLI::App app{"Entanglement harvesting for accelerated and thermal Unruh-DeWitt detector pairs"};
  app.fallthrough();
  app.set_config("--config", "", "flat key = value config file");

  std::string scenario_name = "vacuum";
  std::string grid_text;
  std::string format_name = "csv";
  std::string axis_name = "sep";

  app.add_option("--scenario", scenario_name, "parallel|antiparallel|perpendicular|thermal|vacuum")
      ->capture_default_str();
  app.add_option("--gap", cfg.det.gap, "detector energy gap Omega*sigma")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--coupling", cfg.det.coupling, "coupling lambda (results scale as lambda^2)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--rate", cfg.rate, "a*sigma (accelerated) or 2 pi T*sigma (thermal)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--sep", cfg.separation, "interdetector separation L/sigma")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--grid", grid_text, "sweep grid start:stop:step");
  app.add_option("--axis", axis_name, "sweep axis: sep|rate")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output file (directory for figures)");
  app.add_option("--format", format_name, "csv|json")->capture_default_str();
  app.add_option("--tol", cfg.quad_tol, "quadrature tolerance, (0, 1e-2]")
      ->check(CLI::Range(1e-14, 1e-2))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::Range(1, 4096))
      ->envname("UDW_THREADS")
      ->capture_default_str();

  CLI::App* cmd_point = app.add_subcommand("point", "evaluate one parameter point");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "sweep one axis over a grid");
  CLI::App* cmd_figure = app.add_subcommand("figure", "reproduce a figure dataset (1..5)");
  CLI::App* cmd_lmax = app.add_subcommand("lmax", "maximum harvesting-achievable separation");
  CLI::App* cmd_lcrit = app.add_subcommand("lcrit", "critical separation accelerated vs thermal");
  app.require_subcommand(1);
  cmd_figure->add_option("id", cfg.figure_id, "figure number")->required()->check(CLI::Range(1, 5));

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    out.help_only = true;
    return out;
  }

  cfg.scenario = scenario_from_name(scenario_name);
  if (format_name == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (format_name == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw DomainError("format must be csv or json");
  }
  if (axis_name == "sep" || axis_name == "separation") {
    cfg.axis = analysis::SweepSpec::Axis::separation;
  } else if (axis_name == "rate") {
    cfg.axis = analysis::SweepSpec::Axis::rate;
  } else {
    throw DomainError("axis must be sep or rate");
  }
  if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);

  if (cmd_point->parsed()) cfg.command = Command::point;
  if (cmd_sweep->parsed()) cfg.command = Command::sweep;
  if (cmd_figure->parsed()) cfg.command = Command::figure;
  if (cmd_lmax->parsed()) cfg.command = Command::lmax;
  if (cmd_lcrit->parsed()) cfg.command = Command::lcrit;
  return out;
}

void emit(const RunConfig& cfg, const std::function<void(std::ostream&)>& writer) {
  if (cfg.output_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream os = open_output(cfg.output_path);
  writer(os);
  finish_output(os, cfg.output_path);
}

int run_point(const RunConfig& cfg) {
  const auto sc = harvest::Scenario::from_unruh_rate(cfg.scenario, cfg.rate, cfg.separation);
  const auto o = harvest::evaluate_scenario(cfg.det, sc, cfg.quad_tol);
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      ordered_json j{{"P_A", o.p_a},
                     {"P_B", o.p_b},
                     {"Xabs", std::abs(o.corr_x)},
                     {"X_re", o.corr_x.real()},
                     {"X_im", o.corr_x.imag()},
                     {"concurrence", o.concurrence},
                     {"P_err", o.err.p_a},
                     {"X_err", o.err.corr_x},
                     {"concurrence_err", o.err.concurrence}};
      if (o.corr_c) {
        j["C_re"] = o.corr_c->real();
        j["C_im"] = o.corr_c->imag();
      }
      os << j.dump(2) << '\n';
    } else {
      os << "P            = " << format_double(o.p_a) << '\n'
         << "Xabs         = " << format_double(std::abs(o.corr_x)) << '\n'
         << "concurrence  = " << format_double(o.concurrence) << '\n'
         << "err          = " << format_double(o.err.concurrence) << '\n';
    }
  });
  return kExitOk;
}

int run_sweep_cmd(const RunConfig& cfg) {
  if (cfg.grid.empty()) throw DomainError("sweep requires --grid start:stop:step");
  analysis::SweepSpec spec;
  spec.kind = cfg.scenario;
  spec.det = cfg.det;
  spec.axis = cfg.axis;
  spec.grid = cfg.grid;
  spec.fixed_rate = cfg.rate;
  spec.fixed_separation = cfg.separation;
  spec.tol = cfg.quad_tol;
  const auto rows = analysis::run_sweep(spec, cfg.threads);
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      write_sweep_json(os, rows);
    } else {
      write_sweep_csv(os, rows);
    }
  });
  return kExitOk;
}

int run_lmax(const RunConfig& cfg) {
  const auto r = analysis::find_l_max(cfg.scenario, cfg.det, cfg.rate, 1e-3, cfg.quad_tol);
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      os << ordered_json{{"L_max", r.value},
                         {"bracket", {r.bracket.first, r.bracket.second}},
                         {"residual", r.residual},
                         {"iterations", r.iterations}}
                .dump(2)
         << '\n';
    } else {
      os << "L_max     = " << format_double(r.value) << '\n'
         << "bracket   = [" << format_double(r.bracket.first) << ", "
         << format_double(r.bracket.second) << "]\n"
         << "residual  = " << format_double(r.residual) << '\n'
         << "iterations= " << r.iterations << '\n';
    }
  });
  return kExitOk;
}

int run_lcrit(const RunConfig& cfg) {
  if (!(cfg.rate > 0.0)) throw DomainError("lcrit requires --rate > 0");
  const auto r = analysis::find_l_crit(cfg.det, cfg.rate, 1e-3, cfg.quad_tol);
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      if (r) {
        os << ordered_json{{"L_crit", r->value},
                           {"bracket", {r->bracket.first, r->bracket.second}},
                           {"residual", r->residual},
                           {"iterations", r->iterations}}
                  .dump(2)
           << '\n';
      } else {
        os << ordered_json{{"L_crit", nullptr}}.dump(2) << '\n';
      }
    } else {
      if (r) {
        os << "L_crit    = " << format_double(r->value) << '\n'
           << "bracket   = [" << format_double(r->bracket.first) << ", "
           << format_double(r->bracket.second) << "]\n";
      } else {
        os << "L_crit    = absent (accelerated never exceeds thermal)\n";
      }
    }
  });
  return kExitOk;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) { return do_parse(argc, argv).config; }

int run(int argc, const char* const* argv) {
  try {
    ParsedArgs parsed = do_parse(argc, argv);
    if (parsed.help_only) return kExitOk;
    const RunConfig& cfg = parsed.config;
    switch (cfg.command) {
      case Command::point: return run_point(cfg);
      case Command::sweep: return run_sweep_cmd(cfg);
      case Command::figure: run_figure(cfg.figure_id, cfg); return kExitOk;
      case Command::lmax: return run_lmax(cfg);
      case Command::lcrit: return run_lcrit(cfg);
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << '\n';
    return kExitAccuracy;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ContractError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace udw::cli
