// Command-line front end: solving, error tables, order fitting and
// the whole-period exactness checks. All numeric output is CSV (UTF-8,
// LF, '.' decimal separator).

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "samdde/engine.hpp"
#include "samdde/format.hpp"
#include "samdde/problems.hpp"
#include "samdde/reference.hpp"

namespace {

using namespace samdde;

constexpr int kExitOk = 0;
constexpr int kExitValidity = 2;
constexpr int kExitBadArgs = 3;
constexpr int kExitBlowUp = 4;

struct RunSpec {
  std::string problem = "toggle";
  std::string method = "sam-rk4";
  std::string omega_csv = "16pi";
  std::string n_csv = "1";
  int micro_per_period = 0;  // 0: default m = 2N
  std::string metric = "strobo";
  int component = 0;
  int ref_k = 0;  // 0: auto
  std::string out_path;
  std::string case_mode = "auto";
};

OscDDEProblem build_problem(const std::string& name, double omega) {
  if (name == "toggle") return toggle_problem(omega);
  if (name == "scaled-toggle") return scaled_toggle_problem(omega);
  if (name == "synthetic")
    return synthetic_quadrature_problem({{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}}, -1.0,
                                        omega);
  throw std::invalid_argument("unknown problem '" + name +
                              "' (expected toggle, scaled-toggle or synthetic)");
}

/// Reference resolution: ~4096 micro steps per fast period, rounded up to
/// a multiple of N*m so every compared node lies exactly on the grid.
int auto_ref_k(const OscDDEProblem& p, int n_steps, int m) {
  const double periods = p.delay / p.period();
  long base = static_cast<long>(std::ceil(periods)) * 4096L;
  const long q = static_cast<long>(n_steps) * std::max(m, 1);
  base = (base + q - 1) / q * q;
  return static_cast<int>(base);
}

std::ostream& open_out(const RunSpec& spec, std::ofstream& file) {
  if (spec.out_path.empty()) return std::cout;
  file.open(spec.out_path);
  if (!file) throw std::invalid_argument("cannot open output file " + spec.out_path);
  return file;
}

StroboscopicSolution run_solver(const OscDDEProblem& p, const SAMConfig& cfg,
                                const std::string& case_mode) {
  if (case_mode == "force1") return solve_case1(p, cfg);
  if (case_mode == "force2") return solve_case2(p, cfg);
  if (case_mode == "auto") return solve(p, cfg);
  throw std::invalid_argument("bad --case value '" + case_mode + "'");
}

int cmd_solve(const RunSpec& spec) {
  const auto omegas = parse_omega_list(spec.omega_csv);
  const auto ns = parse_int_list(spec.n_csv);
  if (omegas.size() != 1 || ns.size() != 1)
    throw std::invalid_argument("solve expects a single --omega and a single --N");
  const OscDDEProblem p = build_problem(spec.problem, omegas[0]);
  const SAMConfig cfg =
      make_config(parse_method(spec.method), ns[0], spec.micro_per_period);
  const StroboscopicSolution sol = run_solver(p, cfg, spec.case_mode);

  std::ofstream file;
  std::ostream& os = open_out(spec, file);
  os << "segment,n";
  os << ",t";
  for (int c = 0; c < p.dim; ++c) os << ",x" << (c + 1);
  os << "\n";
  const double big_h = sol.macro_step_size();
  // Segment 0: the history block at the shifted macro node times.
  for (int n = 0; n <= sol.macro_steps; ++n) {
    const double t = -p.delay + n * big_h;
    const Vec v = history_eval(p, std::min(t, 0.0));
    os << 0 << "," << n << "," << format_sci(t);
    for (int c = 0; c < p.dim; ++c) os << "," << format_sci(v[c]);
    os << "\n";
  }
  for (int ell = 1; ell <= p.segments; ++ell) {
    for (int n = 0; n <= sol.macro_steps; ++n) {
      const double t = sol.node_time(ell, n, p.delay);
      os << ell << "," << n << "," << format_sci(t);
      for (int c = 0; c < p.dim; ++c)
        os << "," << format_sci(sol.grid[ell - 1][n][c]);
      os << "\n";
    }
  }
  return kExitOk;
}

struct GridCell {
  enum class State { Ok, Infeasible, Failed } state = State::Failed;
  double error = 0.0;
  unsigned long long work = 0;
};

/// One error per (N, omega); infeasible and failed cells are marked, the
/// reference is computed once per omega and reused.
std::vector<std::vector<GridCell>> compute_grid(const RunSpec& spec,
                                                const std::vector<double>& omegas,
                                                const std::vector<int>& ns) {
  const SamMethod method = parse_method(spec.method);
  std::vector<std::vector<GridCell>> cells(ns.size(),
                                           std::vector<GridCell>(omegas.size()));
  for (std::size_t c = 0; c < omegas.size(); ++c) {
    const OscDDEProblem p = build_problem(spec.problem, omegas[c]);
    ReferenceSolution ref;
    bool have_ref = false;
    for (std::size_t r = 0; r < ns.size(); ++r) {
      GridCell& cell = cells[r][c];
      try {
        const SAMConfig cfg = make_config(method, ns[r], spec.micro_per_period);
        const CaseInfo info = classify_case(p);
        if (validity_check(p, cfg, info)) {
          cell.state = GridCell::State::Infeasible;
          continue;
        }
        if (!have_ref) {
          const int k = spec.ref_k > 0
                            ? spec.ref_k
                            : auto_ref_k(p, *std::max_element(ns.begin(), ns.end()),
                                         2 * *std::max_element(ns.begin(), ns.end()));
          ref = reference_solve(p, k);
          have_ref = true;
        }
        const StroboscopicSolution sol = run_solver(p, cfg, spec.case_mode);
        const ErrorReport rep = spec.metric == "endpoint"
                                    ? endpoint_error(sol, ref, spec.component)
                                    : max_strobo_error(sol, ref, spec.component);
        cell.state = GridCell::State::Ok;
        cell.error = rep.value;
        cell.work = sol.rhs_evaluations;
      } catch (const ValidityError&) {
        cell.state = GridCell::State::Infeasible;
      } catch (const std::exception&) {
        cell.state = GridCell::State::Failed;
      }
    }
  }
  return cells;
}

std::vector<std::string> split_tokens(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

void warn_non_pow2(const std::vector<int>& ns) {
  for (int n : ns)
    if ((n & (n - 1)) != 0)
      std::cerr << "warning: N = " << n << " is not a power of two; "
                << "grid alignment may be poor\n";
}

int cmd_table(const RunSpec& spec) {
  const auto omegas = parse_omega_list(spec.omega_csv);
  const auto omega_toks = split_tokens(spec.omega_csv);
  const auto ns = parse_int_list(spec.n_csv);
  warn_non_pow2(ns);
  const auto cells = compute_grid(spec, omegas, ns);

  std::ofstream file;
  std::ostream& os = open_out(spec, file);
  os << "N";
  for (const auto& tok : omega_toks) os << "," << tok;
  os << "\n";
  for (std::size_t r = 0; r < ns.size(); ++r) {
    os << ns[r];
    for (std::size_t c = 0; c < omegas.size(); ++c) {
      const GridCell& cell = cells[r][c];
      os << ",";
      switch (cell.state) {
        case GridCell::State::Ok: os << format_sci(cell.error); break;
        case GridCell::State::Infeasible: os << "***"; break;
        case GridCell::State::Failed: os << "ERR"; break;
      }
    }
    os << "\n";
  }
  return kExitOk;
}

int cmd_order(const RunSpec& spec) {
  const auto omegas = parse_omega_list(spec.omega_csv);
  const auto omega_toks = split_tokens(spec.omega_csv);
  const auto ns = parse_int_list(spec.n_csv);
  warn_non_pow2(ns);
  const auto cells = compute_grid(spec, omegas, ns);

  std::ofstream file;
  std::ostream& os = open_out(spec, file);
  os << "kind,key,value1,value2,points\n";

  auto fit_line = [&](const std::string& kind, const std::string& key,
                      const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) {
      os << kind << "," << key << ",NA,NA," << pts.size() << "\n";
      return;
    }
    const double slope = observed_order(pts);
    double rss = 0.0, sx = 0.0, sy = 0.0;
    for (const auto& [x, e] : pts) { sx += std::log(x); sy += std::log(e); }
    const double icpt = (sy - slope * sx) / pts.size();
    for (const auto& [x, e] : pts) {
      const double d = std::log(e) - (icpt + slope * std::log(x));
      rss += d * d;
    }
    os << kind << "," << key << "," << format_sci(slope) << ","
       << format_sci(std::sqrt(rss / pts.size())) << "," << pts.size() << "\n";
  };

  for (std::size_t c = 0; c < omegas.size(); ++c) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t r = 0; r < ns.size(); ++r)
      if (cells[r][c].state == GridCell::State::Ok && cells[r][c].error > 0.0)
        pts.push_back({static_cast<double>(ns[r]), cells[r][c].error});
    fit_line("colslope", omega_toks[c], pts);
  }
  for (std::size_t r = 0; r < ns.size(); ++r) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t c = 0; c < omegas.size(); ++c)
      if (cells[r][c].state == GridCell::State::Ok && cells[r][c].error > 0.0)
        pts.push_back({omegas[c], cells[r][c].error});
    fit_line("rowslope", "N" + std::to_string(ns[r]), pts);
  }
  // (work, error) pairs for efficiency diagrams; work = f evaluations.
  for (std::size_t r = 0; r < ns.size(); ++r)
    for (std::size_t c = 0; c < omegas.size(); ++c)
      if (cells[r][c].state == GridCell::State::Ok)
        os << "workpoint,N" << ns[r] << "@" << omega_toks[c] << ","
           << cells[r][c].work << "," << format_sci(cells[r][c].error) << ",1\n";
  return kExitOk;
}

int cmd_propcheck() {
  const std::vector<std::pair<std::string, ButcherTableau>> tableaus = {
      {"rk2", rk2_midpoint()}, {"rk3", rk3_heun()}, {"rk4", rk4_classical()}};
  std::mt19937 gen(20240611u);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  bool ok = true;
  double worst_exact = 0.0, worst_alias = 0.0;
  for (const auto& [name, tab] : tableaus) {
    for (int m : {4, 8, 16}) {
      for (int dir : {1, -1}) {
        // Random trig polynomial with all |k| < M: whole-period exactness.
        std::vector<TrigMode> modes;
        double amp_sum = 0.0;
        for (int k = -(m - 1); k <= m - 1; ++k) {
          if (k == 0) continue;
          TrigMode md{k, {amp(gen), amp(gen)}};
          amp_sum += std::abs(md.amplitude);
          modes.push_back(md);
        }
        const double defect = quadrature_exactness_defect(tab, modes, m, dir);
        worst_exact = std::max(worst_exact, defect / amp_sum);
        if (defect > 1e-12 * amp_sum) ok = false;
        // Alias mode k = M: defect must match the closed form.
        const double alias =
            quadrature_exactness_defect(tab, {{m, {1.0, 0.0}}}, m, dir);
        const double closed = alias_defect_closed_form(tab, m, m);
        worst_alias = std::max(worst_alias, std::fabs(alias - closed));
        if (std::fabs(alias - closed) > 1e-12) ok = false;
      }
    }
  }
  // Degenerate grid: one step per period, k = 1 is already an alias.
  {
    const auto tab = rk4_classical();
    const double alias = quadrature_exactness_defect(tab, {{1, {1.0, 0.0}}}, 1, 1);
    const double closed = alias_defect_closed_form(tab, 1, 1);
    worst_alias = std::max(worst_alias, std::fabs(alias - closed));
    if (std::fabs(alias - closed) > 1e-12) ok = false;
  }
  std::cout << "max scaled whole-period defect: " << format_sci(worst_exact) << "\n";
  std::cout << "max |alias defect - closed form|: " << format_sci(worst_alias) << "\n";
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stroboscopic averaging for oscillatory delay problems"};
  app.require_subcommand(1);
  RunSpec spec;

  auto add_common = [&spec](CLI::App* cmd, bool with_metric) {
    cmd->add_option("--problem", spec.problem, "toggle | scaled-toggle | synthetic");
    cmd->add_option("--method", spec.method, "sam-rk2 | sam-rk3 | sam-rk4");
    cmd->add_option("--omega", spec.omega_csv, "comma list; '16pi' keeps pi exact");
    cmd->add_option("--N", spec.n_csv, "comma list of macro step counts");
    cmd->add_option("--micro-per-period", spec.micro_per_period,
                    "micro steps per fast period (default 2N)");
    cmd->add_option("--case", spec.case_mode, "auto | force1 | force2");
    cmd->add_option("--out", spec.out_path, "output CSV path (default stdout)");
    if (with_metric) {
      cmd->add_option("--metric", spec.metric, "strobo | endpoint");
      cmd->add_option("--component", spec.component, "0-based solution component");
      cmd->add_option("--ref-K", spec.ref_k, "reference steps per segment (0 = auto)");
    }
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "macro grid of one run as CSV");
  add_common(solve_cmd, false);
  CLI::App* table_cmd = app.add_subcommand("table", "error grid over (N, omega)");
  add_common(table_cmd, true);
  CLI::App* order_cmd = app.add_subcommand("order", "fitted slopes and work units");
  add_common(order_cmd, true);
  app.add_subcommand("propcheck", "whole-period exactness and alias checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (app.got_subcommand("solve")) return cmd_solve(spec);
    if (app.got_subcommand("table")) return cmd_table(spec);
    if (app.got_subcommand("order")) return cmd_order(spec);
    return cmd_propcheck();
  } catch (const ValidityError& e) {
    const auto& issue = e.issue();
    std::cerr << "validity failure: " << e.what() << " (n=" << issue.macro_step
              << ", j=" << issue.macro_stage << ", k=" << issue.offset << ")\n";
    return kExitValidity;
  } catch (const BlowUpError& e) {
    std::cerr << "numerical blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
