#include "mblab/harness/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <random>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fftw3.h>
#include <omp.h>

#include "mblab/resonance.hpp"

namespace mblab::harness {
namespace {

namespace fs = std::filesystem;

struct Context {
  const RunConfig& cfg;
  std::ostream& log;
  RunResult& result;
  Json& body;  // subcommand-specific manifest section

  std::string path(const std::string& name) const { return (fs::path(cfg.out_dir) / name).string(); }
  void csv(const std::string& name, const CsvTable& t) {
    write_csv(path(name), t);
    result.artifacts.push_back(name);
  }
  void warn(const std::string& w) {
    log << "warning: " << w << '\n';
    result.warnings.push_back(w);
  }
};

Json tail_json(const TailReport& t) {
  return {{"rho_max", t.rho_max},       {"decay_exponent", t.decay_exponent},
          {"tail", t.tail},             {"mass", t.mass},
          {"relative", t.relative}};
}

Json residuals_json(const Residuals& r) {
  return {{"bc_u", r.bc_u},     {"bc_v", r.bc_v},     {"ic_u", r.ic_u},
          {"ic_v", r.ic_v},     {"fixed_point", r.fixed_point},
          {"pde_u", r.pde_u},   {"pde_v", r.pde_v},   {"pde_floor", r.pde_floor}};
}

Json report_json(const IterationReport& rep) {
  Json it = Json::array();
  for (const auto& r : rep.iterations) it.push_back({{"du", r.du}, {"dv", r.dv}, {"ratio", r.ratio}});
  return {{"converged", rep.converged},
          {"accepted_T", rep.accepted_T},
          {"attempted_T", rep.attempted_T},
          {"extension_u", to_string(rep.extension_u)},
          {"extension_v", to_string(rep.extension_v)},
          {"exponents", {{"eps", rep.exponents.eps}, {"b", rep.exponents.b},
                         {"gamma", rep.exponents.gamma}}},
          {"compatible", rep.compatible},
          {"cell_measure", rep.cell_measure},
          {"tail_u", tail_json(rep.tail_u)},
          {"tail_v", tail_json(rep.tail_v)},
          {"residuals", residuals_json(rep.residuals)},
          {"iterations", it}};
}

void flag_solution(Context& c, const IterationReport& rep, double requested_T) {
  if (rep.accepted_T < requested_T)
    c.warn("T halved from " + format_number(requested_T) + " to " +
           format_number(rep.accepted_T) + " before the iteration converged");
  if (!rep.compatible)
    c.warn("data are not compatible at the corner (u0(0) != f(0) or v0(0) != g(0))");
}

// ------------------------------------------------------------------ solve

void write_solution(Context& c, const Solution& sol, const ProblemSpec& problem,
                    const std::string& prefix) {
  const double T = sol.report.accepted_T;
  const QuadrantView qu = restrict_to_quadrant(sol.u, T);
  const QuadrantView qv = restrict_to_quadrant(sol.v, T);
  CsvTable field{{{"x", "length"}, {"t", "time"}, {"u", "amplitude"}, {"v", "amplitude"}}, {}};
  for (std::size_t it = 0; it < qu.t.size(); ++it)
    for (std::size_t ix = 0; ix < qu.x.size(); ++ix)
      field.add_row({qu.x[ix], qu.t[it], qu.at(ix, it), qv.at(ix, it)});
  c.csv(prefix + "solution.csv", field);

  CsvTable trace{{{"t", "time"}, {"u(0,t)", "amplitude"}, {"f", "amplitude"},
                  {"v(0,t)", "amplitude"}, {"g", "amplitude"}}, {}};
  for (std::size_t it = 0; it < qu.t.size(); ++it) {
    const double t = qu.t[it];
    trace.add_row({t, qu.at(0, it), problem.f.at(t), qv.at(0, it), problem.g.at(t)});
  }
  c.csv(prefix + "boundary_trace.csv", trace);

  CsvTable iters{{{"k", "index"}, {"du", "Y norm"}, {"dv", "Y_alpha norm"}, {"ratio", "1"}}, {}};
  for (std::size_t k = 0; k < sol.report.iterations.size(); ++k) {
    const auto& r = sol.report.iterations[k];
    iters.add_row({double(k + 1), r.du, r.dv, r.ratio});
  }
  c.csv(prefix + "iterations.csv", iters);
}

void cmd_solve(Context& c) {
  const ProblemSpec problem = build_problem(c.cfg);
  c.log << "solve: alpha=" << problem.alpha << " s=" << problem.s << " T=" << c.cfg.solver.T
        << '\n';
  const Solution sol = picard_solve(problem, c.cfg.solver);
  const auto& R = sol.report.residuals;
  c.log << "converged in " << sol.report.iterations.size() << " iterations at T="
        << sol.report.accepted_T << "; bc " << R.bc_u << " " << R.bc_v << ", ic " << R.ic_u
        << " " << R.ic_v << ", fixed point " << R.fixed_point << '\n';
  flag_solution(c, sol.report, c.cfg.solver.T);
  write_solution(c, sol, problem, "");
  c.body = report_json(sol.report);
}

// --------------------------------------------------------------- probes

Json stats_json(const ProbeStats& st) {
  return {{"max", st.max},
          {"mean", st.mean},
          {"argmax_seed", st.argmax_seed},
          {"evaluated", st.evaluated},
          {"skipped", st.skipped},
          {"box_halfwidth", st.box_halfwidth},
          {"horizon", st.horizon},
          {"cell_measure", st.cell_measure},
          {"boundary_exponent", st.boundary_exponent}};
}

CsvTable ratio_table(const ProbeStats& st) {
  CsvTable t{{{"member", "index"}, {"ratio", "1"}}, {}};
  for (std::size_t i = 0; i < st.ratios.size(); ++i) t.add_row({double(i), st.ratios[i]});
  return t;
}

void cmd_probe_bilinear(Context& c) {
  std::vector<BilinearEstimate> list;
  if (c.cfg.bilinear_which == "all")
    list = {BilinearEstimate::Bil1, BilinearEstimate::Bil2, BilinearEstimate::Bil3,
            BilinearEstimate::Bil4};
  else
    list = {bilinear_from_string(c.cfg.bilinear_which)};
  for (auto e : list) {
    BilinearProbeConfig p = c.cfg.bilinear;
    p.which = e;
    validate(p);
  }
  CsvTable summary{{{"estimate", "index"}, {"max", "1"}, {"mean", "1"}, {"evaluated", "count"},
                    {"skipped", "count"}}, {}};
  c.body = Json::object();
  for (auto e : list) {
    BilinearProbeConfig p = c.cfg.bilinear;
    p.which = e;
    p.seed = c.cfg.seed;
    const ProbeStats st = bilinear_ratio_probe(p);
    c.log << to_string(e) << ": max " << st.max << ", mean " << st.mean << " over "
          << st.evaluated << " members\n";
    if (st.boundary_exponent) c.warn(to_string(e) + " run at the boundary exponent b = 7/16");
    if (st.skipped) c.warn(to_string(e) + ": " + std::to_string(st.skipped) + " members skipped");
    c.csv("bilinear_" + to_string(e) + ".csv", ratio_table(st));
    summary.add_row({double(int(e) + 1), st.max, st.mean, double(st.evaluated), double(st.skipped)});
    c.body[to_string(e)] = stats_json(st);
  }
  c.csv("bilinear_summary.csv", summary);
}

void cmd_verify_linear(Context& c) {
  std::vector<LinearEstimate> list;
  if (c.cfg.linear_which == "all")
    list = {LinearEstimate::Kato, LinearEstimate::KatoTrace, LinearEstimate::Strichartz4,
            LinearEstimate::Sobolev, LinearEstimate::KatoP};
  else
    list = {linear_from_string(c.cfg.linear_which)};
  for (auto e : list) {
    LinearProbeConfig p = c.cfg.linear;
    p.which = e;
    validate(p);
  }
  CsvTable summary{{{"estimate", "index"}, {"max", "1"}, {"mean", "1"}, {"evaluated", "count"},
                    {"skipped", "count"}}, {}};
  c.body = Json::object();
  for (auto e : list) {
    LinearProbeConfig p = c.cfg.linear;
    p.which = e;
    p.seed = c.cfg.seed;
    const ProbeStats st = linear_estimate_probe(p);
    c.log << to_string(e) << ": max " << st.max << ", mean " << st.mean << " over "
          << st.evaluated << " members\n";
    if (st.skipped) c.warn(to_string(e) + ": " + std::to_string(st.skipped) + " members skipped");
    c.csv("linear_" + to_string(e) + ".csv", ratio_table(st));
    summary.add_row({double(int(e)), st.max, st.mean, double(st.evaluated), double(st.skipped)});
    c.body[to_string(e)] = stats_json(st);
  }
  c.csv("linear_summary.csv", summary);
}

// ------------------------------------------------------------ resonance

void cmd_resonance(Context& c) {
  CsvTable roots{{{"alpha", "1"}, {"r1", "1"}, {"r2", "1"}, {"vieta_sum", "1"},
                  {"vieta_product", "1"}}, {}};
  CsvTable ids{{{"alpha", "1"}, {"max_rel_primary", "1"}, {"max_rel_mixed", "1"}}, {}};
  CsvTable regions{{{"alpha", "1"}, {"c", "1"}, {"xi/xi1", "1"}, {"region", "A=0,B=1,C=2"}}, {}};
  std::mt19937_64 rng(c.cfg.seed);
  std::uniform_real_distribution<double> fr(-100.0, 100.0), tr(-1000.0, 1000.0);
  c.body = Json::array();
  for (double a : c.cfg.resonance_alphas) {
    const ResonanceRoots r = resonance_roots(a);
    const double vieta = 3.0 * a / (a - 1.0);
    roots.add_row({a, r.r1, r.r2, r.r1 + r.r2 - vieta, r.r1 * r.r2 - vieta});
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < c.cfg.resonance_samples; ++i) {
      const double x1 = fr(rng), x2 = fr(rng), t1 = tr(rng), t2 = tr(rng);
      m1 = std::max(m1, resonance_identity_relative(a, x1, x2, t1, t2, ResonanceIdentity::Primary));
      m2 = std::max(m2, resonance_identity_relative(a, x1, x2, t1, t2, ResonanceIdentity::Mixed));
    }
    ids.add_row({a, m1, m2});
    const double cmax = max_region_constant(a);
    const double cw = c.cfg.region_c > 0.0 ? c.cfg.region_c : 0.5 * (1.0 + cmax);
    for (int k = -60; k <= 20; ++k) {
      const double ratio = 0.1 * k;
      regions.add_row({a, cw, ratio, double(int(region_classify(ratio, 1.0, a, cw)))});
    }
    c.log << "alpha=" << a << ": r1=" << r.r1 << " r2=" << r.r2 << ", identity residuals "
          << m1 << " " << m2 << '\n';
    c.body.push_back({{"alpha", a}, {"r1", r.r1}, {"r2", r.r2}, {"max_rel_primary", m1},
                      {"max_rel_mixed", m2}, {"region_c", cw}, {"max_region_c", cmax}});
  }
  c.csv("resonance_roots.csv", roots);
  c.csv("resonance_identities.csv", ids);
  c.csv("resonance_regions.csv", regions);
}

// ---------------------------------------------------------- convergence

void cmd_convergence(Context& c) {
  const ProblemSpec problem = build_problem(c.cfg);
  if (c.cfg.levels < 2) throw ValidationError("convergence.levels must be at least 2");
  std::vector<Solution> sols;
  for (std::size_t k = 0; k < c.cfg.levels; ++k) {
    SolverParams p = c.cfg.solver;
    p.nx <<= k;
    p.nt <<= k;
    c.log << "level " << k << ": nx=" << p.nx << " nt=" << p.nt << '\n';
    sols.push_back(picard_solve(problem, p));
    flag_solution(c, sols.back().report, p.T);
  }
  const Solution& fine = sols.back();
  const double Tf = fine.report.accepted_T;
  const QuadrantView fu = restrict_to_quadrant(fine.u, Tf), fv = restrict_to_quadrant(fine.v, Tf);
  CsvTable t{{{"level", "index"}, {"nx", "count"}, {"nt", "count"}, {"dx", "length"},
              {"dt", "time"}, {"T", "time"}, {"iterations", "count"}, {"bc_u", "1"},
              {"bc_v", "1"}, {"ic_u", "1"}, {"ic_v", "1"}, {"fixed_point", "1"},
              {"pde_u", "amplitude"}, {"pde_v", "amplitude"}, {"diff_to_finest", "1"}}, {}};
  c.body = Json::array();
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const Solution& s = sols[k];
    const double T = s.report.accepted_T;
    double diff = std::nan("");
    if (k + 1 < sols.size() && T == Tf) {
      const QuadrantView qu = restrict_to_quadrant(s.u, T), qv = restrict_to_quadrant(s.v, T);
      const std::size_t step = std::size_t(1) << (sols.size() - 1 - k);
      double num = 0.0, den = 0.0;
      for (std::size_t it = 0; it < qu.t.size() && it * step < fu.t.size(); ++it)
        for (std::size_t ix = 0; ix < qu.x.size() && ix * step < fu.x.size(); ++ix) {
          const double a = fu.at(ix * step, it * step), b = fv.at(ix * step, it * step);
          num += std::pow(qu.at(ix, it) - a, 2) + std::pow(qv.at(ix, it) - b, 2);
          den += a * a + b * b;
        }
      diff = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    } else if (k + 1 == sols.size()) {
      diff = 0.0;
    }
    const auto& g = s.u.grid();
    const auto& R = s.report.residuals;
    t.add_row({double(k), double(g.nx()), double(g.nt()), g.space().spacing(), g.dt(), T,
               double(s.report.iterations.size()), R.bc_u, R.bc_v, R.ic_u, R.ic_v,
               R.fixed_point, R.pde_u, R.pde_v, diff});
    Json rep = report_json(s.report);
    rep["diff_to_finest"] = diff;
    c.body.push_back(rep);
  }
  c.csv("convergence.csv", t);
  write_solution(c, fine, problem, "finest_");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"solve", "probe-bilinear", "verify-linear",
                                              "resonance-report", "convergence-study"};
  return names;
}

Json config_echo(const RunConfig& cfg) {
  Json out = Json::object();
  for (const auto& k : key_table()) out[k.section][k.key] = k.get(cfg);
  return out;
}

Json version_info() {
  return {{"mblab", "1.0.0"},
          {"fftw", std::string(fftw_version)},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__},
          {"openmp", _OPENMP}};
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  RunResult result;
  Json body;
  const auto start = std::chrono::steady_clock::now();
  Context c{cfg, log, result, body};
  try {
    const auto& names = subcommands();
    if (std::find(names.begin(), names.end(), cfg.subcommand) == names.end())
      throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    if (cfg.threads < 1) throw ValidationError("threads must be at least 1");
    fs::create_directories(cfg.out_dir);
    omp_set_num_threads(cfg.threads);

    if (cfg.subcommand == "solve") cmd_solve(c);
    else if (cfg.subcommand == "probe-bilinear") cmd_probe_bilinear(c);
    else if (cfg.subcommand == "verify-linear") cmd_verify_linear(c);
    else if (cfg.subcommand == "resonance-report") cmd_resonance(c);
    else cmd_convergence(c);

    if (cfg.strict && !result.warnings.empty()) {
      result.exit_code = kExitValidation;
      result.error = "strict mode: " + std::to_string(result.warnings.size()) +
                     " warning(s) treated as errors";
    }
  } catch (const ValidationError& e) {
    result.exit_code = kExitValidation;
    result.error = e.what();
  } catch (const NonConvergenceError& e) {
    result.exit_code = kExitNonConvergence;
    result.error = e.what();
    body["ratios"] = e.ratios();
  } catch (const QuadratureTailError& e) {
    result.exit_code = kExitQuadratureTail;
    result.error = e.what();
    body["tail"] = e.tail();
  } catch (const std::exception& e) {
    result.exit_code = kExitFailure;
    result.error = e.what();
  }
  if (!result.error.empty()) log << "error: " << result.error << '\n';
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  result.manifest = {{"subcommand", cfg.subcommand},
                     {"config_path", cfg.config_path},
                     {"config", config_echo(cfg)},
                     {"versions", version_info()},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads},
                     {"exit_code", result.exit_code},
                     {"error", result.error},
                     {"warnings", result.warnings},
                     {"artifacts", result.artifacts},
                     {"result", body},
                     {"wall_time_s", wall}};
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (!ec) {
    try {
      write_json(c.path("manifest.json"), result.manifest);
    } catch (const std::exception& e) {
      log << "error: " << e.what() << '\n';
    }
  }
  return result;
}

}  // namespace mblab::harness
