#include "mblab/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mblab/norms.hpp"

namespace mblab::harness {
namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "auto";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& want) {
  throw ValidationError("config key '" + key + "': cannot read '" + value + "' as " + want);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "auto") return std::nan("");
  if (v == "inf") return kInf;
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad(key, v, "a number");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    bad(key, v, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "a boolean");
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) bad(key, raw, "a comma-separated list of numbers");
  return out;
}

std::string list_str(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

KeyInfo num(std::string section, std::string key, std::string desc, double RunConfig::*field) {
  const std::string full = section + "." + key;
  return {section, key, "number", std::move(desc),
          [=](RunConfig& c, const std::string& v) { c.*field = to_double(full, v); },
          [=](const RunConfig& c) { return fmt(c.*field); }};
}

template <class Get>
KeyInfo num_at(std::string section, std::string key, std::string desc, Get ref) {
  const std::string full = section + "." + key;
  return {section, key, "number", std::move(desc),
          [=](RunConfig& c, const std::string& v) { ref(c) = to_double(full, v); },
          [=](const RunConfig& c) { return fmt(ref(const_cast<RunConfig&>(c))); }};
}

template <class Int, class Get>
KeyInfo int_at(std::string section, std::string key, std::string desc, Get ref) {
  const std::string full = section + "." + key;
  return {section, key, "integer", std::move(desc),
          [=](RunConfig& c, const std::string& v) { ref(c) = Int(to_u64(full, v)); },
          [=](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c))); }};
}

template <class Get>
KeyInfo str_at(std::string section, std::string key, std::string desc, Get ref) {
  return {section, key, "string", std::move(desc),
          [=](RunConfig& c, const std::string& v) { ref(c) = trim(v); },
          [=](const RunConfig& c) { return ref(const_cast<RunConfig&>(c)); }};
}

template <class Get>
KeyInfo bool_at(std::string section, std::string key, std::string desc, Get ref) {
  const std::string full = section + "." + key;
  return {section, key, "boolean", std::move(desc),
          [=](RunConfig& c, const std::string& v) { ref(c) = to_bool(full, v); },
          [=](const RunConfig& c) {
            return std::string(ref(const_cast<RunConfig&>(c)) ? "true" : "false");
          }};
}

void add_data_keys(std::vector<KeyInfo>& t, const std::string& name, DataSpec RunConfig::*d,
                   const std::string& what) {
  t.push_back(str_at("problem", name, what + ": zero, gaussian, expsin, or csv",
                     [=](RunConfig& c) -> std::string& { return (c.*d).kind; }));
  t.push_back(num_at("problem", name + "_amplitude", what + " amplitude A",
                     [=](RunConfig& c) -> double& { return (c.*d).amplitude; }));
  t.push_back(num_at("problem", name + "_width", what + " width w",
                     [=](RunConfig& c) -> double& { return (c.*d).width; }));
  t.push_back(str_at("problem", name + "_path", what + " CSV path (kind = csv)",
                     [=](RunConfig& c) -> std::string& { return (c.*d).path; }));
}

std::vector<KeyInfo> build_table() {
  std::vector<KeyInfo> t;
  // run
  t.push_back(str_at("run", "out", "output directory",
                     [](RunConfig& c) -> std::string& { return c.out_dir; }));
  t.push_back(int_at<std::uint64_t>("run", "seed", "base seed for every random ensemble",
                                    [](RunConfig& c) -> std::uint64_t& { return c.seed; }));
  t.push_back(int_at<int>("run", "threads", "OpenMP threads (1 gives byte-identical output)",
                          [](RunConfig& c) -> int& { return c.threads; }));
  t.push_back(bool_at("run", "strict", "treat flagged warnings as errors",
                      [](RunConfig& c) -> bool& { return c.strict; }));

  // problem
  t.push_back(num("problem", "alpha", "dispersion ratio, 0 < alpha < 1", &RunConfig::alpha));
  t.push_back(num("problem", "s", "regularity, 0 < s < 2, s != 1/2, 3/2", &RunConfig::s));
  add_data_keys(t, "u0", &RunConfig::u0, "initial datum u0(x)");
  add_data_keys(t, "v0", &RunConfig::v0, "initial datum v0(x)");
  add_data_keys(t, "f", &RunConfig::f, "boundary datum f(t) = u(0, t)");
  add_data_keys(t, "g", &RunConfig::g, "boundary datum g(t) = v(0, t)");
  t.push_back(num("problem", "data_extent", "sampling extent of analytic data",
                  &RunConfig::data_extent));
  t.push_back(int_at<std::size_t>("problem", "data_intervals",
                                  "sampling intervals of analytic data",
                                  [](RunConfig& c) -> std::size_t& { return c.data_intervals; }));

  // solver
  using SP = SolverParams;
  auto sp = [](auto m) { return [=](RunConfig& c) -> auto& { return c.solver.*m; }; };
  t.push_back(int_at<std::size_t>("solver", "nx", "spatial nodes (power of two)", sp(&SP::nx)));
  t.push_back(num_at("solver", "box_halfwidth", "spatial box [-L, L)", sp(&SP::box_halfwidth)));
  t.push_back(int_at<std::size_t>("solver", "nt", "time nodes on [-4T, 4T) (power of two)",
                                  sp(&SP::nt)));
  t.push_back(num_at("solver", "T", "local existence time (halved on failure)", sp(&SP::T)));
  t.push_back(int_at<std::size_t>("solver", "n_beta", "boundary quadrature nodes (multiple of 16)",
                                  sp(&SP::n_beta)));
  t.push_back(num_at("solver", "picard_tol", "relative Picard stopping tolerance",
                     sp(&SP::picard_tol)));
  t.push_back(int_at<int>("solver", "max_iters", "Picard iterations per attempt",
                          sp(&SP::max_iters)));
  t.push_back(int_at<int>("solver", "max_halvings", "T halvings before giving up",
                          sp(&SP::max_halvings)));
  t.push_back(num_at("solver", "tail_tol", "relative boundary-quadrature tail tolerance",
                     sp(&SP::tail_tol)));
  t.push_back({"solver", "extension", "string",
               "initial-data extension: auto, zero, reflect1, reflect2, reflect3",
               [](RunConfig& c, const std::string& v) {
                 const std::string x = trim(v);
                 if (x == "auto") c.solver.extension.reset();
                 else c.solver.extension = extension_from_string(x);
               },
               [](const RunConfig& c) {
                 return c.solver.extension ? to_string(*c.solver.extension) : std::string("auto");
               }});
  t.push_back(bool_at("solver", "boundary_terms", "false solves the whole-line problem",
                      sp(&SP::boundary_terms)));
  t.push_back(num_at("solver", "b", "X^{s,b} exponent override (auto from s)", sp(&SP::b)));
  t.push_back(num_at("solver", "gamma", "V^gamma exponent override (auto from s)",
                     sp(&SP::gamma)));

  // bilinear
  using BC = BilinearProbeConfig;
  auto bc = [](auto m) { return [=](RunConfig& c) -> auto& { return c.bilinear.*m; }; };
  t.push_back(str_at("bilinear", "which", "all, bil1, bil2, bil3, or bil4",
                     [](RunConfig& c) -> std::string& { return c.bilinear_which; }));
  t.push_back(num_at("bilinear", "s", "regularity", bc(&BC::s)));
  t.push_back(num_at("bilinear", "b", "X^{s,b} exponent", bc(&BC::b)));
  t.push_back(num_at("bilinear", "gamma", "V^gamma exponent", bc(&BC::gamma)));
  t.push_back(num_at("bilinear", "alpha", "dispersion ratio", bc(&BC::alpha)));
  t.push_back(num_at("bilinear", "plus", "offset read for '1/2+'", bc(&BC::plus)));
  t.push_back(int_at<std::size_t>("bilinear", "ensemble", "members", bc(&BC::ensemble)));
  t.push_back(int_at<std::size_t>("bilinear", "packets", "wave packets per field",
                                  bc(&BC::packets)));
  t.push_back(int_at<std::size_t>("bilinear", "nx", "spatial nodes", bc(&BC::nx)));
  t.push_back(int_at<std::size_t>("bilinear", "nt", "time nodes", bc(&BC::nt)));
  t.push_back(num_at("bilinear", "box_halfwidth", "spatial box [-L, L)", bc(&BC::box_halfwidth)));
  t.push_back(num_at("bilinear", "horizon", "time window [-T, T)", bc(&BC::horizon)));

  // linear
  using LC = LinearProbeConfig;
  auto lc = [](auto m) { return [=](RunConfig& c) -> auto& { return c.linear.*m; }; };
  t.push_back(str_at("linear", "which",
                     "all, kato, kato_trace, strichartz4, sobolev, or katop",
                     [](RunConfig& c) -> std::string& { return c.linear_which; }));
  t.push_back(num_at("linear", "s", "kato_trace data regularity", lc(&LC::s)));
  t.push_back(num_at("linear", "b", "strichartz4 exponent (> 3/8)", lc(&LC::b)));
  t.push_back(num_at("linear", "theta", "strichartz4 derivative gain in [0, 1/8]",
                     lc(&LC::theta)));
  t.push_back(num_at("linear", "p", "katop exponent in (2, inf)", lc(&LC::p)));
  t.push_back(num_at("linear", "plus", "offset read for '+'", lc(&LC::plus)));
  t.push_back(int_at<std::size_t>("linear", "ensemble", "members", lc(&LC::ensemble)));
  t.push_back(int_at<std::size_t>("linear", "packets", "wave packets per field",
                                  lc(&LC::packets)));
  t.push_back(int_at<std::size_t>("linear", "nx", "spatial nodes", lc(&LC::nx)));
  t.push_back(int_at<std::size_t>("linear", "nt", "time nodes", lc(&LC::nt)));
  t.push_back(num_at("linear", "box_halfwidth", "spatial box [-L, L)", lc(&LC::box_halfwidth)));
  t.push_back(num_at("linear", "horizon", "time window [-T, T)", lc(&LC::horizon)));
  t.push_back(num_at("linear", "width_min", "smallest Gaussian width (kato data)",
                     lc(&LC::width_min)));
  t.push_back(num_at("linear", "width_max", "largest Gaussian width (kato data)",
                     lc(&LC::width_max)));

  // resonance
  t.push_back({"resonance", "alphas", "list", "comma-separated alpha values for the tables",
               [](RunConfig& c, const std::string& v) {
                 c.resonance_alphas = to_list("resonance.alphas", v);
               },
               [](const RunConfig& c) { return list_str(c.resonance_alphas); }});
  t.push_back(int_at<std::size_t>("resonance", "samples", "random tuples per identity sweep",
                                  [](RunConfig& c) -> std::size_t& {
                                    return c.resonance_samples;
                                  }));
  t.push_back(num("resonance", "region_c", "window constant; 0 picks the admissible midpoint",
                  &RunConfig::region_c));

  // convergence
  t.push_back(int_at<std::size_t>("convergence", "levels",
                                  "refinement levels (nx and nt doubled per level)",
                                  [](RunConfig& c) -> std::size_t& { return c.levels; }));
  return t;
}

void apply_tree(RunConfig& cfg, const boost::property_tree::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ValidationError("config line '" + section + "' lies outside any [section]");
    for (const auto& [key, value] : body) set_key(cfg, section, key, value.data());
  }
}

}  // namespace

const std::vector<KeyInfo>& key_table() {
  static const std::vector<KeyInfo> table = build_table();
  return table;
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
  for (const auto& k : key_table()) {
    if (k.section == section && k.key == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw ValidationError("unknown config key '" + section + "." + key + "'");
}

RunConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  apply_tree(cfg, tree);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    RunConfig cfg = parse_config(ss.str());
    cfg.config_path = path;
    return cfg;
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

namespace {

HalfLineFunction build_data(const DataSpec& d, const RunConfig& cfg, double s,
                            const std::string& name) {
  const double A = d.amplitude, w = d.width;
  if (d.kind == "csv") {
    if (d.path.empty()) throw ValidationError(name + " = csv needs " + name + "_path");
    return HalfLineFunction::from_csv(d.path, s);
  }
  if (d.kind != "zero" && !(w > 0.0))
    throw ValidationError(name + "_width must be positive");
  if (d.kind == "zero" || A == 0.0)
    return HalfLineFunction::zero(cfg.data_extent, cfg.data_intervals, s);
  if (d.kind == "gaussian")
    return HalfLineFunction::from_function(
        [=](double x) { return A * std::exp(-x * x / (2.0 * w * w)); }, cfg.data_extent,
        cfg.data_intervals, s);
  if (d.kind == "expsin")
    return HalfLineFunction::from_function(
        [=](double x) { return A * std::exp(-x / w) * std::sin(x / w); }, cfg.data_extent,
        cfg.data_intervals, s);
  throw ValidationError("unknown data kind '" + d.kind + "' for " + name +
                        " (expected zero, gaussian, expsin, csv)");
}

}  // namespace

ProblemSpec build_problem(const RunConfig& cfg) {
  const double sb = (cfg.s + 1.0) / 3.0;
  ProblemSpec p{cfg.alpha, cfg.s, build_data(cfg.u0, cfg, cfg.s, "u0"),
                build_data(cfg.v0, cfg, cfg.s, "v0"), build_data(cfg.f, cfg, sb, "f"),
                build_data(cfg.g, cfg, sb, "g")};
  p.validate();
  return p;
}

std::string config_reference_markdown() {
  const RunConfig defaults;
  std::ostringstream out;
  out << "# Configuration reference\n\n"
      << "Config files are INI-style: `[section]` headers, `key = value` lines, and `#` or `;`\n"
      << "comments. Unknown keys are rejected. `--seed`, `--out`, `--threads` and `--strict`\n"
      << "on the command line override the `[run]` section. Numbers accept `auto` where a\n"
      << "derived default exists and `inf` where infinity is meaningful.\n\n"
      << "Generated by `mblab config-reference`.\n";
  std::string section;
  for (const auto& k : key_table()) {
    if (k.section != section) {
      section = k.section;
      out << "\n## [" << section << "]\n\n| key | type | default | meaning |\n|---|---|---|---|\n";
    }
    out << "| `" << k.key << "` | " << k.type << " | `" << k.get(defaults) << "` | "
        << k.description << " |\n";
  }
  return out.str();
}

}  // namespace mblab::harness
