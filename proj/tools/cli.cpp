#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "bellqft/errors.hpp"
#include "bellqft/reproduce.hpp"
#include "bellqft/version.hpp"

namespace bellqft::cli {

std::uint64_t fnv1a(const std::string& text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}
  void comment(const std::string& line) { os_ << "# " << line << '\n'; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << quote(cells[i]);
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

std::string flag_name(const std::string& param) {
  std::string f = param;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

// Option storage for every subcommand; CLI11 binds into these fields.
struct State {
  std::string family = "lorentz";
  std::uint64_t seed = 0;
  std::size_t points = 1u << 16;
  unsigned replicates = 8;
  double mass = MassParam::kInfraredDefault;
  std::string scheme = "qmc";
  std::string out;

  // kernels-verify
  std::size_t verify_points = 201;

  // smear
  std::string bump_f = "side=right,R=1,sharpness=2";
  std::string bump_g = "side=left,R=1,sharpness=2";
  std::string quantity = "hadamard";
  std::string route = "both";

  // eval-tt, eval-diamond, scan, optimize
  std::map<std::string, std::map<std::string, std::optional<double>>> params;
  std::string method = "gauss-kronrod";

  // scan
  std::string scan_mode = "overlap";
  std::string axis1, axis2;
  int figure = 0;
  std::size_t figure_points = 50;

  // optimize
  std::string opt_mode = "tt";
  std::string objective = "abs";
  std::size_t budget = 2000;
  std::size_t starts = 0;
  std::vector<std::string> space;
  std::vector<double> target{0.992, 0.0, 0.0, 0.992};
  std::size_t final_points = 125000;
  unsigned final_replicates = 8;
  std::string trace;

  // reproduce
  std::size_t fit_budget = 300;
  std::size_t tt_budget = 1000;
  std::size_t grid = 50;
  std::size_t search_points = 25000;
  unsigned search_replicates = 4;
};

void add_model_options(CLI::App* sub, State& st) {
  auto& slots = st.params[sub->get_name()];
  for (const auto& name : ModelPoint::names()) {
    sub->add_option(flag_name(name), slots[name], "model parameter " + name);
  }
}

ModelPoint model_point(const State& st, const std::string& command, ModelPoint p) {
  auto it = st.params.find(command);
  if (it == st.params.end()) return p;
  for (const auto& [name, value] : it->second) {
    if (value) p.set(name, *value);
  }
  return p;
}

ModelPoint default_point() {
  ModelPoint p;
  p.bell = kQuotedOptimum;
  p.overlaps = kQuotedFittedOverlaps;
  return p;
}

IntegrationSettings settings_from(const State& st) {
  IntegrationSettings s;
  if (st.scheme == "qmc") {
    s.scheme = Scheme::QMC;
  } else if (st.scheme == "mc") {
    s.scheme = Scheme::MC;
  } else {
    throw ConfigError("scheme must be qmc or mc");
  }
  s.points_per_replicate = st.points;
  s.replicates = st.replicates;
  s.seed = st.seed;
  s.validate();
  return s;
}

CorrelatorOptions correlator_from(const State& st) {
  if (st.method == "gauss-kronrod") return {PairMethod::NestedGaussKronrod};
  if (st.method == "tanh-sinh") return {PairMethod::NestedTanhSinh};
  throw ConfigError("method must be gauss-kronrod or tanh-sinh");
}

EvalContext context_from(const State& st) {
  EvalContext ctx;
  ctx.family = KernelFamily::from_name(st.family);
  ctx.mass = MassParam(st.mass);
  ctx.settings = settings_from(st);
  ctx.correlator = correlator_from(st);
  return ctx;
}

ScanAxis parse_axis(const std::string& spec) {
  // name:lo:hi:n
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw ConfigError("axis '" + spec + "' must look like name:lo:hi:n");
  try {
    const double lo = std::stod(parts[1]);
    const double hi = std::stod(parts[2]);
    const long n = std::stol(parts[3]);
    if (n <= 0) throw ConfigError("axis '" + spec + "' needs a positive point count");
    (void)ModelPoint{}.get(parts[0]);
    return ScanAxis::linspace(parts[0], lo, hi, static_cast<std::size_t>(n));
  } catch (const std::logic_error&) {
    throw ConfigError("axis '" + spec + "' has a malformed number");
  }
}

ParamRange parse_range(const std::string& spec) {
  // name:lo:hi[:linear|log|signed-log[:min_magnitude]]
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 5) {
    throw ConfigError("search range '" + spec + "' must look like name:lo:hi[:scale[:min]]");
  }
  ParamRange r;
  r.name = parts[0];
  (void)ModelPoint{}.get(r.name);
  try {
    r.lower = std::stod(parts[1]);
    r.upper = std::stod(parts[2]);
    if (parts.size() == 5) r.min_magnitude = std::stod(parts[4]);
  } catch (const std::logic_error&) {
    throw ConfigError("search range '" + spec + "' has a malformed number");
  }
  if (parts.size() >= 4) {
    if (parts[3] == "linear") {
      r.scale = Scale::Linear;
    } else if (parts[3] == "log") {
      r.scale = Scale::Log;
    } else if (parts[3] == "signed-log") {
      r.scale = Scale::SignedLog;
    } else {
      throw ConfigError("unknown scale '" + parts[3] + "'");
    }
  }
  r.validate();
  return r;
}

SearchSpace default_space(SearchMode mode) {
  if (mode == SearchMode::Diamond) {
    return {{{"a", 1e-2, 1e2, Scale::Log},
             {"a_p", 1e-2, 1e2, Scale::Log},
             {"b", 1e-2, 1e2, Scale::Log},
             {"b_p", 1e-2, 1e2, Scale::Log},
             {"R", 0.1, 10, Scale::Log},
             {"R_p", 0.1, 10, Scale::Log}}};
  }
  return {{{"eta", -10, 10, Scale::SignedLog, 1e-3},
           {"eta_p", -10, 10, Scale::SignedLog, 1e-3},
           {"sigma", -10, 10, Scale::SignedLog, 1e-3},
           {"sigma_p", -10, 10, Scale::SignedLog, 1e-3},
           {"lambda", 1e-3, 0.999}}};
}

std::vector<std::string> bell_cells(const BellResult& r) {
  return {num(r.value), num(r.terms[0]), num(r.terms[1]), num(r.terms[2]), num(r.terms[3]),
          num(r.num_error)};
}

const std::vector<std::string> kBellColumns = {"value",     "term_ab",    "term_apb",
                                               "term_abp",  "term_apbp",  "error"};

std::vector<std::string> point_cells(const ModelPoint& p, const std::vector<std::string>& names) {
  std::vector<std::string> c;
  for (const auto& n : names) c.push_back(num(p.get(n)));
  return c;
}

template <class... V>
std::vector<std::string> concat(std::vector<std::string> a, const V&... rest) {
  (a.insert(a.end(), rest.begin(), rest.end()), ...);
  return a;
}

const std::vector<std::string> kAmplitudes = {"eta", "eta_p", "sigma", "sigma_p", "lambda"};
const std::vector<std::string> kDiamond = {"a", "a_p", "b", "b_p", "R", "R_p"};
const std::vector<std::string> kOverlapNames = {"alpha", "beta", "gamma", "delta"};

std::vector<std::string> overlap_cells(const Overlaps& o) {
  return {num(o.alpha), num(o.beta), num(o.gamma), num(o.delta)};
}

int cmd_kernels_verify(const State& st, Csv& csv) {
  std::vector<double> grid(st.verify_points);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = grid.size() == 1 ? 0.0 : -5.0 + 10.0 * static_cast<double>(i) / (grid.size() - 1);
  }
  struct Check {
    const char* family;
    const char* target;
    std::function<double(double)> fn;
    bool expect_pass;
  };
  const std::vector<Check> checks = {
      {"sech", "sech(x)", {}, true},
      {"lorentz", "1/(1+x^2)", {}, true},
      {"gauss-exact", "exp(-x^2)", [](double x) { return std::exp(-x * x); }, true},
      {"gauss-paper", "exp(-x^2/4)", [](double x) { return std::exp(-0.25 * x * x); }, true},
      {"gauss-paper", "exp(-x^2)", [](double x) { return std::exp(-x * x); }, false},
  };
  csv.row({"family", "target", "max_error", "tolerance", "status"});
  bool unexpected = false;
  for (const auto& c : checks) {
    const auto rep = verify_fourier_pair(KernelFamily::from_name(c.family), grid, c.fn);
    const bool pass = rep.max_abs_error < 1e-6;
    std::string status = pass ? "pass" : "fail";
    if (!c.expect_pass) status = pass ? "unexpected-pass" : "documented-mismatch";
    if (pass != c.expect_pass) unexpected = true;
    csv.row({c.family, c.target, num(rep.max_abs_error), "1e-06", status});
  }
  return unexpected ? kValidation : kOk;
}

int cmd_smear(const State& st, Csv& csv) {
  const DiamondBump f = DiamondBump::parse(st.bump_f);
  const DiamondBump g = DiamondBump::parse(st.bump_g);
  const MassParam m(st.mass);
  const IntegrationSettings s = settings_from(st);
  if (st.quantity != "hadamard" && st.quantity != "pauli-jordan") {
    throw ConfigError("quantity must be hadamard or pauli-jordan");
  }
  if (st.route != "qmc" && st.route != "momentum" && st.route != "both") {
    throw ConfigError("route must be qmc, momentum or both");
  }
  const bool hadamard = st.quantity == "hadamard";
  csv.row({"quantity", "route", "value", "std_error", "f", "g", "mass", "seed", "points",
           "replicates"});
  auto emit = [&](const char* route, Estimate e) {
    csv.row({st.quantity, route, num(e.value), num(e.std_error), f.to_string(), g.to_string(),
             num(st.mass), std::to_string(st.seed), std::to_string(s.points_per_replicate),
             std::to_string(s.replicates)});
  };
  if (st.route != "momentum") {
    emit(s.scheme == Scheme::QMC ? "qmc" : "mc",
         hadamard ? smeared_hadamard(f, g, m, s) : smeared_pauli_jordan(f, g, m, s));
  }
  if (st.route != "qmc") {
    const ComplexEstimate c = momentum_inner_product(f, g, m);
    emit("momentum", hadamard ? Estimate{c.hadamard(), c.abs_error}
                              : Estimate{c.pauli_jordan(), 2.0 * c.abs_error});
  }
  return kOk;
}

int cmd_eval_tt(const State& st, Csv& csv) {
  const ModelPoint p = model_point(st, "eval-tt", default_point());
  const EvalContext ctx = context_from(st);
  const Evaluation e = evaluate(SearchMode::TTModel, p, ctx);
  csv.row(concat(kBellColumns, kAmplitudes, std::vector<std::string>{"family", "method", "seed"}));
  csv.row(concat(bell_cells(e.bell), point_cells(p, kAmplitudes),
                 std::vector<std::string>{ctx.family.name(), st.method, std::to_string(st.seed)}));
  return kOk;
}

int cmd_eval_diamond(const State& st, Csv& csv) {
  const ModelPoint p = model_point(st, "eval-diamond", default_point());
  const EvalContext ctx = context_from(st);
  const Evaluation e = evaluate(SearchMode::Diamond, p, ctx);
  csv.row(concat(kBellColumns, kOverlapNames,
                 std::vector<std::string>{"alpha_err", "beta_err", "gamma_err", "delta_err"},
                 kAmplitudes, kDiamond, std::vector<std::string>{"family", "seed"}));
  csv.row(concat(bell_cells(e.bell), overlap_cells(*e.overlaps), overlap_cells(*e.overlap_errors),
                 point_cells(p, kAmplitudes), point_cells(p, kDiamond),
                 std::vector<std::string>{ctx.family.name(), std::to_string(st.seed)}));
  return kOk;
}

int cmd_scan(const State& st, const CLI::App& sub, Csv& csv) {
  State local = st;
  ModelPoint fixed = default_point();
  ScanAxis a1, a2;
  if (st.figure != 0) {
    const FigurePreset f = figure_preset(st.figure, st.figure_points);
    fixed = f.fixed;
    a1 = f.eta;
    a2 = f.eta_p;
    if (sub.get_option("--mode")->count() == 0) local.scan_mode = "overlap";
  }
  if (!st.axis1.empty()) a1 = parse_axis(st.axis1);
  if (!st.axis2.empty()) a2 = parse_axis(st.axis2);
  if (a1.name.empty() || a2.name.empty()) throw ConfigError("scan needs --axis1 and --axis2 (or --figure)");
  fixed = model_point(st, "scan", fixed);
  const EvalContext ctx = context_from(local);
  const SearchMode mode = mode_from_name(local.scan_mode);
  const ScanGrid g = scan_grid(mode, a1, a2, fixed, ctx);
  csv.comment("mode: " + std::string(mode_name(mode)) + "; family: " + ctx.family.name());
  std::string fixed_text = "fixed:";
  for (const auto& n : ModelPoint::names()) {
    if (n != a1.name && n != a2.name) fixed_text += " " + n + "=" + num(fixed.get(n));
  }
  csv.comment(fixed_text);
  csv.row({a1.name, a2.name, "value", "error", "exceeds_2"});
  for (std::size_t i = 0; i < a1.values.size(); ++i) {
    for (std::size_t j = 0; j < a2.values.size(); ++j) {
      const std::size_t k = i * a2.values.size() + j;
      csv.row({num(a1.values[i]), num(a2.values[j]), num(g.values[k]), num(g.errors[k]),
               g.exceeds_classical(i, j) ? "1" : "0"});
    }
  }
  return kOk;
}

int cmd_optimize(const State& st, const CLI::App& sub, Csv& csv) {
  ViolationSearch problem;
  problem.mode = mode_from_name(st.opt_mode);
  if (problem.mode == SearchMode::Overlap) throw ConfigError("optimize supports modes tt and diamond");
  if (st.objective == "abs") {
    problem.objective = Objective::AbsValue;
  } else if (st.objective == "overlap") {
    problem.objective = Objective::OverlapMatch;
  } else {
    throw ConfigError("objective must be abs or overlap");
  }
  if (st.target.size() != 4) throw ConfigError("target needs four overlaps");
  problem.target = {st.target[0], st.target[1], st.target[2], st.target[3]};
  problem.base = model_point(st, "optimize", default_point());
  SmearCache cache;
  problem.context = context_from(st);
  problem.context.cache = &cache;
  problem.final_settings = problem.context.settings;
  problem.final_settings.points_per_replicate = st.final_points;
  problem.final_settings.replicates = st.final_replicates;
  problem.final_settings.validate();

  SearchSpace space;
  if (st.space.empty()) {
    space = default_space(problem.mode);
  } else {
    for (const auto& s : st.space) space.params.push_back(parse_range(s));
  }
  (void)sub;
  OptimizerOptions opts;
  opts.budget = st.budget;
  opts.seed = st.seed;
  opts.starts = st.starts;
  const ViolationResult r = maximize_violation(problem, space, opts);

  if (!st.trace.empty()) {
    std::ofstream tf(st.trace);
    if (!tf) throw ConfigError("cannot open trace file '" + st.trace + "'");
    Csv t(tf);
    std::vector<std::string> head = {"evaluation", "start", "objective", "best_so_far"};
    for (const auto& p : space.params) head.push_back(p.name);
    t.row(head);
    for (std::size_t i = 0; i < r.search.trace.size(); ++i) {
      const auto& tp = r.search.trace[i];
      std::vector<std::string> row = {std::to_string(i), std::to_string(tp.start),
                                      num(tp.objective), num(tp.best_so_far)};
      for (double v : tp.params) row.push_back(num(v));
      t.row(row);
    }
  }

  std::vector<std::string> head = {"objective", "evaluations"};
  std::vector<std::string> row = {num(r.search.best_objective), std::to_string(r.search.evaluations)};
  head = concat(head, kBellColumns, kAmplitudes);
  row = concat(row, bell_cells(r.evaluation.bell), point_cells(r.best, kAmplitudes));
  if (problem.mode == SearchMode::Diamond) {
    head = concat(head, kDiamond, kOverlapNames,
                  std::vector<std::string>{"alpha_err", "beta_err", "gamma_err", "delta_err"});
    row = concat(row, point_cells(r.best, kDiamond), overlap_cells(*r.evaluation.overlaps),
                 overlap_cells(*r.evaluation.overlap_errors));
  }
  head = concat(head, std::vector<std::string>{"family", "seed"});
  row = concat(row, std::vector<std::string>{problem.context.family.name(), std::to_string(st.seed)});
  csv.row(head);
  csv.row(row);
  return kOk;
}

int cmd_reproduce(const State& st, Csv& csv) {
  ReproduceOptions o;
  o.seed = st.seed;
  o.mass = MassParam(st.mass);
  o.search_settings.points_per_replicate = st.search_points;
  o.search_settings.replicates = st.search_replicates;
  o.search_settings.validate();
  o.final_settings.points_per_replicate = st.final_points;
  o.final_settings.replicates = st.final_replicates;
  o.final_settings.validate();
  o.fit_budget = st.fit_budget;
  o.tt_budget = st.tt_budget;
  o.grid = st.grid;
  csv.row({"quantity", "expected", "computed", "tolerance", "status", "detail"});
  for (const auto& r : reproduce(o)) {
    csv.row({r.quantity, r.expected, r.computed, r.tolerance, r.status, r.detail});
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  State st;
  CLI::App app{"Bell-CHSH correlations of Weyl-operator observables in 1+1-d scalar field theory",
               "bellqft"};
  app.fallthrough();
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "INI file; [section] names a subcommand, flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", kVersion);

  app.add_option("--family", st.family, "kernel family")
      ->check(CLI::IsMember({"sech", "lorentz", "gauss", "gauss-paper", "gauss-exact"}))
      ->capture_default_str();
  app.add_option("--seed", st.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--points", st.points, "QMC points per replicate")->capture_default_str();
  app.add_option("--replicates", st.replicates, "independent scrambles")->capture_default_str();
  app.add_option("--mass", st.mass, "infrared mass")->capture_default_str();
  app.add_option("--scheme", st.scheme, "qmc or mc")->capture_default_str();
  app.add_option("--out", st.out, "write CSV here instead of standard output");

  auto* verify = app.add_subcommand("kernels-verify", "check each kernel against its position-space partner");
  verify->add_option("--grid-points", st.verify_points, "x grid on [-5, 5]")->capture_default_str();

  auto* smear = app.add_subcommand("smear", "smeared Hadamard or Pauli-Jordan product of two bumps");
  smear->add_option("--f", st.bump_f, "first bump, e.g. side=right,R=1,sharpness=2")->capture_default_str();
  smear->add_option("--g", st.bump_g, "second bump")->capture_default_str();
  smear->add_option("--quantity", st.quantity, "hadamard or pauli-jordan")->capture_default_str();
  smear->add_option("--route", st.route, "qmc, momentum or both")->capture_default_str();

  auto* eval_tt = app.add_subcommand("eval-tt", "Bell value of the closed-form modular model");
  add_model_options(eval_tt, st);
  eval_tt->add_option("--method", st.method, "gauss-kronrod or tanh-sinh")->capture_default_str();

  auto* eval_diamond = app.add_subcommand("eval-diamond", "Bell value from smeared diamond bumps");
  add_model_options(eval_diamond, st);
  eval_diamond->add_option("--method", st.method, "gauss-kronrod or tanh-sinh")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Bell value on a two-parameter grid");
  add_model_options(scan, st);
  scan->add_option("--mode", st.scan_mode, "tt, overlap or diamond")->capture_default_str();
  scan->add_option("--axis1", st.axis1, "name:lo:hi:n");
  scan->add_option("--axis2", st.axis2, "name:lo:hi:n");
  scan->add_option("--figure", st.figure, "preset grid 2, 3 or 4");
  scan->add_option("--figure-points", st.figure_points, "points per axis of a preset")->capture_default_str();
  scan->add_option("--method", st.method, "gauss-kronrod or tanh-sinh")->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "multi-start simplex search for the largest |Bell value|");
  add_model_options(optimize, st);
  optimize->add_option("--mode", st.opt_mode, "tt or diamond")->capture_default_str();
  optimize->add_option("--objective", st.objective, "abs or overlap")->capture_default_str();
  optimize->add_option("--budget", st.budget, "evaluation cap")->capture_default_str();
  optimize->add_option("--starts", st.starts, "multi-start count (0: automatic)")->capture_default_str();
  optimize->add_option("--param", st.space, "search range name:lo:hi[:scale[:min]]");
  optimize->add_option("--target", st.target, "overlap target alpha beta gamma delta")
      ->expected(4)
      ->capture_default_str();
  optimize->add_option("--final-points", st.final_points, "points per replicate when verifying")
      ->capture_default_str();
  optimize->add_option("--final-replicates", st.final_replicates)->capture_default_str();
  optimize->add_option("--trace", st.trace, "write the evaluation trace CSV here");

  auto* repro = app.add_subcommand("reproduce", "compare every quoted number with its computed value");
  repro->add_option("--fit-budget", st.fit_budget, "diamond overlap fit evaluations (0 skips)")
      ->capture_default_str();
  repro->add_option("--tt-budget", st.tt_budget, "modular-model search evaluations")->capture_default_str();
  repro->add_option("--grid", st.grid, "figure grid points per axis")->capture_default_str();
  repro->add_option("--search-points", st.search_points, "QMC points per replicate during the fit")
      ->capture_default_str();
  repro->add_option("--search-replicates", st.search_replicates)->capture_default_str();
  repro->add_option("--final-points", st.final_points)->capture_default_str();
  repro->add_option("--final-replicates", st.final_replicates)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kValidation;
  } catch (const CLI::ValidationError& e) {
    err << "invalid value: " << e.what() << '\n';
    return kValidation;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::ostringstream body;
  Csv csv(body);
  int code = kOk;
  try {
    if (command == "scan" && st.figure != 0 && app.get_option("--family")->count() == 0) {
      st.family = figure_preset(st.figure).family.name();
    }
    const IntegrationSettings s = settings_from(st);
    csv.comment(std::string("bellqft ") + kVersion);
    csv.comment("command: " + command);
    csv.comment("seed: " + std::to_string(st.seed));
    csv.comment("family: " + st.family + "; mass: " + num(st.mass));
    csv.comment("settings: " + s.describe());
    if (command == "smear" || command == "eval-diamond") {
      csv.comment("note: smeared products carry an infrared enhancement of order ln(1/mass)");
    }
    // Output locations are not part of the configuration.
    std::istringstream resolved(app.config_to_str(true, false));
    std::string canonical = command + "\n";
    for (std::string line; std::getline(resolved, line);) {
      const std::string key = line.substr(0, line.find('='));
      const std::string leaf = key.substr(key.rfind('.') == std::string::npos ? 0 : key.rfind('.') + 1);
      if (leaf != "out" && leaf != "trace") canonical += line + "\n";
    }
    char digest[32];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical)));
    csv.comment(std::string("config-digest: fnv1a64:") + digest);

    if (command == "kernels-verify") code = cmd_kernels_verify(st, csv);
    if (command == "smear") code = cmd_smear(st, csv);
    if (command == "eval-tt") code = cmd_eval_tt(st, csv);
    if (command == "eval-diamond") code = cmd_eval_diamond(st, csv);
    if (command == "scan") code = cmd_scan(st, *sub, csv);
    if (command == "optimize") code = cmd_optimize(st, *sub, csv);
    if (command == "reproduce") code = cmd_reproduce(st, csv);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  }

  if (st.out.empty()) {
    out << body.str();
  } else {
    std::ofstream f(st.out, std::ios::binary);
    if (!f) {
      err << "cannot open output file '" << st.out << "'\n";
      return kValidation;
    }
    f << body.str();
  }
  return code;
}

}  // namespace bellqft::cli
