#include "bellqft/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bellqft/errors.hpp"
#include "bellqft/qmc.hpp"

namespace bellqft {

void ParamRange::validate() const {
  if (name.empty()) throw ConfigError("search parameter without a name");
  if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper)) {
    throw ConfigError("search range for '" + name + "' needs finite lower < upper");
  }
  if (scale == Scale::Log && !(lower > 0.0)) {
    throw ConfigError("log-scaled range for '" + name + "' must be strictly positive");
  }
  if (scale == Scale::SignedLog &&
      !(lower < 0.0 && upper > 0.0 && min_magnitude > 0.0 &&
        min_magnitude < std::min(-lower, upper))) {
    throw ConfigError("signed-log range for '" + name +
                      "' needs lower < 0 < upper and 0 < min_magnitude < both bounds");
  }
}

double ParamRange::from_unit(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  switch (scale) {
    case Scale::Linear:
      return lower + (upper - lower) * u;
    case Scale::Log:
      return lower * std::pow(upper / lower, u);
    case Scale::SignedLog: {
      const double s = 2.0 * u - 1.0;
      if (s >= 0.0) return min_magnitude * std::pow(upper / min_magnitude, s);
      return -min_magnitude * std::pow(-lower / min_magnitude, -s);
    }
  }
  return lower;
}

void SearchSpace::validate() const {
  if (params.empty()) throw ConfigError("empty search space");
  if (params.size() > qmc::kMaxDimensions) throw ConfigError("search space has too many dimensions");
  for (const auto& p : params) p.validate();
}

std::vector<double> SearchSpace::from_unit(std::span<const double> u) const {
  std::vector<double> x(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) x[i] = params[i].from_unit(u[i]);
  return x;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Run {
  std::vector<TracePoint> trace;
};

// Nelder-Mead on -objective in the unit cube; trial points are projected
// back onto the cube. After convergence the simplex is rebuilt around the
// best vertex, and the run stops once a rebuild brings no improvement.
// A start whose whole simplex fails is moved to a fresh scrambled point.
Run nelder_mead(const std::function<double(std::span<const double>)>& objective,
                const SearchSpace& space, std::vector<double> x0, std::size_t share,
                const OptimizerOptions& opts, std::size_t start) {
  const std::size_t n = space.size();
  Run run;
  auto eval = [&](std::vector<double>& u) {
    for (double& c : u) c = std::clamp(c, 0.0, 1.0);
    TracePoint tp;
    tp.start = start;
    tp.params = space.from_unit(u);
    double f = std::numeric_limits<double>::quiet_NaN();
    try {
      f = objective(tp.params);
    } catch (const DomainError&) {
    } catch (const NumericalFailure&) {
    }
    tp.objective = std::isfinite(f) ? f : std::numeric_limits<double>::quiet_NaN();
    run.trace.push_back(std::move(tp));
    return std::isfinite(f) ? -f : kInf;
  };

  std::vector<std::vector<double>> x(n + 1);
  std::vector<double> fx(n + 1);
  auto build = [&](const std::vector<double>& centre, double step) {
    x[0] = centre;
    fx[0] = eval(x[0]);
    for (std::size_t i = 0; i < n && run.trace.size() < share; ++i) {
      x[i + 1] = x[0];
      x[i + 1][i] += x[0][i] + step <= 1.0 ? step : -step;
      fx[i + 1] = eval(x[i + 1]);
    }
  };
  build(x0, 0.1);
  // A simplex with no successful vertex cannot move; restart it elsewhere.
  qmc::ScrambledSobol relocation(static_cast<unsigned>(n), qmc::derive_seed(opts.seed, 0x72656c, start));
  while (!std::isfinite(*std::min_element(fx.begin(), fx.end())) && run.trace.size() + n + 1 <= share) {
    relocation.next(x0);
    build(x0, 0.1);
  }
  if (run.trace.size() < n + 1) return run;

  double last_restart = kInf;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> c(n), xr(n), xe(n), xc(n);
  while (run.trace.size() < share) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
    {
      auto xs = x;
      auto fs = fx;
      for (std::size_t i = 0; i <= n; ++i) {
        x[i] = xs[order[i]];
        fx[i] = fs[order[i]];
      }
    }
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, std::fabs(x[i][j] - x[0][j]));
    }
    const bool flat = fx[n] - fx[0] <= opts.ftol * (1.0 + std::fabs(fx[0]));
    if (std::isfinite(fx[0]) && (diameter <= opts.xtol || flat)) {
      if (!(last_restart - fx[0] > opts.ftol * (1.0 + std::fabs(fx[0])))) break;
      last_restart = fx[0];
      const auto centre = x[0];
      const double f0 = fx[0];
      build(centre, 0.05);
      // Re-evaluating the centre is deterministic; keep the value stable.
      fx[0] = std::min(fx[0], f0);
      continue;
    }

    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c[j] += x[i][j] / static_cast<double>(n);
    }
    for (std::size_t j = 0; j < n; ++j) xr[j] = c[j] + (c[j] - x[n][j]);
    const double fr = eval(xr);
    if (fr < fx[0]) {
      if (run.trace.size() >= share) {
        x[n] = xr;
        fx[n] = fr;
        break;
      }
      for (std::size_t j = 0; j < n; ++j) xe[j] = c[j] + 2.0 * (c[j] - x[n][j]);
      const double fe = eval(xe);
      if (fe < fr) {
        x[n] = xe;
        fx[n] = fe;
      } else {
        x[n] = xr;
        fx[n] = fr;
      }
      continue;
    }
    if (fr < fx[n - 1]) {
      x[n] = xr;
      fx[n] = fr;
      continue;
    }
    if (run.trace.size() >= share) break;
    const bool outside = fr < fx[n];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? c[j] + 0.5 * (xr[j] - c[j]) : c[j] + 0.5 * (x[n][j] - c[j]);
    }
    const double fc = eval(xc);
    if (fc < std::min(fr, fx[n])) {
      x[n] = xc;
      fx[n] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n && run.trace.size() < share; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[i][j] = x[0][j] + 0.5 * (x[i][j] - x[0][j]);
      fx[i] = eval(x[i]);
    }
  }
  return run;
}

}  // namespace

OptimizeResult maximize(const std::function<double(std::span<const double>)>& objective,
                        const SearchSpace& space, const OptimizerOptions& opts) {
  space.validate();
  if (opts.budget < 2 * (space.size() + 1)) throw ConfigError("optimizer budget too small");
  std::size_t starts = opts.starts;
  if (starts == 0) starts = std::clamp<std::size_t>(opts.budget / 500, 1, 8);
  const std::size_t share = opts.budget / starts;
  if (share < space.size() + 1) throw ConfigError("optimizer budget too small for the number of starts");

  std::vector<std::vector<double>> origins(starts, std::vector<double>(space.size()));
  qmc::ScrambledSobol sobol(space.size(), qmc::derive_seed(opts.seed, 0x6f7074, 0));
  for (auto& o : origins) sobol.next(o);

  std::vector<Run> runs(starts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts; i = next++) {
      runs[i] = nelder_mead(objective, space, origins[i], share, opts, i);
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  OptimizeResult result;
  result.best_objective = -kInf;
  for (auto& r : runs) {
    for (auto& tp : r.trace) {
      if (std::isfinite(tp.objective) && tp.objective > result.best_objective) {
        result.best_objective = tp.objective;
        result.best_params = tp.params;
      }
      tp.best_so_far = result.best_objective;
      result.trace.push_back(std::move(tp));
    }
  }
  result.evaluations = result.trace.size();
  if (result.best_params.empty()) {
    throw NumericalFailure("optimizer: no evaluation produced a finite objective", kInf);
  }
  return result;
}

namespace {

ModelPoint apply(const ModelPoint& base, const SearchSpace& space, std::span<const double> x) {
  ModelPoint p = base;
  for (std::size_t i = 0; i < space.size(); ++i) p.set(space.params[i].name, x[i]);
  return p;
}

}  // namespace

ViolationResult maximize_violation(const ViolationSearch& problem, const SearchSpace& space,
                                   const OptimizerOptions& opts) {
  space.validate();
  for (const auto& p : space.params) (void)problem.base.get(p.name);
  if (problem.objective == Objective::OverlapMatch && problem.mode != SearchMode::Diamond) {
    throw ConfigError("overlap matching requires diamond mode");
  }
  EvalContext ctx = problem.context;
  ctx.propagate_errors = false;
  auto objective = [&](std::span<const double> x) {
    const ModelPoint p = apply(problem.base, space, x);
    if (problem.objective == Objective::OverlapMatch) {
      const Overlaps o = overlap_coefficients(smear_diamonds(p.diamond, ctx).value);
      const Overlaps& t = problem.target;
      const double da = o.alpha - t.alpha, db = o.beta - t.beta;
      const double dc = o.gamma - t.gamma, dd = o.delta - t.delta;
      return -(da * da + db * db + dc * dc + dd * dd);
    }
    return std::fabs(evaluate(problem.mode, p, ctx).bell.value);
  };

  ViolationResult result;
  result.search = maximize(objective, space, opts);
  result.best = apply(problem.base, space, result.search.best_params);
  EvalContext final_ctx = problem.context;
  if (problem.mode == SearchMode::Diamond) final_ctx.settings = problem.final_settings;
  result.evaluation = evaluate(problem.mode, result.best, final_ctx);
  return result;
}

ScanAxis ScanAxis::linspace(std::string name, double lo, double hi, std::size_t n) {
  if (n == 0) throw ConfigError("scan axis '" + name + "' needs at least one point");
  ScanAxis a{std::move(name), {}};
  a.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.values[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return a;
}

ScanGrid scan_grid(SearchMode mode, const ScanAxis& axis1, const ScanAxis& axis2,
                   const ModelPoint& fixed, const EvalContext& ctx) {
  if (axis1.values.empty() || axis2.values.empty()) throw ConfigError("scan axes must be nonempty");
  (void)fixed.get(axis1.name);
  (void)fixed.get(axis2.name);
  ScanGrid grid{axis1, axis2, fixed, {}, {}};
  grid.values.reserve(axis1.values.size() * axis2.values.size());
  grid.errors.reserve(grid.values.capacity());
  for (double v1 : axis1.values) {
    for (double v2 : axis2.values) {
      ModelPoint p = fixed;
      p.set(axis1.name, v1);
      p.set(axis2.name, v2);
      const Evaluation e = evaluate(mode, p, ctx);
      grid.values.push_back(e.bell.value);
      grid.errors.push_back(e.bell.num_error);
    }
  }
  return grid;
}

}  // namespace bellqft
