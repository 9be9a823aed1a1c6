#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bellqft/model.hpp"

namespace bellqft {

enum class Scale {
  Linear,
  Log,        // 0 < lower < upper
  SignedLog,  // lower < 0 < upper; magnitudes log-spaced down to min_magnitude
};

struct ParamRange {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::Linear;
  double min_magnitude = 1e-3;  // SignedLog only

  void validate() const;  // throws ConfigError
  /// Maps u in [0, 1] onto the range.
  double from_unit(double u) const;
};

struct SearchSpace {
  std::vector<ParamRange> params;

  void validate() const;
  std::size_t size() const noexcept { return params.size(); }
  std::vector<double> from_unit(std::span<const double> u) const;
};

struct OptimizerOptions {
  std::size_t budget = 2000;  // cap on objective evaluations
  std::uint64_t seed = 0;
  std::size_t starts = 0;     // 0: chosen from the budget
  double xtol = 1e-9;         // simplex size in unit coordinates
  double ftol = 1e-14;
  unsigned threads = 0;       // 0: hardware concurrency
};

struct TracePoint {
  std::size_t start = 0;
  double objective = 0.0;  // NaN for a failed evaluation
  double best_so_far = 0.0;
  std::vector<double> params;
};

struct OptimizeResult {
  std::vector<double> best_params;
  double best_objective = 0.0;
  std::size_t evaluations = 0;
  std::vector<TracePoint> trace;  // concatenated in start order
};

/// Multi-start Nelder-Mead maximization over the box. Starts come from a
/// scrambled Sobol' sample seeded by `opts.seed` and share the budget
/// equally; each start runs independently, so the result does not depend on
/// the thread count. Evaluations that throw DomainError or NumericalFailure,
/// or return a non-finite value, count as failed.
/// Throws NumericalFailure if every evaluation failed.
OptimizeResult maximize(const std::function<double(std::span<const double>)>& objective,
                        const SearchSpace& space, const OptimizerOptions& opts);

enum class Objective {
  AbsValue,      // |Bell value|
  OverlapMatch,  // -(sum of squared overlap deviations from the target)
};

struct ViolationSearch {
  SearchMode mode = SearchMode::TTModel;
  Objective objective = Objective::AbsValue;
  ModelPoint base;                           // values of parameters outside the space
  Overlaps target{0.992, 0.0, 0.0, 0.992};   // OverlapMatch only
  EvalContext context;                       // used during the search
  IntegrationSettings final_settings;        // Diamond mode re-evaluation of the winner
};

struct ViolationResult {
  ModelPoint best;
  Evaluation evaluation;  // at the final settings
  OptimizeResult search;
};

ViolationResult maximize_violation(const ViolationSearch& problem, const SearchSpace& space,
                                   const OptimizerOptions& opts);

struct ScanAxis {
  std::string name;
  std::vector<double> values;

  static ScanAxis linspace(std::string name, double lo, double hi, std::size_t n);
};

struct ScanGrid {
  ScanAxis axis1, axis2;
  ModelPoint fixed;
  /// Row-major, axis1 outer.
  std::vector<double> values;
  std::vector<double> errors;

  double at(std::size_t i, std::size_t j) const { return values[i * axis2.values.size() + j]; }
  bool exceeds_classical(std::size_t i, std::size_t j) const { return at(i, j) > 2.0; }
};

/// Evaluates the Bell value on the product grid; every cell is the same
/// call evaluate(mode, point, ctx) would make for that point.
ScanGrid scan_grid(SearchMode mode, const ScanAxis& axis1, const ScanAxis& axis2,
                   const ModelPoint& fixed, const EvalContext& ctx);

}  // namespace bellqft
