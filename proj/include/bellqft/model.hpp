#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellqft/correlator.hpp"
#include "bellqft/modular.hpp"
#include "bellqft/smear.hpp"

namespace bellqft {

/// Sharpness constants and sizes of the four diamond bumps: f and f' live
/// in the right diamond of size R, g in the left diamond of size R and g'
/// in the left diamond of size R' (R' = R unless set).
struct DiamondSpec {
  double a = 2.0, a_p = 2.0, b = 2.0, b_p = 2.0;
  double R = 1.0;
  std::optional<double> R_p;

  DiamondQuartet quartet() const;
};

/// How the Gram matrix of a Bell evaluation is obtained.
enum class SearchMode {
  TTModel,   // closed-form modular Gram matrix
  Overlap,   // fixed overlap coefficients
  Diamond,   // overlaps smeared from explicit diamond bumps
};

std::string_view mode_name(SearchMode m);
SearchMode mode_from_name(std::string_view name);  // throws ConfigError

/// Every named quantity a search or scan can vary.
struct ModelPoint {
  BellParams bell{1.0, 1.0, 1.0, 1.0, 0.5};
  DiamondSpec diamond;
  Overlaps overlaps{};

  /// Names: eta, eta_p, sigma, sigma_p, lambda, a, a_p, b, b_p, R, R_p,
  /// alpha, beta, gamma, delta. Unknown names throw ConfigError.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;
  static const std::vector<std::string>& names();
};

struct EvalContext {
  KernelFamily family;
  MassParam mass{MassParam::kInfraredDefault};
  IntegrationSettings settings;
  CorrelatorOptions correlator;
  SmearCache* cache = nullptr;
  /// Propagate the statistical overlap errors of Diamond mode into the
  /// Bell value by central differences (eight extra Bell evaluations).
  bool propagate_errors = true;
};

struct Evaluation {
  BellResult bell;
  std::optional<Overlaps> overlaps;
  std::optional<Overlaps> overlap_errors;
};

/// Overlaps of the diamond quartet at the context's mass and settings.
DiamondGram smear_diamonds(const DiamondSpec& d, const EvalContext& ctx);

Evaluation evaluate(SearchMode mode, const ModelPoint& p, const EvalContext& ctx);

}  // namespace bellqft
