#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellqft/optimize.hpp"

namespace bellqft {

/// Parameters quoted for the largest modular-model violation.
inline constexpr BellParams kQuotedOptimum{0.024, 4.732, 0.086, 9.307, 0.884};
inline constexpr double kQuotedTTValue = 2.723;
inline constexpr double kQuotedDiamondValue = 2.752;
inline constexpr Overlaps kQuotedFittedOverlaps{0.944, 0.0, 0.732, 0.906};
inline constexpr double kQuotedAlphaTT = 0.992;

/// The correlator formula every Bell value in this library evaluates.
extern const char* const kNormativeFormula;

/// A Bell value computed by both nested quadrature routes.
struct PathComparison {
  BellResult gauss_kronrod;
  BellResult tanh_sinh;
  double max_difference = 0.0;  // over the value and the four terms
};

PathComparison compare_paths(const KernelFamily& fam, const GramMatrix& g);

/// Surface plots of the Bell value over (eta, eta') at fixed sigma, sigma',
/// lambda, evaluated with the fitted diamond overlaps.
struct FigurePreset {
  int number = 2;
  KernelFamily family;
  ModelPoint fixed;
  ScanAxis eta, eta_p;
};

/// figure 2 (Lorentz), 3 (sech), 4 (Gaussian); grid points per axis.
FigurePreset figure_preset(int number, std::size_t points = 50);

struct ReproduceOptions {
  std::uint64_t seed = 0;
  MassParam mass{MassParam::kInfraredDefault};
  IntegrationSettings search_settings{Scheme::QMC, 25000, 4, 0, 1e-12};
  IntegrationSettings final_settings{Scheme::QMC, 125000, 8, 0, 1e-12};
  std::size_t fit_budget = 300;
  std::size_t tt_budget = 1000;
  std::size_t grid = 50;
};

struct ReportRow {
  std::string quantity, expected, computed, tolerance, status, detail;
};

/// Compares each quoted number with the value computed here; status is
/// "match" or "mismatch-documented".
std::vector<ReportRow> reproduce(const ReproduceOptions& opts);

}  // namespace bellqft
