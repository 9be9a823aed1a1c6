#pragma once

#include <complex>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "bellqft/propagators.hpp"
#include "bellqft/testfn.hpp"

namespace bellqft {

enum class Scheme { QMC, MC };

struct IntegrationSettings {
  Scheme scheme = Scheme::QMC;
  std::size_t points_per_replicate = 1u << 16;
  unsigned replicates = 8;
  std::uint64_t seed = 0;
  /// Relative width of the light-cone band evaluated with the
  /// small-argument form of the Hadamard function.
  double lightcone_guard = 1e-12;

  /// Throws ConfigError when points_per_replicate < 1000 or replicates < 2.
  void validate() const;
  std::string describe() const;
};

/// Mean over replicates and the standard error of that mean.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Hadamard (H) and Pauli-Jordan (PJ) inner products among the bumps
/// f, f', g, g'. Hffp / Hggp are filled only when the full 4x4 Hadamard
/// matrix was requested.
struct GramMatrix {
  double Hff = 0, Hfpfp = 0, Hgg = 0, Hgpgp = 0;
  double Hfg = 0, Hfpg = 0, Hfgp = 0, Hfpgp = 0;
  double PJfg = 0, PJfpg = 0, PJfgp = 0, PJfpgp = 0;
  std::optional<double> Hffp, Hggp;
};

struct Overlaps {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

/// Position-space estimate of H(a, b) = int d2x d2y a(x) H(x - y) b(y)
/// over the product of the two diamonds, sampled in light-cone coordinates.
/// Throws NumericalFailure if a sample produces a non-finite value.
Estimate smeared_hadamard(const DiamondBump& a, const DiamondBump& b, MassParam m,
                          const IntegrationSettings& s);

/// Same for the Pauli-Jordan distribution.
Estimate smeared_pauli_jordan(const DiamondBump& a, const DiamondBump& b, MassParam m,
                              const IntegrationSettings& s);

struct MomentumOptions {
  double rel_tol = 1e-9;
};

/// Mass-shell route. `value` has real part H(a, b) (the same normalization as
/// smeared_hadamard, i.e. twice Re int dk/(2pi 2w) a*(w,k) b(w,k)) and
/// imaginary part Im int dk/(2pi 2w) a* b = PJ(a, b) / 2.
struct ComplexEstimate {
  std::complex<double> value;
  double abs_error = 0.0;
  double hadamard() const noexcept { return value.real(); }
  double pauli_jordan() const noexcept { return 2.0 * value.imag(); }
};

ComplexEstimate momentum_inner_product(const DiamondBump& a, const DiamondBump& b, MassParam m,
                                       const MomentumOptions& opts = {});

/// Fourier transform of the bump on the mass shell,
/// int d2x e^{i(w t - k x)} bump(t, x), with w = sqrt(k^2 + m^2).
std::complex<double> mass_shell_transform(const DiamondBump& b, double k, MassParam m);

/// alpha = Hfg / sqrt(Hff Hgg), beta = Hfpg / sqrt(Hfpfp Hgg),
/// gamma = Hfgp / sqrt(Hff Hgpgp), delta = Hfpgp / sqrt(Hfpfp Hgpgp).
/// Throws DomainError if a squared norm is not positive.
Overlaps overlap_coefficients(const GramMatrix& g);

/// Thread-safe memo of smeared integrals keyed by bump pair, kernel, mass
/// and integration settings.
class SmearCache {
 public:
  std::optional<Estimate> find(const std::string& key) const;
  void insert(const std::string& key, Estimate value);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Estimate> entries_;
  mutable std::size_t hits_ = 0;
};

struct DiamondQuartet {
  DiamondBump f, fp, g, gp;
};

struct DiamondGram {
  GramMatrix value;
  GramMatrix std_error;
};

/// Smears all entries of the Gram matrix for four bumps. With
/// `full_matrix`, the same-side products H(f, f') and H(g, g') are added.
DiamondGram diamond_gram(const DiamondQuartet& q, MassParam m, const IntegrationSettings& s,
                         SmearCache* cache = nullptr, bool full_matrix = false,
                         bool with_pauli_jordan = false);

/// First-order propagation of the Gram standard errors into the overlaps.
Overlaps overlap_errors(const DiamondGram& g);

}  // namespace bellqft
