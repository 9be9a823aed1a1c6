#include "bellqft/smear.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bellqft/errors.hpp"
#include "bellqft/qmc.hpp"
#include "bellqft/quadrature.hpp"
#include "bellqft/specfun.hpp"

namespace bellqft {

void IntegrationSettings::validate() const {
  if (points_per_replicate < 1000) throw ConfigError("points_per_replicate must be >= 1000");
  if (replicates < 2) throw ConfigError("at least 2 replicates are needed for error bars");
  if (!(lightcone_guard > 0.0)) throw ConfigError("lightcone_guard must be positive");
}

std::string IntegrationSettings::describe() const {
  char buffer[200];
  std::snprintf(buffer, sizeof buffer, "scheme=%s points=%zu replicates=%u seed=%llu guard=%.3g",
                scheme == Scheme::QMC ? "qmc" : "mc", points_per_replicate, replicates,
                static_cast<unsigned long long>(seed), lightcone_guard);
  return buffer;
}

namespace {

enum class KernelKind : std::uint64_t { Hadamard = 1, PauliJordan = 2 };

template <class Sampler, class Kernel>
double replicate_mean(const DiamondBump& a, const DiamondBump& b, Sampler& sampler,
                      std::size_t n, Kernel& kernel) {
  std::array<double, 4> u{};
  double sum = 0.0;
  double compensation = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sampler.next(u);
    const SpacetimePoint x = lightcone_coords(a, u[0], u[1]);
    const double fa = bump_value(a, x);
    if (fa == 0.0) continue;
    const SpacetimePoint y = lightcone_coords(b, u[2], u[3]);
    const double fb = bump_value(b, y);
    if (fb == 0.0) continue;
    const double term = fa * fb * kernel(SpacetimePoint{x.t - y.t, x.x - y.x});
    // Neumaier summation keeps 1e6-term sums reproducible to the last digits.
    const double next = sum + term;
    compensation += std::fabs(sum) >= std::fabs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  return (sum + compensation) / static_cast<double>(n) * a.area() * b.area();
}

template <class Kernel>
Estimate smear(const DiamondBump& a, const DiamondBump& b, const IntegrationSettings& s,
               KernelKind kind, Kernel kernel) {
  a.validate();
  b.validate();
  s.validate();
  std::vector<double> means(s.replicates);
  for (unsigned r = 0; r < s.replicates; ++r) {
    const std::uint64_t seed = qmc::derive_seed(s.seed, static_cast<std::uint64_t>(kind), r);
    if (s.scheme == Scheme::QMC) {
      qmc::ScrambledSobol sampler(4, seed);
      means[r] = replicate_mean(a, b, sampler, s.points_per_replicate, kernel);
    } else {
      qmc::PseudoRandom sampler(4, seed);
      means[r] = replicate_mean(a, b, sampler, s.points_per_replicate, kernel);
    }
    if (!std::isfinite(means[r])) {
      throw NumericalFailure("smearing produced a non-finite replicate for bumps [" +
                                 a.to_string() + "] x [" + b.to_string() + "]",
                             std::numeric_limits<double>::infinity());
    }
  }
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= static_cast<double>(means.size());
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= static_cast<double>(means.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(means.size()))};
}

}  // namespace

Estimate smeared_hadamard(const DiamondBump& a, const DiamondBump& b, MassParam m,
                          const IntegrationSettings& s) {
  const double guard = s.lightcone_guard;
  return smear(a, b, s, KernelKind::Hadamard,
               [m, guard](SpacetimePoint d) { return hadamard_guarded(d, m, guard); });
}

Estimate smeared_pauli_jordan(const DiamondBump& a, const DiamondBump& b, MassParam m,
                              const IntegrationSettings& s) {
  return smear(a, b, s, KernelKind::PauliJordan,
               [m](SpacetimePoint d) { return pauli_jordan_point(d, m); });
}

// ---------------------------------------------------------------------------
// Mass-shell route.
//
// In light-cone coordinates centred on the diamond, a = u - 1/2, b = v - 1/2,
// the bump depends only on r = max(|a|, |b|) and the plane wave factorizes,
// so the 2D transform collapses to a radial integral against the derivative
// of the square's transform 4 sin(A r) sin(B r) / (A B), with
// A = R (w - k), B = R (w + k).

namespace {

double sinc(double z) noexcept {
  if (std::fabs(z) < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

// Real profile G(k) with transform = e^{i(w t0 - k xc)} G(k); G is even in k.
double shell_profile(const DiamondBump& b, double k, double mass) {
  const double ak = std::fabs(k);
  const double omega = std::hypot(ak, mass);
  const double big = b.R * (omega + ak);
  const double small = b.R * mass * mass / (omega + ak);  // R (w - |k|) without cancellation
  const double shape = b.sharpness / (b.R * b.R);
  auto radial = [&](double r) {
    const double one_minus = (1.0 - 2.0 * r) * (1.0 + 2.0 * r);
    if (!(one_minus > 0.0)) return 0.0;
    const double profile = std::exp(-shape / one_minus);
    return profile * 4.0 * r *
           (std::cos(small * r) * sinc(big * r) + sinc(small * r) * std::cos(big * r));
  };
  // Split so each panel spans a few oscillations of cos(B r).
  const int panels = 1 + static_cast<int>(big / (4.0 * kPi));
  std::vector<double> points(panels + 1);
  for (int i = 0; i <= panels; ++i) points[i] = 0.5 * i / panels;
  // Absolute floor relative to the profile's peak exp(-shape).
  const double floor = 1e-14 * std::exp(-shape) + 1e-300;
  const auto r = quad::integrate(radial, std::span<const double>(points), {floor, 1e-13, 20000});
  if (!r.converged) {
    throw NumericalFailure("mass-shell transform: radial quadrature did not converge", r.abs_error);
  }
  return b.area() * r.value;
}

}  // namespace

std::complex<double> mass_shell_transform(const DiamondBump& b, double k, MassParam m) {
  b.validate();
  const double omega = std::hypot(k, m.value());
  const double phase = omega * b.t_shift - k * b.center_x();
  return std::polar(shell_profile(b, k, m.value()), phase);
}

ComplexEstimate momentum_inner_product(const DiamondBump& a, const DiamondBump& b, MassParam m,
                                       const MomentumOptions& opts) {
  a.validate();
  b.validate();
  const double mass = m.value();
  const double dx = b.center_x() - a.center_x();
  const double dt = b.t_shift - a.t_shift;
  const double scale = std::fmax(std::fmax(a.R, b.R), std::fmax(std::fabs(dx), std::fabs(dt)));

  // Over k in [0, inf): H = int dk/(pi w) Ga Gb cos(k dx) cos(w dt),
  //                     Im = int dk/(2 pi w) Ga Gb cos(k dx) sin(w dt).
  auto integrand = [&](double k, bool imaginary) {
    const double omega = std::hypot(k, mass);
    const double product = shell_profile(a, k, mass) * shell_profile(b, k, mass);
    const double wave = std::cos(k * dx);
    return imaginary ? product * wave * std::sin(omega * dt) / (2.0 * kPi)
                     : product * wave * std::cos(omega * dt) / kPi;
  };

  auto integrate_part = [&](bool imaginary, double reference_scale) {
    const double k_split = std::fmin(1.0, 1.0 / scale);
    // Infrared piece in the rapidity variable k = m sinh(s), dk / w = ds.
    auto ir = [&](double s) { return integrand(mass * std::sinh(s), imaginary); };
    const double s_max = std::asinh(k_split / mass);
    const auto low =
        quad::integrate(ir, 0.0, s_max, {1e-3 * opts.rel_tol * reference_scale, opts.rel_tol, 20000});
    if (!low.converged) {
      throw NumericalFailure("momentum_inner_product: infrared integral did not converge",
                             low.abs_error);
    }
    double total = low.value;
    double error = low.abs_error;
    // Ultraviolet panels [k, 2k]; the integrand decays at least like k^-5.
    auto uv = [&](double k) { return integrand(k, imaginary) / std::hypot(k, mass); };
    double lo = k_split;
    int quiet = 0;
    double last = 0.0;
    for (int panel = 0; panel < 60; ++panel) {
      const double hi = 2.0 * lo;
      const int pieces = 1 + static_cast<int>((hi - lo) * (std::fabs(dx) + std::fabs(dt)) / kPi);
      std::vector<double> points(std::min(pieces, 4096) + 1);
      for (std::size_t i = 0; i < points.size(); ++i) {
        points[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points.size() - 1);
      }
      const double floor =
          1e-3 * opts.rel_tol * std::fmax(reference_scale, std::fabs(low.value)) + 1e-300;
      const auto part = quad::integrate(uv, std::span<const double>(points),
                                        {floor, opts.rel_tol, 40000});
      total += part.value;
      error += part.abs_error;
      last = std::fabs(part.value);
      const double reference = std::fmax(std::fabs(total), reference_scale);
      quiet = (last < 0.1 * opts.rel_tol * reference && lo * scale > 50.0) ? quiet + 1 : 0;
      if (quiet >= 2) break;
      lo = hi;
    }
    error += last;  // geometric tail beyond the last panel
    const double reference = std::fmax(std::fabs(total), reference_scale);
    if (error > 100.0 * opts.rel_tol * reference + 1e-300) {
      throw NumericalFailure("momentum_inner_product: k-integral did not converge", error);
    }
    return std::pair{total, error};
  };

  // Scale for absolute floors: the bumps' zero-momentum overlap.
  const double reference = std::fabs(shell_profile(a, 0.0, mass) * shell_profile(b, 0.0, mass));
  const auto [re, re_err] = integrate_part(false, reference);
  double im = 0.0, im_err = 0.0;
  if (dt != 0.0) std::tie(im, im_err) = integrate_part(true, std::fmax(std::fabs(re), reference));
  return {{re, im}, std::hypot(re_err, im_err)};
}

// ---------------------------------------------------------------------------

Overlaps overlap_coefficients(const GramMatrix& g) {
  if (!(g.Hff > 0.0 && g.Hfpfp > 0.0 && g.Hgg > 0.0 && g.Hgpgp > 0.0)) {
    throw DomainError("overlap_coefficients: squared norms must be positive");
  }
  return {g.Hfg / std::sqrt(g.Hff * g.Hgg), g.Hfpg / std::sqrt(g.Hfpfp * g.Hgg),
          g.Hfgp / std::sqrt(g.Hff * g.Hgpgp), g.Hfpgp / std::sqrt(g.Hfpfp * g.Hgpgp)};
}

std::optional<Estimate> SmearCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void SmearCache::insert(const std::string& key, Estimate value) {
  std::lock_guard lock(mutex_);
  entries_[key] = value;
}

std::size_t SmearCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t SmearCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

namespace {

std::string cache_key(char kind, const DiamondBump& a, const DiamondBump& b, MassParam m,
                      const IntegrationSettings& s) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "|m=%.17g|", m.value());
  return std::string(1, kind) + a.to_string() + "|" + b.to_string() + buffer + s.describe();
}

Estimate cached(SmearCache* cache, char kind, const DiamondBump& a, const DiamondBump& b,
                MassParam m, const IntegrationSettings& s) {
  std::string key;
  if (cache != nullptr) {
    key = cache_key(kind, a, b, m, s);
    if (auto hit = cache->find(key)) return *hit;
  }
  const Estimate e =
      kind == 'H' ? smeared_hadamard(a, b, m, s) : smeared_pauli_jordan(a, b, m, s);
  if (cache != nullptr) cache->insert(key, e);
  return e;
}

}  // namespace

DiamondGram diamond_gram(const DiamondQuartet& q, MassParam m, const IntegrationSettings& s,
                         SmearCache* cache, bool full_matrix, bool with_pauli_jordan) {
  DiamondGram out;
  auto set = [&](double GramMatrix::*field, char kind, const DiamondBump& a,
                 const DiamondBump& b) {
    const Estimate e = cached(cache, kind, a, b, m, s);
    out.value.*field = e.value;
    out.std_error.*field = e.std_error;
  };
  set(&GramMatrix::Hff, 'H', q.f, q.f);
  set(&GramMatrix::Hfpfp, 'H', q.fp, q.fp);
  set(&GramMatrix::Hgg, 'H', q.g, q.g);
  set(&GramMatrix::Hgpgp, 'H', q.gp, q.gp);
  set(&GramMatrix::Hfg, 'H', q.f, q.g);
  set(&GramMatrix::Hfpg, 'H', q.fp, q.g);
  set(&GramMatrix::Hfgp, 'H', q.f, q.gp);
  set(&GramMatrix::Hfpgp, 'H', q.fp, q.gp);
  if (with_pauli_jordan) {
    set(&GramMatrix::PJfg, 'P', q.f, q.g);
    set(&GramMatrix::PJfpg, 'P', q.fp, q.g);
    set(&GramMatrix::PJfgp, 'P', q.f, q.gp);
    set(&GramMatrix::PJfpgp, 'P', q.fp, q.gp);
  }
  if (full_matrix) {
    const Estimate ffp = cached(cache, 'H', q.f, q.fp, m, s);
    const Estimate ggp = cached(cache, 'H', q.g, q.gp, m, s);
    out.value.Hffp = ffp.value;
    out.std_error.Hffp = ffp.std_error;
    out.value.Hggp = ggp.value;
    out.std_error.Hggp = ggp.std_error;
  }
  return out;
}

Overlaps overlap_errors(const DiamondGram& g) {
  const GramMatrix& v = g.value;
  const GramMatrix& e = g.std_error;
  const Overlaps o = overlap_coefficients(v);
  auto propagate = [](double ratio, double x, double ex, double f, double ef, double h,
                      double eh) {
    return std::hypot(ex / std::sqrt(f * h), std::hypot(0.5 * ratio * ef / f, 0.5 * ratio * eh / h));
  };
  return {propagate(o.alpha, v.Hfg, e.Hfg, v.Hff, e.Hff, v.Hgg, e.Hgg),
          propagate(o.beta, v.Hfpg, e.Hfpg, v.Hfpfp, e.Hfpfp, v.Hgg, e.Hgg),
          propagate(o.gamma, v.Hfgp, e.Hfgp, v.Hff, e.Hff, v.Hgpgp, e.Hgpgp),
          propagate(o.delta, v.Hfpgp, e.Hfpgp, v.Hfpfp, e.Hfpfp, v.Hgpgp, e.Hgpgp)};
}

}  // namespace bellqft
