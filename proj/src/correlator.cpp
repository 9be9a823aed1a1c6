#include "bellqft/correlator.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "bellqft/errors.hpp"
#include "bellqft/quadrature.hpp"

namespace bellqft {

void PairQuadratic::validate() const {
  if (!(F >= 0.0 && G >= 0.0) || !std::isfinite(F) || !std::isfinite(G) || !std::isfinite(X)) {
    throw DomainError("pair quadratic: norms must be finite and non-negative");
  }
  if (X * X > F * G * (1.0 + 1e-10) + 1e-300) {
    throw DomainError("pair quadratic is not positive semidefinite (X^2 > F G)");
  }
}

double weyl_two_point(double k, double p, const PairQuadratic& q) {
  q.validate();
  return std::exp(-0.5 * (k * k * q.F + p * p * q.G + 2.0 * k * p * q.X));
}

namespace {

constexpr double kTailMass = 1e-16;

// Breakpoints for a variable weighted by sigma_hat(.) exp(-c (. - centre)^2 / 2).
std::vector<double> gaussian_breaks(double cutoff, double curvature, double centre) {
  if (curvature <= 0.0) return quad::breakpoints(-cutoff, cutoff, {0.0});
  const double w = 1.0 / std::sqrt(curvature);
  return quad::breakpoints(-cutoff, cutoff,
                           {0.0, centre, centre - 4.0 * w, centre + 4.0 * w, centre - 10.0 * w,
                            centre + 10.0 * w});
}

// Both routes integrate over the box [-K, K]^2; the discarded kernel mass
// is below kTailMass per axis.
Estimate pair_gauss_kronrod(const KernelFamily& fam, double F, double G, double X, double tol) {
  // Integrate the variable with the larger norm innermost; the form is
  // symmetric under (F, k) <-> (G, p).
  if (G < F) std::swap(F, G);
  const double cutoff = kernel_cutoff(fam, kTailMass);
  double inner_error = 0.0;
  bool inner_ok = true;
  auto outer = [&](double k) {
    double reduced = F;
    double centre = 0.0;
    if (G > 0.0) {
      reduced = std::fmax(0.0, F - X * X / G);
      centre = -k * X / G;
    }
    const auto breaks = gaussian_breaks(cutoff, G, centre);
    auto inner = [&](double p) {
      const double d = p - centre;
      return kernel_value(fam, p) * std::exp(-0.5 * G * d * d);
    };
    const auto r = quad::integrate(inner, std::span<const double>(breaks), {0.01 * tol, 1e-12, 4000});
    inner_ok = inner_ok && r.converged;
    inner_error = std::fmax(inner_error, r.abs_error);
    return kernel_value(fam, k) * std::exp(-0.5 * k * k * reduced) * r.value;
  };
  double reduced = G > 0.0 ? std::fmax(0.0, F - X * X / G) : F;
  const auto breaks = gaussian_breaks(cutoff, reduced, 0.0);
  const auto r = quad::integrate(outer, std::span<const double>(breaks), {tol, 1e-12, 4000});
  const double error = r.abs_error + 2.0 * cutoff * inner_error + 2.0 * kTailMass;
  if (!r.converged || !inner_ok) {
    throw NumericalFailure("pair_correlator: Gauss-Kronrod quadrature did not converge", error);
  }
  return {r.value, error};
}

Estimate pair_tanh_sinh(const KernelFamily& fam, double F, double G, double X, double tol) {
  // Opposite nesting to the Gauss-Kronrod route: p outer, k inner, and the
  // raw (uncompleted) exponent.
  const double cutoff = kernel_cutoff(fam, kTailMass);
  boost::math::quadrature::tanh_sinh<double> rule(12);
  auto integrate = [&](auto&& f, const std::vector<double>& breaks, double& error) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      double segment_error = 0.0;
      total += rule.integrate(f, breaks[i], breaks[i + 1], 1e-13, &segment_error);
      error += segment_error * std::fabs(breaks[i + 1] - breaks[i]);
    }
    return total;
  };
  double inner_error = 0.0;
  auto outer = [&](double p) {
    const double centre = F > 0.0 ? -p * X / F : 0.0;
    const auto breaks = gaussian_breaks(cutoff, F, centre);
    auto inner = [&](double k) {
      return kernel_value(fam, k) * std::exp(-0.5 * (k * k * F + p * p * G + 2.0 * k * p * X));
    };
    double e = 0.0;
    const double v = integrate(inner, breaks, e);
    inner_error = std::fmax(inner_error, e);
    return kernel_value(fam, p) * v;
  };
  const double reduced = F > 0.0 ? std::fmax(0.0, G - X * X / F) : G;
  double outer_error = 0.0;
  const double value = integrate(outer, gaussian_breaks(cutoff, reduced, 0.0), outer_error);
  const double error = outer_error + inner_error + 2.0 * kTailMass;
  if (!std::isfinite(value) || error > 1e3 * tol) {
    throw NumericalFailure("pair_correlator: tanh-sinh quadrature did not converge", error);
  }
  return {value, error};
}

Estimate pair_integral(const KernelFamily& fam, const PairQuadratic& q,
                       const CorrelatorOptions& opts) {
  if (opts.method == PairMethod::NestedTanhSinh) return pair_tanh_sinh(fam, q.F, q.G, q.X, opts.abs_tol);
  return pair_gauss_kronrod(fam, q.F, q.G, q.X, opts.abs_tol);
}

}  // namespace

Estimate kernel_mean(const KernelFamily& fam, double F, const CorrelatorOptions& opts) {
  if (!(F >= 0.0)) throw DomainError("kernel_mean: F must be non-negative");
  const double cutoff = kernel_cutoff(fam, kTailMass);
  auto f = [&](double k) { return kernel_value(fam, k) * std::exp(-0.5 * F * k * k); };
  const auto breaks = gaussian_breaks(cutoff, F, 0.0);
  const auto r = quad::integrate(f, std::span<const double>(breaks), {opts.abs_tol, 1e-12, 4000});
  if (!r.converged) throw NumericalFailure("kernel_mean did not converge", r.abs_error);
  return {r.value, r.abs_error + 2.0 * kTailMass};
}

Estimate pair_correlator(const KernelFamily& fam, const PairQuadratic& q,
                         const CorrelatorOptions& opts) {
  fam.validate();
  q.validate();
  const Estimate pair = pair_integral(fam, q, opts);
  const double c0 = fam.atom_weight;
  if (c0 == 0.0) return pair;
  // (c0 + w A)(c0 + w B) with w = 1 - |c0|
  const double w = 1.0 - std::fabs(c0);
  const Estimate a = kernel_mean(fam, q.F, opts);
  const Estimate b = kernel_mean(fam, q.G, opts);
  return {c0 * c0 + c0 * w * (a.value + b.value) + w * w * pair.value,
          std::fabs(c0 * w) * (a.std_error + b.std_error) + w * w * pair.std_error};
}

BellResult bell_chsh(const KernelFamily& fam, const GramMatrix& g, const CorrelatorOptions& opts) {
  const std::array<PairQuadratic, 4> pairs = {{
      {g.Hff, g.Hgg, g.Hfg},
      {g.Hfpfp, g.Hgg, g.Hfpg},
      {g.Hff, g.Hgpgp, g.Hfgp},
      {g.Hfpfp, g.Hgpgp, g.Hfpgp},
  }};
  BellResult result;
  result.family = fam;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Estimate e = pair_correlator(fam, pairs[i], opts);
    result.terms[i] = e.value;
    result.num_error += e.std_error;
  }
  result.value = result.terms[0] + result.terms[1] + result.terms[2] - result.terms[3];
  result.provenance.emplace_back("family", fam.name());
  result.provenance.emplace_back(
      "method", opts.method == PairMethod::NestedGaussKronrod ? "gauss-kronrod" : "tanh-sinh");
  return result;
}

BellResult tt_bell(const KernelFamily& fam, const BellParams& p, const CorrelatorOptions& opts) {
  return bell_chsh(fam, tt_gram(p), opts);
}

BellResult bell_from_overlaps(const KernelFamily& fam, const BellParams& p, const Overlaps& o,
                              const CorrelatorOptions& opts) {
  return bell_chsh(fam, gram_from_overlaps(p, o), opts);
}

}  // namespace bellqft
