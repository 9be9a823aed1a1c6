#include "bellqft/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "bellqft/errors.hpp"

namespace bellqft {

DiamondQuartet DiamondSpec::quartet() const {
  return {
      DiamondBump{Side::Right, R, a},
      DiamondBump{Side::Right, R, a_p},
      DiamondBump{Side::Left, R, b},
      DiamondBump{Side::Left, R_p.value_or(R), b_p},
  };
}

std::string_view mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::TTModel: return "tt";
    case SearchMode::Overlap: return "overlap";
    case SearchMode::Diamond: return "diamond";
  }
  return "?";
}

SearchMode mode_from_name(std::string_view name) {
  if (name == "tt") return SearchMode::TTModel;
  if (name == "overlap") return SearchMode::Overlap;
  if (name == "diamond") return SearchMode::Diamond;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected tt, overlap or diamond)");
}

namespace {

double* field(ModelPoint& p, std::string_view name) {
  if (name == "eta") return &p.bell.eta;
  if (name == "eta_p") return &p.bell.eta_p;
  if (name == "sigma") return &p.bell.sigma;
  if (name == "sigma_p") return &p.bell.sigma_p;
  if (name == "lambda") return &p.bell.lambda;
  if (name == "a") return &p.diamond.a;
  if (name == "a_p") return &p.diamond.a_p;
  if (name == "b") return &p.diamond.b;
  if (name == "b_p") return &p.diamond.b_p;
  if (name == "R") return &p.diamond.R;
  if (name == "alpha") return &p.overlaps.alpha;
  if (name == "beta") return &p.overlaps.beta;
  if (name == "gamma") return &p.overlaps.gamma;
  if (name == "delta") return &p.overlaps.delta;
  return nullptr;
}

}  // namespace

void ModelPoint::set(std::string_view name, double value) {
  if (name == "R_p") {
    diamond.R_p = value;
    return;
  }
  double* f = field(*this, name);
  if (!f) throw ConfigError("unknown parameter '" + std::string(name) + "'");
  *f = value;
}

double ModelPoint::get(std::string_view name) const {
  if (name == "R_p") return diamond.R_p.value_or(diamond.R);
  double* f = field(const_cast<ModelPoint&>(*this), name);
  if (!f) throw ConfigError("unknown parameter '" + std::string(name) + "'");
  return *f;
}

const std::vector<std::string>& ModelPoint::names() {
  static const std::vector<std::string> n = {"eta", "eta_p", "sigma", "sigma_p", "lambda",
                                             "a",   "a_p",   "b",     "b_p",     "R",
                                             "R_p", "alpha", "beta",  "gamma",   "delta"};
  return n;
}

DiamondGram smear_diamonds(const DiamondSpec& d, const EvalContext& ctx) {
  return diamond_gram(d.quartet(), ctx.mass, ctx.settings, ctx.cache);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Spread of the Bell value under one-sigma shifts of each overlap.
double overlap_sensitivity(const KernelFamily& fam, const BellParams& p, const Overlaps& o,
                           const Overlaps& err, const CorrelatorOptions& opts) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double Overlaps::*member = i == 0   ? &Overlaps::alpha
                               : i == 1 ? &Overlaps::beta
                               : i == 2 ? &Overlaps::gamma
                                        : &Overlaps::delta;
    const double h = err.*member;
    if (!(h > 0.0)) continue;
    Overlaps up = o, down = o;
    up.*member += h;
    down.*member -= h;
    try {
      const double d = 0.5 * (bell_from_overlaps(fam, p, up, opts).value -
                              bell_from_overlaps(fam, p, down, opts).value);
      sum += d * d;
    } catch (const DomainError&) {
      // A shift across the Cauchy-Schwarz bound; fall back to the one-sided
      // difference that stays admissible.
      const double centre = bell_from_overlaps(fam, p, o, opts).value;
      double d = 0.0;
      try {
        d = bell_from_overlaps(fam, p, down, opts).value - centre;
      } catch (const DomainError&) {
        d = bell_from_overlaps(fam, p, up, opts).value - centre;
      }
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Evaluation evaluate(SearchMode mode, const ModelPoint& p, const EvalContext& ctx) {
  Evaluation out;
  switch (mode) {
    case SearchMode::TTModel:
      out.bell = tt_bell(ctx.family, p.bell, ctx.correlator);
      break;
    case SearchMode::Overlap:
      out.bell = bell_from_overlaps(ctx.family, p.bell, p.overlaps, ctx.correlator);
      break;
    case SearchMode::Diamond: {
      const DiamondGram g = smear_diamonds(p.diamond, ctx);
      out.overlaps = overlap_coefficients(g.value);
      out.overlap_errors = overlap_errors(g);
      // Sampling noise can push an estimated overlap past the Cauchy-Schwarz
      // bound; that calls for more samples, not different input.
      for (double o : {out.overlaps->alpha, out.overlaps->beta, out.overlaps->gamma, out.overlaps->delta}) {
        if (std::fabs(o) > 1.0) {
          throw NumericalFailure("estimated overlap " + std::to_string(o) +
                                     " exceeds 1 in magnitude; increase the sample count",
                                 std::fabs(o) - 1.0);
        }
      }
      out.bell = bell_from_overlaps(ctx.family, p.bell, *out.overlaps, ctx.correlator);
      if (ctx.propagate_errors) {
        out.bell.num_error += overlap_sensitivity(ctx.family, p.bell, *out.overlaps,
                                                  *out.overlap_errors, ctx.correlator);
      }
      break;
    }
  }
  auto& prov = out.bell.provenance;
  prov.emplace_back("mode", std::string(mode_name(mode)));
  for (const char* n : {"eta", "eta_p", "sigma", "sigma_p", "lambda"}) prov.emplace_back(n, fmt(p.get(n)));
  if (mode == SearchMode::Overlap) {
    for (const char* n : {"alpha", "beta", "gamma", "delta"}) prov.emplace_back(n, fmt(p.get(n)));
  }
  if (mode == SearchMode::Diamond) {
    for (const char* n : {"a", "a_p", "b", "b_p", "R", "R_p"}) prov.emplace_back(n, fmt(p.get(n)));
    prov.emplace_back("mass", fmt(ctx.mass.value()));
    prov.emplace_back("settings", ctx.settings.describe());
  }
  return out;
}

}  // namespace bellqft
