#include "bellqft/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bellqft/errors.hpp"

namespace bellqft {

const char* const kNormativeFormula =
    "<A_i B_j> = int dk dp s(k) s(p) exp(-(k^2 H(f,f) + p^2 H(g,g) + 2 k p H(f,g))/2) with "
    "the k^2, p^2, kp factors kept; Bell value = <AB> + <A'B> + <AB'> - <A'B'>; every kernel "
    "family is a positive operator with 0 <= A <= 1, so the combination cannot exceed 2";

PathComparison compare_paths(const KernelFamily& fam, const GramMatrix& g) {
  PathComparison c;
  c.gauss_kronrod = bell_chsh(fam, g, {PairMethod::NestedGaussKronrod});
  c.tanh_sinh = bell_chsh(fam, g, {PairMethod::NestedTanhSinh});
  c.max_difference = std::fabs(c.gauss_kronrod.value - c.tanh_sinh.value);
  for (int i = 0; i < 4; ++i) {
    c.max_difference =
        std::max(c.max_difference, std::fabs(c.gauss_kronrod.terms[i] - c.tanh_sinh.terms[i]));
  }
  return c;
}

FigurePreset figure_preset(int number, std::size_t points) {
  FigurePreset f;
  f.number = number;
  switch (number) {
    case 2:
      f.family = KernelFamily::from_name("lorentz");
      f.fixed.bell = {0.0, 0.0, 0.011, 2.102, 0.884};
      break;
    case 3:
      f.family = KernelFamily::from_name("sech");
      f.fixed.bell = {0.0, 0.0, 0.144, 8.714, 0.884};
      break;
    case 4:
      f.family = KernelFamily::from_name("gauss");
      f.fixed.bell = {0.0, 0.0, 0.104, 8.784, 0.884};
      break;
    default:
      throw ConfigError("figure must be 2, 3 or 4");
  }
  f.fixed.overlaps = kQuotedFittedOverlaps;
  f.eta = ScanAxis::linspace("eta", 0.0, 0.1, points);
  f.eta_p = ScanAxis::linspace("eta_p", 0.0, 10.0, points);
  return f;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* status(bool ok) { return ok ? "match" : "mismatch-documented"; }

std::string terms_text(const BellResult& r) {
  return short_num(r.terms[0]) + " " + short_num(r.terms[1]) + " " + short_num(r.terms[2]) +
         " " + short_num(r.terms[3]);
}

}  // namespace

std::vector<ReportRow> reproduce(const ReproduceOptions& opts) {
  std::vector<ReportRow> rows;
  const KernelFamily lorentz = KernelFamily::from_name("lorentz");

  const double alpha_tt = overlap_coefficients(tt_gram(kQuotedOptimum)).alpha;
  rows.push_back({"alpha_TT", num(kQuotedAlphaTT), num(alpha_tt), "5e-4",
                  status(std::fabs(alpha_tt - kQuotedAlphaTT) <= 5e-4), "lambda=0.884"});

  const PathComparison tt = compare_paths(lorentz, tt_gram(kQuotedOptimum));
  rows.push_back({"tt_value", num(kQuotedTTValue), num(tt.gauss_kronrod.value), "0.05",
                  status(std::fabs(tt.gauss_kronrod.value - kQuotedTTValue) <= 0.05),
                  "tanh-sinh " + num(tt.tanh_sinh.value) + "; path difference " +
                      short_num(tt.max_difference)});
  rows.push_back({"tt_terms", "", terms_text(tt.gauss_kronrod), "", "",
                  "tanh-sinh " + terms_text(tt.tanh_sinh)});

  {
    ViolationSearch search;
    search.context.family = lorentz;
    SearchSpace space{{{"eta", -10, 10, Scale::SignedLog, 1e-3},
                       {"eta_p", -10, 10, Scale::SignedLog, 1e-3},
                       {"sigma", -10, 10, Scale::SignedLog, 1e-3},
                       {"sigma_p", -10, 10, Scale::SignedLog, 1e-3},
                       {"lambda", 1e-3, 0.999}}};
    const auto r = maximize_violation(search, space, {opts.tt_budget, opts.seed});
    const auto& b = r.best.bell;
    rows.push_back({"tt_search_max", num(kQuotedTTValue), num(r.evaluation.bell.value), "0.05",
                    status(std::fabs(r.evaluation.bell.value - kQuotedTTValue) <= 0.05),
                    "evaluations " + std::to_string(r.search.evaluations) + "; eta " +
                        short_num(b.eta) + " eta' " + short_num(b.eta_p) + " sigma " +
                        short_num(b.sigma) + " sigma' " + short_num(b.sigma_p) + " lambda " +
                        short_num(b.lambda)});
  }

  const PathComparison quoted = compare_paths(lorentz, gram_from_overlaps(kQuotedOptimum, kQuotedFittedOverlaps));
  rows.push_back({"diamond_value_quoted_overlaps", num(kQuotedDiamondValue),
                  num(quoted.gauss_kronrod.value), "0.05",
                  status(std::fabs(quoted.gauss_kronrod.value - kQuotedDiamondValue) <= 0.05),
                  "tanh-sinh " + num(quoted.tanh_sinh.value) + "; terms " +
                      terms_text(quoted.gauss_kronrod)});

  if (opts.fit_budget > 0) {
    SmearCache cache;
    ViolationSearch fit;
    fit.mode = SearchMode::Diamond;
    fit.objective = Objective::OverlapMatch;
    fit.base.bell = kQuotedOptimum;
    fit.target = tt_overlaps(kQuotedOptimum.lambda);
    fit.context.family = lorentz;
    fit.context.mass = opts.mass;
    fit.context.settings = opts.search_settings;
    fit.context.settings.seed = opts.seed;
    fit.context.cache = &cache;
    fit.final_settings = opts.final_settings;
    fit.final_settings.seed = opts.seed;
    const SearchSpace space{{{"a", 1e-2, 1e2, Scale::Log},
                             {"a_p", 1e-2, 1e2, Scale::Log},
                             {"b", 1e-2, 1e2, Scale::Log},
                             {"b_p", 1e-2, 1e2, Scale::Log},
                             {"R", 0.1, 10, Scale::Log},
                             {"R_p", 0.1, 10, Scale::Log}}};
    const auto r = maximize_violation(fit, space, {opts.fit_budget, opts.seed});
    const Overlaps o = *r.evaluation.overlaps;
    const Overlaps e = *r.evaluation.overlap_errors;
    const auto& d = r.best.diamond;
    const std::string where = "a " + short_num(d.a) + " a' " + short_num(d.a_p) + " b " +
                              short_num(d.b) + " b' " + short_num(d.b_p) + " R " +
                              short_num(d.R) + " R' " + short_num(d.R_p.value_or(d.R)) +
                              "; evaluations " + std::to_string(r.search.evaluations);
    const double q[4] = {kQuotedFittedOverlaps.alpha, kQuotedFittedOverlaps.beta,
                         kQuotedFittedOverlaps.gamma, kQuotedFittedOverlaps.delta};
    const double c[4] = {o.alpha, o.beta, o.gamma, o.delta};
    const double s[4] = {e.alpha, e.beta, e.gamma, e.delta};
    const char* names[4] = {"fit_alpha", "fit_beta", "fit_gamma", "fit_delta"};
    for (int i = 0; i < 4; ++i) {
      rows.push_back({names[i], num(q[i]), num(c[i]), "0.05", status(std::fabs(c[i] - q[i]) <= 0.05),
                      "std error " + short_num(s[i]) + "; " + where});
    }
    rows.push_back({"diamond_value_fitted_overlaps", num(kQuotedDiamondValue),
                    num(r.evaluation.bell.value), "0.05",
                    status(std::fabs(r.evaluation.bell.value - kQuotedDiamondValue) <= 0.05),
                    "error " + short_num(r.evaluation.bell.num_error)});
  }

  for (int fig : {2, 3, 4}) {
    const FigurePreset p = figure_preset(fig, opts.grid);
    EvalContext ctx;
    ctx.family = p.family;
    const ScanGrid g = scan_grid(SearchMode::Overlap, p.eta, p.eta_p, p.fixed, ctx);
    const auto cells = static_cast<std::size_t>(
        std::count_if(g.values.begin(), g.values.end(), [](double v) { return v > 2.0; }));
    const double best = *std::max_element(g.values.begin(), g.values.end());
    rows.push_back({"figure" + std::to_string(fig) + "_mask", "violation region present",
                    std::to_string(cells) + " of " + std::to_string(g.values.size()) + " cells > 2",
                    "", status(cells > 0),
                    std::string(p.family.name()) + "; grid maximum " + num(best)});
  }

  rows.push_back({"normative_formula", "", "", "", "", kNormativeFormula});
  return rows;
}

}  // namespace bellqft
