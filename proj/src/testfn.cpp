#include "bellqft/testfn.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace bellqft {

void DiamondBump::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("diamond size R must be positive");
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
    throw ConfigError("bump sharpness must be positive");
  }
  if (!std::isfinite(t_shift)) throw ConfigError("t_shift must be finite");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bump spec: bad number for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

DiamondBump DiamondBump::parse(std::string_view spec) {
  DiamondBump bump;
  bool have_side = false, have_r = false, have_sharp = false;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("bump spec: expected key=value, got '" + std::string(item) + "'");
    }
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "side") {
      if (value == "right") {
        bump.side = Side::Right;
      } else if (value == "left") {
        bump.side = Side::Left;
      } else {
        throw ConfigError("bump spec: side must be right or left");
      }
      have_side = true;
    } else if (key == "R") {
      bump.R = parse_number(key, value);
      have_r = true;
    } else if (key == "sharpness" || key == "a" || key == "b") {
      bump.sharpness = parse_number(key, value);
      have_sharp = true;
    } else if (key == "t_shift") {
      bump.t_shift = parse_number(key, value);
    } else {
      throw ConfigError("bump spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_side || !have_r || !have_sharp) {
    throw ConfigError("bump spec needs side, R and sharpness");
  }
  bump.validate();
  return bump;
}

std::string DiamondBump::to_string() const {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "side=%s,R=%.17g,sharpness=%.17g,t_shift=%.17g",
                side == Side::Right ? "right" : "left", R, sharpness, t_shift);
  return buffer;
}

double bump_value(const DiamondBump& b, SpacetimePoint p) noexcept {
  const double rho = std::fabs(p.x - b.center_x()) + std::fabs(p.t - b.t_shift);
  if (!(rho < b.R)) return 0.0;
  return std::exp(-b.sharpness / ((b.R - rho) * (b.R + rho)));
}

SpacetimePoint lightcone_coords(const DiamondBump& b, double u, double v) noexcept {
  const double x = b.R * (u + v);
  const double t = b.R * (u - v) + b.t_shift;
  return {t, b.side == Side::Right ? x : -x};
}

UnitSquarePoint unit_coords(const DiamondBump& b, SpacetimePoint p) noexcept {
  const double x = b.side == Side::Right ? p.x : -p.x;
  const double t = p.t - b.t_shift;
  return {(x + t) / (2.0 * b.R), (x - t) / (2.0 * b.R)};
}

NormalizedTestFunction::NormalizedTestFunction(DiamondBump bump, double amplitude,
                                               double lambda_factor, double hadamard_norm)
    : bump_(bump), amplitude_(amplitude), lambda_(lambda_factor), norm_(hadamard_norm) {
  bump_.validate();
  if (!(hadamard_norm > 0.0) || !std::isfinite(hadamard_norm)) {
    throw DomainError("normalized test function needs a positive Hadamard norm");
  }
}

double NormalizedTestFunction::scale() const noexcept {
  return amplitude_ * std::sqrt((1.0 + lambda_ * lambda_) / norm_);
}

}  // namespace bellqft
