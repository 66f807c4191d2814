#include "mrfbound/cli/grid.hpp"

#include <charconv>
#include <cmath>

#include "mrfbound/model_io.hpp"

namespace mrfbound::cli {

StrengthPreset parse_strength(std::string_view text) {
  if (text == "weak") return {Preset::kWeak, 1.7};
  if (text == "stronger") return {Preset::kStronger, 1.9};
  if (text == "very-strong" || text == "very_strong") return {Preset::kVeryStrong, 2.5};
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(d >= 1.0) || !std::isfinite(d)) {
    throw Error("strength must be weak, stronger, very-strong, or a number >= 1; got '" +
                std::string(text) + "'");
  }
  return {Preset::kCustom, d};
}

std::string to_string(const StrengthPreset& strength) {
  switch (strength.preset) {
    case Preset::kWeak: return "weak";
    case Preset::kStronger: return "stronger";
    case Preset::kVeryStrong: return "very-strong";
    case Preset::kCustom: break;
  }
  return format_double(strength.target_d);
}

ModelSpec gen_grid(int rows, int cols, double target_d, std::uint64_t seed, double field) {
  if (rows < 1 || cols < 1) throw PreconditionError("grid dimensions must be positive");
  if (!(target_d >= 1.0)) throw PreconditionError("target strength must be at least 1");
  if (!(field >= 0.0)) throw PreconditionError("field must be nonnegative");

  const double span = std::log(target_d);
  UniformStream uniform(seed);
  auto coupling = [&] {
    const double theta = (2.0 * uniform.next() - 1.0) * span;
    return PotentialTable(2, 2, {std::exp(theta), std::exp(-theta), std::exp(-theta), std::exp(theta)});
  };

  ModelSpec spec;
  spec.cardinalities.assign(static_cast<std::size_t>(rows) * cols, 2);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) spec.edges.push_back({v, v + 1, coupling()});
      if (r + 1 < rows) spec.edges.push_back({v, v + cols, coupling()});
    }
  }
  if (field > 0.0) {
    for (int v = 0; v < rows * cols; ++v) {
      const double h = (2.0 * uniform.next() - 1.0) * field;
      spec.unaries.push_back({v, {std::exp(h), std::exp(-h)}});
    }
  }
  return spec;
}

}  // namespace mrfbound::cli
