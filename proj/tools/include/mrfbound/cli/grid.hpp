#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "mrfbound/model.hpp"

namespace mrfbound::cli {

enum class Preset { kWeak, kStronger, kVeryStrong, kCustom };

/// Coupling regime for generated grids. The named presets use target
/// strengths 1.7, 1.9 and 2.5.
struct StrengthPreset {
  Preset preset;
  double target_d;
};

/// Accepts weak, stronger, very-strong (or very_strong), or a number ≥ 1.
StrengthPreset parse_strength(std::string_view text);
std::string to_string(const StrengthPreset& strength);

/// Uniform doubles in [0, 1) from std::mt19937_64, using the top 53 bits so
/// the stream is identical on every standard library.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// rows x cols binary grid, vertices row-major, edges in (right, down) order
/// per vertex. Edge potential ψ(a,b) = exp(θ s(a,b)) with s = +1 when a = b
/// and -1 otherwise; θ ~ U[-ln d, ln d], so d(ψ) = exp|θ| ≤ d.
///
/// A positive `field` adds a unary [exp(h), exp(-h)] per vertex with
/// h ~ U[-field, field], drawn after every coupling so the couplings do not
/// depend on it.
ModelSpec gen_grid(int rows, int cols, double target_d, std::uint64_t seed, double field = 0.0);

}  // namespace mrfbound::cli
