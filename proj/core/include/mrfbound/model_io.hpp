#pragma once

// Line-oriented model files:
//
//   MRF v1
//   vars <n>
//   card <k_1> ... <k_n>
//   unary <node> <k_node floats>     (optional, repeatable)
//   edges <m>
//   edge <u> <v>
//   <k_u rows of k_v floats>
//
// `#` starts a comment. Errors carry the offending line number.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mrfbound/model.hpp"

namespace mrfbound {

ModelSpec parse_model(std::istream& in);
Model load_model(std::istream& in);
Model load_model_file(const std::filesystem::path& path);

/// Canonical form: pairwise tables as stored, isolated priors as unary lines,
/// shortest round-trip decimal floats.
void save_model(const Model& model, std::ostream& out);
std::string format_double(double x);

}  // namespace mrfbound
