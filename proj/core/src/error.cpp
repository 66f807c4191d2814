#include "mrfbound/error.hpp"

namespace mrfbound {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out = "invalid model";
  for (const auto& v : violations) {
    out += "\n  ";
    if (v.line > 0) out += "line " + std::to_string(v.line) + ": ";
    out += v.message;
  }
  return out;
}

}  // namespace

ModelError::ModelError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(int line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t budget)
    : Error(what + " (budget " + std::to_string(budget) + " nodes)"), budget_(budget) {}

StateSpaceTooLarge::StateSpaceTooLarge(std::uint64_t required, std::uint64_t cap)
    : Error("state space of " + std::to_string(required) + " assignments exceeds cap " +
            std::to_string(cap) + "; raise the cap to at least " + std::to_string(required)),
      required_(required) {}

}  // namespace mrfbound
