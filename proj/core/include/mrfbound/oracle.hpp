#pragma once

// Ground truth for small models.

#include <cstdint>
#include <vector>

#include "mrfbound/model.hpp"
#include "mrfbound/tree.hpp"

namespace mrfbound {

inline constexpr std::uint64_t kDefaultStateSpaceCap = std::uint64_t{1} << 24;

struct ExactMarginals {
  std::vector<std::vector<double>> marginals;
  double partition = 0.0;
};

/// Enumerates every assignment in lexicographic order (last variable
/// fastest). Refuses with StateSpaceTooLarge above `cap` assignments.
ExactMarginals exact_marginals_bruteforce(const Model& model,
                                          std::uint64_t cap = kDefaultStateSpaceCap);

/// Exact p(x_v) for an all-binary model via its self-avoiding-walk tree.
///
/// A cycle-induced leaf closes a cycle at some vertex s, arriving through
/// neighbour i after the walk first left s through neighbour k. The leaf is
/// pinned to state 0 when i < k and to state 1 when i > k; ordinary
/// sum-product on the pinned tree then gives the marginal at the root.
/// Throws PreconditionError on non-binary variables and BudgetExceeded when
/// the complete tree does not fit.
std::vector<double> weitz_exact_binary(const Model& model, int v,
                                       std::uint64_t budget = kDefaultTreeBudget);

}  // namespace mrfbound
