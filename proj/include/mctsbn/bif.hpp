#pragma once

#include <string>

#include "mctsbn/bayesian_network.hpp"

namespace mctsbn {

// Parse a BIF document. Supported subset: a `network` header, discrete
// `variable` blocks with explicit state lists, and `probability` blocks with
// either `table` rows or per-configuration `(state, ...)` rows; `property`
// lines are ignored. Anything else raises ParseError naming the construct.
// Probability rows off by at most 1e-4 from summing to 1 are renormalized;
// larger deviations raise SemanticError.
BayesianNetwork parse_bif(const std::string& text);

std::string write_bif(const BayesianNetwork& bn);

}  // namespace mctsbn
