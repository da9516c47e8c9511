#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mctsbn/bdeu.hpp"
#include "mctsbn/dag.hpp"
#include "mctsbn/partial_order.hpp"

namespace mctsbn {

struct HcOptions {
    int max_parents = -1;  // -1 = unbounded
    bool op_add = true;
    bool op_delete = true;
    bool op_reverse = true;  // ignored by the order-constrained search
    std::int64_t max_iterations = -1;  // -1 = until local optimum
};

struct HcResult {
    Dag dag;
    double score;                    // total BDeu of dag
    std::vector<double> trajectory;  // total after each accepted move, strictly increasing
};

// Greedy DAG search with add/delete/reverse moves. Starts from the empty
// graph unless a seed structure is given. Deterministic: ties are broken by
// lexicographic (operator, parent id, child id) with add < delete < reverse.
HcResult hc_unconstrained(const BdeuScorer& scorer, const HcOptions& opts,
                          const Dag* seed = nullptr);

// Greedy search restricted to arcs from earlier to later variables in
// `order` (which must be complete). Only add/delete apply: under a fixed
// total order a reversal is never order-consistent. Families of distinct
// children are independent, so each child's parent set is optimized on its
// own; the result is a local optimum of the whole-graph move set.
HcResult hc_order_constrained(const BdeuScorer& scorer, const PartialOrder& order,
                              const HcOptions& opts);

}  // namespace mctsbn
