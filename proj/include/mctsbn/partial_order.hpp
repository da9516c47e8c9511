#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mctsbn/dag.hpp"

namespace mctsbn {

// Ordered list of distinct variable ids over a fixed universe 0..n-1.
// May be empty, partial, or complete. Values are immutable once built;
// extend/project/concat return new orders.
class PartialOrder {
public:
    explicit PartialOrder(int universe_size);
    PartialOrder(int universe_size, std::vector<int> sequence);

    int universe_size() const noexcept { return universe_; }
    int size() const noexcept { return static_cast<int>(seq_.size()); }
    bool empty() const noexcept { return seq_.empty(); }
    bool complete() const noexcept { return size() == universe_; }
    bool contains(int v) const;
    int at(int pos) const { return seq_.at(pos); }
    const std::vector<int>& sequence() const noexcept { return seq_; }

    // New order with x appended; throws if x is already present or invalid.
    PartialOrder extend(int x) const;

    // Subsequence keeping exactly the members of `keep`, relative order preserved.
    PartialOrder project(const std::vector<int>& keep) const;

    // this followed by other; throws if the variable sets overlap.
    PartialOrder concat(const PartialOrder& other) const;

    // this . project(guide, universe \ vars(this)). Guide must be complete.
    PartialOrder complete_with_guide(const PartialOrder& guide) const;

    bool operator==(const PartialOrder& other) const {
        return universe_ == other.universe_ && seq_ == other.seq_;
    }

private:
    int universe_;
    std::vector<int> seq_;
    std::vector<std::uint64_t> mask_;  // membership bitset
};

// Number of partial orders over n variables: sum over k of k! * C(n, k).
// Throws std::overflow_error when the value exceeds uint64.
std::uint64_t count_partial_orders(int n);

// True iff every arc (p, c) of dag has p strictly before c in `order`.
// `order` must be complete over the dag's variables.
bool is_consistent(const Dag& dag, const PartialOrder& order);

// Complete topological order drawn by repeatedly picking uniformly at random
// among the variables whose remaining in-degree is zero.
PartialOrder sample_topological_order(const Dag& dag, std::uint64_t seed);

// Deterministic topological order: always the smallest-id available variable.
PartialOrder canonical_topological_order(const Dag& dag);

// One comma-separated line of variable names.
std::string order_to_line(const PartialOrder& order, const std::vector<std::string>& names);
PartialOrder order_from_line(const std::string& line, const std::vector<std::string>& names);

}  // namespace mctsbn
