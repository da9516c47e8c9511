#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mctsbn {

// Directed acyclic graph over variables 0..n-1. Mutations that would
// introduce a self-arc, a duplicate arc, or a directed cycle throw.
class Dag {
public:
    explicit Dag(int num_variables);

    static Dag from_arcs(int num_variables, const std::vector<std::pair<int, int>>& arcs);

    int num_variables() const noexcept { return n_; }
    int num_arcs() const noexcept { return num_arcs_; }

    bool has_arc(int parent, int child) const;
    const std::vector<int>& parents(int child) const { return parents_.at(child); }
    const std::vector<int>& children(int parent) const { return children_.at(parent); }

    void add_arc(int parent, int child);
    void remove_arc(int parent, int child);

    // True iff `to` is reachable from `from` by a directed path (length >= 0).
    bool reaches(int from, int to) const;
    // True iff adding parent -> child would close a directed cycle.
    bool would_create_cycle(int parent, int child) const { return reaches(child, parent); }

    // All arcs sorted by (parent, child).
    std::vector<std::pair<int, int>> arcs() const;

    bool operator==(const Dag& other) const {
        return n_ == other.n_ && parents_ == other.parents_;
    }

private:
    void check_var(int v) const;

    int n_;
    int num_arcs_ = 0;
    std::vector<std::vector<int>> parents_;   // sorted ascending
    std::vector<std::vector<int>> children_;  // sorted ascending
};

}  // namespace mctsbn
