#include "mctsbn/dag.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mctsbn/errors.hpp"

namespace mctsbn {

Dag::Dag(int num_variables) : n_(num_variables) {
    if (num_variables < 0) throw std::invalid_argument("Dag: negative variable count");
    parents_.resize(n_);
    children_.resize(n_);
}

Dag Dag::from_arcs(int num_variables, const std::vector<std::pair<int, int>>& arcs) {
    Dag dag(num_variables);
    for (const auto& [p, c] : arcs) dag.add_arc(p, c);
    return dag;
}

void Dag::check_var(int v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("Dag: variable " + std::to_string(v) + " out of range");
}

bool Dag::has_arc(int parent, int child) const {
    check_var(parent);
    check_var(child);
    const auto& ps = parents_[child];
    return std::binary_search(ps.begin(), ps.end(), parent);
}

void Dag::add_arc(int parent, int child) {
    check_var(parent);
    check_var(child);
    if (parent == child)
        throw SemanticError("Dag: self-arc on variable " + std::to_string(parent));
    if (has_arc(parent, child))
        throw SemanticError("Dag: duplicate arc " + std::to_string(parent) + " -> " +
                            std::to_string(child));
    if (would_create_cycle(parent, child))
        throw SemanticError("Dag: arc " + std::to_string(parent) + " -> " +
                            std::to_string(child) + " would create a cycle");
    auto& ps = parents_[child];
    ps.insert(std::lower_bound(ps.begin(), ps.end(), parent), parent);
    auto& cs = children_[parent];
    cs.insert(std::lower_bound(cs.begin(), cs.end(), child), child);
    ++num_arcs_;
}

void Dag::remove_arc(int parent, int child) {
    check_var(parent);
    check_var(child);
    auto& ps = parents_[child];
    auto it = std::lower_bound(ps.begin(), ps.end(), parent);
    if (it == ps.end() || *it != parent)
        throw SemanticError("Dag: no arc " + std::to_string(parent) + " -> " +
                            std::to_string(child));
    ps.erase(it);
    auto& cs = children_[parent];
    cs.erase(std::lower_bound(cs.begin(), cs.end(), child));
    --num_arcs_;
}

bool Dag::reaches(int from, int to) const {
    check_var(from);
    check_var(to);
    if (from == to) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : children_[v]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::vector<std::pair<int, int>> Dag::arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(num_arcs_);
    for (int p = 0; p < n_; ++p)
        for (int c : children_[p]) out.emplace_back(p, c);
    return out;
}

}  // namespace mctsbn
