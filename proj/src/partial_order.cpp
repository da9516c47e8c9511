#include "mctsbn/partial_order.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mctsbn/errors.hpp"
#include "mctsbn/random.hpp"

namespace mctsbn {

namespace {
std::vector<std::uint64_t> make_mask(int universe) {
    return std::vector<std::uint64_t>((universe + 63) / 64, 0);
}
void mask_set(std::vector<std::uint64_t>& m, int v) { m[v >> 6] |= 1ull << (v & 63); }
bool mask_test(const std::vector<std::uint64_t>& m, int v) {
    return (m[v >> 6] >> (v & 63)) & 1ull;
}
}  // namespace

PartialOrder::PartialOrder(int universe_size) : universe_(universe_size) {
    if (universe_size < 0) throw std::invalid_argument("PartialOrder: negative universe");
    mask_ = make_mask(universe_);
}

PartialOrder::PartialOrder(int universe_size, std::vector<int> sequence)
    : universe_(universe_size), seq_(std::move(sequence)) {
    if (universe_size < 0) throw std::invalid_argument("PartialOrder: negative universe");
    mask_ = make_mask(universe_);
    for (int v : seq_) {
        if (v < 0 || v >= universe_)
            throw std::out_of_range("PartialOrder: variable " + std::to_string(v) +
                                    " outside universe of size " + std::to_string(universe_));
        if (mask_test(mask_, v))
            throw SemanticError("PartialOrder: duplicate variable " + std::to_string(v));
        mask_set(mask_, v);
    }
}

bool PartialOrder::contains(int v) const {
    if (v < 0 || v >= universe_) return false;
    return mask_test(mask_, v);
}

PartialOrder PartialOrder::extend(int x) const {
    if (x < 0 || x >= universe_)
        throw std::out_of_range("extend: variable " + std::to_string(x) + " outside universe");
    if (contains(x))
        throw SemanticError("extend: variable " + std::to_string(x) + " already in order");
    PartialOrder out(*this);
    out.seq_.push_back(x);
    mask_set(out.mask_, x);
    return out;
}

PartialOrder PartialOrder::project(const std::vector<int>& keep) const {
    auto keep_mask = make_mask(universe_);
    for (int v : keep)
        if (v >= 0 && v < universe_) mask_set(keep_mask, v);
    std::vector<int> out;
    out.reserve(seq_.size());
    for (int v : seq_)
        if (mask_test(keep_mask, v)) out.push_back(v);
    return PartialOrder(universe_, std::move(out));
}

PartialOrder PartialOrder::concat(const PartialOrder& other) const {
    if (universe_ != other.universe_)
        throw SemanticError("concat: universe size mismatch");
    for (std::size_t w = 0; w < mask_.size(); ++w)
        if (mask_[w] & other.mask_[w])
            throw SemanticError("concat: variable sets overlap");
    std::vector<int> out = seq_;
    out.insert(out.end(), other.seq_.begin(), other.seq_.end());
    return PartialOrder(universe_, std::move(out));
}

PartialOrder PartialOrder::complete_with_guide(const PartialOrder& guide) const {
    if (guide.universe_size() != universe_)
        throw SemanticError("complete_with_guide: universe size mismatch");
    if (!guide.complete())
        throw SemanticError("complete_with_guide: guide order is not complete");
    std::vector<int> rest;
    rest.reserve(universe_ - size());
    for (int v = 0; v < universe_; ++v)
        if (!contains(v)) rest.push_back(v);
    return concat(guide.project(rest));
}

std::uint64_t count_partial_orders(int n) {
    if (n < 0) throw std::invalid_argument("count_partial_orders: negative n");
    // sum_{k=0}^{n} n! / (n-k)!, accumulated as 1 + n + n(n-1) + ...
    std::uint64_t total = 0, term = 1;
    for (int k = 0; k <= n; ++k) {
        if (__builtin_add_overflow(total, term, &total))
            throw std::overflow_error("count_partial_orders: result exceeds uint64");
        if (k < n && __builtin_mul_overflow(term, static_cast<std::uint64_t>(n - k), &term))
            throw std::overflow_error("count_partial_orders: result exceeds uint64");
    }
    return total;
}

bool is_consistent(const Dag& dag, const PartialOrder& order) {
    if (order.universe_size() != dag.num_variables() || !order.complete())
        throw SemanticError("is_consistent: order does not cover exactly the dag's variables");
    std::vector<int> pos(dag.num_variables());
    for (int i = 0; i < order.size(); ++i) pos[order.at(i)] = i;
    for (int c = 0; c < dag.num_variables(); ++c)
        for (int p : dag.parents(c))
            if (pos[p] >= pos[c]) return false;
    return true;
}

PartialOrder sample_topological_order(const Dag& dag, std::uint64_t seed) {
    const int n = dag.num_variables();
    Rng rng(seed);
    std::vector<int> indegree(n);
    for (int c = 0; c < n; ++c) indegree[c] = static_cast<int>(dag.parents(c).size());
    std::vector<int> available;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0) available.push_back(v);
    std::vector<int> out;
    out.reserve(n);
    while (!available.empty()) {
        std::size_t pick = static_cast<std::size_t>(uniform_below(rng, available.size()));
        int v = available[pick];
        available.erase(available.begin() + pick);
        out.push_back(v);
        for (int c : dag.children(v))
            if (--indegree[c] == 0) available.push_back(c);
    }
    return PartialOrder(n, std::move(out));
}

PartialOrder canonical_topological_order(const Dag& dag) {
    const int n = dag.num_variables();
    std::vector<int> indegree(n);
    for (int c = 0; c < n; ++c) indegree[c] = static_cast<int>(dag.parents(c).size());
    std::vector<int> available;
    for (int v = n - 1; v >= 0; --v)
        if (indegree[v] == 0) available.push_back(v);  // back = smallest id
    std::vector<int> out;
    out.reserve(n);
    while (!available.empty()) {
        int v = available.back();
        available.pop_back();
        out.push_back(v);
        for (int c : dag.children(v))
            if (--indegree[c] == 0)
                available.insert(std::lower_bound(available.begin(), available.end(), c,
                                                  std::greater<int>()),
                                 c);
    }
    return PartialOrder(n, std::move(out));
}

std::string order_to_line(const PartialOrder& order, const std::vector<std::string>& names) {
    std::ostringstream out;
    for (int i = 0; i < order.size(); ++i) {
        if (i) out << ',';
        out << names.at(order.at(i));
    }
    out << '\n';
    return out.str();
}

PartialOrder order_from_line(const std::string& line, const std::vector<std::string>& names) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    std::vector<int> seq;
    std::string token;
    std::istringstream in(line);
    while (std::getline(in, token, ',')) {
        // trim
        auto b = token.find_first_not_of(" \t\r\n");
        auto e = token.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        token = token.substr(b, e - b + 1);
        auto it = index.find(token);
        if (it == index.end())
            throw SemanticError("order: unknown variable '" + token + "'");
        seq.push_back(it->second);
    }
    return PartialOrder(static_cast<int>(names.size()), std::move(seq));
}

}  // namespace mctsbn
