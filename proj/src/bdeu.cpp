#include "mctsbn/bdeu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mctsbn/errors.hpp"

namespace mctsbn {

BdeuScorer::BdeuScorer(const Dataset& dataset, double ess, std::uint64_t max_parent_configs,
                       std::size_t cache_capacity)
    : dataset_(dataset), ess_(ess), max_parent_configs_(max_parent_configs) {
    if (!(ess > 0)) throw std::invalid_argument("BdeuScorer: ess must be positive");
    cache_ = std::make_unique<LruCache<std::vector<int>, double, VecHash>>(cache_capacity);
}

void BdeuScorer::clear_cache() const { cache_->clear(); }

double BdeuScorer::local(int child, const std::vector<int>& parents) const {
    for (int p : parents)
        if (p == child) throw SemanticError("local score: child appears in its parent set");

    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(child);
    std::vector<int> sorted(parents.begin(), parents.end());
    std::sort(sorted.begin(), sorted.end());
    key.insert(key.end(), sorted.begin(), sorted.end());

    if (auto hit = cache_->get(key)) return *hit;
    double value = compute_local(child, sorted);
    cache_->put(key, value);
    return value;
}

double BdeuScorer::compute_local(int child, const std::vector<int>& sorted_parents) const {
    std::uint64_t q = 1;
    for (int p : sorted_parents) {
        const auto card = static_cast<std::uint64_t>(dataset_.cardinality(p));
        if (q > max_parent_configs_ / card)
            throw InfeasibleFamilyError(
                "family (" + dataset_.name(child) + " | " + std::to_string(sorted_parents.size()) +
                " parents) exceeds the parent-configuration bound");
        q *= card;
    }
    const int r = dataset_.cardinality(child);

    // Configurations absent from the data contribute nothing: every lgamma
    // term cancels, so the sum over observed configurations is exact.
    auto table = dataset_.counts(child, sorted_parents);
    const double alpha_j = ess_ / static_cast<double>(q);
    const double alpha_jk = ess_ / (static_cast<double>(q) * static_cast<double>(r));
    const double lg_alpha_j = std::lgamma(alpha_j);
    const double lg_alpha_jk = std::lgamma(alpha_jk);

    double score = 0.0;
    const std::size_t n_cfg = table->config_index.size();
    for (std::size_t i = 0; i < n_cfg; ++i) {
        std::int64_t n_j = 0;
        for (int k = 0; k < r; ++k) {
            const std::int64_t n_jk = table->counts[i * r + k];
            n_j += n_jk;
            if (n_jk > 0)
                score += std::lgamma(alpha_jk + static_cast<double>(n_jk)) - lg_alpha_jk;
        }
        if (n_j > 0) score += lg_alpha_j - std::lgamma(alpha_j + static_cast<double>(n_j));
    }
    return score;
}

double BdeuScorer::total(const Dag& dag) const {
    if (dag.num_variables() != dataset_.num_variables())
        throw SemanticError("total score: dag has " + std::to_string(dag.num_variables()) +
                            " variables, dataset has " +
                            std::to_string(dataset_.num_variables()));
    double sum = 0.0;
    for (int child = 0; child < dag.num_variables(); ++child)
        sum += local(child, dag.parents(child));
    return sum;
}

double BdeuScorer::nbdeu(const Dag& dag) const {
    if (dataset_.num_rows() == 0)
        throw SemanticError("nbdeu: dataset has no rows");
    return total(dag) / static_cast<double>(dataset_.num_rows());
}

}  // namespace mctsbn
