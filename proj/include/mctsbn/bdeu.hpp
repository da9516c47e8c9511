#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mctsbn/dag.hpp"
#include "mctsbn/dataset.hpp"
#include "mctsbn/lru_cache.hpp"

namespace mctsbn {

// Decomposable BDeu log-score over a fixed dataset. Local scores are cached
// keyed by (child, sorted parent set); clearing the cache never changes a
// returned value. Safe for concurrent read-only scoring: both this cache and
// the dataset's count cache are mutex-guarded.
class BdeuScorer {
public:
    static constexpr std::uint64_t kDefaultMaxConfigs = 1ull << 31;

    explicit BdeuScorer(const Dataset& dataset, double ess = 1.0,
                        std::uint64_t max_parent_configs = kDefaultMaxConfigs,
                        std::size_t cache_capacity = 1'000'000);

    // Family log-score for (child | parents). Throws InfeasibleFamilyError
    // when the parent-configuration count exceeds the configured bound.
    double local(int child, const std::vector<int>& parents) const;

    // Sum of family scores, children taken in ascending variable id.
    double total(const Dag& dag) const;

    // total(dag) / n_rows. Throws SemanticError on an empty dataset.
    double nbdeu(const Dag& dag) const;

    double ess() const noexcept { return ess_; }
    const Dataset& dataset() const noexcept { return dataset_; }
    void clear_cache() const;

private:
    double compute_local(int child, const std::vector<int>& sorted_parents) const;

    const Dataset& dataset_;
    double ess_;
    std::uint64_t max_parent_configs_;

    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const noexcept {
            std::size_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    mutable std::unique_ptr<LruCache<std::vector<int>, double, VecHash>> cache_;
};

}  // namespace mctsbn
