#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mctsbn/lru_cache.hpp"

namespace mctsbn {

// Contingency counts for one family. config_index holds the mixed-radix
// encoding of the parent codes in `parents` order, first parent most
// significant; only configurations that occur in the data are listed.
// counts is row-major: counts[i * child_cardinality + k] is the number of
// rows with parent configuration config_index[i] and child code k.
struct CountQueryResult {
    int child = -1;
    std::vector<int> parents;
    int child_cardinality = 0;
    std::vector<std::uint64_t> config_index;  // ascending
    std::vector<std::int64_t> counts;

    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

// Per-variable state lists for CSV ingestion: name -> ordered labels.
struct Schema {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> states;
};

Schema parse_schema(const std::string& text);
std::string schema_to_text(const Schema& schema);

// Complete categorical data matrix, column-major integer codes. Immutable
// after construction; the internal count cache is mutex-guarded, so a
// Dataset may be shared across concurrent readers.
class Dataset {
public:
    Dataset(std::vector<std::string> names, std::vector<int> cardinalities,
            std::vector<std::vector<std::string>> state_labels,
            std::vector<std::vector<std::int32_t>> columns);

    int num_variables() const noexcept { return static_cast<int>(names_.size()); }
    std::int64_t num_rows() const noexcept { return n_rows_; }
    const std::string& name(int v) const { return names_.at(v); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    int cardinality(int v) const { return cardinalities_.at(v); }
    const std::vector<int>& cardinalities() const noexcept { return cardinalities_; }
    const std::vector<std::string>& states(int v) const { return state_labels_.at(v); }
    std::int32_t code(std::int64_t row, int v) const { return columns_.at(v).at(row); }
    const std::vector<std::int32_t>& column(int v) const { return columns_.at(v); }
    int index_of(const std::string& name) const;  // -1 when absent

    // Sufficient statistics for (child | parents), single pass over rows.
    // Results are memoized keyed by (child, sorted parent set); the encoding
    // for the requested parent order is rebuilt from the cached table.
    std::shared_ptr<const CountQueryResult> counts(int child,
                                                   const std::vector<int>& parents) const;

    void set_count_cache_capacity(std::size_t entries);
    void clear_count_cache() const;

private:
    std::shared_ptr<const CountQueryResult> compute_counts(int child,
                                                           const std::vector<int>& parents) const;

    std::vector<std::string> names_;
    std::vector<int> cardinalities_;
    std::vector<std::vector<std::string>> state_labels_;
    std::vector<std::vector<std::int32_t>> columns_;
    std::int64_t n_rows_ = 0;

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
    mutable std::unique_ptr<
        LruCache<std::vector<int>, std::shared_ptr<const CountQueryResult>, VecHash>>
        count_cache_;
};

// CSV ingestion: first row is the header; codes assigned per column by
// first-appearance order unless a schema pins the state lists.
Dataset load_csv(const std::string& text, const std::optional<Schema>& schema = std::nullopt);

std::string dataset_to_csv(const Dataset& d);
Schema dataset_schema(const Dataset& d);

}  // namespace mctsbn
