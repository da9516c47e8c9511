#include "mctsbn/dataset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mctsbn/errors.hpp"

namespace mctsbn {

namespace {

constexpr std::size_t kDefaultCacheCapacity = 1'000'000;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

}  // namespace

Schema parse_schema(const std::string& text) {
    Schema schema;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("schema: expected 'variable:state1|state2|...'", lineno);
        std::string name = trim(line.substr(0, colon));
        auto states = split(line.substr(colon + 1), '|');
        if (name.empty() || states.empty())
            throw ParseError("schema: empty variable name or state list", lineno);
        for (const auto& s : states)
            if (s.empty()) throw ParseError("schema: empty state label", lineno);
        schema.names.push_back(std::move(name));
        schema.states.push_back(std::move(states));
    }
    return schema;
}

std::string schema_to_text(const Schema& schema) {
    std::ostringstream out;
    for (std::size_t i = 0; i < schema.names.size(); ++i) {
        out << schema.names[i] << ':';
        for (std::size_t j = 0; j < schema.states[i].size(); ++j) {
            if (j) out << '|';
            out << schema.states[i][j];
        }
        out << '\n';
    }
    return out.str();
}

Dataset::Dataset(std::vector<std::string> names, std::vector<int> cardinalities,
                 std::vector<std::vector<std::string>> state_labels,
                 std::vector<std::vector<std::int32_t>> columns)
    : names_(std::move(names)),
      cardinalities_(std::move(cardinalities)),
      state_labels_(std::move(state_labels)),
      columns_(std::move(columns)) {
    const std::size_t n = names_.size();
    if (cardinalities_.size() != n || state_labels_.size() != n || columns_.size() != n)
        throw std::invalid_argument("Dataset: field sizes disagree");
    n_rows_ = n == 0 ? 0 : static_cast<std::int64_t>(columns_[0].size());
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<std::int64_t>(columns_[v].size()) != n_rows_)
            throw std::invalid_argument("Dataset: column length mismatch");
        if (cardinalities_[v] < 1)
            throw std::invalid_argument("Dataset: cardinality < 1 for " + names_[v]);
        for (auto code : columns_[v])
            if (code < 0 || code >= cardinalities_[v])
                throw std::invalid_argument("Dataset: code out of range in column " + names_[v]);
    }
    count_cache_ = std::make_unique<
        LruCache<std::vector<int>, std::shared_ptr<const CountQueryResult>, VecHash>>(
        kDefaultCacheCapacity);
}

int Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

void Dataset::set_count_cache_capacity(std::size_t entries) {
    count_cache_ = std::make_unique<
        LruCache<std::vector<int>, std::shared_ptr<const CountQueryResult>, VecHash>>(entries);
}

void Dataset::clear_count_cache() const { count_cache_->clear(); }

std::shared_ptr<const CountQueryResult> Dataset::compute_counts(
    int child, const std::vector<int>& parents) const {
    auto result = std::make_shared<CountQueryResult>();
    result->child = child;
    result->parents = parents;
    result->child_cardinality = cardinality(child);
    const int r = result->child_cardinality;
    const auto& child_col = columns_[child];

    if (parents.empty()) {
        result->config_index.assign(1, 0);
        result->counts.assign(r, 0);
        for (auto code : child_col) ++result->counts[code];
        return result;
    }

    // Strides for the mixed-radix index, first parent most significant.
    std::vector<std::uint64_t> strides(parents.size());
    std::uint64_t q = 1;
    for (std::size_t j = parents.size(); j-- > 0;) {
        strides[j] = q;
        q *= static_cast<std::uint64_t>(cardinality(parents[j]));
    }

    // Dense tally when the table is small, hashed tally otherwise.
    if (q * static_cast<std::uint64_t>(r) <= 1u << 16) {
        std::vector<std::int64_t> dense(q * r, 0);
        for (std::int64_t row = 0; row < n_rows_; ++row) {
            std::uint64_t idx = 0;
            for (std::size_t j = 0; j < parents.size(); ++j)
                idx += strides[j] * static_cast<std::uint64_t>(columns_[parents[j]][row]);
            ++dense[idx * r + child_col[row]];
        }
        for (std::uint64_t cfg = 0; cfg < q; ++cfg) {
            std::int64_t row_total = 0;
            for (int k = 0; k < r; ++k) row_total += dense[cfg * r + k];
            if (row_total == 0) continue;
            result->config_index.push_back(cfg);
            for (int k = 0; k < r; ++k) result->counts.push_back(dense[cfg * r + k]);
        }
    } else {
        std::unordered_map<std::uint64_t, std::vector<std::int64_t>> sparse;
        for (std::int64_t row = 0; row < n_rows_; ++row) {
            std::uint64_t idx = 0;
            for (std::size_t j = 0; j < parents.size(); ++j)
                idx += strides[j] * static_cast<std::uint64_t>(columns_[parents[j]][row]);
            auto& vec = sparse[idx];
            if (vec.empty()) vec.assign(r, 0);
            ++vec[child_col[row]];
        }
        std::vector<std::uint64_t> keys;
        keys.reserve(sparse.size());
        for (const auto& [k, v] : sparse) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        for (auto k : keys) {
            result->config_index.push_back(k);
            const auto& vec = sparse[k];
            result->counts.insert(result->counts.end(), vec.begin(), vec.end());
        }
    }
    return result;
}

std::shared_ptr<const CountQueryResult> Dataset::counts(int child,
                                                        const std::vector<int>& parents) const {
    if (child < 0 || child >= num_variables())
        throw std::out_of_range("counts: invalid child id " + std::to_string(child));
    for (int p : parents) {
        if (p < 0 || p >= num_variables())
            throw std::out_of_range("counts: invalid parent id " + std::to_string(p));
        if (p == child) throw SemanticError("counts: child appears in its own parent list");
    }
    {
        std::vector<int> sorted(parents.begin(), parents.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw SemanticError("counts: duplicate parent id");
    }

    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(child);
    std::vector<int> sorted_parents(parents.begin(), parents.end());
    std::sort(sorted_parents.begin(), sorted_parents.end());
    key.insert(key.end(), sorted_parents.begin(), sorted_parents.end());

    std::shared_ptr<const CountQueryResult> canonical;
    if (auto hit = count_cache_->get(key)) {
        canonical = *hit;
    } else {
        canonical = compute_counts(child, sorted_parents);
        count_cache_->put(key, canonical);
    }
    if (parents == sorted_parents) return canonical;

    // Re-encode configuration indices for the requested parent order.
    const int r = canonical->child_cardinality;
    std::vector<std::uint64_t> sorted_strides(parents.size()), req_strides(parents.size());
    std::uint64_t q = 1;
    for (std::size_t j = parents.size(); j-- > 0;) {
        sorted_strides[j] = q;
        q *= static_cast<std::uint64_t>(cardinality(sorted_parents[j]));
    }
    q = 1;
    for (std::size_t j = parents.size(); j-- > 0;) {
        req_strides[j] = q;
        q *= static_cast<std::uint64_t>(cardinality(parents[j]));
    }
    std::vector<std::size_t> pos_in_sorted(parents.size());
    for (std::size_t j = 0; j < parents.size(); ++j) {
        auto it = std::lower_bound(sorted_parents.begin(), sorted_parents.end(), parents[j]);
        pos_in_sorted[j] = static_cast<std::size_t>(it - sorted_parents.begin());
    }

    auto remapped = std::make_shared<CountQueryResult>();
    remapped->child = child;
    remapped->parents = parents;
    remapped->child_cardinality = r;
    std::vector<std::pair<std::uint64_t, std::size_t>> order(canonical->config_index.size());
    for (std::size_t i = 0; i < canonical->config_index.size(); ++i) {
        std::uint64_t cfg = canonical->config_index[i];
        std::uint64_t new_cfg = 0;
        for (std::size_t j = 0; j < parents.size(); ++j) {
            auto digit = (cfg / sorted_strides[pos_in_sorted[j]]) %
                         static_cast<std::uint64_t>(cardinality(parents[j]));
            new_cfg += req_strides[j] * digit;
        }
        order[i] = {new_cfg, i};
    }
    std::sort(order.begin(), order.end());
    remapped->config_index.reserve(order.size());
    remapped->counts.reserve(canonical->counts.size());
    for (const auto& [cfg, i] : order) {
        remapped->config_index.push_back(cfg);
        for (int k = 0; k < r; ++k) remapped->counts.push_back(canonical->counts[i * r + k]);
    }
    return remapped;
}

Dataset load_csv(const std::string& text, const std::optional<Schema>& schema) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw ParseError("csv: missing header row", 1);
    ++lineno;
    auto names = split(line, ',');
    if (names.empty() || (names.size() == 1 && names[0].empty()))
        throw ParseError("csv: empty header row", 1);
    for (const auto& n : names)
        if (n.empty()) throw ParseError("csv: empty variable name in header", 1);
    const std::size_t n_cols = names.size();

    // Per-column label -> code maps, seeded from the schema when given.
    std::vector<std::unordered_map<std::string, std::int32_t>> code_of(n_cols);
    std::vector<std::vector<std::string>> labels(n_cols);
    std::vector<bool> pinned(n_cols, false);
    if (schema) {
        for (std::size_t v = 0; v < n_cols; ++v) {
            for (std::size_t s = 0; s < schema->names.size(); ++s) {
                if (schema->names[s] != names[v]) continue;
                labels[v] = schema->states[s];
                for (std::size_t k = 0; k < labels[v].size(); ++k)
                    code_of[v][labels[v][k]] = static_cast<std::int32_t>(k);
                pinned[v] = true;
                break;
            }
        }
    }

    std::vector<std::vector<std::int32_t>> columns(n_cols);
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != n_cols)
            throw ParseError("csv: row has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(n_cols),
                             lineno);
        for (std::size_t v = 0; v < n_cols; ++v) {
            if (cells[v].empty())
                throw ParseError("csv: missing value in column " + names[v], lineno);
            auto it = code_of[v].find(cells[v]);
            if (it == code_of[v].end()) {
                if (pinned[v])
                    throw SemanticError("csv: label '" + cells[v] + "' in column " + names[v] +
                                        " is not in the schema");
                std::int32_t code = static_cast<std::int32_t>(labels[v].size());
                labels[v].push_back(cells[v]);
                it = code_of[v].emplace(cells[v], code).first;
            }
            columns[v].push_back(it->second);
        }
    }

    std::vector<int> cards(n_cols);
    for (std::size_t v = 0; v < n_cols; ++v) {
        cards[v] = static_cast<int>(labels[v].size());
        if (cards[v] == 0)
            throw SemanticError("csv: empty body and no schema entry for column " + names[v] +
                                "; cardinalities unknowable");
    }
    return Dataset(std::move(names), std::move(cards), std::move(labels), std::move(columns));
}

std::string dataset_to_csv(const Dataset& d) {
    std::ostringstream out;
    for (int v = 0; v < d.num_variables(); ++v) {
        const auto& name = d.name(v);
        if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos)
            throw SemanticError("csv: variable name contains a separator: " + name);
        if (v) out << ',';
        out << name;
    }
    out << '\n';
    for (std::int64_t row = 0; row < d.num_rows(); ++row) {
        for (int v = 0; v < d.num_variables(); ++v) {
            const auto& label = d.states(v).at(d.code(row, v));
            if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos)
                throw SemanticError("csv: state label contains a separator: " + label);
            if (v) out << ',';
            out << label;
        }
        out << '\n';
    }
    return out.str();
}

Schema dataset_schema(const Dataset& d) {
    Schema schema;
    for (int v = 0; v < d.num_variables(); ++v) {
        schema.names.push_back(d.name(v));
        schema.states.push_back(d.states(v));
    }
    return schema;
}

}  // namespace mctsbn
