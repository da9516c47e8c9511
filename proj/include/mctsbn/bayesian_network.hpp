#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mctsbn/dag.hpp"
#include "mctsbn/dataset.hpp"

namespace mctsbn {

struct Variable {
    std::string name;
    std::vector<std::string> states;  // distinct labels, declaration order

    int cardinality() const noexcept { return static_cast<int>(states.size()); }
};

// Conditional probability table for one variable. Rows are indexed by the
// mixed-radix encoding of the parent states in `parents` order (first parent
// most significant); within a row, entries follow the child's state order.
struct Cpt {
    int child = -1;
    std::vector<int> parents;
    std::vector<double> table;  // num_configs * child_cardinality

    std::uint64_t num_configs(const std::vector<Variable>& vars) const {
        std::uint64_t q = 1;
        for (int p : parents) q *= static_cast<std::uint64_t>(vars.at(p).cardinality());
        return q;
    }
};

// Discrete Bayesian network: DAG plus one CPT per variable. Immutable after
// construction and safe to share across concurrent readers.
class BayesianNetwork {
public:
    BayesianNetwork(std::string name, std::vector<Variable> variables, Dag dag,
                    std::vector<Cpt> cpts);

    const std::string& name() const noexcept { return name_; }
    int num_variables() const noexcept { return static_cast<int>(variables_.size()); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const Variable& variable(int v) const { return variables_.at(v); }
    const Dag& dag() const noexcept { return dag_; }
    const Cpt& cpt(int v) const { return cpts_.at(v); }
    int index_of(const std::string& var_name) const;  // -1 when absent

private:
    std::string name_;
    std::vector<Variable> variables_;
    Dag dag_;
    std::vector<Cpt> cpts_;
};

// Ancestral sampling: n rows drawn following a fixed topological order of bn.
// The same (bn, n, seed) always produces a bit-identical dataset.
Dataset forward_sample(const BayesianNetwork& bn, std::int64_t n, std::uint64_t seed);

}  // namespace mctsbn
