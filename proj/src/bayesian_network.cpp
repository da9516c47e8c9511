#include "mctsbn/bayesian_network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "mctsbn/errors.hpp"
#include "mctsbn/partial_order.hpp"
#include "mctsbn/random.hpp"

namespace mctsbn {

BayesianNetwork::BayesianNetwork(std::string name, std::vector<Variable> variables, Dag dag,
                                 std::vector<Cpt> cpts)
    : name_(std::move(name)),
      variables_(std::move(variables)),
      dag_(std::move(dag)),
      cpts_(std::move(cpts)) {
    const int n = num_variables();
    if (dag_.num_variables() != n || static_cast<int>(cpts_.size()) != n)
        throw SemanticError("BayesianNetwork: variable/dag/cpt counts disagree");

    std::unordered_set<std::string> seen;
    for (const auto& v : variables_) {
        if (!seen.insert(v.name).second)
            throw SemanticError("BayesianNetwork: duplicate variable name " + v.name);
        std::unordered_set<std::string> states(v.states.begin(), v.states.end());
        if (states.size() != v.states.size())
            throw SemanticError("BayesianNetwork: duplicate state label in " + v.name);
        if (v.states.empty())
            throw SemanticError("BayesianNetwork: variable " + v.name + " has no states");
    }

    for (int v = 0; v < n; ++v) {
        const Cpt& c = cpts_[v];
        if (c.child != v) throw SemanticError("BayesianNetwork: cpt order mismatch");
        std::vector<int> declared = c.parents;
        std::sort(declared.begin(), declared.end());
        if (declared != dag_.parents(v))
            throw SemanticError("BayesianNetwork: cpt parents of " + variables_[v].name +
                                " do not match the dag");
        const std::uint64_t q = c.num_configs(variables_);
        const int r = variables_[v].cardinality();
        if (c.table.size() != q * static_cast<std::uint64_t>(r))
            throw SemanticError("BayesianNetwork: cpt of " + variables_[v].name +
                                " has wrong row count");
        for (std::uint64_t cfg = 0; cfg < q; ++cfg) {
            double sum = 0;
            for (int k = 0; k < r; ++k) sum += c.table[cfg * r + k];
            if (std::abs(sum - 1.0) > 1e-9)
                throw SemanticError("BayesianNetwork: cpt row of " + variables_[v].name +
                                    " does not sum to 1");
        }
    }
}

int BayesianNetwork::index_of(const std::string& var_name) const {
    for (int i = 0; i < num_variables(); ++i)
        if (variables_[i].name == var_name) return i;
    return -1;
}

Dataset forward_sample(const BayesianNetwork& bn, std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("forward_sample: negative row count");
    const int nv = bn.num_variables();
    Rng rng(seed);
    PartialOrder order = canonical_topological_order(bn.dag());

    std::vector<std::vector<std::int32_t>> columns(nv);
    for (auto& col : columns) col.resize(n);
    std::vector<std::int32_t> row(nv);

    for (std::int64_t i = 0; i < n; ++i) {
        for (int pos = 0; pos < nv; ++pos) {
            const int v = order.at(pos);
            const Cpt& cpt = bn.cpt(v);
            const int r = bn.variable(v).cardinality();
            std::uint64_t cfg = 0;
            for (int p : cpt.parents)
                cfg = cfg * static_cast<std::uint64_t>(bn.variable(p).cardinality()) +
                      static_cast<std::uint64_t>(row[p]);
            const double u = uniform01(rng);
            double acc = 0;
            std::int32_t pick = static_cast<std::int32_t>(r - 1);  // residual mass
            for (int k = 0; k < r; ++k) {
                acc += cpt.table[cfg * r + k];
                if (u < acc) {
                    pick = static_cast<std::int32_t>(k);
                    break;
                }
            }
            row[v] = pick;
            columns[v][i] = pick;
        }
    }

    std::vector<std::string> names;
    std::vector<int> cards;
    std::vector<std::vector<std::string>> labels;
    for (int v = 0; v < nv; ++v) {
        names.push_back(bn.variable(v).name);
        cards.push_back(bn.variable(v).cardinality());
        labels.push_back(bn.variable(v).states);
    }
    return Dataset(std::move(names), std::move(cards), std::move(labels), std::move(columns));
}

}  // namespace mctsbn
