#include "mctsbn/hill_climbing.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "mctsbn/errors.hpp"

namespace mctsbn {

namespace {

// Accepted moves must beat this margin; bare > 0 can loop forever on
// score-equivalent reversals whose deltas are floating noise.
constexpr double kImprovementTol = 1e-9;

void check_options(const HcOptions& opts) {
    if (!opts.op_add && !opts.op_delete && !opts.op_reverse)
        throw std::invalid_argument("HcOptions: at least one operator must be enabled");
}

bool parents_full(const Dag& dag, int child, const HcOptions& opts) {
    return opts.max_parents >= 0 &&
           static_cast<int>(dag.parents(child).size()) >= opts.max_parents;
}

// Family score with the candidate parent modified; infeasible families make
// the move unavailable rather than aborting the search.
std::optional<double> try_local(const BdeuScorer& scorer, int child, std::vector<int> parents) {
    try {
        return scorer.local(child, parents);
    } catch (const InfeasibleFamilyError&) {
        return std::nullopt;
    }
}

std::vector<int> with_parent(const std::vector<int>& parents, int p) {
    std::vector<int> out = parents;
    out.insert(std::lower_bound(out.begin(), out.end(), p), p);
    return out;
}

std::vector<int> without_parent(const std::vector<int>& parents, int p) {
    std::vector<int> out = parents;
    out.erase(std::find(out.begin(), out.end(), p));
    return out;
}

}  // namespace

HcResult hc_unconstrained(const BdeuScorer& scorer, const HcOptions& opts, const Dag* seed) {
    check_options(opts);
    const int n = scorer.dataset().num_variables();
    if (seed && seed->num_variables() != n)
        throw SemanticError("hc: seed structure does not match the dataset variables");

    Dag dag = seed ? *seed : Dag(n);
    std::vector<double> local(n);
    for (int c = 0; c < n; ++c) local[c] = scorer.local(c, dag.parents(c));

    HcResult result{dag, 0.0, {}};
    double total = 0.0;
    for (int c = 0; c < n; ++c) total += local[c];

    enum Op { Add = 0, Delete = 1, Reverse = 2 };
    std::int64_t iterations = 0;
    while (opts.max_iterations < 0 || iterations < opts.max_iterations) {
        double best_delta = kImprovementTol;
        int best_op = -1, best_p = -1, best_c = -1;
        double best_lc = 0, best_lp = 0;  // new local scores of touched families

        for (int op = Add; op <= Reverse; ++op) {
            if (op == Add && !opts.op_add) continue;
            if (op == Delete && !opts.op_delete) continue;
            if (op == Reverse && !opts.op_reverse) continue;
            for (int p = 0; p < n; ++p) {
                for (int c = 0; c < n; ++c) {
                    if (p == c) continue;
                    const bool present = dag.has_arc(p, c);
                    if (op == Add) {
                        if (present || parents_full(dag, c, opts)) continue;
                        if (dag.would_create_cycle(p, c)) continue;
                        auto lc = try_local(scorer, c, with_parent(dag.parents(c), p));
                        if (!lc) continue;
                        const double delta = *lc - local[c];
                        if (delta > best_delta) {
                            best_delta = delta;
                            best_op = op; best_p = p; best_c = c;
                            best_lc = *lc;
                        }
                    } else if (op == Delete) {
                        if (!present) continue;
                        auto lc = try_local(scorer, c, without_parent(dag.parents(c), p));
                        if (!lc) continue;
                        const double delta = *lc - local[c];
                        if (delta > best_delta) {
                            best_delta = delta;
                            best_op = op; best_p = p; best_c = c;
                            best_lc = *lc;
                        }
                    } else {
                        if (!present || parents_full(dag, p, opts)) continue;
                        // p -> c becomes c -> p; a second p..c path makes it cyclic.
                        dag.remove_arc(p, c);
                        const bool cyclic = dag.reaches(p, c);
                        dag.add_arc(p, c);
                        if (cyclic) continue;
                        auto lc = try_local(scorer, c, without_parent(dag.parents(c), p));
                        auto lp = try_local(scorer, p, with_parent(dag.parents(p), c));
                        if (!lc || !lp) continue;
                        const double delta = (*lc - local[c]) + (*lp - local[p]);
                        if (delta > best_delta) {
                            best_delta = delta;
                            best_op = op; best_p = p; best_c = c;
                            best_lc = *lc;
                            best_lp = *lp;
                        }
                    }
                }
            }
        }

        if (best_op < 0) break;
        if (best_op == Add) {
            dag.add_arc(best_p, best_c);
            local[best_c] = best_lc;
        } else if (best_op == Delete) {
            dag.remove_arc(best_p, best_c);
            local[best_c] = best_lc;
        } else {
            dag.remove_arc(best_p, best_c);
            dag.add_arc(best_c, best_p);
            local[best_c] = best_lc;
            local[best_p] = best_lp;
        }
        assert(best_delta > 0);
        total += best_delta;
        result.trajectory.push_back(total);
        ++iterations;
    }

    result.dag = std::move(dag);
    result.score = total;
    return result;
}

HcResult hc_order_constrained(const BdeuScorer& scorer, const PartialOrder& order,
                              const HcOptions& opts) {
    check_options(opts);
    const int n = scorer.dataset().num_variables();
    if (order.universe_size() != n || !order.complete())
        throw SemanticError("hc_order_constrained: order is not complete over the dataset");

    Dag dag(n);
    HcResult result{dag, 0.0, {}};

    // Whole-graph total starts at the empty structure; every accepted move,
    // whichever child it touches, then strictly increases it.
    double total = 0.0;
    for (int c = 0; c < n; ++c) total += scorer.local(c, {});

    std::vector<int> predecessors;
    for (int pos = 0; pos < n; ++pos) {
        const int child = order.at(pos);
        std::vector<int> parents;  // sorted ascending
        double current = scorer.local(child, parents);

        while (true) {
            double best_delta = kImprovementTol;
            bool best_is_add = false;
            int best_p = -1;
            double best_score = 0;

            if (opts.op_add &&
                (opts.max_parents < 0 || static_cast<int>(parents.size()) < opts.max_parents)) {
                for (int p : predecessors) {
                    if (std::binary_search(parents.begin(), parents.end(), p)) continue;
                    auto s = try_local(scorer, child, with_parent(parents, p));
                    if (!s) continue;
                    const double delta = *s - current;
                    if (delta > best_delta) {
                        best_delta = delta;
                        best_is_add = true;
                        best_p = p;
                        best_score = *s;
                    }
                }
            }
            if (opts.op_delete) {
                for (int p : parents) {
                    auto s = try_local(scorer, child, without_parent(parents, p));
                    if (!s) continue;
                    const double delta = *s - current;
                    if (delta > best_delta) {
                        best_delta = delta;
                        best_is_add = false;
                        best_p = p;
                        best_score = *s;
                    }
                }
            }
            if (best_p < 0) break;
            parents = best_is_add ? with_parent(parents, best_p)
                                  : without_parent(parents, best_p);
            current = best_score;
            total += best_delta;
            result.trajectory.push_back(total);
        }

        for (int p : parents) dag.add_arc(p, child);
        predecessors.insert(std::lower_bound(predecessors.begin(), predecessors.end(), child),
                            child);
    }

    result.dag = std::move(dag);
    result.score = total;
    return result;
}

}  // namespace mctsbn
