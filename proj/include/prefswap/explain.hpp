#pragma once

#include "prefswap/necessity.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prefswap {

// Directed relation between criteria on binary scales: an edge (i, j) means
// that improving i across its scale step robustly outweighs worsening j
// across its own. Criteria without a scale step carry no edges.
struct SwapRelation {
    std::size_t criterion_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // lexicographic

    bool has_edge(std::size_t from, std::size_t to) const;
};

// Decides every ordered pair of criteria through the cone test.
// Throws ValidationError when some criterion has more than two levels.
SwapRelation delta2_graph(const NecessityEngine& engine);

// Injection from the arguments against the comparison (criteria where y
// beats x) into the arguments for it, following the swap relation.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (against, for), sorted by against
};

// Decomposes a necessary comparison on binary scales into compensations:
// each criterion speaking for y is matched to a distinct criterion speaking
// for x whose swap outweighs it. Absent when the query is not necessary,
// when the arguments for x are outnumbered, or when no complete matching
// exists in the swap relation.
std::optional<Matching> find_explanation(const Query& query, const NecessityEngine& engine);

enum class StepKind { Dominance, Swap };

struct ExplanationStep {
    Alternative from;
    Alternative to;
    StepKind kind = StepKind::Dominance;
    std::vector<std::size_t> lowered;  // criteria conceded (value decreases)
    std::vector<std::size_t> raised;   // criteria gained (value increases)
};

struct Explanation {
    std::vector<ExplanationStep> steps;
    std::optional<Matching> matching;  // present when rendered from one

    std::size_t length() const { return steps.size(); }
    std::size_t swap_count() const;
};

enum class SequencePolicy {
    Shortest,   // swap directly between the query's own values
    Reference,  // project onto the scale first, swap on scale values
};

// Expands a matching into a step-by-step sequence from x to y. `order` is a
// permutation of the criteria speaking for y and fixes the swap order.
// Steps that would not move (for example a final dominance step when the
// swaps already land on y) are dropped. Requires binary scales.
Explanation render_sequence(const Query& query, const Matching& matching,
                            SequencePolicy policy, const std::vector<std::size_t>& order,
                            const NecessityEngine& engine);

// Ascending list of the criteria speaking for y, the default swap order.
std::vector<std::size_t> default_order(const Matching& matching);

enum class SearchStatus { Found, NoExplanation, BudgetExceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::NoExplanation;
    std::optional<Explanation> explanation;
    std::size_t states = 0;  // size of the explored grid
};

// Breadth-first search for a fewest-steps explanation over the grid of
// scale values extended with the query's own values. Edges are dominance
// steps of any width and necessary steps touching at most `max_order`
// criteria (at least two, one of them improving). Reports BudgetExceeded
// when the grid is larger than `state_budget` without starting the search.
SearchResult shortest_explanation_search(const Query& query, const NecessityEngine& engine,
                                         std::size_t max_order = 2, std::size_t state_budget = 200000);

// Family of instances whose fewest-steps explanations grow linearly: two
// chained statement ladders on three criteria. The instance declares the
// endpoints as alternatives "x" and "y".
struct WorstCaseInstance {
    Instance instance;
    Query query;
};

WorstCaseInstance worst_case_instance(int rungs);

// DOT rendering of the swap relation.
std::string swap_relation_dot(const SwapRelation& relation, const Instance& instance);

// DOT rendering of the necessary-preference relation over all profiles of
// binary scale values. Solid arrows: necessary but neither dominance nor
// stated; bold: dominance; dashed: stated preferences. `reduce` drops arrows
// implied by transitivity through a third profile.
std::string necessary_graph_dot(const NecessityEngine& engine, bool reduce);

}  // namespace prefswap
