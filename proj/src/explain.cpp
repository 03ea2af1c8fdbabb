#include "prefswap/explain.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace prefswap {

bool SwapRelation::has_edge(std::size_t from, std::size_t to) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

SwapRelation delta2_graph(const NecessityEngine& engine) {
    const SlotIndex& slots = engine.slots();
    const std::size_t n = slots.criterion_count();
    SwapRelation relation;
    relation.criterion_count = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (slots.slots_on(i) > 1) {
            throw ValidationError("swap relation needs binary scales (criterion " + std::to_string(i + 1) + ")");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (slots.slots_on(i) != 1) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || slots.slots_on(j) != 1) continue;
            if (engine.decide_target(swap_target(slots, i, j))) relation.edges.emplace_back(i, j);
        }
    }
    std::sort(relation.edges.begin(), relation.edges.end());
    return relation;
}

std::optional<Matching> find_explanation(const Query& query, const NecessityEngine& engine) {
    if (!is_bounded(query, engine.scale())) return std::nullopt;
    Covector target = covector_of_query(query, engine.scale(), engine.slots());
    ArgumentPartition parts = argument_partition(target, engine.scale(), engine.slots());

    const auto& against = parts.negative;  // criteria speaking for y
    const auto& support = parts.positive;  // criteria speaking for x
    if (support.size() < against.size()) return std::nullopt;
    if (!engine.decide_target(target)) return std::nullopt;

    // Compensation graph restricted to the query's own arguments.
    std::vector<std::vector<bool>> edge(against.size(), std::vector<bool>(support.size(), false));
    for (std::size_t a = 0; a < against.size(); ++a) {
        for (std::size_t s = 0; s < support.size(); ++s) {
            edge[a][s] = engine.decide_target(swap_target(engine.slots(), support[s], against[a])).has_value();
        }
    }

    // Augmenting paths, scanning both sides in ascending criterion order.
    std::vector<int> owner(support.size(), -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment =
        [&](std::size_t a, std::vector<bool>& visited) -> bool {
        for (std::size_t s = 0; s < support.size(); ++s) {
            if (!edge[a][s] || visited[s]) continue;
            visited[s] = true;
            if (owner[s] < 0 || augment(static_cast<std::size_t>(owner[s]), visited)) {
                owner[s] = static_cast<int>(a);
                return true;
            }
        }
        return false;
    };

    std::size_t matched = 0;
    for (std::size_t a = 0; a < against.size(); ++a) {
        std::vector<bool> visited(support.size(), false);
        if (augment(a, visited)) ++matched;
    }
    if (matched < against.size()) return std::nullopt;

    Matching matching;
    for (std::size_t s = 0; s < support.size(); ++s) {
        if (owner[s] >= 0) matching.pairs.emplace_back(against[static_cast<std::size_t>(owner[s])], support[s]);
    }
    std::sort(matching.pairs.begin(), matching.pairs.end());
    return matching;
}

std::size_t Explanation::swap_count() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(),
                      [](const ExplanationStep& s) { return s.kind == StepKind::Swap; }));
}

std::vector<std::size_t> default_order(const Matching& matching) {
    std::vector<std::size_t> order;
    order.reserve(matching.pairs.size());
    for (const auto& [against, _] : matching.pairs) order.push_back(against);
    return order;
}

namespace {

ExplanationStep make_step(Alternative from, Alternative to, StepKind kind) {
    ExplanationStep step;
    step.kind = kind;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (*from.values[i] > *to.values[i]) step.lowered.push_back(i);
        if (*from.values[i] < *to.values[i]) step.raised.push_back(i);
    }
    step.from = std::move(from);
    step.to = std::move(to);
    return step;
}

}  // namespace

Explanation render_sequence(const Query& query, const Matching& matching,
                            SequencePolicy policy, const std::vector<std::size_t>& order,
                            const NecessityEngine& engine) {
    NecessityEngine::CheckResult check = engine.check(query);
    if (!check.boundedness.bounded) throw ValidationError("cannot render a sequence for an unbounded query");
    ArgumentPartition parts = argument_partition(*check.covector, engine.scale(), engine.slots());

    std::map<std::size_t, std::size_t> partner;  // against -> for
    std::vector<bool> used_support(query.x.size(), false);
    for (const auto& [against, support] : matching.pairs) {
        if (!std::binary_search(parts.negative.begin(), parts.negative.end(), against) ||
            !std::binary_search(parts.positive.begin(), parts.positive.end(), support)) {
            throw ValidationError("matching does not fit the query's arguments");
        }
        if (!partner.emplace(against, support).second || used_support[support]) {
            throw ValidationError("matching reuses a criterion");
        }
        used_support[support] = true;
    }
    if (partner.size() != parts.negative.size()) {
        throw ValidationError("matching must cover every argument for the other side");
    }
    std::vector<std::size_t> order_sorted(order);
    std::sort(order_sorted.begin(), order_sorted.end());
    if (order_sorted != parts.negative) {
        throw ValidationError("order must permute the arguments for the other side");
    }

    std::vector<ExplanationStep> steps;
    auto push = [&steps](const Alternative& from, const Alternative& to, StepKind kind) {
        if (from == to) return;  // nothing moves, drop the step
        steps.push_back(make_step(from, to, kind));
    };

    if (policy == SequencePolicy::Shortest) {
        Alternative current = query.x;
        for (std::size_t against : order) {
            std::size_t support = partner.at(against);
            Alternative next = current;
            next.values[support] = query.y.values[support];
            next.values[against] = query.y.values[against];
            push(current, next, StepKind::Swap);
            current = std::move(next);
        }
        push(current, query.y, StepKind::Dominance);
    } else {
        const RoundedQuery& rounded = *check.rounded;
        Alternative low = query.x;
        for (std::size_t i = 0; i < low.size(); ++i) {
            if (rounded.x_low.values[i]) low.values[i] = *rounded.x_low.values[i];
        }
        Alternative current = query.x;
        push(current, low, StepKind::Dominance);
        current = std::move(low);
        for (std::size_t against : order) {
            std::size_t support = partner.at(against);
            Alternative next = current;
            next.values[support] = *rounded.y_high.values[support];
            next.values[against] = *rounded.y_high.values[against];
            push(current, next, StepKind::Swap);
            current = std::move(next);
        }
        push(current, query.y, StepKind::Dominance);
    }

    Explanation explanation;
    explanation.steps = std::move(steps);
    explanation.matching = matching;
    return explanation;
}

namespace {

// Mixed-radix coding of grid states, criterion 0 least significant.
struct Grid {
    ReferenceScale levels;
    std::vector<std::size_t> radix;
    std::size_t total = 1;

    std::size_t encode(const std::vector<std::size_t>& idx) const {
        std::size_t code = 0;
        for (std::size_t i = idx.size(); i-- > 0;) code = code * radix[i] + idx[i];
        return code;
    }
    std::vector<std::size_t> decode(std::size_t code) const {
        std::vector<std::size_t> idx(radix.size());
        for (std::size_t i = 0; i < radix.size(); ++i) {
            idx[i] = code % radix[i];
            code /= radix[i];
        }
        return idx;
    }
    Alternative alternative(const std::vector<std::size_t>& idx) const {
        Alternative a;
        a.values.reserve(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) a.values.emplace_back(levels.levels[i][idx[i]]);
        return a;
    }
};

}  // namespace

SearchResult shortest_explanation_search(const Query& query, const NecessityEngine& engine,
                                         std::size_t max_order, std::size_t state_budget) {
    if (max_order < 2) throw std::invalid_argument("max_order must be at least 2");

    Grid grid;
    grid.levels = extend_with_query(engine.scale(), query);
    const std::size_t n = grid.levels.criterion_count();
    for (std::size_t i = 0; i < n; ++i) {
        grid.radix.push_back(grid.levels.level_count(i));
        if (grid.total > state_budget / grid.radix.back()) {
            return {SearchStatus::BudgetExceeded, std::nullopt, 0};
        }
        grid.total *= grid.radix.back();
    }

    SearchResult result;
    result.states = grid.total;

    // A chain of necessary steps would make the endpoints necessary by
    // transitivity, so a negative overall answer settles the search.
    if (!engine.is_necessary(query)) {
        result.status = SearchStatus::NoExplanation;
        return result;
    }

    std::vector<std::size_t> start_idx(n), goal_idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        start_idx[i] = static_cast<std::size_t>(grid.levels.level_index(i, *query.x.values[i]));
        goal_idx[i] = static_cast<std::size_t>(grid.levels.level_index(i, *query.y.values[i]));
    }
    const std::size_t start = grid.encode(start_idx);
    const std::size_t goal = grid.encode(goal_idx);

    std::vector<std::int32_t> dist(grid.total, -1);
    std::vector<std::size_t> parent(grid.total, grid.total);
    std::deque<std::size_t> queue;
    dist[start] = 0;
    queue.push_back(start);

    auto visit = [&](std::size_t from, std::size_t to) {
        if (dist[to] >= 0) return false;
        dist[to] = dist[from] + 1;
        parent[to] = from;
        queue.push_back(to);
        return to == goal;
    };

    bool reached = start == goal;
    while (!queue.empty() && !reached) {
        const std::size_t code = queue.front();
        queue.pop_front();
        const std::vector<std::size_t> idx = grid.decode(code);
        const Alternative here = grid.alternative(idx);

        // Dominance edges: every strictly smaller corner of the box below.
        {
            std::vector<std::size_t> lower(n, 0);
            for (;;) {
                if (lower != idx) {
                    if (visit(code, grid.encode(lower))) {
                        reached = true;
                        break;
                    }
                }
                std::size_t i = 0;
                while (i < n && lower[i] == idx[i]) lower[i++] = 0;
                if (i == n) break;
                ++lower[i];
            }
            if (reached) break;
        }

        // Swap edges: change 2..max_order criteria, at least one upward.
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t)> explore = [&](std::size_t next_criterion) -> bool {
            if (chosen.size() >= 2) {
                // Enumerate value tuples on the chosen criteria.
                std::vector<std::size_t> tuple(chosen.size(), 0);
                for (;;) {
                    bool moves_everywhere = true;
                    bool some_up = false;
                    for (std::size_t t = 0; t < chosen.size(); ++t) {
                        if (tuple[t] == idx[chosen[t]]) moves_everywhere = false;
                        if (tuple[t] > idx[chosen[t]]) some_up = true;
                    }
                    if (moves_everywhere && some_up) {
                        std::vector<std::size_t> candidate = idx;
                        for (std::size_t t = 0; t < chosen.size(); ++t) candidate[chosen[t]] = tuple[t];
                        const std::size_t to = grid.encode(candidate);
                        if (dist[to] < 0 &&
                            engine.is_necessary({here, grid.alternative(candidate)}) &&
                            visit(code, to)) {
                            return true;
                        }
                    }
                    std::size_t t = 0;
                    while (t < chosen.size() && ++tuple[t] == grid.radix[chosen[t]]) tuple[t++] = 0;
                    if (t == chosen.size()) break;
                }
            }
            if (chosen.size() == max_order) return false;
            for (std::size_t i = next_criterion; i < n; ++i) {
                chosen.push_back(i);
                if (explore(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (explore(0)) reached = true;
    }

    if (!reached && dist[goal] < 0) {
        result.status = SearchStatus::NoExplanation;
        return result;
    }

    std::vector<std::size_t> path;
    for (std::size_t code = goal; code != start; code = parent[code]) path.push_back(code);
    path.push_back(start);
    std::reverse(path.begin(), path.end());

    Explanation explanation;
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
        Alternative from = grid.alternative(grid.decode(path[step]));
        Alternative to = grid.alternative(grid.decode(path[step + 1]));
        StepKind kind = dominates(from, to) ? StepKind::Dominance : StepKind::Swap;
        explanation.steps.push_back(make_step(std::move(from), std::move(to), kind));
    }
    result.status = SearchStatus::Found;
    result.explanation = std::move(explanation);
    return result;
}

WorstCaseInstance worst_case_instance(int rungs) {
    if (rungs < 1) throw std::invalid_argument("rungs must be at least 1");
    const long p = rungs;

    Instance instance;
    instance.criteria = {{"c1", DomainKind::Numeric, {}},
                         {"c2", DomainKind::Numeric, {}},
                         {"c3", DomainKind::Numeric, {}}};

    auto alt = [](std::optional<long> a, std::optional<long> b, std::optional<long> c) {
        Alternative v;
        auto conv = [](std::optional<long> o) {
            return o ? std::optional<Rational>(Rational(*o)) : std::nullopt;
        };
        v.values = {conv(a), conv(b), conv(c)};
        return v;
    };

    for (long j = 0; j < p; ++j) {
        instance.statements.push_back({alt(2 * j, -j, std::nullopt), alt(2 * j + 1, -j - 1, std::nullopt)});
        instance.statement_names.emplace_back("", "");
        instance.statements.push_back({alt(2 * j + 1, std::nullopt, -j), alt(2 * j + 2, std::nullopt, -j - 1)});
        instance.statement_names.emplace_back("", "");
    }

    Alternative x = alt(0, 0, 0);
    Alternative y = alt(2 * p, -p, -p);
    instance.alternatives.emplace_back("x", x);
    instance.alternatives.emplace_back("y", y);
    instance.validate();

    return {std::move(instance), {std::move(x), std::move(y)}};
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string swap_relation_dot(const SwapRelation& relation, const Instance& instance) {
    std::string out = "digraph swaps {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < relation.criterion_count; ++i) {
        out += "  \"" + dot_escape(instance.criteria[i].name) + "\";\n";
    }
    for (const auto& [from, to] : relation.edges) {
        out += "  \"" + dot_escape(instance.criteria[from].name) + "\" -> \"" +
               dot_escape(instance.criteria[to].name) + "\";\n";
    }
    out += "}\n";
    return out;
}

std::string necessary_graph_dot(const NecessityEngine& engine, bool reduce) {
    const SlotIndex& slots = engine.slots();
    const std::size_t n = slots.criterion_count();
    for (std::size_t i = 0; i < n; ++i) {
        if (slots.slots_on(i) != 1) {
            throw ValidationError("profile graph needs binary scales on every criterion");
        }
    }
    if (n > 12) throw ValidationError("profile graph is limited to 12 criteria");

    const ReferenceScale& scale = engine.scale();
    const std::size_t total = std::size_t{1} << n;
    std::vector<Alternative> profiles(total);
    std::vector<std::string> names(total);
    for (std::size_t code = 0; code < total; ++code) {
        Alternative a;
        std::string name;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& v = scale.levels[i][(code >> i) & 1];
            a.values.emplace_back(v);
            if (i) name += ", ";
            name += engine.instance().criteria[i].value_text(v);
        }
        profiles[code] = std::move(a);
        names[code] = std::move(name);
    }

    std::vector<std::vector<bool>> necessary(total, std::vector<bool>(total, false));
    for (std::size_t u = 0; u < total; ++u) {
        for (std::size_t v = 0; v < total; ++v) {
            if (u != v) necessary[u][v] = engine.is_necessary({profiles[u], profiles[v]});
        }
    }

    auto stated = [&](std::size_t u, std::size_t v) {
        for (const auto& st : engine.instance().statements) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i) {
                const auto& b = st.better.values[i];
                const auto& w = st.worse.values[i];
                if (!b) {
                    match = *profiles[u].values[i] == *profiles[v].values[i];
                } else {
                    match = *b == *profiles[u].values[i] && *w == *profiles[v].values[i];
                }
            }
            if (match) return true;
        }
        return false;
    };

    std::string out = "digraph necessity {\n  rankdir=TB;\n";
    for (std::size_t code = 0; code < total; ++code) {
        out += "  n" + std::to_string(code) + " [label=\"" + dot_escape(names[code]) + "\"];\n";
    }
    for (std::size_t u = 0; u < total; ++u) {
        for (std::size_t v = 0; v < total; ++v) {
            if (u == v || !necessary[u][v]) continue;
            if (reduce) {
                bool implied = false;
                for (std::size_t w = 0; w < total && !implied; ++w) {
                    if (w == u || w == v) continue;
                    implied = necessary[u][w] && necessary[w][v] &&
                              !(necessary[w][u] && necessary[u][w]) &&
                              !(necessary[v][w] && necessary[w][v]);
                }
                if (implied) continue;
            }
            std::string style = "solid";
            if (dominates(profiles[u], profiles[v])) {
                style = "bold";
            } else if (stated(u, v)) {
                style = "dashed";
            }
            out += "  n" + std::to_string(u) + " -> n" + std::to_string(v) + " [style=" + style + "];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace prefswap
