#include "prefswap/explain.hpp"
#include "prefswap/instance_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace prefswap;

constexpr int kExitYes = 0;       // positive answer or successful command
constexpr int kExitNo = 1;        // well-formed negative answer
constexpr int kExitError = 2;     // usage or data problem

nlohmann::json value_payload(const Criterion& c, const std::optional<Rational>& v) {
    if (!v) return "*";
    if (c.kind == DomainKind::Labels) return c.value_text(*v);
    if (denominator(*v) == 1) {
        const BigInt& num = numerator(*v);
        if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
            return num.convert_to<std::int64_t>();
        }
    }
    return to_fraction_string(*v);
}

nlohmann::json alternative_payload(const Instance& instance, const Alternative& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < a.size(); ++i) arr.push_back(value_payload(instance.criteria[i], a.values[i]));
    return arr;
}

nlohmann::json covector_payload(const Instance& instance, const SlotIndex& slots, const Covector& c) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t k = 0; k < slots.slots_on(i); ++k) arr.push_back(c.coeffs[slots.first(i) + k]);
        obj[instance.criteria[i].name] = std::move(arr);
    }
    return obj;
}

std::string slot_text(const Instance& instance, const ReferenceScale& scale,
                      const SlotIndex& slots, std::size_t s) {
    auto [i, k] = slots.slot(s);
    const Criterion& c = instance.criteria[i];
    return c.name + ": " + c.value_text(scale.levels[i][k]) + " .. " + c.value_text(scale.levels[i][k + 1]);
}

void print_certificate(std::ostream& out, const NecessityEngine& engine, const Certificate& cert) {
    const Instance& instance = engine.instance();
    out << "certificate:\n";
    bool any = false;
    for (std::size_t p = 0; p < cert.lambda.size(); ++p) {
        if (cert.lambda[p] == 0) continue;
        out << "  lambda[" << instance.statement_text(p) << "] = " << to_fraction_string(cert.lambda[p]) << "\n";
        any = true;
    }
    for (std::size_t s = 0; s < cert.mu.size(); ++s) {
        if (cert.mu[s] == 0) continue;
        out << "  mu[" << slot_text(instance, engine.scale(), engine.slots(), s) << "] = "
            << to_fraction_string(cert.mu[s]) << "\n";
        any = true;
    }
    if (!any) out << "  (all coefficients zero)\n";

    Certificate::IntegerForm form = cert.integer_form();
    out << "integer form: r = " << form.r.str() << ", ell = (";
    for (std::size_t p = 0; p < form.ell.size(); ++p) out << (p ? ", " : "") << form.ell[p].str();
    out << "), m = (";
    for (std::size_t s = 0; s < form.m.size(); ++s) out << (s ? ", " : "") << form.m[s].str();
    out << ")\n";
}

nlohmann::json certificate_payload(const Certificate& cert) {
    nlohmann::json obj;
    obj["lambda"] = nlohmann::json::array();
    for (const auto& v : cert.lambda) obj["lambda"].push_back(to_fraction_string(v));
    obj["mu"] = nlohmann::json::array();
    for (const auto& v : cert.mu) obj["mu"].push_back(to_fraction_string(v));
    Certificate::IntegerForm form = cert.integer_form();
    obj["integer"] = {{"r", form.r.str()}, {"ell", nlohmann::json::array()}, {"m", nlohmann::json::array()}};
    for (const auto& v : form.ell) obj["integer"]["ell"].push_back(v.str());
    for (const auto& v : form.m) obj["integer"]["m"].push_back(v.str());
    return obj;
}

std::string unbounded_text(const Instance& instance, const Boundedness& b) {
    std::string where = b.criterion >= 0 ? instance.criteria[b.criterion].name : "?";
    if (b.reason == UnboundedReason::EmptyScale) {
        return "unbounded: no statement touches criterion '" + where + "' but y improves on it";
    }
    return "unbounded: the pair escapes the reference scale on criterion '" + where + "'";
}

void print_steps(std::ostream& out, const Instance& instance, const Explanation& explanation) {
    if (explanation.steps.empty()) {
        out << "  (the two sides coincide)\n";
        return;
    }
    out << "  " << instance.alternative_text(explanation.steps.front().from) << "\n";
    for (const auto& step : explanation.steps) {
        if (step.kind == StepKind::Dominance) {
            out << "  -> dominance ";
        } else {
            out << "  -> swap [";
            for (std::size_t i = 0; i < step.lowered.size(); ++i) {
                out << (i ? ", " : "") << instance.criteria[step.lowered[i]].name << " down";
            }
            for (std::size_t i = 0; i < step.raised.size(); ++i) {
                out << (step.lowered.empty() && i == 0 ? "" : ", ") << instance.criteria[step.raised[i]].name << " up";
            }
            out << "] ";
        }
        out << instance.alternative_text(step.to) << "\n";
    }
}

nlohmann::json steps_payload(const Instance& instance, const Explanation& explanation) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& step : explanation.steps) {
        nlohmann::json obj;
        obj["kind"] = step.kind == StepKind::Dominance ? "dominance" : "swap";
        obj["from"] = alternative_payload(instance, step.from);
        obj["to"] = alternative_payload(instance, step.to);
        obj["down"] = nlohmann::json::array();
        for (std::size_t i : step.lowered) obj["down"].push_back(instance.criteria[i].name);
        obj["up"] = nlohmann::json::array();
        for (std::size_t i : step.raised) obj["up"].push_back(instance.criteria[i].name);
        arr.push_back(std::move(obj));
    }
    return arr;
}

struct QueryArgs {
    std::string file;
    std::string x_text;
    std::string y_text;
};

Query resolve_query(const Instance& instance, const QueryArgs& args) {
    Query q{parse_alternative_ref(instance, args.x_text), parse_alternative_ref(instance, args.y_text)};
    if (q.x.has_wildcard() || q.y.has_wildcard()) {
        throw ValidationError("queries must not contain wildcards");
    }
    return q;
}

std::vector<std::size_t> resolve_order(const Instance& instance, const Matching& matching,
                                       const std::string& spec_text) {
    if (spec_text.empty() || spec_text == "index" || spec_text == "as-given" || spec_text == "strongest-first") {
        // No strength measure separates the compensations, so strongest-first
        // deliberately coincides with ascending criterion order.
        return default_order(matching);
    }
    std::vector<std::size_t> order;
    std::string current;
    auto flush = [&]() {
        while (!current.empty() && current.front() == ' ') current.erase(current.begin());
        while (!current.empty() && current.back() == ' ') current.pop_back();
        int idx = instance.criterion_index(current);
        if (idx < 0) throw ValidationError("unknown criterion '" + current + "' in --order");
        order.push_back(static_cast<std::size_t>(idx));
        current.clear();
    };
    for (char c : spec_text) {
        if (c == ',') {
            flush();
        } else {
            current += c;
        }
    }
    flush();
    return order;
}

int cmd_validate(const std::string& file, bool json_out) {
    Instance instance = parse_instance_file(file);
    if (json_out) {
        std::cout << dump_instance(instance);
        return kExitYes;
    }
    std::cout << "criteria: " << instance.criterion_count() << "\n";
    for (const auto& c : instance.criteria) {
        std::cout << "  " << c.name << (c.kind == DomainKind::Labels ? " (labels)" : " (numeric)") << "\n";
    }
    std::cout << "alternatives: " << instance.alternatives.size() << "\n";
    std::cout << "statements: " << instance.statements.size() << "\n";
    for (std::size_t s = 0; s < instance.statements.size(); ++s) {
        std::cout << "  " << instance.statement_text(s) << "\n";
    }
    std::cout << "instance is well-formed\n";
    return kExitYes;
}

int cmd_scales(const std::string& file, bool json_out) {
    Instance instance = parse_instance_file(file);
    ReferenceScale scale = build_reference_scales(instance);
    if (json_out) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& v : scale.levels[i]) arr.push_back(value_payload(instance.criteria[i], v));
            obj[instance.criteria[i].name] = std::move(arr);
        }
        std::cout << obj.dump(2) << "\n";
        return kExitYes;
    }
    for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
        std::cout << instance.criteria[i].name << ":";
        if (scale.levels[i].empty()) std::cout << " (no values)";
        for (const auto& v : scale.levels[i]) std::cout << " " << instance.criteria[i].value_text(v);
        std::cout << "\n";
    }
    return kExitYes;
}

int cmd_check(const QueryArgs& args, bool want_certificate, int oracle_bound,
              std::size_t falsify_trials, std::uint64_t seed, bool run_falsifier, bool json_out) {
    Instance instance = parse_instance_file(args.file);
    NecessityEngine engine(std::move(instance));
    Query query = resolve_query(engine.instance(), args);
    NecessityEngine::CheckResult result = engine.check(query);

    nlohmann::json payload;
    payload["x"] = alternative_payload(engine.instance(), query.x);
    payload["y"] = alternative_payload(engine.instance(), query.y);
    payload["bounded"] = result.boundedness.bounded;
    payload["necessary"] = result.necessary;

    if (!json_out) {
        std::cout << "query: x = " << engine.instance().alternative_text(query.x)
                  << "  vs  y = " << engine.instance().alternative_text(query.y) << "\n";
    }
    if (!result.boundedness.bounded) {
        payload["unbounded_reason"] = result.boundedness.reason == UnboundedReason::EmptyScale
                                          ? "empty-scale"
                                          : "outside-scale";
        payload["unbounded_criterion"] = engine.instance().criteria[result.boundedness.criterion].name;
        if (json_out) {
            std::cout << payload.dump(2) << "\n";
        } else {
            std::cout << unbounded_text(engine.instance(), result.boundedness) << "\n";
            std::cout << "verdict: not necessary\n";
        }
        return kExitNo;
    }

    payload["rounded_x"] = alternative_payload(engine.instance(), result.rounded->x_low);
    payload["rounded_y"] = alternative_payload(engine.instance(), result.rounded->y_high);
    payload["covector"] = covector_payload(engine.instance(), engine.slots(), *result.covector);
    if (result.certificate) payload["certificate"] = certificate_payload(*result.certificate);

    if (!json_out) {
        std::cout << "rounded x: " << engine.instance().alternative_text(result.rounded->x_low) << "\n";
        std::cout << "rounded y: " << engine.instance().alternative_text(result.rounded->y_high) << "\n";
        std::cout << "covector:\n";
        std::string dump = dump_covector(*result.covector, engine.instance(), engine.scale(), engine.slots());
        std::size_t pos = 0;
        while (pos < dump.size()) {
            std::size_t end = dump.find('\n', pos);
            std::cout << "  " << dump.substr(pos, end - pos) << "\n";
            pos = end + 1;
        }
        std::cout << "verdict: " << (result.necessary ? "necessary" : "not necessary") << "\n";
        if (want_certificate && result.certificate) print_certificate(std::cout, engine, *result.certificate);
    }

    if (oracle_bound > 0) {
        auto witness = ilp_oracle(*result.covector, engine.system(), oracle_bound);
        if (json_out) {
            if (witness) {
                payload["oracle"] = {{"r", witness->r}, {"ell", witness->ell}, {"m", witness->m}};
            } else {
                payload["oracle"] = nullptr;
            }
        } else if (witness) {
            std::cout << "integer witness (bound " << oracle_bound << "): r = " << witness->r << ", ell = (";
            for (std::size_t p = 0; p < witness->ell.size(); ++p) std::cout << (p ? ", " : "") << witness->ell[p];
            std::cout << "), m = (";
            for (std::size_t s = 0; s < witness->m.size(); ++s) std::cout << (s ? ", " : "") << witness->m[s];
            std::cout << ")\n";
        } else {
            std::cout << "no integer witness within bound " << oracle_bound << "\n";
        }
    }

    if (run_falsifier) {
        auto counterexample = sampling_falsifier(query, engine, falsify_trials, seed);
        if (json_out) {
            if (counterexample) {
                nlohmann::json ce;
                ce["x_utility"] = to_fraction_string(counterexample->x_utility);
                ce["y_utility"] = to_fraction_string(counterexample->y_utility);
                payload["counterexample"] = std::move(ce);
            } else {
                payload["counterexample"] = nullptr;
            }
        } else if (counterexample) {
            std::cout << "counterexample model found (" << falsify_trials << " trials):\n";
            for (std::size_t i = 0; i < counterexample->utility.size(); ++i) {
                std::cout << "  " << engine.instance().criteria[i].name << ":";
                for (const auto& [value, utility] : counterexample->utility[i]) {
                    std::cout << " u(" << engine.instance().criteria[i].value_text(value)
                              << ") = " << to_fraction_string(utility);
                }
                std::cout << "\n";
            }
            std::cout << "  total: u(x) = " << to_fraction_string(counterexample->x_utility)
                      << " < u(y) = " << to_fraction_string(counterexample->y_utility) << "\n";
        } else {
            std::cout << "no counterexample in " << falsify_trials << " trials\n";
        }
    }

    if (json_out) std::cout << payload.dump(2) << "\n";
    return result.necessary ? kExitYes : kExitNo;
}

int cmd_covector(const QueryArgs& args, bool json_out) {
    Instance instance = parse_instance_file(args.file);
    NecessityEngine engine(std::move(instance));
    Query query = resolve_query(engine.instance(), args);
    Boundedness b = classify_boundedness(query, engine.scale());
    if (!b.bounded) {
        std::cout << unbounded_text(engine.instance(), b) << "\n";
        return kExitNo;
    }
    Covector c = covector_of_query(query, engine.scale(), engine.slots());
    if (json_out) {
        std::cout << covector_payload(engine.instance(), engine.slots(), c).dump(2) << "\n";
    } else {
        std::cout << dump_covector(c, engine.instance(), engine.scale(), engine.slots());
    }
    return kExitYes;
}

int cmd_explain(const QueryArgs& args, const std::string& policy_text, const std::string& order_text,
                bool json_out) {
    Instance instance = parse_instance_file(args.file);
    NecessityEngine engine(std::move(instance));
    Query query = resolve_query(engine.instance(), args);

    SequencePolicy policy;
    if (policy_text == "shortest") {
        policy = SequencePolicy::Shortest;
    } else if (policy_text == "reference") {
        policy = SequencePolicy::Reference;
    } else {
        throw ValidationError("unknown policy '" + policy_text + "' (expected shortest or reference)");
    }

    std::optional<Matching> matching = find_explanation(query, engine);
    if (!matching) {
        bool necessary = engine.is_necessary(query);
        if (json_out) {
            nlohmann::json payload;
            payload["necessary"] = necessary;
            payload["found"] = false;
            std::cout << payload.dump(2) << "\n";
        } else if (!necessary) {
            std::cout << "not necessary: no explanation exists\n";
        } else {
            std::cout << "necessary, but no pairwise compensation covers every argument against it\n";
        }
        return kExitNo;
    }

    std::vector<std::size_t> order = resolve_order(engine.instance(), *matching, order_text);
    Explanation explanation = render_sequence(query, *matching, policy, order, engine);

    if (json_out) {
        nlohmann::json payload;
        payload["necessary"] = true;
        payload["found"] = true;
        payload["policy"] = policy_text;
        payload["matching"] = nlohmann::json::array();
        for (const auto& [against, support] : matching->pairs) {
            payload["matching"].push_back({{"for", engine.instance().criteria[support].name},
                                           {"against", engine.instance().criteria[against].name}});
        }
        payload["steps"] = steps_payload(engine.instance(), explanation);
        std::cout << payload.dump(2) << "\n";
        return kExitYes;
    }

    if (matching->pairs.empty()) {
        std::cout << "matching: (empty, plain dominance)\n";
    } else {
        std::cout << "matching:";
        for (std::size_t k = 0; k < matching->pairs.size(); ++k) {
            const auto& [against, support] = matching->pairs[k];
            std::cout << (k ? "," : "") << " " << engine.instance().criteria[support].name
                      << " compensates " << engine.instance().criteria[against].name;
        }
        std::cout << "\n";
    }
    std::cout << "sequence (" << policy_text << ", " << explanation.length() << " steps):\n";
    print_steps(std::cout, engine.instance(), explanation);
    return kExitYes;
}

int cmd_delta2(const std::string& file, const std::string& dot_path, const std::string& profile_dot_path,
               bool reduce, bool json_out) {
    Instance instance = parse_instance_file(file);
    NecessityEngine engine(std::move(instance));
    SwapRelation relation = delta2_graph(engine);

    if (json_out) {
        nlohmann::json payload;
        payload["edges"] = nlohmann::json::array();
        for (const auto& [from, to] : relation.edges) {
            payload["edges"].push_back({{"from", engine.instance().criteria[from].name},
                                        {"to", engine.instance().criteria[to].name}});
        }
        std::cout << payload.dump(2) << "\n";
    } else {
        std::cout << "swap relation: " << relation.edges.size() << " edges\n";
        for (const auto& [from, to] : relation.edges) {
            std::cout << "  " << engine.instance().criteria[from].name << " -> "
                      << engine.instance().criteria[to].name << "\n";
        }
    }

    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) throw ParseError("cannot write '" + dot_path + "'");
        out << swap_relation_dot(relation, engine.instance());
    }
    if (!profile_dot_path.empty()) {
        std::ofstream out(profile_dot_path);
        if (!out) throw ParseError("cannot write '" + profile_dot_path + "'");
        out << necessary_graph_dot(engine, reduce);
    }
    return kExitYes;
}

int cmd_shortest(const QueryArgs& args, std::size_t max_order, std::size_t budget, bool json_out) {
    Instance instance = parse_instance_file(args.file);
    NecessityEngine engine(std::move(instance));
    Query query = resolve_query(engine.instance(), args);

    SearchResult result = shortest_explanation_search(query, engine, max_order, budget);
    if (result.status == SearchStatus::BudgetExceeded) {
        std::cerr << "state budget exceeded (" << budget << " states); raise --budget\n";
        return kExitError;
    }
    if (result.status == SearchStatus::NoExplanation) {
        if (json_out) {
            std::cout << nlohmann::json{{"status", "none"}}.dump(2) << "\n";
        } else {
            std::cout << "no explanation\n";
        }
        return kExitNo;
    }
    if (json_out) {
        nlohmann::json payload;
        payload["status"] = "found";
        payload["states"] = result.states;
        payload["steps"] = steps_payload(engine.instance(), *result.explanation);
        std::cout << payload.dump(2) << "\n";
    } else {
        std::cout << "fewest steps: " << result.explanation->length()
                  << " (" << result.explanation->swap_count() << " swaps, grid of "
                  << result.states << " states)\n";
        print_steps(std::cout, engine.instance(), *result.explanation);
    }
    return kExitYes;
}

int cmd_gen_worstcase(int rungs, const std::string& output) {
    WorstCaseInstance generated = worst_case_instance(rungs);
    std::string text = dump_instance(generated.instance);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw ParseError("cannot write '" + output + "'");
        out << text;
    }
    return kExitYes;
}

int cmd_oracle(const QueryArgs& args, int bound, std::size_t falsify_trials, std::uint64_t seed,
               bool run_falsifier, bool json_out) {
    Instance instance = parse_instance_file(args.file);
    NecessityEngine engine(std::move(instance));
    Query query = resolve_query(engine.instance(), args);

    nlohmann::json payload;
    Boundedness b = classify_boundedness(query, engine.scale());
    bool witness_found = false;
    bool counterexample_found = false;

    if (!b.bounded) {
        if (!json_out) std::cout << unbounded_text(engine.instance(), b) << "\n";
        payload["bounded"] = false;
    } else {
        payload["bounded"] = true;
        Covector target = covector_of_query(query, engine.scale(), engine.slots());
        auto witness = ilp_oracle(target, engine.system(), bound);
        witness_found = witness.has_value();
        if (json_out) {
            payload["witness"] = nullptr;
            if (witness) payload["witness"] = {{"r", witness->r}, {"ell", witness->ell}, {"m", witness->m}};
        } else if (witness) {
            std::cout << "integer witness found (bound " << bound << "): r = " << witness->r << ", ell = (";
            for (std::size_t p = 0; p < witness->ell.size(); ++p) std::cout << (p ? ", " : "") << witness->ell[p];
            std::cout << "), m = (";
            for (std::size_t s = 0; s < witness->m.size(); ++s) std::cout << (s ? ", " : "") << witness->m[s];
            std::cout << ")\n";
        } else {
            std::cout << "no integer witness within bound " << bound << " (inconclusive)\n";
        }
    }

    if (run_falsifier) {
        auto counterexample = sampling_falsifier(query, engine, falsify_trials, seed);
        counterexample_found = counterexample.has_value();
        if (json_out) {
            payload["counterexample"] = counterexample_found;
        } else if (counterexample) {
            std::cout << "counterexample: u(x) = " << to_fraction_string(counterexample->x_utility)
                      << " < u(y) = " << to_fraction_string(counterexample->y_utility) << "\n";
        } else {
            std::cout << "no counterexample in " << falsify_trials << " trials (inconclusive)\n";
        }
    }

    if (json_out) std::cout << payload.dump(2) << "\n";
    return witness_found && !counterexample_found ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust preference checks and swap-based explanations for additive value models"};
    app.require_subcommand(1);

    bool json_out = false;
    app.add_flag("--json", json_out, "emit a machine-readable payload on stdout");

    std::string file, x_text, y_text;
    std::string policy_text = "shortest";
    std::string order_text = "index";
    std::string dot_path, profile_dot_path, output_path;
    bool want_certificate = false;
    bool reduce = false;
    int oracle_bound = 0;
    int bound = 6;
    int rungs = 1;
    std::size_t falsify_trials = 10000;
    std::uint64_t seed = 1;
    std::size_t max_order = 2;
    std::size_t budget = 200000;

    auto add_query_args = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
        cmd->add_option("x", x_text, "left side: alternative name or comma-separated values")->required();
        cmd->add_option("y", y_text, "right side: alternative name or comma-separated values")->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "parse an instance and report its shape");
    validate->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);

    CLI::App* scales = app.add_subcommand("scales", "print the per-criterion reference scales");
    scales->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);

    CLI::App* check = app.add_subcommand("check", "decide whether x is robustly at least as good as y");
    add_query_args(check);
    check->add_flag("--certificate", want_certificate, "print the nonnegative decomposition");
    check->add_option("--oracle", oracle_bound, "also run the integer witness search up to this bound");
    CLI::Option* check_falsify =
        check->add_option("--falsify", falsify_trials, "also sample this many trial models looking for a counterexample")
            ->expected(0, 1)
            ->envname("PREFSWAP_FALSIFY_TRIALS");
    check->add_option("--seed", seed, "seed for the sampling falsifier");

    CLI::App* covector = app.add_subcommand("covector", "print the per-criterion scale-step signs of a query");
    add_query_args(covector);

    CLI::App* explain = app.add_subcommand("explain", "derive a swap-by-swap explanation of a robust comparison");
    add_query_args(explain);
    explain->add_option("--policy", policy_text, "sequence style: shortest or reference")
        ->check(CLI::IsMember({"shortest", "reference"}));
    explain->add_option("--order", order_text,
                        "swap order: index, as-given, strongest-first, or comma-separated criterion names");

    CLI::App* delta2 = app.add_subcommand("delta2", "compute the pairwise compensation relation between criteria");
    delta2->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
    delta2->add_option("--dot", dot_path, "write the relation as a DOT graph");
    delta2->add_option("--profile-dot", profile_dot_path,
                       "write the full robust relation over scale profiles as a DOT graph");
    delta2->add_flag("--reduce", reduce, "drop profile-graph arrows implied by transitivity");

    CLI::App* shortest = app.add_subcommand("shortest", "search for a fewest-steps explanation");
    add_query_args(shortest);
    shortest->add_option("--max-order", max_order, "largest number of criteria a single swap may touch");
    shortest->add_option("--budget", budget, "largest state grid the search will accept");

    CLI::App* gen = app.add_subcommand("gen-worstcase", "emit a ladder instance with long explanations");
    gen->add_option("rungs", rungs, "number of statement pairs")->required()->check(CLI::PositiveNumber);
    gen->add_option("-o,--output", output_path, "write the instance here instead of stdout");

    CLI::App* oracle = app.add_subcommand("oracle", "cross-check a query with the integer witness search");
    add_query_args(oracle);
    oracle->add_option("--bound", bound, "coefficient bound for the witness search");
    CLI::Option* oracle_falsify =
        oracle->add_option("--falsify", falsify_trials, "also sample this many trial models looking for a counterexample")
            ->expected(0, 1)
            ->envname("PREFSWAP_FALSIFY_TRIALS");
    oracle->add_option("--seed", seed, "seed for the sampling falsifier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitYes : kExitError;
    }

    // --falsify with no count parses as an empty string; fall back to the
    // environment override or the built-in default instead of zero trials.
    for (CLI::Option* opt : {check_falsify, oracle_falsify}) {
        if (opt->count() == 0) continue;
        bool bare = true;
        for (const auto& r : opt->results()) bare = bare && r.empty();
        if (!bare) continue;
        falsify_trials = 10000;
        if (const char* env = std::getenv("PREFSWAP_FALSIFY_TRIALS")) {
            std::string text(env);
            if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
                std::cerr << "error: PREFSWAP_FALSIFY_TRIALS must be a nonnegative integer\n";
                return kExitError;
            }
            try {
                falsify_trials = std::stoull(text);
            } catch (const std::exception&) {
                std::cerr << "error: PREFSWAP_FALSIFY_TRIALS is out of range\n";
                return kExitError;
            }
        }
    }

    try {
        if (validate->parsed()) return cmd_validate(file, json_out);
        if (scales->parsed()) return cmd_scales(file, json_out);
        if (check->parsed()) {
            return cmd_check({file, x_text, y_text}, want_certificate, oracle_bound, falsify_trials, seed,
                             check_falsify->count() > 0, json_out);
        }
        if (covector->parsed()) return cmd_covector({file, x_text, y_text}, json_out);
        if (explain->parsed()) return cmd_explain({file, x_text, y_text}, policy_text, order_text, json_out);
        if (delta2->parsed()) return cmd_delta2(file, dot_path, profile_dot_path, reduce, json_out);
        if (shortest->parsed()) return cmd_shortest({file, x_text, y_text}, max_order, budget, json_out);
        if (gen->parsed()) return cmd_gen_worstcase(rungs, output_path);
        if (oracle->parsed()) {
            return cmd_oracle({file, x_text, y_text}, bound, falsify_trials, seed,
                              oracle_falsify->count() > 0, json_out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const UnboundedQueryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
