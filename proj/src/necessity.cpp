#include "prefswap/necessity.hpp"

#include "prefswap/detail/simplex.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace prefswap {

ConeSystem ConeSystem::of(const Instance& instance, const ReferenceScale& scale, const SlotIndex& slots) {
    ConeSystem system;
    system.slot_count = slots.count();
    system.statement_covectors.reserve(instance.statements.size());
    for (const auto& st : instance.statements) {
        system.statement_covectors.push_back(covector_of(st.better, st.worse, scale, slots));
    }
    return system;
}

Certificate::IntegerForm Certificate::integer_form() const {
    BigInt common = 1;
    auto fold = [&common](const Rational& v) { common = lcm(common, denominator(v)); };
    for (const auto& v : lambda) fold(v);
    for (const auto& v : mu) fold(v);

    IntegerForm form;
    form.r = common;
    form.ell.reserve(lambda.size());
    form.m.reserve(mu.size());
    for (const auto& v : lambda) form.ell.push_back(numerator(v) * (common / denominator(v)));
    for (const auto& v : mu) form.m.push_back(numerator(v) * (common / denominator(v)));
    return form;
}

std::optional<Certificate> cone_membership(const ConeSystem& system, const Covector& target) {
    if (target.size() != system.slot_count) throw ValidationError("target covector does not match the system");

    std::vector<std::vector<long long>> columns;
    columns.reserve(system.generator_count());
    for (const auto& cv : system.statement_covectors) columns.push_back(cv.coeffs);
    for (std::size_t s = 0; s < system.slot_count; ++s) {
        std::vector<long long> unit(system.slot_count, 0);
        unit[s] = 1;
        columns.push_back(std::move(unit));
    }

    auto solution = detail::nonnegative_combination(columns, target.coeffs);
    if (!solution) return std::nullopt;

    Certificate cert;
    cert.lambda.assign(solution->begin(), solution->begin() + system.statement_covectors.size());
    cert.mu.assign(solution->begin() + system.statement_covectors.size(), solution->end());
    if (!verify_certificate(system, target, cert)) {
        throw std::logic_error("solver produced a certificate that fails re-verification");
    }
    return cert;
}

bool verify_certificate(const ConeSystem& system, const Covector& target, const Certificate& cert) {
    if (cert.lambda.size() != system.statement_covectors.size() || cert.mu.size() != system.slot_count) {
        return false;
    }
    for (const auto& v : cert.lambda) {
        if (v < 0) return false;
    }
    for (const auto& v : cert.mu) {
        if (v < 0) return false;
    }
    for (std::size_t s = 0; s < system.slot_count; ++s) {
        Rational sum = cert.mu[s];
        for (std::size_t p = 0; p < cert.lambda.size(); ++p) {
            sum += cert.lambda[p] * system.statement_covectors[p].coeffs[s];
        }
        if (sum != target.coeffs[s]) return false;
    }
    return true;
}

NecessityEngine::NecessityEngine(Instance instance)
    : instance_(std::move(instance)),
      scale_((instance_.validate(), build_reference_scales(instance_))),
      slots_(scale_),
      system_(ConeSystem::of(instance_, scale_, slots_)) {}

NecessityEngine::CheckResult NecessityEngine::check(const Query& query) const {
    CheckResult result;
    result.boundedness = classify_boundedness(query, scale_);
    if (!result.boundedness.bounded) return result;

    result.rounded = round_query(query, scale_);
    result.covector = covector_of_query(query, scale_, slots_);
    result.certificate = decide_target(*result.covector);
    result.necessary = result.certificate.has_value();
    return result;
}

bool NecessityEngine::is_necessary(const Query& query) const {
    if (!is_bounded(query, scale_)) return false;
    return decide_target(covector_of_query(query, scale_, slots_)).has_value();
}

std::optional<Certificate> NecessityEngine::decide_target(const Covector& target) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(target.coeffs);
        if (it != memo_.end()) return it->second;
    }
    auto result = cone_membership(system_, target);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return memo_.emplace(target.coeffs, std::move(result)).first->second;
}

bool is_necessary(const Query& query, const Instance& instance) {
    return NecessityEngine(instance).is_necessary(query);
}

std::optional<IntegerCertificate> ilp_oracle(const Covector& target, const ConeSystem& system, int bound) {
    const std::size_t np = system.statement_covectors.size();
    const std::size_t d = system.slot_count;
    if (np > 5 || d > 8) {
        throw std::invalid_argument("integer witness search is limited to 5 statements and 8 scale steps");
    }
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    if (target.size() != d) throw ValidationError("target covector does not match the system");

    // Per-slot range the unassigned statements can still contribute, for
    // pruning: suffix_lo[p][s] .. suffix_hi[p][s] covers statements p..np-1.
    std::vector<std::vector<long long>> suffix_lo(np + 1, std::vector<long long>(d, 0));
    std::vector<std::vector<long long>> suffix_hi(np + 1, std::vector<long long>(d, 0));
    for (std::size_t p = np; p-- > 0;) {
        for (std::size_t s = 0; s < d; ++s) {
            long long c = system.statement_covectors[p].coeffs[s];
            suffix_lo[p][s] = suffix_lo[p + 1][s] + bound * std::min(c, 0LL);
            suffix_hi[p][s] = suffix_hi[p + 1][s] + bound * std::max(c, 0LL);
        }
    }

    std::vector<long long> ell(np, 0);
    std::vector<long long> partial(d, 0);
    std::optional<IntegerCertificate> found;

    auto feasible_so_far = [&](long long r, std::size_t next) {
        for (std::size_t s = 0; s < d; ++s) {
            const long long want = r * target.coeffs[s];
            if (partial[s] + suffix_lo[next][s] > want) return false;
            if (partial[s] + suffix_hi[next][s] < want - bound) return false;
        }
        return true;
    };

    std::function<bool(long long, std::size_t)> dfs = [&](long long r, std::size_t p) -> bool {
        if (!feasible_so_far(r, p)) return false;
        if (p == np) {
            IntegerCertificate cert;
            cert.r = r;
            cert.ell = ell;
            cert.m.resize(d);
            for (std::size_t s = 0; s < d; ++s) {
                long long m = r * target.coeffs[s] - partial[s];
                if (m < 0 || m > bound) return false;
                cert.m[s] = m;
            }
            found = std::move(cert);
            return true;
        }
        const auto& cv = system.statement_covectors[p].coeffs;
        for (long long v = 0; v <= bound; ++v) {
            ell[p] = v;
            if (v > 0) {
                for (std::size_t s = 0; s < d; ++s) partial[s] += cv[s];
            }
            if (dfs(r, p + 1)) return true;
        }
        for (std::size_t s = 0; s < d; ++s) partial[s] -= bound * cv[s];
        ell[p] = 0;
        return false;
    };

    for (long long r = 1; r <= bound; ++r) {
        if (dfs(r, 0)) break;
    }
    return found;
}

std::optional<Counterexample> sampling_falsifier(const Query& query, const NecessityEngine& engine,
                                                 std::size_t trials, std::uint64_t seed) {
    if (query.x.has_wildcard() || query.y.has_wildcard()) {
        throw ValidationError("queries must not contain wildcards");
    }
    const Instance& instance = engine.instance();
    ReferenceScale ext = extend_with_query(engine.scale(), query);
    SlotIndex slots(ext);

    std::vector<std::vector<long long>> statement_covectors;
    statement_covectors.reserve(instance.statements.size());
    for (const auto& st : instance.statements) {
        statement_covectors.push_back(covector_of(st.better, st.worse, ext, slots).coeffs);
    }
    std::vector<long long> goal = covector_of(query.x, query.y, ext, slots).coeffs;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> increment(0, 9);
    std::vector<long long> w(slots.count());

    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (auto& v : w) v = increment(rng);

        auto dot = [&w](const std::vector<long long>& c) {
            long long sum = 0;
            for (std::size_t s = 0; s < c.size(); ++s) sum += c[s] * w[s];
            return sum;
        };
        bool admissible = std::all_of(statement_covectors.begin(), statement_covectors.end(),
                                      [&](const auto& c) { return dot(c) >= 0; });
        if (!admissible || dot(goal) >= 0) continue;

        // Materialize the model: cumulative increments per criterion.
        Counterexample ce;
        ce.utility.resize(ext.criterion_count());
        for (std::size_t i = 0; i < ext.criterion_count(); ++i) {
            Rational level(0);
            for (std::size_t k = 0; k < ext.level_count(i); ++k) {
                if (k > 0) level += Rational(w[slots.first(i) + k - 1]);
                ce.utility[i].emplace_back(ext.levels[i][k], level);
            }
        }
        auto evaluate = [&](const Alternative& a) {
            Rational total(0);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const auto& table = ce.utility[i];
                auto it = std::find_if(table.begin(), table.end(),
                                       [&](const auto& entry) { return entry.first == *a.values[i]; });
                total += it->second;
            }
            return total;
        };
        ce.x_utility = evaluate(query.x);
        ce.y_utility = evaluate(query.y);
        return ce;
    }
    return std::nullopt;
}

}  // namespace prefswap
