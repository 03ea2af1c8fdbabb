#pragma once

#include "prefswap/covector.hpp"
#include "prefswap/model.hpp"
#include "prefswap/rounding.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace prefswap {

// The covectors a robust comparison may be decomposed into: one generator per
// preference statement (in statement order), then one elementary scale step
// per slot (in slot order).
struct ConeSystem {
    std::vector<Covector> statement_covectors;
    std::size_t slot_count = 0;

    static ConeSystem of(const Instance& instance, const ReferenceScale& scale, const SlotIndex& slots);
    std::size_t generator_count() const { return statement_covectors.size() + slot_count; }
};

// Nonnegative decomposition target = sum lambda_p * statement_p + sum mu_s * step_s.
// Scaling by the common denominator gives the all-integer form
// r * target = sum ell_p * statement_p + sum m_s * step_s.
struct Certificate {
    std::vector<Rational> lambda;  // per statement
    std::vector<Rational> mu;      // per slot

    struct IntegerForm {
        BigInt r;
        std::vector<BigInt> ell;
        std::vector<BigInt> m;
    };
    IntegerForm integer_form() const;
};

// Exact test whether target lies in the nonnegative cone of the generators.
// Any returned certificate has been re-verified by plain multiplication.
std::optional<Certificate> cone_membership(const ConeSystem& system, const Covector& target);

// Recomputes the defining identity of the certificate from scratch.
bool verify_certificate(const ConeSystem& system, const Covector& target, const Certificate& cert);

// Bundles an instance with its reference scale, slot index and cone system,
// and memoizes decompositions by target covector. Queries with the same
// rounding share one decision. Safe to share across threads.
class NecessityEngine {
public:
    explicit NecessityEngine(Instance instance);

    const Instance& instance() const { return instance_; }
    const ReferenceScale& scale() const { return scale_; }
    const SlotIndex& slots() const { return slots_; }
    const ConeSystem& system() const { return system_; }

    struct CheckResult {
        Boundedness boundedness;
        std::optional<RoundedQuery> rounded;
        std::optional<Covector> covector;
        bool necessary = false;
        std::optional<Certificate> certificate;
    };

    // Full pipeline: boundedness, rounding, covector, cone membership.
    CheckResult check(const Query& query) const;
    bool is_necessary(const Query& query) const;

    // Memoized cone membership for an arbitrary target covector.
    std::optional<Certificate> decide_target(const Covector& target) const;

private:
    Instance instance_;
    ReferenceScale scale_;
    SlotIndex slots_;
    ConeSystem system_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::vector<long long>, std::optional<Certificate>> memo_;
};

// Convenience entry point; builds a throwaway engine.
bool is_necessary(const Query& query, const Instance& instance);

// Brute-force witness search for the all-integer decomposition with
// r in [1, bound] and every coefficient in [0, bound]. Deliberately
// exponential and restricted to small systems (at most 5 statements and
// 8 slots); a miss means "nothing within this bound", not "impossible".
struct IntegerCertificate {
    long long r = 0;
    std::vector<long long> ell;
    std::vector<long long> m;
};

std::optional<IntegerCertificate> ilp_oracle(const Covector& target, const ConeSystem& system, int bound);

// An explicit additive utility model compatible with every statement but
// ranking y strictly above x. Utilities are listed per criterion at each
// value of the scale extended with the query's own values.
struct Counterexample {
    std::vector<std::vector<std::pair<Rational, Rational>>> utility;  // (value, utility) ascending
    Rational x_utility;
    Rational y_utility;
};

// Randomized search for a counterexample: draws integer utility increments
// on the extended scale and keeps the first draw that satisfies all
// statements while ranking y strictly above x. Deterministic for a given
// seed. Absence of a find proves nothing; any find is exact.
std::optional<Counterexample> sampling_falsifier(const Query& query, const NecessityEngine& engine,
                                                 std::size_t trials, std::uint64_t seed);

}  // namespace prefswap
