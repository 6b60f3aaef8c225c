#pragma once

#include "iwasawa/functional_equation.hpp"
#include "iwasawa/invariants.hpp"
#include "iwasawa/series.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace iwasawa {

/**
 * Self-contained splitmix64 generator. Every byte of randomness in the
 * harness flows through this, so a trial is reproducible from its 64-bit
 * seed on any platform (std distributions are not portable across
 * standard library implementations).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, bound) for big bounds, by top-limb rejection.
    mpz_class mpz_below(const mpz_class& bound);
    /// Uniform in [lo, hi].
    long range(long lo, long hi);

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
    std::uint64_t state_;
};

struct SeriesProfile {
    int mu;
    int lambda;
    std::uint64_t seed;
};

/// p^mu * (distinguished of degree lambda with random sub-unit lower
/// coefficients) * (random unit). The invariants of the result are
/// recomputed before returning and must equal the targets.
TruncatedSeries random_series(const ContextPtr& ctx, int cap, const SeriesProfile& profile,
                              int guard = 8);

/// A random unit of Lambda at full precision.
TruncatedSeries random_unit_series(const ContextPtr& ctx, int cap, Rng& rng);

/// A random series at full precision (no invariant targets).
TruncatedSeries random_full_series(const ContextPtr& ctx, int cap, Rng& rng);

/// g = u * f(1/(1+T)-1) for a unit u: the conjugate twist. mu and lambda
/// are invariant under it.
TruncatedSeries twist(const TruncatedSeries& f, const TruncatedSeries& u);

/// Unit lemma: sigma(U) is again a unit.
bool unit_invariance_check(const TruncatedSeries& u);

// ---------------------------------------------------------------------------

enum class SuiteKind { invariance, parity, taylor, wseries, fe };

const char* suite_name(SuiteKind k);

struct SuiteConfig {
    std::vector<unsigned long> primes{2, 3, 5, 7};
    int trials = 200;
    std::uint64_t seed = 1;
    int precision = 40;   // N
    int cap = 64;         // M
    int taylor_budget_odd = 3;  // digits delta allowed in criterion-4 checks
    int taylor_budget_p2 = 4;
    std::set<SuiteKind> suites{SuiteKind::invariance, SuiteKind::parity, SuiteKind::taylor,
                               SuiteKind::wseries, SuiteKind::fe};
};

struct TrialFailure {
    SuiteKind suite;
    unsigned long p;
    int trial;
    std::uint64_t seed;
    std::string message;
};

struct PrecisionSuggestion {
    int precision;
    int cap;
};

struct TrialInconclusive {
    SuiteKind suite;
    unsigned long p;
    int trial;
    std::uint64_t seed;
    PrecisionSuggestion suggested;
};

struct SuiteTally {
    int trials = 0;
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;
    int min_digits_verified = -1;  // -1: no digit-checked assertion ran
    double duration_ms = 0.0;
};

struct SuiteReport {
    SuiteConfig config;
    std::map<SuiteKind, SuiteTally> tallies;
    std::vector<TrialFailure> failures;
    std::vector<TrialInconclusive> inconclusives;
    double total_ms = 0.0;

    bool all_passed() const { return failures.empty() && inconclusives.empty(); }
    /// 0 = pass, 1 = theorem violation, 2 = inconclusive precision.
    int exit_code() const;
};

/// Runs the selected randomized suites. Trials are seeded individually
/// (mix of master seed, suite, prime, index), so any failure reproduces
/// from the logged seed alone; the aggregation is order-insensitive.
SuiteReport run_suite(const SuiteConfig& config);

/// Estimate of the smallest (N, M) raise that would resolve an
/// inconclusive verdict at the given sizes.
PrecisionSuggestion suggest_raise(const ContextPtr& ctx, int cap);

}  // namespace iwasawa
