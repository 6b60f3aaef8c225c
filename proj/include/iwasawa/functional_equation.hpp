#pragma once

#include "iwasawa/invariants.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

enum class Flavor { generic, plus, minus };

const char* flavor_name(Flavor f);

/**
 * Functional-equation data: tame level Q coprime to p, sign epsilon in
 * {+1,-1}, exponent L = log_gamma(Q), and the flavor selecting the unit
 * factor W (1 for generic, W^+/W^- for the a_p = 0 pair).
 *
 * Phi fixes the canonical integer lift of L once, so that Phi is an exact
 * involution on the truncated algebra; any other lift of L changes Phi's
 * output only above L's achieved precision minus the binomial drift, which
 * is exactly the budget check_fe reports.
 */
class FEParams {
public:
    static FEParams make(const ContextPtr& ctx, const mpz_class& Q, int epsilon,
                         Flavor flavor = Flavor::generic);

    const ContextPtr& context() const { return ctx_; }
    const mpz_class& tame_level() const { return q_; }
    int epsilon() const { return eps_; }
    const PadicInt& exponent() const { return L_; }
    Flavor flavor() const { return flavor_; }

private:
    FEParams(ContextPtr ctx, mpz_class q, int eps, PadicInt L, Flavor flavor);

    ContextPtr ctx_;
    mpz_class q_;
    int eps_;
    PadicInt L_;
    Flavor flavor_;
};

/// Curve-side data for the a_p = 0 machinery. a_p must satisfy the Hasse
/// bound and vanish when a plus/minus flavor is in play.
struct CurveContext {
    mpz_class conductor;
    unsigned long p;
    long a_p;
    int sign;  // c_N

    static CurveContext make(const mpz_class& conductor, unsigned long p, long a_p, int sign);
};

/// Closed-form W exponent: p/(p+1) for plus, 1/(p+1) for minus (all p,
/// including p = 2, where -1 - sum_{j>=2} 2^(2j-2) also collapses to 1/3).
PadicInt w_exponent(Flavor flavor, const ContextPtr& ctx);

/// W^+/W^- as (1+T)^w from the closed-form exponent; exact unit series.
/// The two lifts are chosen coherently (w+ + w- = 1 as integers), so
/// w_series(plus) * w_series(minus) == 1 + T holds bit for bit.
TruncatedSeries w_series(Flavor flavor, const ContextPtr& ctx, int cap);

/// W^pm from its defining infinite product, truncated: an independent
/// cross-check route with J = ceil((N + floor(log_p M) + 1)/2) factors of
/// integer-exponent powers.
TruncatedSeries w_series_product(Flavor flavor, const ContextPtr& ctx, int cap);

/// Phi(h) = -epsilon * (1+T)^(-L) * W * h(1/(1+T)-1); an involution.
TruncatedSeries phi(const TruncatedSeries& h, const FEParams& params);

/// h + Phi(h): satisfies the functional equation by construction.
TruncatedSeries symmetrize(const TruncatedSeries& h, const FEParams& params);

struct FECheckReport {
    bool pass;
    int digits_verified;  // p-adic digits to which f - Phi(f) vanishes
    int cap_verified;     // T-degrees verified (the full cap: composition is exact)
};

/// Verifies f = Phi(f) mod (p^digits, T^M). digits is capped by L's
/// achieved precision minus the binomial lift drift at the top coefficient.
FECheckReport check_fe(const TruncatedSeries& f, const FEParams& params);

enum class CheckStatus { pass, fail, inconclusive };

const char* status_name(CheckStatus s);

struct ParityReport {
    CheckStatus status;
    FECheckReport fe;
    std::optional<int> vanishing_order;
    int predicted_parity;  // 0 = even, 1 = odd, from (-1)^m = -epsilon
};

/// Theorem: (-1)^m = -epsilon for any series satisfying the functional
/// equation. Requires check_fe to pass; inconclusive when the order of
/// vanishing is.
ParityReport parity_check(const TruncatedSeries& f, const FEParams& params);

/// Corollary-level form: two FE-satisfying series under the same params
/// vanish to orders of equal parity.
CheckStatus parity_agreement(const TruncatedSeries& f_sharp, const TruncatedSeries& f_flat,
                             const FEParams& params);

struct TaylorReport {
    CheckStatus status;
    FECheckReport fe;
    std::optional<int> vanishing_order;
    std::optional<PadicInt> leading;
    std::optional<PadicInt> subleading;
    std::optional<PadicInt> residual;  // 2b + a(L + m), or 2b + a(L - w + m) for +/-
    int digits_verified;               // digits of b + (a/2)(...) verified zero
};

/// Theorem: b = -(a/2)(log_gamma(Q) + m). Verified in the multiplied-
/// through form 2b + a(L+m) = 0; at p = 2 the division by 2 costs one
/// digit, which is accounted in digits_verified.
TaylorReport taylor_relation(const TruncatedSeries& f, const FEParams& params);

/// (F^pm)'(0) for F^pm = (1+T)^(-log_gamma(N)) W^pm: closed form
/// -log_gamma(N) + p/(p+1) (plus) resp. + 1/(p+1) (minus), asserted equal
/// to the T-coefficient of the product series before returning.
PadicInt f_pm_derivative_at_zero(Flavor flavor, const CurveContext& curve, const ContextPtr& ctx);

/// The a_p = 0 variant: b = -(a/2)(log_gamma(N) - p/(1+p) + m) for plus,
/// with 1/(1+p) for minus. Requires the flavored FE to hold and a_p = 0.
TaylorReport pm_taylor_relation(const TruncatedSeries& f, Flavor flavor, const CurveContext& curve,
                                const ContextPtr& ctx);

/// Loss budget of the FE checkers: digits of L's precision lost to the
/// binomial lift ambiguity across the cap.
int fe_digit_budget(const ContextPtr& ctx, int cap);

}  // namespace iwasawa
