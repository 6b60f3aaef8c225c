#pragma once

#include "iwasawa/series.hpp"

namespace iwasawa {

struct CertifiedNat {
    std::optional<int> value;  // set iff certificate == conclusive
    Certificate certificate;
};

/// mu(f): minimum v_p over the coefficients; conclusive iff the minimum is
/// witnessed strictly below the achieved precision.
CertifiedNat mu_invariant(const TruncatedSeries& f);

/// lambda(f): smallest coefficient index of valuation mu(f).
CertifiedNat lambda_invariant(const TruncatedSeries& f);

/**
 * mu, lambda, order of vanishing, leading and sub-leading Taylor
 * coefficients of a truncated Lambda-element, with the context echoed so
 * the numbers are reproducible bit for bit.
 */
struct InvariantReport {
    unsigned long p;
    int n;      // working precision
    int cap;    // coefficient cap M
    mpz_class kappa_gamma;

    std::optional<int> mu;
    std::optional<int> lambda;
    std::optional<int> vanishing_order;
    std::optional<PadicInt> leading;     // coefficient of T^m
    std::optional<PadicInt> subleading;  // coefficient of T^(m+1)
    Certificate certificate;
};

InvariantReport invariant_report(const TruncatedSeries& f);

struct WeierstrassDecomposition {
    int mu;
    TruncatedSeries distinguished;  // monic of degree lambda, lower coeffs = 0 mod p
    TruncatedSeries unit_part;
    Certificate certificate;
};

/**
 * f = p^mu * D * U mod (p^(k-mu), T^M) with D distinguished of degree
 * lambda(f) and U a unit, by successive p-digit approximation (at most one
 * pass per remaining digit; refuses rather than guesses on inconclusive
 * invariants or when lambda >= M - guard).
 */
WeierstrassDecomposition weierstrass_prepare(const TruncatedSeries& f, int guard = 8);

}  // namespace iwasawa
