#pragma once

#include "iwasawa/padic.hpp"

#include <optional>
#include <vector>

namespace iwasawa {

enum class Certificate { conclusive, inconclusive };

/**
 * An element of Z_p[[T]] known mod (p^k, T^M): M coefficients sharing one
 * achieved precision k (the minimum over the coefficients it was built
 * from). Two series are comparable only with equal (p, M); comparison
 * truncates to the lower achieved precision.
 */
class TruncatedSeries {
public:
    static constexpr int kDefaultCap = 64;

    TruncatedSeries(ContextPtr ctx, int cap, std::vector<PadicInt> coeffs);
    /// Raw residues at a stated uniform precision.
    TruncatedSeries(ContextPtr ctx, int cap, std::vector<mpz_class> residues, int precision);

    static TruncatedSeries zero(const ContextPtr& ctx, int cap);
    static TruncatedSeries constant(const ContextPtr& ctx, int cap, const PadicInt& value);
    static TruncatedSeries monomial(const ContextPtr& ctx, int cap, int degree, long coefficient = 1);
    /// From exact integer coefficients at full working precision.
    static TruncatedSeries from_integers(const ContextPtr& ctx, int cap, const std::vector<long>& coeffs);

    const ContextPtr& context() const { return ctx_; }
    int cap() const { return cap_; }
    int achieved_precision() const { return prec_; }

    PadicInt coeff(int i) const;
    const mpz_class& coeff_residue(int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero_residues() const;
    /// Unit of Lambda: constant term is a p-adic unit.
    bool is_unit() const;

    TruncatedSeries operator+(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-(const TruncatedSeries& rhs) const;
    TruncatedSeries operator*(const TruncatedSeries& rhs) const;
    TruncatedSeries operator*(const PadicInt& scalar) const;
    TruncatedSeries operator-() const;
    TruncatedSeries shift(int by) const;  // multiply by T^by

    TruncatedSeries reduced_to(int precision) const;

    /// Equality at the common achieved precision; requires equal (p, M).
    bool equal_at_common_precision(const TruncatedSeries& rhs) const;
    /// Identical residues and precision.
    bool bit_equal(const TruncatedSeries& rhs) const;

private:
    void require_compatible(const TruncatedSeries& rhs) const;
    void normalize();

    ContextPtr ctx_;
    int cap_;
    int prec_;
    std::vector<mpz_class> coeffs_;
};

/// f(s(T)) mod (p^k, T^M) by Horner evaluation; requires s(0) = 0.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& s);

/// The involution substitution series s_sigma = 1/(1+T) - 1 = -T + T^2 - ...
TruncatedSeries sigma_series(const ContextPtr& ctx, int cap);

/// f(1/(1+T) - 1), computed by the binomial coefficient transform
/// sigma(f)_n = (-1)^n sum_{k=1..n} f_k C(n-1, k-1); agrees with
/// compose(f, sigma_series) bit for bit.
TruncatedSeries sigma(const TruncatedSeries& f);

/// (1+T)^c for an exact integer exponent (possibly negative): exact
/// integer binomials, full working precision.
TruncatedSeries one_plus_T_pow(const mpz_class& exponent, const ContextPtr& ctx, int cap);

/// (1+T)^c for a p-adic exponent, via the canonical integer lift; the
/// k-th coefficient carries the lift ambiguity of binomial_drift(p, k),
/// so the series' achieved precision is c's minus binomial_drift(p, M-1).
TruncatedSeries one_plus_T_pow(const PadicInt& c, int cap);

/// Inverse of a unit series by the standard coefficient recursion.
TruncatedSeries invert_unit(const TruncatedSeries& f);

struct VanishingOrder {
    std::optional<int> order;  // set iff certificate == conclusive
    Certificate certificate;
};

/// Index of the first coefficient with a nonzero residue. Earlier
/// coefficients are indistinguishable from 0 at the achieved precision;
/// if all are, the certificate is inconclusive.
VanishingOrder order_of_vanishing(const TruncatedSeries& f);

}  // namespace iwasawa
