#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace iwasawa {

class PadicContext;
using ContextPtr = std::shared_ptr<const PadicContext>;

/**
 * The ambient arithmetic: a prime p, a working precision N (number of
 * p-adic digits), and the fixed 1-unit kappa(gamma) that normalizes the
 * p-adic logarithm.
 *
 * kappa(gamma) defaults to 1+p for odd p and to 5 for p = 2; every report
 * echoes it, since all log-based quantities depend on this normalization.
 * Contexts are immutable and shared by the values created under them.
 */
class PadicContext : public std::enable_shared_from_this<PadicContext> {
public:
    static ContextPtr make(unsigned long p, int precision);
    static ContextPtr make(unsigned long p, int precision, const mpz_class& kappa_gamma);

    unsigned long prime() const { return p_; }
    int precision() const { return n_; }

    /// p^k for 0 <= k <= precision() + kPowSlack.
    const mpz_class& prime_pow(int k) const;
    const mpz_class& modulus() const { return prime_pow(n_); }

    /// kappa(gamma) as a full-precision value.
    class PadicInt kappa_gamma() const;
    const mpz_class& kappa_gamma_residue() const { return kappa_; }

    bool same_as(const PadicContext& other) const {
        return p_ == other.p_ && n_ == other.n_ && kappa_ == other.kappa_;
    }

    static bool is_prime(const mpz_class& p);

    // Headroom above N for guard digits in log/binomial internals.
    static constexpr int kPowSlack = 64;

private:
    PadicContext(unsigned long p, int precision, mpz_class kappa);

    unsigned long p_;
    int n_;
    mpz_class kappa_;
    std::vector<mpz_class> pows_;
};

/**
 * A p-adic integer known modulo p^k: the canonical residue in [0, p^k)
 * together with the achieved precision k <= N.
 *
 * Binary operations produce the minimum of the operands' precisions minus
 * any documented loss; division by a value of valuation v costs v digits.
 * Values are immutable.
 */
class PadicInt {
public:
    PadicInt(ContextPtr ctx, const mpz_class& value, int precision);
    PadicInt(ContextPtr ctx, long value, int precision);

    /// Full-precision value from an exact integer.
    static PadicInt from_integer(const ContextPtr& ctx, const mpz_class& value);
    static PadicInt from_integer(const ContextPtr& ctx, long value);
    static PadicInt zero(const ContextPtr& ctx, int precision);

    const ContextPtr& context() const { return ctx_; }
    const mpz_class& residue() const { return residue_; }
    int precision() const { return prec_; }

    bool is_zero_residue() const { return residue_ == 0; }

    /// v_p of the residue; nullopt ("bottom") when the residue vanishes,
    /// i.e. the value is indistinguishable from 0 at this precision.
    std::optional<int> valuation() const;
    bool is_unit() const;

    PadicInt operator+(const PadicInt& rhs) const;
    PadicInt operator-(const PadicInt& rhs) const;
    PadicInt operator*(const PadicInt& rhs) const;
    PadicInt operator-() const;

    /// Inverse of a unit; no precision loss.
    PadicInt inverse() const;
    /// this / rhs where v(rhs) must be conclusive and divide the residue;
    /// costs v(rhs) digits of precision.
    PadicInt divide(const PadicInt& rhs) const;
    /// Exact division by a small integer n (v_p(n) digits of loss).
    PadicInt divide_exact(unsigned long n) const;

    PadicInt reduced_to(int precision) const;

    /// Equality at the common (minimum) achieved precision.
    bool equal_at_common_precision(const PadicInt& rhs) const;
    /// Identical residue and precision.
    bool bit_equal(const PadicInt& rhs) const {
        return prec_ == rhs.prec_ && residue_ == rhs.residue_;
    }

    std::string to_string() const { return residue_.get_str(10); }

private:
    void require_same_context(const PadicInt& rhs) const;

    ContextPtr ctx_;
    mpz_class residue_;
    int prec_;
};

/// v_p(residue), or nullopt when indistinguishable from 0.
std::optional<int> valuation(const PadicInt& x);

/// Projection of a unit x onto 1 + pZ_p (1 + 4Z_2 for p = 2):
/// x * omega(x)^{-1} with omega the Teichmuller representative.
PadicInt one_unit_projection(const PadicInt& x);

/// Teichmuller representative, by iterating t -> t^p to its fixed point.
PadicInt teichmuller(const PadicInt& x);

/// log(x) = sum_{k>=1} (-1)^{k+1} (x-1)^k / k for a 1-unit x.
/// Terms are evaluated from the canonical integer lift with guard digits,
/// which makes every term exact at the input precision, so the sum carries
/// the full input precision (see padic.cpp for the bound).
PadicInt padic_log(const PadicInt& x);

/// log_gamma(x) = log <x> / log kappa(gamma) for a unit x. Division by
/// log kappa(gamma) (valuation 1, or 2 for p = 2) costs that many digits.
PadicInt log_gamma(const PadicInt& x);

/// Binomial coefficient C(c, k) via the integer-lift strategy: the exact
/// integer binomial of the canonical lift, reduced. Continuity of c -> C(c,k)
/// bounds the lift ambiguity by floor(log_p k) digits for k >= 2.
PadicInt padic_binomial(const PadicInt& c, unsigned long k);

/// Digits of ambiguity in C(c, k) coming from the choice of lift of c.
int binomial_drift(unsigned long p, unsigned long k);

}  // namespace iwasawa
