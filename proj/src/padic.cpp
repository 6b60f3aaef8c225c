#include "iwasawa/padic.hpp"

#include <stdexcept>

namespace iwasawa {

namespace {

mpz_class pow_ui(unsigned long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

int valuation_of_mpz(const mpz_class& x, unsigned long p) {
    // x != 0
    mpz_class rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

}  // namespace

PadicContext::PadicContext(unsigned long p, int precision, mpz_class kappa)
    : p_(p), n_(precision), kappa_(std::move(kappa)) {
    pows_.reserve(n_ + kPowSlack + 1);
    mpz_class acc = 1;
    for (int k = 0; k <= n_ + kPowSlack; ++k) {
        pows_.push_back(acc);
        acc *= static_cast<long>(p_);
    }
}

bool PadicContext::is_prime(const mpz_class& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

ContextPtr PadicContext::make(unsigned long p, int precision) {
    mpz_class kappa = (p == 2) ? mpz_class(5) : mpz_class(1 + static_cast<long>(p));
    return make(p, precision, kappa);
}

ContextPtr PadicContext::make(unsigned long p, int precision, const mpz_class& kappa_gamma) {
    if (!is_prime(mpz_class(p)))
        throw std::invalid_argument("PadicContext: p must be prime");
    if (precision < 8)
        throw std::invalid_argument("PadicContext: working precision must be >= 8");
    mpz_class mod = pow_ui(p, precision);
    mpz_class kappa = kappa_gamma % mod;
    if (kappa < 0) kappa += mod;
    if (p == 2) {
        if (kappa % 8 != 5)
            throw std::invalid_argument("PadicContext: kappa(gamma) must be 5 mod 8 for p = 2");
    } else {
        if (kappa % (mpz_class(p) * p) != 1 + static_cast<long>(p))
            throw std::invalid_argument("PadicContext: kappa(gamma) must be 1+p mod p^2");
    }
    return ContextPtr(new PadicContext(p, precision, kappa));
}

const mpz_class& PadicContext::prime_pow(int k) const {
    if (k < 0 || k >= static_cast<int>(pows_.size()))
        throw std::out_of_range("PadicContext::prime_pow: exponent out of range");
    return pows_[static_cast<size_t>(k)];
}

PadicInt PadicContext::kappa_gamma() const {
    return PadicInt(shared_from_this(), kappa_, n_);
}

// ---------------------------------------------------------------------------

PadicInt::PadicInt(ContextPtr ctx, const mpz_class& value, int precision)
    : ctx_(std::move(ctx)), prec_(precision) {
    if (!ctx_) throw std::invalid_argument("PadicInt: null context");
    if (prec_ < 0) prec_ = 0;
    if (prec_ > ctx_->precision()) prec_ = ctx_->precision();
    mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), ctx_->prime_pow(prec_).get_mpz_t());
}

PadicInt::PadicInt(ContextPtr ctx, long value, int precision)
    : PadicInt(std::move(ctx), mpz_class(value), precision) {}

PadicInt PadicInt::from_integer(const ContextPtr& ctx, const mpz_class& value) {
    return PadicInt(ctx, value, ctx->precision());
}

PadicInt PadicInt::from_integer(const ContextPtr& ctx, long value) {
    return from_integer(ctx, mpz_class(value));
}

PadicInt PadicInt::zero(const ContextPtr& ctx, int precision) {
    return PadicInt(ctx, mpz_class(0), precision);
}

void PadicInt::require_same_context(const PadicInt& rhs) const {
    if (!ctx_->same_as(*rhs.ctx_))
        throw std::invalid_argument("PadicInt: mismatched contexts");
}

std::optional<int> PadicInt::valuation() const {
    if (residue_ == 0) return std::nullopt;
    return valuation_of_mpz(residue_, ctx_->prime());
}

bool PadicInt::is_unit() const {
    return prec_ > 0 && mpz_divisible_ui_p(residue_.get_mpz_t(), ctx_->prime()) == 0;
}

PadicInt PadicInt::operator+(const PadicInt& rhs) const {
    require_same_context(rhs);
    return PadicInt(ctx_, residue_ + rhs.residue_, std::min(prec_, rhs.prec_));
}

PadicInt PadicInt::operator-(const PadicInt& rhs) const {
    require_same_context(rhs);
    return PadicInt(ctx_, residue_ - rhs.residue_, std::min(prec_, rhs.prec_));
}

PadicInt PadicInt::operator*(const PadicInt& rhs) const {
    require_same_context(rhs);
    return PadicInt(ctx_, residue_ * rhs.residue_, std::min(prec_, rhs.prec_));
}

PadicInt PadicInt::operator-() const {
    return PadicInt(ctx_, -residue_, prec_);
}

PadicInt PadicInt::inverse() const {
    if (!is_unit())
        throw std::domain_error("PadicInt::inverse: not a unit");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), ctx_->prime_pow(prec_).get_mpz_t()) == 0)
        throw std::domain_error("PadicInt::inverse: not invertible");
    return PadicInt(ctx_, inv, prec_);
}

PadicInt PadicInt::divide(const PadicInt& rhs) const {
    require_same_context(rhs);
    auto v = rhs.valuation();
    if (!v)
        throw std::domain_error("PadicInt::divide: divisor indistinguishable from 0");
    int out_prec = std::min(prec_, rhs.prec_) - *v;
    if (out_prec <= 0)
        throw std::domain_error("PadicInt::divide: precision exhausted by divisor valuation");
    if (!mpz_divisible_p(residue_.get_mpz_t(), ctx_->prime_pow(*v).get_mpz_t()))
        throw std::domain_error("PadicInt::divide: quotient not a p-adic integer");
    mpz_class num = residue_ / ctx_->prime_pow(*v);
    mpz_class den = rhs.residue_ / ctx_->prime_pow(*v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ctx_->prime_pow(out_prec).get_mpz_t());
    return PadicInt(ctx_, num * inv, out_prec);
}

PadicInt PadicInt::divide_exact(unsigned long n) const {
    if (n == 0) throw std::domain_error("PadicInt::divide_exact: zero divisor");
    mpz_class nz(static_cast<long>(n));
    int v = valuation_of_mpz(nz, ctx_->prime());
    int out_prec = prec_ - v;
    if (out_prec <= 0)
        throw std::domain_error("PadicInt::divide_exact: precision exhausted");
    if (!mpz_divisible_p(residue_.get_mpz_t(), ctx_->prime_pow(v).get_mpz_t()))
        throw std::domain_error("PadicInt::divide_exact: quotient not a p-adic integer");
    mpz_class num = residue_ / ctx_->prime_pow(v);
    mpz_class den = nz / ctx_->prime_pow(v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ctx_->prime_pow(out_prec).get_mpz_t());
    return PadicInt(ctx_, num * inv, out_prec);
}

PadicInt PadicInt::reduced_to(int precision) const {
    if (precision >= prec_) return *this;
    return PadicInt(ctx_, residue_, precision);
}

bool PadicInt::equal_at_common_precision(const PadicInt& rhs) const {
    require_same_context(rhs);
    int k = std::min(prec_, rhs.prec_);
    const mpz_class& m = ctx_->prime_pow(k);
    return (residue_ - rhs.residue_) % m == 0;
}

// ---------------------------------------------------------------------------

std::optional<int> valuation(const PadicInt& x) { return x.valuation(); }

PadicInt teichmuller(const PadicInt& x) {
    if (!x.is_unit())
        throw std::domain_error("teichmuller: input must be a unit");
    const auto& ctx = x.context();
    const mpz_class& mod = ctx->prime_pow(x.precision());
    mpz_class t = x.residue();
    // x^(p^j) stabilizes mod p^k after at most k steps.
    for (int i = 0; i <= x.precision() + 2; ++i) {
        mpz_class next;
        mpz_powm_ui(next.get_mpz_t(), t.get_mpz_t(), ctx->prime(), mod.get_mpz_t());
        if (next == t) return PadicInt(ctx, t, x.precision());
        t = next;
    }
    throw std::logic_error("teichmuller: fixed point not reached");
}

PadicInt one_unit_projection(const PadicInt& x) {
    if (!x.is_unit())
        throw std::domain_error("one_unit_projection: input must be a unit");
    const auto& ctx = x.context();
    if (ctx->prime() == 2) {
        // <x> = x when x = 1 mod 4, else -x.
        return (x.residue() % 4 == 1) ? x : -x;
    }
    return x * teichmuller(x).inverse();
}

int binomial_drift(unsigned long p, unsigned long k) {
    if (k < 2) return 0;
    int d = 0;
    unsigned long q = p;
    while (q <= k) {
        ++d;
        if (q > k / p) break;  // overflow guard
        q *= p;
    }
    return d;
}

PadicInt padic_log(const PadicInt& x) {
    const auto& ctx = x.context();
    const unsigned long p = ctx->prime();
    const int target = x.precision();
    mpz_class z = x.residue() - 1;
    const int vz_req = (p == 2) ? 2 : 1;
    if (z != 0 && !mpz_divisible_p(z.get_mpz_t(), ctx->prime_pow(vz_req).get_mpz_t()))
        throw std::domain_error("padic_log: input is not a 1-unit");
    if (z == 0 || target <= 0)
        return PadicInt(ctx, 0, target);

    // Include term z^k/k while k*v(z) - floor(log_p k) < target; the cutoff
    // function is nondecreasing in k, so the first k at or past the target
    // bounds every later term's valuation.
    int vz = valuation_of_mpz(z, p);
    int terms = 0;
    int guard = 0;  // max v_p(k) over included terms
    for (unsigned long k = 1;; ++k) {
        long g = static_cast<long>(k) * vz - binomial_drift(p, k);
        if (g >= target) break;
        terms = static_cast<int>(k);
        guard = std::max(guard, valuation_of_mpz(mpz_class(static_cast<long>(k)), p));
    }

    // Each term is computed from the canonical lift of z with `guard` extra
    // digits: z^k is determined mod p^(target + (k-1)v(z)), which covers the
    // division by p^{v_p(k)}, so every term -- and hence the sum -- is exact
    // mod p^target.
    const mpz_class& big = ctx->prime_pow(target + guard);
    mpz_class sum = 0;
    mpz_class zpow = 1;
    for (unsigned long k = 1; k <= static_cast<unsigned long>(terms); ++k) {
        zpow = (zpow * z) % big;
        int e = valuation_of_mpz(mpz_class(static_cast<long>(k)), p);
        mpz_class term;
        mpz_fdiv_r(term.get_mpz_t(), zpow.get_mpz_t(), ctx->prime_pow(target + e).get_mpz_t());
        term /= ctx->prime_pow(e);
        unsigned long kprime = k;
        while (e-- > 0) kprime /= p;
        if (kprime > 1) {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), mpz_class(static_cast<long>(kprime)).get_mpz_t(),
                       ctx->prime_pow(target).get_mpz_t());
            term = (term * inv) % ctx->prime_pow(target);
        }
        if (k % 2 == 0) sum -= term; else sum += term;
    }
    return PadicInt(ctx, sum, target);
}

PadicInt log_gamma(const PadicInt& x) {
    if (!x.is_unit())
        throw std::domain_error("log_gamma: input must be a unit");
    const auto& ctx = x.context();
    PadicInt num = padic_log(one_unit_projection(x));
    PadicInt den = padic_log(ctx->kappa_gamma());
    return num.divide(den);
}

PadicInt padic_binomial(const PadicInt& c, unsigned long k) {
    const auto& ctx = c.context();
    int out_prec = c.precision() - binomial_drift(ctx->prime(), k);
    if (k == 0) return PadicInt(ctx, 1, c.precision());
    if (k == 1) return c;
    if (out_prec <= 0) return PadicInt(ctx, 0, 0);
    // Exact integer binomial of the canonical lift.
    mpz_class b;
    mpz_bin_ui(b.get_mpz_t(), c.residue().get_mpz_t(), k);
    return PadicInt(ctx, b, out_prec);
}

}  // namespace iwasawa
