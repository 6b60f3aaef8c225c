#include "iwasawa/series.hpp"

#include <stdexcept>

namespace iwasawa {

TruncatedSeries::TruncatedSeries(ContextPtr ctx, int cap, std::vector<PadicInt> coeffs)
    : ctx_(std::move(ctx)), cap_(cap), prec_(ctx_ ? ctx_->precision() : 0) {
    if (!ctx_) throw std::invalid_argument("TruncatedSeries: null context");
    if (cap_ < 1) throw std::invalid_argument("TruncatedSeries: cap must be >= 1");
    if (static_cast<int>(coeffs.size()) != cap_)
        throw std::invalid_argument("TruncatedSeries: coefficient count != cap");
    for (const auto& c : coeffs) {
        if (!c.context()->same_as(*ctx_))
            throw std::invalid_argument("TruncatedSeries: coefficient context mismatch");
        prec_ = std::min(prec_, c.precision());
    }
    coeffs_.reserve(coeffs.size());
    for (const auto& c : coeffs) coeffs_.push_back(c.residue());
    normalize();
}

TruncatedSeries::TruncatedSeries(ContextPtr ctx, int cap, std::vector<mpz_class> residues,
                                 int precision)
    : ctx_(std::move(ctx)), cap_(cap), prec_(precision), coeffs_(std::move(residues)) {
    if (!ctx_) throw std::invalid_argument("TruncatedSeries: null context");
    if (cap_ < 1) throw std::invalid_argument("TruncatedSeries: cap must be >= 1");
    if (static_cast<int>(coeffs_.size()) != cap_)
        throw std::invalid_argument("TruncatedSeries: coefficient count != cap");
    prec_ = std::max(0, std::min(prec_, ctx_->precision()));
    normalize();
}

void TruncatedSeries::normalize() {
    const mpz_class& m = ctx_->prime_pow(prec_);
    for (auto& c : coeffs_) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
}

TruncatedSeries TruncatedSeries::zero(const ContextPtr& ctx, int cap) {
    return TruncatedSeries(ctx, cap, std::vector<mpz_class>(static_cast<size_t>(cap)),
                           ctx->precision());
}

TruncatedSeries TruncatedSeries::constant(const ContextPtr& ctx, int cap, const PadicInt& value) {
    std::vector<mpz_class> v(static_cast<size_t>(cap));
    v[0] = value.residue();
    return TruncatedSeries(ctx, cap, std::move(v), value.precision());
}

TruncatedSeries TruncatedSeries::monomial(const ContextPtr& ctx, int cap, int degree,
                                          long coefficient) {
    if (degree < 0 || degree >= cap)
        throw std::invalid_argument("TruncatedSeries::monomial: degree out of range");
    std::vector<mpz_class> v(static_cast<size_t>(cap));
    v[static_cast<size_t>(degree)] = coefficient;
    return TruncatedSeries(ctx, cap, std::move(v), ctx->precision());
}

TruncatedSeries TruncatedSeries::from_integers(const ContextPtr& ctx, int cap,
                                               const std::vector<long>& coeffs) {
    if (static_cast<int>(coeffs.size()) > cap)
        throw std::invalid_argument("TruncatedSeries::from_integers: too many coefficients");
    std::vector<mpz_class> v(static_cast<size_t>(cap));
    for (size_t i = 0; i < coeffs.size(); ++i) v[i] = coeffs[i];
    return TruncatedSeries(ctx, cap, std::move(v), ctx->precision());
}

PadicInt TruncatedSeries::coeff(int i) const {
    if (i < 0 || i >= cap_) throw std::out_of_range("TruncatedSeries::coeff");
    return PadicInt(ctx_, coeffs_[static_cast<size_t>(i)], prec_);
}

bool TruncatedSeries::is_zero_residues() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool TruncatedSeries::is_unit() const {
    return prec_ > 0 && mpz_divisible_ui_p(coeffs_[0].get_mpz_t(), ctx_->prime()) == 0;
}

void TruncatedSeries::require_compatible(const TruncatedSeries& rhs) const {
    if (!ctx_->same_as(*rhs.ctx_) || cap_ != rhs.cap_)
        throw std::invalid_argument("TruncatedSeries: mismatched context or cap");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
    require_compatible(rhs);
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] + rhs.coeffs_[i];
    return TruncatedSeries(ctx_, cap_, std::move(out), std::min(prec_, rhs.prec_));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const {
    require_compatible(rhs);
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] - rhs.coeffs_[i];
    return TruncatedSeries(ctx_, cap_, std::move(out), std::min(prec_, rhs.prec_));
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& rhs) const {
    require_compatible(rhs);
    int out_prec = std::min(prec_, rhs.prec_);
    const mpz_class& m = ctx_->prime_pow(out_prec);
    std::vector<mpz_class> out(coeffs_.size());
    mpz_class tmp;
    for (int i = 0; i < cap_; ++i) {
        if (coeffs_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j + i < cap_; ++j) {
            tmp = coeffs_[static_cast<size_t>(i)] * rhs.coeffs_[static_cast<size_t>(j)];
            out[static_cast<size_t>(i + j)] += tmp;
        }
    }
    for (auto& c : out) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return TruncatedSeries(ctx_, cap_, std::move(out), out_prec);
}

TruncatedSeries TruncatedSeries::operator*(const PadicInt& scalar) const {
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] * scalar.residue();
    return TruncatedSeries(ctx_, cap_, std::move(out), std::min(prec_, scalar.precision()));
}

TruncatedSeries TruncatedSeries::operator-() const {
    std::vector<mpz_class> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
    return TruncatedSeries(ctx_, cap_, std::move(out), prec_);
}

TruncatedSeries TruncatedSeries::shift(int by) const {
    if (by < 0 || by >= cap_) throw std::invalid_argument("TruncatedSeries::shift: bad amount");
    std::vector<mpz_class> out(coeffs_.size());
    for (int i = 0; i + by < cap_; ++i) out[static_cast<size_t>(i + by)] = coeffs_[static_cast<size_t>(i)];
    return TruncatedSeries(ctx_, cap_, std::move(out), prec_);
}

TruncatedSeries TruncatedSeries::reduced_to(int precision) const {
    if (precision >= prec_) return *this;
    return TruncatedSeries(ctx_, cap_, coeffs_, precision);
}

bool TruncatedSeries::equal_at_common_precision(const TruncatedSeries& rhs) const {
    require_compatible(rhs);
    int k = std::min(prec_, rhs.prec_);
    const mpz_class& m = ctx_->prime_pow(k);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if ((coeffs_[i] - rhs.coeffs_[i]) % m != 0) return false;
    }
    return true;
}

bool TruncatedSeries::bit_equal(const TruncatedSeries& rhs) const {
    return ctx_->same_as(*rhs.ctx_) && cap_ == rhs.cap_ && prec_ == rhs.prec_ &&
           coeffs_ == rhs.coeffs_;
}

// ---------------------------------------------------------------------------

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& s) {
    if (!f.context()->same_as(*s.context()) || f.cap() != s.cap())
        throw std::invalid_argument("compose: mismatched context or cap");
    if (s.coeff_residue(0) != 0)
        throw std::invalid_argument("compose: inner series must have zero constant term");
    const int cap = f.cap();
    TruncatedSeries acc = TruncatedSeries::constant(f.context(), cap, f.coeff(cap - 1));
    for (int i = cap - 2; i >= 0; --i) {
        acc = acc * s;
        acc = acc + TruncatedSeries::constant(f.context(), cap, f.coeff(i));
    }
    return acc.reduced_to(std::min(f.achieved_precision(), s.achieved_precision()));
}

TruncatedSeries sigma_series(const ContextPtr& ctx, int cap) {
    std::vector<mpz_class> v(static_cast<size_t>(cap));
    for (int k = 1; k < cap; ++k) v[static_cast<size_t>(k)] = (k % 2 == 0) ? 1 : -1;
    return TruncatedSeries(ctx, cap, std::move(v), ctx->precision());
}

TruncatedSeries sigma(const TruncatedSeries& f) {
    const auto& ctx = f.context();
    const int cap = f.cap();
    const int prec = f.achieved_precision();
    const mpz_class& m = ctx->prime_pow(prec);

    std::vector<mpz_class> out(static_cast<size_t>(cap));
    out[0] = f.coeff_residue(0);

    // Pascal row C(n-1, .) built incrementally mod p^prec.
    std::vector<mpz_class> row(static_cast<size_t>(cap));
    row[0] = 1;
    mpz_class acc, tmp;
    for (int n = 1; n < cap; ++n) {
        // row currently holds C(n-1, j) for j = 0..n-1.
        acc = 0;
        for (int k = 1; k <= n; ++k) {
            if (f.coeff_residue(k) == 0) continue;
            tmp = f.coeff_residue(k) * row[static_cast<size_t>(k - 1)];
            acc += tmp;
        }
        if (n % 2 != 0) acc = -acc;
        mpz_fdiv_r(out[static_cast<size_t>(n)].get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        // advance to C(n, .)
        for (int j = n; j >= 1; --j) {
            row[static_cast<size_t>(j)] += row[static_cast<size_t>(j - 1)];
            mpz_fdiv_r(row[static_cast<size_t>(j)].get_mpz_t(), row[static_cast<size_t>(j)].get_mpz_t(),
                       m.get_mpz_t());
        }
    }
    return TruncatedSeries(ctx, cap, std::move(out), prec);
}

TruncatedSeries one_plus_T_pow(const mpz_class& exponent, const ContextPtr& ctx, int cap) {
    const unsigned long p = ctx->prime();
    const int n = ctx->precision();

    // Guard digits cover the cumulative exact divisions by 1..cap-1:
    // vfact = v_p((cap-1)!) by Legendre.
    long vfact = 0;
    for (mpz_class q = p; q <= cap - 1; q *= static_cast<long>(p))
        vfact += mpz_class(mpz_class(cap - 1) / q).get_si();
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), p, static_cast<unsigned long>(n + vfact));

    std::vector<mpz_class> out(static_cast<size_t>(cap));
    out[0] = 1;
    mpz_class cur = 1;  // C(exponent, k) mod p^(n + vfact - v_p(k!))
    mpz_class factor, pe;
    const mpz_class& mod_n = ctx->prime_pow(n);
    for (int k = 1; k < cap; ++k) {
        factor = (exponent - (k - 1)) % big;
        if (factor < 0) factor += big;
        cur = (cur * factor) % big;
        // exact division by k = p^e * k'
        unsigned long kk = static_cast<unsigned long>(k);
        int e = 0;
        while (kk % p == 0) { kk /= p; ++e; }
        if (e > 0) {
            // cur and the modulus are both divisible by p^e, so the residue
            // of k*C(exponent,k) divides out exactly.
            mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
            if (!mpz_divisible_p(cur.get_mpz_t(), pe.get_mpz_t()))
                throw std::logic_error("one_plus_T_pow: inexact division");
            cur /= pe;
            big /= pe;
        }
        if (kk > 1) {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), mpz_class(static_cast<long>(kk)).get_mpz_t(), big.get_mpz_t());
            cur = (cur * inv) % big;
        }
        mpz_fdiv_r(out[static_cast<size_t>(k)].get_mpz_t(), cur.get_mpz_t(), mod_n.get_mpz_t());
    }
    return TruncatedSeries(ctx, cap, std::move(out), n);
}

TruncatedSeries one_plus_T_pow(const PadicInt& c, int cap) {
    const auto& ctx = c.context();
    TruncatedSeries exact = one_plus_T_pow(c.residue(), ctx, cap);
    int drift = binomial_drift(ctx->prime(), static_cast<unsigned long>(cap - 1));
    return exact.reduced_to(c.precision() - drift);
}

TruncatedSeries invert_unit(const TruncatedSeries& f) {
    if (!f.is_unit())
        throw std::domain_error("invert_unit: not a unit in Lambda (constant term not a unit)");
    const auto& ctx = f.context();
    const int cap = f.cap();
    const int prec = f.achieved_precision();
    const mpz_class& m = ctx->prime_pow(prec);

    mpz_class inv0;
    mpz_invert(inv0.get_mpz_t(), f.coeff_residue(0).get_mpz_t(), m.get_mpz_t());
    std::vector<mpz_class> out(static_cast<size_t>(cap));
    out[0] = inv0;
    mpz_class acc, tmp;
    for (int nIdx = 1; nIdx < cap; ++nIdx) {
        acc = 0;
        for (int k = 1; k <= nIdx; ++k) {
            if (f.coeff_residue(k) == 0) continue;
            tmp = f.coeff_residue(k) * out[static_cast<size_t>(nIdx - k)];
            acc += tmp;
        }
        acc = (-acc * inv0) % m;
        if (acc < 0) acc += m;
        out[static_cast<size_t>(nIdx)] = acc;
    }
    return TruncatedSeries(ctx, cap, std::move(out), prec);
}

VanishingOrder order_of_vanishing(const TruncatedSeries& f) {
    for (int i = 0; i < f.cap(); ++i) {
        if (f.coeff_residue(i) != 0 && f.achieved_precision() > 0)
            return {i, Certificate::conclusive};
    }
    return {std::nullopt, Certificate::inconclusive};
}

}  // namespace iwasawa
