#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

namespace {

mpz_class pow_ui(unsigned long p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

long mpz_val(const mpz_class& x, unsigned long p) {
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

}  // namespace

long rational_valuation(const mpq_class& q, unsigned long p) {
    if (q == 0) throw std::invalid_argument("oracle: valuation of zero");
    return mpz_val(q.get_num(), p) - mpz_val(q.get_den(), p);
}

mpz_class reduce_rational(const mpq_class& q, unsigned long p, int e) {
    mpq_class c = q;
    c.canonicalize();
    const mpz_class mod = pow_ui(p, static_cast<unsigned long>(e));
    if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p))
        throw std::invalid_argument("oracle: rational is not p-integral");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), mod.get_mpz_t());
    mpz_class r = (c.get_num() * inv) % mod;
    if (r < 0) r += mod;
    return r;
}

mpz_class binomial(const mpz_class& lift, unsigned long k, unsigned long p, int e) {
    mpq_class acc(1);
    for (unsigned long i = 0; i < k; ++i) {
        acc *= mpq_class(lift - static_cast<long>(i), static_cast<long>(i) + 1);
        acc.canonicalize();
    }
    return reduce_rational(acc, p, e);
}

mpq_class log_partial_sum(const mpz_class& x_lift, unsigned long p, int target) {
    mpz_class z = x_lift - 1;
    if (z == 0) return mpq_class(0);
    long vz = mpz_val(z, p);
    if (vz < (p == 2 ? 2 : 1)) throw std::invalid_argument("oracle: not a 1-unit");
    mpq_class sum(0);
    mpz_class zpow(1);
    for (unsigned long k = 1;; ++k) {
        long lg = 0;
        for (mpz_class q = p; q <= static_cast<long>(k); q *= static_cast<long>(p)) ++lg;
        if (static_cast<long>(k) * vz - lg >= target) break;
        zpow *= z;
        mpq_class term(zpow, mpz_class(static_cast<long>(k)));
        term.canonicalize();
        if (k % 2 == 0) sum -= term; else sum += term;
    }
    return sum;
}

mpz_class padic_log(const mpz_class& x_lift, unsigned long p, int e) {
    return reduce_rational(log_partial_sum(x_lift, p, e), p, e);
}

mpz_class teichmuller(const mpz_class& x_lift, unsigned long p, int e) {
    const mpz_class mod = pow_ui(p, static_cast<unsigned long>(e));
    const mpz_class expo = pow_ui(p, static_cast<unsigned long>(e));
    mpz_class r;
    mpz_powm(r.get_mpz_t(), x_lift.get_mpz_t(), expo.get_mpz_t(), mod.get_mpz_t());
    return r;
}

mpz_class log_gamma(const mpz_class& x_lift, unsigned long p, int e, const mpz_class& kappa) {
    const int guard = 8;
    const mpz_class mod = pow_ui(p, static_cast<unsigned long>(e + guard));
    // projection <x> from the oracle's own Teichmuller route
    mpz_class proj;
    if (p == 2) {
        proj = x_lift % mod;
        if (x_lift % 4 != 1) proj = (mod - proj) % mod;
    } else {
        mpz_class om = teichmuller(x_lift, p, e + guard);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), om.get_mpz_t(), mod.get_mpz_t());
        proj = (x_lift * inv) % mod;
    }
    mpq_class num = log_partial_sum(proj, p, e + guard);
    mpq_class den = log_partial_sum(kappa % mod, p, e + guard);
    mpq_class ratio = num / den;
    ratio.canonicalize();
    return reduce_rational(ratio, p, e);
}

}  // namespace oracle
