#include "iwasawa/invariants.hpp"

#include <stdexcept>

namespace iwasawa {

CertifiedNat mu_invariant(const TruncatedSeries& f) {
    std::optional<int> best;
    for (int i = 0; i < f.cap(); ++i) {
        const mpz_class& c = f.coeff_residue(i);
        if (c == 0) continue;
        mpz_class rest;
        int v = static_cast<int>(mpz_remove(rest.get_mpz_t(), c.get_mpz_t(),
                                            mpz_class(f.context()->prime()).get_mpz_t()));
        if (!best || v < *best) best = v;
        if (*best == 0) break;
    }
    if (best && *best < f.achieved_precision()) return {best, Certificate::conclusive};
    return {std::nullopt, Certificate::inconclusive};
}

CertifiedNat lambda_invariant(const TruncatedSeries& f) {
    CertifiedNat mu = mu_invariant(f);
    if (mu.certificate == Certificate::inconclusive)
        return {std::nullopt, Certificate::inconclusive};
    const mpz_class& witness = f.context()->prime_pow(*mu.value + 1);
    for (int i = 0; i < f.cap(); ++i) {
        const mpz_class& c = f.coeff_residue(i);
        if (c != 0 && !mpz_divisible_p(c.get_mpz_t(), witness.get_mpz_t()))
            return {i, Certificate::conclusive};
    }
    return {std::nullopt, Certificate::inconclusive};
}

InvariantReport invariant_report(const TruncatedSeries& f) {
    InvariantReport r;
    const auto& ctx = f.context();
    r.p = ctx->prime();
    r.n = ctx->precision();
    r.cap = f.cap();
    r.kappa_gamma = ctx->kappa_gamma_residue();

    CertifiedNat mu = mu_invariant(f);
    CertifiedNat lambda = lambda_invariant(f);
    VanishingOrder m = order_of_vanishing(f);
    r.mu = mu.value;
    r.lambda = lambda.value;
    r.vanishing_order = m.order;
    if (m.order) {
        r.leading = f.coeff(*m.order);
        if (*m.order + 1 < f.cap()) r.subleading = f.coeff(*m.order + 1);
    }
    r.certificate = (mu.certificate == Certificate::conclusive &&
                     lambda.certificate == Certificate::conclusive &&
                     m.order.has_value())
                        ? Certificate::conclusive
                        : Certificate::inconclusive;
    return r;
}

WeierstrassDecomposition weierstrass_prepare(const TruncatedSeries& f, int guard) {
    const auto& ctx = f.context();
    const unsigned long p = ctx->prime();
    const int cap = f.cap();

    CertifiedNat muc = mu_invariant(f);
    CertifiedNat lamc = lambda_invariant(f);
    if (muc.certificate == Certificate::inconclusive || lamc.certificate == Certificate::inconclusive)
        throw std::domain_error("weierstrass_prepare: inconclusive invariants, preparation refused");
    const int mu = *muc.value;
    const int lambda = *lamc.value;
    if (lambda >= cap - guard)
        throw std::domain_error("weierstrass_prepare: lambda too close to the cap");

    // g = f / p^mu, unit-normalized; work at the remaining precision.
    const int prec = f.achieved_precision() - mu;
    std::vector<mpz_class> g(static_cast<size_t>(cap));
    for (int i = 0; i < cap; ++i) g[static_cast<size_t>(i)] = f.coeff_residue(i) / ctx->prime_pow(mu);
    TruncatedSeries gs(ctx, cap, std::move(g), prec);

    // Mod-p data: Ubar = unit part of g shifted down by lambda, and its inverse.
    const mpz_class pz(p);
    std::vector<mpz_class> ubar(static_cast<size_t>(cap));
    for (int i = lambda; i < cap; ++i) ubar[static_cast<size_t>(i - lambda)] = gs.coeff_residue(i) % pz;
    TruncatedSeries Ubar(ctx, cap, ubar, 1);
    TruncatedSeries UbarInv = invert_unit(Ubar);

    // Digit-by-digit lifting of g = D * U from its mod-p solution.
    std::vector<mpz_class> dinit(static_cast<size_t>(cap));
    dinit[static_cast<size_t>(lambda)] = 1;
    TruncatedSeries D(ctx, cap, std::move(dinit), prec);
    TruncatedSeries U(ctx, cap, ubar, prec);

    for (int j = 1; j < prec; ++j) {
        TruncatedSeries r = gs - D * U;
        if (r.is_zero_residues()) break;
        // r = p^j * E; solve d*Ubar + T^lambda * u = E mod p with deg d < lambda.
        std::vector<mpz_class> e(static_cast<size_t>(cap));
        for (int i = 0; i < cap; ++i) {
            if (!mpz_divisible_p(r.coeff_residue(i).get_mpz_t(), ctx->prime_pow(j).get_mpz_t()))
                throw std::logic_error("weierstrass_prepare: digit lifting failed to stabilize");
            e[static_cast<size_t>(i)] = r.coeff_residue(i) / ctx->prime_pow(j);
        }
        TruncatedSeries E(ctx, cap, std::move(e), 1);
        TruncatedSeries C = UbarInv * E;
        std::vector<mpz_class> dlow(static_cast<size_t>(cap)), chigh(static_cast<size_t>(cap));
        for (int i = 0; i < lambda; ++i) dlow[static_cast<size_t>(i)] = C.coeff_residue(i);
        for (int i = lambda; i < cap; ++i) chigh[static_cast<size_t>(i - lambda)] = C.coeff_residue(i);
        TruncatedSeries dpart(ctx, cap, std::move(dlow), 1);
        TruncatedSeries upart = Ubar * TruncatedSeries(ctx, cap, std::move(chigh), 1);

        const mpz_class& pj = ctx->prime_pow(j);
        std::vector<mpz_class> dnew(static_cast<size_t>(cap)), unew(static_cast<size_t>(cap));
        for (int i = 0; i < cap; ++i) {
            dnew[static_cast<size_t>(i)] = D.coeff_residue(i) + pj * dpart.coeff_residue(i);
            unew[static_cast<size_t>(i)] = U.coeff_residue(i) + pj * upart.coeff_residue(i);
        }
        D = TruncatedSeries(ctx, cap, std::move(dnew), prec);
        U = TruncatedSeries(ctx, cap, std::move(unew), prec);
    }

    TruncatedSeries check = gs - D * U;
    if (!check.is_zero_residues())
        throw std::logic_error("weierstrass_prepare: recomposition mismatch after lifting");
    return {mu, D, U, Certificate::conclusive};
}

}  // namespace iwasawa
