#include "iwasawa/functional_equation.hpp"

#include <stdexcept>

namespace iwasawa {

const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::generic: return "generic";
        case Flavor::plus: return "plus";
        case Flavor::minus: return "minus";
    }
    return "?";
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

FEParams::FEParams(ContextPtr ctx, mpz_class q, int eps, PadicInt L, Flavor flavor)
    : ctx_(std::move(ctx)), q_(std::move(q)), eps_(eps), L_(std::move(L)), flavor_(flavor) {}

FEParams FEParams::make(const ContextPtr& ctx, const mpz_class& Q, int epsilon, Flavor flavor) {
    if (Q <= 0)
        throw std::invalid_argument("FEParams: tame level must be positive");
    if (mpz_divisible_ui_p(Q.get_mpz_t(), ctx->prime()))
        throw std::invalid_argument("FEParams: tame level must be coprime to p");
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("FEParams: epsilon must be +1 or -1");
    PadicInt L = log_gamma(PadicInt::from_integer(ctx, Q));
    return FEParams(ctx, Q, epsilon, std::move(L), flavor);
}

CurveContext CurveContext::make(const mpz_class& conductor, unsigned long p, long a_p, int sign) {
    if (conductor <= 0)
        throw std::invalid_argument("CurveContext: conductor must be positive");
    if (mpz_divisible_ui_p(conductor.get_mpz_t(), p))
        throw std::invalid_argument("CurveContext: p must not divide the conductor");
    if (a_p * a_p > static_cast<long>(4 * p))
        throw std::invalid_argument("CurveContext: a_p violates the Hasse bound");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("CurveContext: sign must be +1 or -1");
    return CurveContext{conductor, p, a_p, sign};
}

PadicInt w_exponent(Flavor flavor, const ContextPtr& ctx) {
    if (flavor == Flavor::generic)
        throw std::invalid_argument("w_exponent: flavor must be plus or minus");
    PadicInt p1 = PadicInt::from_integer(ctx, static_cast<long>(ctx->prime()) + 1);
    PadicInt inv = p1.inverse();
    if (flavor == Flavor::plus)
        return PadicInt::from_integer(ctx, static_cast<long>(ctx->prime())) * inv;
    return inv;
}

namespace {

// Coherent integer lifts of the W exponents, carried with enough guard
// digits that binomial expansions of the lift agree with those of the true
// p-adic exponent through p^N (the lift ambiguity costs binomial_drift
// digits). what(minus) = 1 - what(plus), so the two exponents sum to 1
// exactly and W+ * W- = 1 + T holds bit for bit.
mpz_class w_exponent_lift(Flavor flavor, const ContextPtr& ctx, int cap) {
    int guard = binomial_drift(ctx->prime(), static_cast<unsigned long>(cap > 1 ? cap - 1 : 1)) + 1;
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), ctx->prime(),
                  static_cast<unsigned long>(ctx->precision() + guard));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(static_cast<long>(ctx->prime()) + 1).get_mpz_t(),
               mod.get_mpz_t());
    mpz_class wplus = static_cast<long>(ctx->prime()) * inv % mod;
    if (flavor == Flavor::plus) return wplus;
    return mpz_class(1) - wplus;
}

}  // namespace

TruncatedSeries w_series(Flavor flavor, const ContextPtr& ctx, int cap) {
    if (flavor == Flavor::generic)
        throw std::invalid_argument("w_series: flavor must be plus or minus");
    return one_plus_T_pow(w_exponent_lift(flavor, ctx, cap), ctx, cap);
}

TruncatedSeries w_series_product(Flavor flavor, const ContextPtr& ctx, int cap) {
    if (flavor == Flavor::generic)
        throw std::invalid_argument("w_series_product: flavor must be plus or minus");
    const unsigned long p = ctx->prime();
    const int n = ctx->precision();
    int logM = binomial_drift(p, static_cast<unsigned long>(cap));
    int J = (n + logM + 1 + 1) / 2;  // ceil((N + floor(log_p M) + 1) / 2)

    TruncatedSeries acc = TruncatedSeries::from_integers(ctx, cap, {1});
    mpz_class pj, expo;
    if (flavor == Flavor::plus) {
        for (int j = 1; j <= J; ++j) {
            mpz_ui_pow_ui(pj.get_mpz_t(), p, static_cast<unsigned long>(2 * j - 1));
            expo = -pj * static_cast<long>(p - 1);
            acc = acc * one_plus_T_pow(expo, ctx, cap);
        }
        return acc;
    }
    if (p == 2) {
        acc = acc * one_plus_T_pow(mpz_class(-1), ctx, cap);
        for (int j = 2; j <= J; ++j) {
            mpz_ui_pow_ui(pj.get_mpz_t(), p, static_cast<unsigned long>(2 * j - 2));
            expo = -pj;
            acc = acc * one_plus_T_pow(expo, ctx, cap);
        }
        return acc;
    }
    for (int j = 1; j <= J; ++j) {
        mpz_ui_pow_ui(pj.get_mpz_t(), p, static_cast<unsigned long>(2 * j - 2));
        expo = -pj * static_cast<long>(p - 1);
        acc = acc * one_plus_T_pow(expo, ctx, cap);
    }
    return acc;
}

namespace {

TruncatedSeries phi_prefactor(const FEParams& params, int cap) {
    const auto& ctx = params.context();
    TruncatedSeries pre = one_plus_T_pow(-params.exponent().residue(), ctx, cap);
    if (params.flavor() != Flavor::generic)
        pre = pre * w_series(params.flavor(), ctx, cap);
    return pre;
}

}  // namespace

TruncatedSeries phi(const TruncatedSeries& h, const FEParams& params) {
    if (!h.context()->same_as(*params.context()))
        throw std::invalid_argument("phi: series and params contexts differ");
    TruncatedSeries out = phi_prefactor(params, h.cap()) * sigma(h);
    if (params.epsilon() == 1) out = -out;
    return out;
}

TruncatedSeries symmetrize(const TruncatedSeries& h, const FEParams& params) {
    return h + phi(h, params);
}

int fe_digit_budget(const ContextPtr& ctx, int cap) {
    return binomial_drift(ctx->prime(), static_cast<unsigned long>(cap > 1 ? cap - 1 : 1));
}

FECheckReport check_fe(const TruncatedSeries& f, const FEParams& params) {
    TruncatedSeries diff = f - phi(f, params);
    int budget = std::min(diff.achieved_precision(),
                          params.exponent().precision() - fe_digit_budget(f.context(), f.cap()));
    budget = std::max(budget, 0);
    TruncatedSeries probe = diff.reduced_to(budget);
    return {probe.is_zero_residues() && budget > 0, budget, f.cap()};
}

ParityReport parity_check(const TruncatedSeries& f, const FEParams& params) {
    ParityReport r;
    r.fe = check_fe(f, params);
    r.predicted_parity = (params.epsilon() == -1) ? 0 : 1;
    VanishingOrder m = order_of_vanishing(f);
    r.vanishing_order = m.order;
    if (!r.fe.pass) {
        r.status = CheckStatus::fail;
        return r;
    }
    if (!m.order) {
        r.status = CheckStatus::inconclusive;
        return r;
    }
    r.status = (*m.order % 2 == r.predicted_parity) ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckStatus parity_agreement(const TruncatedSeries& f_sharp, const TruncatedSeries& f_flat,
                             const FEParams& params) {
    ParityReport a = parity_check(f_sharp, params);
    ParityReport b = parity_check(f_flat, params);
    if (a.status == CheckStatus::fail || b.status == CheckStatus::fail) return CheckStatus::fail;
    if (a.status == CheckStatus::inconclusive || b.status == CheckStatus::inconclusive)
        return CheckStatus::inconclusive;
    return (*a.vanishing_order % 2 == *b.vanishing_order % 2) ? CheckStatus::pass
                                                              : CheckStatus::fail;
}

namespace {

// Shared tail of the two Taylor checkers: verify 2b + a*(shift + m) = 0,
// reporting the digits of b + (a/2)(shift + m) that are verified (one
// fewer than the residual's precision when p = 2).
TaylorReport taylor_core(const TruncatedSeries& f, const FEParams& params, const PadicInt& shift) {
    TaylorReport r;
    r.fe = check_fe(f, params);
    VanishingOrder m = order_of_vanishing(f);
    r.vanishing_order = m.order;
    r.digits_verified = 0;
    if (!r.fe.pass) {
        r.status = CheckStatus::fail;
        return r;
    }
    if (!m.order) {
        r.status = CheckStatus::inconclusive;
        return r;
    }
    const auto& ctx = f.context();
    PadicInt a = f.coeff(*m.order);
    r.leading = a;
    if (*m.order + 1 >= f.cap()) {
        r.status = CheckStatus::inconclusive;  // sub-leading term outside the cap
        return r;
    }
    PadicInt b = f.coeff(*m.order + 1);
    r.subleading = b;

    PadicInt two = PadicInt::from_integer(ctx, 2);
    PadicInt mval = PadicInt::from_integer(ctx, static_cast<long>(*m.order));
    PadicInt residual = two * b + a * (shift + mval);
    r.residual = residual;
    int halving_cost = (ctx->prime() == 2) ? 1 : 0;
    r.digits_verified = std::max(residual.precision() - halving_cost, 0);
    r.status = (residual.is_zero_residue() && r.digits_verified > 0) ? CheckStatus::pass
                                                                     : CheckStatus::fail;
    return r;
}

}  // namespace

TaylorReport taylor_relation(const TruncatedSeries& f, const FEParams& params) {
    return taylor_core(f, params, params.exponent());
}

PadicInt f_pm_derivative_at_zero(Flavor flavor, const CurveContext& curve, const ContextPtr& ctx) {
    if (flavor == Flavor::generic)
        throw std::invalid_argument("f_pm_derivative_at_zero: flavor must be plus or minus");
    if (ctx->prime() != curve.p)
        throw std::invalid_argument("f_pm_derivative_at_zero: context prime differs from curve");
    PadicInt L = log_gamma(PadicInt::from_integer(ctx, curve.conductor));
    PadicInt closed = -L + w_exponent(flavor, ctx);

    // Independent route: the T-coefficient of (1+T)^(-L) * W.
    TruncatedSeries F =
        one_plus_T_pow(-L.residue(), ctx, 4) * w_series(flavor, ctx, 4);
    PadicInt numeric = F.coeff(1);
    if (!closed.equal_at_common_precision(numeric))
        throw std::logic_error("f_pm_derivative_at_zero: closed form and series coefficient differ");
    return closed;
}

TaylorReport pm_taylor_relation(const TruncatedSeries& f, Flavor flavor, const CurveContext& curve,
                                const ContextPtr& ctx) {
    if (flavor == Flavor::generic)
        throw std::invalid_argument("pm_taylor_relation: flavor must be plus or minus");
    if (curve.a_p != 0)
        throw std::invalid_argument("pm_taylor_relation: a_p must be 0 for the plus/minus theory");
    FEParams params = FEParams::make(ctx, curve.conductor, curve.sign, flavor);
    PadicInt shift = params.exponent() - w_exponent(flavor, ctx);
    return taylor_core(f, params, shift);
}

}  // namespace iwasawa
