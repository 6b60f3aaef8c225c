#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwasawa/harness.hpp"
#include "iwasawa/series.hpp"

using namespace iwasawa;

namespace {

constexpr int M = 24;

ContextPtr ctx3() { return PadicContext::make(3, 10); }

TruncatedSeries geometric(const ContextPtr& ctx, int cap) {
    // 1 - T + T^2 - ...
    std::vector<long> v;
    for (int i = 0; i < cap; ++i) v.push_back(i % 2 == 0 ? 1 : -1);
    return TruncatedSeries::from_integers(ctx, cap, v);
}

}  // namespace

TEST_CASE("ring operations") {
    auto ctx = ctx3();
    Rng rng(1);
    TruncatedSeries f = random_full_series(ctx, M, rng);
    CHECK((f + TruncatedSeries::zero(ctx, M)).bit_equal(f));
    CHECK((f * TruncatedSeries::from_integers(ctx, M, {1})).bit_equal(f));

    TruncatedSeries one_plus_T = TruncatedSeries::from_integers(ctx, M, {1, 1});
    CHECK((one_plus_T * geometric(ctx, M)).bit_equal(TruncatedSeries::from_integers(ctx, M, {1})));

    auto other = PadicContext::make(5, 10);
    CHECK_THROWS_AS(f + random_full_series(other, M, rng), std::invalid_argument);
}

TEST_CASE("compose") {
    auto ctx = ctx3();
    Rng rng(2);
    TruncatedSeries f = random_full_series(ctx, M, rng);
    CHECK(compose(f, TruncatedSeries::monomial(ctx, M, 1)).bit_equal(f));

    TruncatedSeries s = random_full_series(ctx, M, rng).shift(1);
    CHECK(compose(TruncatedSeries::monomial(ctx, M, 2), s).bit_equal(s * s));

    // 1 + sigma(T) = (1+T)^(-1)
    TruncatedSeries one_plus_T = TruncatedSeries::from_integers(ctx, M, {1, 1});
    CHECK(compose(one_plus_T, sigma_series(ctx, M)).bit_equal(invert_unit(one_plus_T)));

    CHECK_THROWS_AS(compose(f, one_plus_T), std::invalid_argument);
}

TEST_CASE("sigma") {
    auto ctx = ctx3();
    CHECK(sigma(TruncatedSeries::monomial(ctx, M, 1)).bit_equal(sigma_series(ctx, M)));
    TruncatedSeries c = TruncatedSeries::from_integers(ctx, M, {7});
    CHECK(sigma(c).bit_equal(c));

    Rng rng(3);
    for (int i = 0; i < 25; ++i) {
        TruncatedSeries f = random_full_series(ctx, M, rng);
        // the binomial transform and the Horner route agree bit for bit
        CHECK(sigma(f).bit_equal(compose(f, sigma_series(ctx, M))));
        CHECK(sigma(sigma(f)).bit_equal(f));
    }

    // multiplicativity and compatibility with inversion
    for (unsigned long p : {2ul, 3ul, 7ul}) {
        auto cc = PadicContext::make(p, 10);
        for (int i = 0; i < 10; ++i) {
            TruncatedSeries f = random_full_series(cc, M, rng);
            TruncatedSeries g = random_full_series(cc, M, rng);
            CHECK(sigma(f * g).bit_equal(sigma(f) * sigma(g)));
            TruncatedSeries u = random_unit_series(cc, M, rng);
            CHECK(invert_unit(sigma(u)).bit_equal(sigma(invert_unit(u))));
        }
    }
}

TEST_CASE("one_plus_T_pow") {
    auto ctx = ctx3();
    CHECK(one_plus_T_pow(mpz_class(0), ctx, M).bit_equal(TruncatedSeries::from_integers(ctx, M, {1})));
    CHECK(one_plus_T_pow(mpz_class(1), ctx, M).bit_equal(TruncatedSeries::from_integers(ctx, M, {1, 1})));
    CHECK(one_plus_T_pow(mpz_class(-1), ctx, M).bit_equal(geometric(ctx, M)));

    // integer exponents: exact homomorphism and sigma-inversion
    Rng rng(4);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto cc = PadicContext::make(p, 12);
        for (int i = 0; i < 10; ++i) {
            mpz_class a = rng.mpz_below(cc->modulus());
            mpz_class b = rng.mpz_below(cc->modulus());
            CHECK((one_plus_T_pow(a, cc, M) * one_plus_T_pow(b, cc, M))
                      .bit_equal(one_plus_T_pow(a + b, cc, M)));
            CHECK(sigma(one_plus_T_pow(a, cc, M)).bit_equal(one_plus_T_pow(-a, cc, M)));
        }
    }

    // p-adic exponents: same identities at the common achieved precision
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto cc = PadicContext::make(p, 12);
        for (int i = 0; i < 10; ++i) {
            PadicInt a(cc, rng.mpz_below(cc->modulus()), 12);
            PadicInt b(cc, rng.mpz_below(cc->modulus()), 12);
            CHECK((one_plus_T_pow(a, M) * one_plus_T_pow(b, M))
                      .equal_at_common_precision(one_plus_T_pow(a + b, M)));
            CHECK(sigma(one_plus_T_pow(a, M)).equal_at_common_precision(one_plus_T_pow(-a, M)));
        }
        // drift accounting: precision drops by binomial_drift(p, M-1)
        PadicInt a(cc, rng.mpz_below(cc->modulus()), 12);
        TruncatedSeries s = one_plus_T_pow(a, M);
        CHECK(s.achieved_precision() == 12 - binomial_drift(p, M - 1));

        // coefficients are the p-adic binomials of the exponent
        for (int k = 0; k < M; ++k)
            CHECK(s.coeff(k).equal_at_common_precision(padic_binomial(a, static_cast<unsigned long>(k))));
    }
}

TEST_CASE("invert_unit") {
    auto ctx = ctx3();
    TruncatedSeries one = TruncatedSeries::from_integers(ctx, M, {1});
    CHECK(invert_unit(one).bit_equal(one));
    CHECK(invert_unit(TruncatedSeries::from_integers(ctx, M, {1, 1})).bit_equal(geometric(ctx, M)));

    Rng rng(5);
    for (int i = 0; i < 25; ++i) {
        TruncatedSeries u = random_unit_series(ctx, M, rng);
        CHECK((invert_unit(u) * u).bit_equal(one));
    }
    CHECK_THROWS_AS(invert_unit(TruncatedSeries::monomial(ctx, M, 1)), std::domain_error);
    CHECK_THROWS_AS(invert_unit(TruncatedSeries::from_integers(ctx, M, {3, 1})), std::domain_error);
}

TEST_CASE("order of vanishing") {
    auto ctx = ctx3();
    TruncatedSeries f = TruncatedSeries::monomial(ctx, M, 3) * TruncatedSeries::from_integers(ctx, M, {1, 1});
    auto m = order_of_vanishing(f);
    REQUIRE(m.order.has_value());
    CHECK(*m.order == 3);
    CHECK(m.certificate == Certificate::conclusive);

    // p^N * T has no visible residue at precision N
    TruncatedSeries g = TruncatedSeries::monomial(ctx, M, 1) * PadicInt(ctx, ctx->prime_pow(10), 10);
    auto mg = order_of_vanishing(g);
    CHECK(mg.certificate == Certificate::inconclusive);
    CHECK_FALSE(mg.order.has_value());
}

TEST_CASE("comparison truncates to the lower precision") {
    auto ctx = ctx3();
    TruncatedSeries f = TruncatedSeries::from_integers(ctx, M, {1, 4});
    TruncatedSeries g = (TruncatedSeries::from_integers(ctx, M, {1, 4}) +
                         TruncatedSeries::monomial(ctx, M, 1) * PadicInt(ctx, ctx->prime_pow(6), 10))
                            .reduced_to(6);
    CHECK(g.achieved_precision() == 6);
    CHECK(f.equal_at_common_precision(g));
    CHECK_FALSE(f.bit_equal(g));
}
