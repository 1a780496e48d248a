#include "doctest.h"

#include <random>

#include "frobsplit/splitcrit.hpp"

using namespace frobsplit;

namespace {

FqElem el(const FqCtx& ctx, std::int64_t n) { return FqElem::from_int(ctx, n); }

DivisorP1 points_with_coeff(const FqCtx& ctx, const std::vector<std::int64_t>& finite,
                            bool with_inf, const Rat& coeff) {
    DivisorP1 d(ctx);
    if (with_inf) d.add(P1Point::infinity(ctx), coeff);
    for (std::int64_t v : finite) d.add(P1Point::finite(el(ctx, v)), coeff);
    return d;
}

// Legendre cubic y^2 z - x(x-z)(x-lambda z) in the context of lambda.
SparsePoly legendre_cubic(const FqElem& lambda) {
    const FqCtx& ctx = lambda.context();
    SparsePoly f(ctx, {"x", "y", "z"});
    auto mono = [](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        Monomial m = Monomial::unit(3);
        m.e[0] = a; m.e[1] = b; m.e[2] = c;
        return m;
    };
    // y^2 z - x^3 + (1+lambda) x^2 z - lambda x z^2
    f.add_term(mono(0, 2, 1), FqElem::one(ctx));
    f.add_term(mono(3, 0, 0), -FqElem::one(ctx));
    f.add_term(mono(2, 0, 1), FqElem::one(ctx) + lambda);
    f.add_term(mono(1, 0, 2), -lambda);
    return f;
}

// Dense-expansion oracle from the four-point lemma: the coefficient of x^n
// in (x+1)^n (x+mu)^n, computed with plain univariate products.
bool lemma_coefficient_nonzero(std::uint64_t p, const FqElem& mu) {
    const FqCtx& ctx = mu.context();
    std::uint64_t n = (p - 1) / 2;
    FqPoly a = FqPoly::from_coeffs(ctx, {FqElem::one(ctx), FqElem::one(ctx)});
    FqPoly b = FqPoly::from_coeffs(ctx, {mu, FqElem::one(ctx)});
    FqPoly acc = FqPoly::constant(FqElem::one(ctx));
    for (std::uint64_t i = 0; i < n; ++i) acc = acc * a;
    for (std::uint64_t i = 0; i < n; ++i) acc = acc * b;
    return !acc.coeff(n).is_zero();
}

} // namespace

TEST_CASE("level splitting on the lemma examples") {
    FqCtx f3 = FqContext::prime(3);
    DivisorP1 cfg = points_with_coeff(f3, {0, -1, -2}, true, Rat(1, 2));
    CHECK_FALSE(level_split_test(3, 1, cfg));

    FqCtx f5 = FqContext::prime(5);
    DivisorP1 one_pt(f5);
    one_pt.add(P1Point::finite(el(f5, 0)), Rat(1));
    CHECK(level_split_test(5, 1, one_pt));

    DivisorP1 zero(f5);
    CHECK(level_split_test(5, 1, zero));

    // p = 2: every half-configuration of four distinct points is
    // non-split already at level 1.
    FqCtx f4 = FqContext::extension(2, 2);
    DivisorP1 cfg2(f4);
    cfg2.add(P1Point::infinity(f4), Rat(1, 2));
    cfg2.add(P1Point::finite(el(f4, 0)), Rat(1, 2));
    cfg2.add(P1Point::finite(el(f4, 1)), Rat(1, 2));
    cfg2.add(P1Point::finite(FqElem::from_coeffs(f4, {0, 1})), Rat(1, 2));
    CHECK_FALSE(level_split_test(2, 1, cfg2));
}

TEST_CASE("splitting witness detail") {
    FqCtx f5 = FqContext::prime(5);
    DivisorP1 one_pt(f5);
    one_pt.add(P1Point::infinity(f5), Rat(1));
    SplitWitness w = level_split_witness(5, 1, one_pt);
    CHECK(w.split);
    REQUIRE(w.monomial.has_value());
    CHECK(w.monomial->first == 0);
    CHECK(w.monomial->second == 4);

    DivisorP1 bad(f5);
    bad.add(P1Point::finite(el(f5, 0)), Rat(3, 2));
    CHECK_THROWS_AS(level_split_test(5, 1, bad), DomainError);
}

TEST_CASE("general criterion matches the coefficient expansion of the lemma") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        FqCtx fp = FqContext::prime(p);
        for (std::uint64_t m = 2; m < p; ++m) { // mu not in {0, 1}
            FqElem mu = el(fp, static_cast<std::int64_t>(m));
            DivisorP1 cfg = half_configuration(fp, mu);
            CHECK(level_split_test(p, 1, cfg) == lemma_coefficient_nonzero(p, mu));
        }
    }
}

TEST_CASE("lemma polynomial") {
    CHECK(lemma_polynomial(3) == FqPoly::from_int_coeffs(FqContext::prime(3), {1, 1}));
    CHECK(lemma_polynomial(5) == FqPoly::from_int_coeffs(FqContext::prime(5), {1, 4, 1}));
    CHECK(lemma_polynomial(7) == FqPoly::from_int_coeffs(FqContext::prime(7), {1, 2, 2, 1}));
    CHECK_THROWS_AS(lemma_polynomial(2), DomainError);

    // Pascal-triangle oracle: coefficients are C(n,i)^2 mod p; the
    // mu^(n-1) coefficient is n^2 and the vector is palindromic.
    for (std::uint64_t p = 3; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t n = (p - 1) / 2;
        std::vector<std::vector<std::uint64_t>> pascal(n + 1);
        for (std::uint64_t r = 0; r <= n; ++r) {
            pascal[r].assign(r + 1, 1);
            for (std::uint64_t c = 1; c < r; ++c)
                pascal[r][c] = (pascal[r - 1][c - 1] + pascal[r - 1][c]) % p;
        }
        FqPoly H = lemma_polynomial(p);
        REQUIRE(H.degree() == static_cast<std::int64_t>(n));
        for (std::uint64_t i = 0; i <= n; ++i) {
            std::uint64_t ci = pascal[n][i] * pascal[n][i] % p;
            CHECK(H.coeff(i).coeff(0) == ci);
            CHECK(H.coeff(i) == H.coeff(n - i));
        }
        CHECK(H.coeff(n - 1).coeff(0) == n * n % p);
        CHECK(H.coeff(0).coeff(0) == 1);
    }
}

TEST_CASE("mu search") {
    MuResult m3 = find_nonsplit_mu(3);
    REQUIRE(m3.mu.has_value());
    CHECK(m3.mu->coeff(0) == 2);

    MuResult m7 = find_nonsplit_mu(7);
    REQUIRE(m7.mu.has_value());
    CHECK(m7.mu->coeff(0) == 6); // the harmonic root -1

    MuResult m5 = find_nonsplit_mu(5);
    REQUIRE(m5.mu.has_value());
    CHECK(m5.mu->context()->degree() == 2); // no root below F_25
    CHECK(lemma_polynomial(5).eval(*m5.mu).is_zero());

    MuResult m2 = find_nonsplit_mu(2);
    CHECK(m2.any_choice);
    CHECK_FALSE(m2.mu.has_value());
}

TEST_CASE("Hasse invariant or point count: supersingular examples") {
    FqCtx f7 = FqContext::prime(7);
    CHECK(hasse_invariant(7, legendre_cubic(el(f7, 6))).is_zero());
    CHECK(point_count_legendre(7, el(f7, 6)) == 8);

    FqCtx f5 = FqContext::prime(5);
    // H_5(2) = 1 + 8 + 4 = 13 = 3 mod 5: ordinary.
    CHECK_FALSE(hasse_invariant(5, legendre_cubic(el(f5, 2))).is_zero());
    CHECK(point_count_legendre(5, el(f5, 2)) != 6);

    CHECK_THROWS_AS(point_count_legendre(5, el(f5, 1)), DomainError);
    CHECK_THROWS_AS(hasse_invariant(3, legendre_cubic(el(FqContext::prime(3), 2))), DomainError);
}

TEST_CASE("Hasse invariant equals the lemma polynomial up to a global sign") {
    // As a function of lambda the (xyz)^(p-1) coefficient of the Legendre
    // cubic power is (-1)^n sum C(n,i)^2 lambda^i; verified pointwise at
    // every lambda, which pins the polynomial since deg <= n < p.
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        FqCtx fp = FqContext::prime(p);
        FqPoly H = lemma_polynomial(p);
        std::uint64_t n = (p - 1) / 2;
        FqElem sign = el(fp, n % 2 == 0 ? 1 : -1);
        for (std::uint64_t lam = 0; lam < p; ++lam) {
            SparsePoly cubic = legendre_cubic(el(fp, static_cast<std::int64_t>(lam)));
            SparsePoly power = pow_mod_frobpower(cubic, p - 1, p);
            Monomial target = Monomial::unit(3);
            target.e[0] = target.e[1] = target.e[2] = static_cast<std::uint32_t>(p - 1);
            FqElem raw = power.coefficient_of(target);
            CHECK(raw == sign * H.eval(el(fp, static_cast<std::int64_t>(lam))));
        }
    }
}

TEST_CASE("Deuring triangle at small primes") {
    for (std::uint64_t p : {5ull, 7ull, 11ull}) {
        FqCtx fp = FqContext::prime(p);
        for (std::uint64_t lam = 2; lam < p; ++lam) {
            FqElem lambda = el(fp, static_cast<std::int64_t>(lam));
            bool ss_hasse = hasse_invariant(p, legendre_cubic(lambda)).is_zero();
            bool ss_count = point_count_legendre(p, lambda) == p + 1;
            DivisorP1 cfg = points_with_coeff(fp, {0, 1, static_cast<std::int64_t>(lam)}, true, Rat(1, 2));
            bool nonsplit = !level_split_test(p, 1, cfg);
            DivisorP1 matched = half_configuration(fp, lambda);
            bool nonsplit_matched = !level_split_test(p, 1, matched);
            CHECK(ss_hasse == ss_count);
            CHECK(ss_hasse == nonsplit);
            CHECK(ss_hasse == nonsplit_matched);
        }
    }
}

TEST_CASE("Fedder hypersurface test") {
    FqCtx f5 = FqContext::prime(5);
    SparsePoly brieskorn(f5, {"x", "y", "z"});
    {
        Monomial a = Monomial::unit(3), b = Monomial::unit(3), c = Monomial::unit(3);
        a.e[0] = 2; b.e[1] = 3; c.e[2] = 5;
        brieskorn.add_term(a, FqElem::one(f5));
        brieskorn.add_term(b, FqElem::one(f5));
        brieskorn.add_term(c, FqElem::one(f5));
    }
    CHECK_FALSE(fedder_hypersurface(5, brieskorn));

    SparsePoly xy(f5, {"x", "y"});
    {
        Monomial m = Monomial::unit(2);
        m.e[0] = m.e[1] = 1;
        xy.add_term(m, FqElem::one(f5));
    }
    CHECK(fedder_hypersurface(5, xy));

    FqCtx f2 = FqContext::prime(2);
    SparsePoly fermat(f2, {"x", "y", "z"});
    {
        Monomial a = Monomial::unit(3), b = Monomial::unit(3), c = Monomial::unit(3);
        a.e[0] = 3; b.e[1] = 3; c.e[2] = 3;
        fermat.add_term(a, FqElem::one(f2));
        fermat.add_term(b, FqElem::one(f2));
        fermat.add_term(c, FqElem::one(f2));
    }
    CHECK_FALSE(fedder_hypersurface(2, fermat));

    SparsePoly with_constant = brieskorn + SparsePoly::constant(f5, {"x", "y", "z"}, FqElem::one(f5));
    CHECK_THROWS_AS(fedder_hypersurface(5, with_constant), DomainError);
}

TEST_CASE("nu examples") {
    FqCtx f5 = FqContext::prime(5);
    DivisorP1 zero5(f5);
    DivisorP1 pt(f5);
    pt.add(P1Point::finite(el(f5, 0)), Rat(1));
    CHECK(nu(5, 1, zero5, pt) == 4);
    CHECK(nu(5, 2, zero5, pt) == 24);

    // The reduced sum of the non-split half-configuration's four points
    // at p = 3: s = 1 is exactly the lemma configuration, already
    // non-split, so the scan stops at s = 0.
    FqCtx f3 = FqContext::prime(3);
    DivisorP1 zero3(f3);
    DivisorP1 four = points_with_coeff(f3, {0, -1, -2}, true, Rat(1));
    CHECK_FALSE(level_split_test(3, 1, points_with_coeff(f3, {0, -1, -2}, true, Rat(1, 2))));
    CHECK(nu(3, 1, zero3, four) == 0);
}

TEST_CASE("nu bracketing at the known threshold c = 1") {
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        FqCtx fp = FqContext::prime(p);
        DivisorP1 zero(fp);
        DivisorP1 pt(fp);
        pt.add(P1Point::finite(el(fp, 1)), Rat(1));
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= 3; ++e) {
            q *= p;
            std::int64_t v = nu(p, e, zero, pt);
            std::int64_t qc = static_cast<std::int64_t>(q) - 1; // (p^e-1)*c with c = 1
            CHECK(v <= qc);
            CHECK(qc <= v + 1);
            CHECK((v == qc || v == qc - 1));
        }
    }
}

TEST_CASE("fst interval examples") {
    FqCtx f5 = FqContext::prime(5);
    DivisorP1 zero(f5);
    DivisorP1 pt(f5);
    pt.add(P1Point::finite(el(f5, 0)), Rat(1));
    FstInterval iv = fst_bounds(5, zero, pt, 2);
    CHECK(iv.lower == Rat(1));
    CHECK(iv.upper == Rat(25, 24));
    REQUIRE(iv.per_e.size() == 2);
    CHECK(iv.per_e[0].second == 4);
    CHECK(iv.per_e[1].second == 24);

    FqCtx f3 = FqContext::prime(3);
    DivisorP1 zero3(f3);
    DivisorP1 four(f3);
    four.add(P1Point::infinity(f3), Rat(1));
    four.add(P1Point::finite(el(f3, 0)), Rat(1));
    four.add(P1Point::finite(el(f3, -1)), Rat(1));
    four.add(P1Point::finite(el(f3, -2)), Rat(1));
    FstInterval iv3 = fst_bounds(3, zero3, four, 1);
    CHECK(iv3.upper == Rat(1, 2)); // nu(1) = 0 for the non-split configuration

    DivisorP1 empty(f3);
    CHECK_THROWS_AS(fst_bounds(3, zero3, empty, 2), DomainError);
}

TEST_CASE("fst intervals are nested in e_max") {
    std::mt19937_64 rng(5150);
    int done = 0;
    const std::uint64_t primes[] = {3, 5, 7};
    while (done < 20) {
        std::uint64_t p = primes[done % 3];
        FqCtx fp = FqContext::prime(p);
        std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(p) - 1);
        std::uniform_int_distribution<int> coin(0, 1);
        DivisorP1 delta(fp);
        if (coin(rng)) delta.add(P1Point::finite(el(fp, pick(rng))), Rat(1, 2));
        DivisorP1 d(fp);
        std::int64_t a = pick(rng), b = pick(rng);
        d.add(P1Point::finite(el(fp, a)), Rat(1 + coin(rng)));
        if (b != a) d.add(P1Point::finite(el(fp, b)), Rat(1));
        try {
            FstInterval small = fst_bounds(p, delta, d, 2);
            FstInterval big = fst_bounds(p, delta, d, 3);
            CHECK(big.lower >= small.lower);
            CHECK(big.upper <= small.upper);
            CHECK(big.lower <= big.upper);
            ++done;
        } catch (const DomainError&) {
            // base pair non-split for this draw; resample
        }
    }
}

TEST_CASE("splitting is monotone in the divisor") {
    std::mt19937_64 rng(99);
    const std::uint64_t primes[] = {3, 5, 7};
    for (int trial = 0; trial < 60; ++trial) {
        std::uint64_t p = primes[trial % 3];
        FqCtx fp = FqContext::prime(p);
        std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(p) - 1);
        std::uniform_int_distribution<int> num(0, 2);
        std::vector<std::int64_t> pts;
        for (std::int64_t v = 0; v < static_cast<std::int64_t>(p) && pts.size() < 3; ++v) pts.push_back(v);
        DivisorP1 big(fp), small(fp);
        bool small_nonzero = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rat large(num(rng), 2); // 0, 1/2, 1
            Rat lesser = large > 0 ? large - Rat(1, 2) : large;
            if (large > 0) big.add(P1Point::finite(el(fp, pts[i])), large);
            if (lesser > 0) {
                small.add(P1Point::finite(el(fp, pts[i])), lesser);
                small_nonzero = true;
            }
        }
        (void)small_nonzero;
        std::uint32_t e = 1 + trial % 2;
        if (level_split_test(p, e, big)) CHECK(level_split_test(p, e, small));
    }
}
