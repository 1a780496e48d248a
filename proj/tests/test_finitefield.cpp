#include "doctest.h"

#include "frobsplit/finitefield.hpp"

using namespace frobsplit;

namespace {

FqElem el(const FqCtx& ctx, std::int64_t n) { return FqElem::from_int(ctx, n); }

// Independent scan for the canonical irreducible quadratic: enumerate
// monic t^2 + c1 t + c0 by the base-p value of (c0, c1) and return the
// first one without a root in F_p.
std::vector<std::uint64_t> scan_min_irreducible_quadratic(std::uint64_t p) {
    FqCtx ctx = FqContext::prime(p);
    for (std::uint64_t v = 0; v < p * p; ++v) {
        std::uint64_t c0 = v % p, c1 = v / p;
        bool has_root = false;
        for (std::uint64_t a = 0; a < p && !has_root; ++a) {
            FqElem x = el(ctx, static_cast<std::int64_t>(a));
            if ((x * x + el(ctx, static_cast<std::int64_t>(c1)) * x + el(ctx, static_cast<std::int64_t>(c0))).is_zero())
                has_root = true;
        }
        if (!has_root) return {c0, c1, 1};
    }
    return {};
}

} // namespace

TEST_CASE("prime validation") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS_AS(PrimeModulus(15), DomainError);
    CHECK_NOTHROW(PrimeModulus(101));
}

TEST_CASE("prime field arithmetic") {
    FqCtx f5 = FqContext::prime(5);
    CHECK(el(f5, 3) * el(f5, 4) == el(f5, 2)); // 12 mod 5

    FqCtx f3 = FqContext::prime(3);
    CHECK(el(f3, 2).inv() == el(f3, 2)); // 2*2 = 4 = 1

    CHECK((el(f5, 4) + el(f5, 3)) == el(f5, 2));
    CHECK((el(f5, 1) - el(f5, 3)) == el(f5, 3));
    CHECK((-el(f5, 2)) == el(f5, 3));
    CHECK(el(f5, 2) / el(f5, 3) == el(f5, 4)); // 4*3 = 12 = 2
    CHECK_THROWS_AS(el(f5, 1) / el(f5, 0), DomainError);
}

TEST_CASE("extension arithmetic with an explicit modulus") {
    // F_25 = F_5[t]/(t^2 - 2): t*t reduces to 2.
    FqCtx f25 = FqContext::with_modulus(5, {3, 0, 1});
    FqElem t = FqElem::from_coeffs(f25, {0, 1});
    CHECK(t * t == el(f25, 2));
    CHECK((t * t * t) == t * el(f25, 2));
    CHECK(t.inv() * t == FqElem::one(f25));
}

TEST_CASE("context mixing is a hard error") {
    FqCtx f5 = FqContext::prime(5);
    FqCtx f7 = FqContext::prime(7);
    CHECK_THROWS_AS(el(f5, 1) + el(f7, 1), ContextMismatchError);

    FqCtx a = FqContext::with_modulus(5, {3, 0, 1}); // t^2+3
    FqCtx b = FqContext::with_modulus(5, {2, 0, 1}); // t^2+2
    CHECK_THROWS_AS(FqElem::one(a) * FqElem::one(b), ContextMismatchError);
}

TEST_CASE("pow with large exponents") {
    FqCtx f5 = FqContext::prime(5);
    // 3^(2^40) = (3^4)^(2^38) = 1.
    CHECK(el(f5, 3).pow(std::uint64_t{1} << 40) == el(f5, 1));
    CHECK(el(f5, 0).pow(0) == el(f5, 1));
}

TEST_CASE("Frobenius fixed-field property, exhaustively on small fields") {
    for (auto [p, m] : {std::pair<std::uint64_t, std::uint32_t>{3, 2}, {5, 2}, {2, 4}, {7, 2}}) {
        FqCtx ctx = FqContext::extension(p, m);
        std::uint64_t q = ctx->order();
        // enumerate all elements by coefficient counter
        std::vector<std::uint64_t> digits(m, 0);
        for (std::uint64_t v = 0; v < q; ++v) {
            std::uint64_t rest = v;
            FqElem::Coeffs cs(m, 0);
            for (std::uint32_t i = 0; i < m; ++i) { cs[i] = rest % p; rest /= p; }
            FqElem a = FqElem::from_coeffs(ctx, cs);
            CHECK(a.pow(q) == a);
            if (!a.is_zero()) CHECK(a * a.inv() == FqElem::one(ctx));
        }
    }
}

TEST_CASE("find_irreducible is the canonical minimum") {
    CHECK(find_irreducible(2, 1).str() == "t");

    // Frozen from the independent quadratic scan: t^2+2 over F_5, t^2+1 over F_3.
    FqPoly g52 = find_irreducible(5, 2);
    CHECK(g52 == FqPoly::from_int_coeffs(FqContext::prime(5), {2, 0, 1}));
    std::vector<std::uint64_t> oracle5 = {2, 0, 1};
    CHECK(scan_min_irreducible_quadratic(5) == oracle5);

    FqPoly g32 = find_irreducible(3, 2);
    CHECK(g32 == FqPoly::from_int_coeffs(FqContext::prime(3), {1, 0, 1}));
    std::vector<std::uint64_t> oracle3 = {1, 0, 1};
    CHECK(scan_min_irreducible_quadratic(3) == oracle3);
}

TEST_CASE("irreducibles have no roots in proper subfields") {
    for (auto [p, m] : {std::pair<std::uint64_t, std::uint32_t>{2, 2}, {2, 4}, {3, 2}, {3, 4}, {5, 2}, {7, 3}}) {
        FqPoly g = find_irreducible(p, m);
        for (std::uint32_t k = 1; k < m; ++k) {
            if (m % k != 0) continue;
            CHECK(roots_in_ext(g, k).empty());
        }
        // ... and exactly m distinct roots in F_{p^m} itself.
        CHECK(roots_in_ext(g, m).size() == m);
    }
}

TEST_CASE("roots_in_ext on the spec-level examples") {
    FqCtx f3 = FqContext::prime(3);
    FqPoly g = FqPoly::from_int_coeffs(f3, {1, 1}); // mu + 1
    auto roots = roots_in_ext(g, 1);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == el(f3, 2));

    FqCtx f5 = FqContext::prime(5);
    FqPoly h = FqPoly::from_int_coeffs(f5, {1, 4, 1}); // mu^2 + 4mu + 1
    CHECK(roots_in_ext(h, 1).empty());

    auto roots25 = roots_in_ext(h, 2);
    REQUIRE(roots25.size() == 2);
    // Canonical F_25 has modulus t^2+2, so theta^2 = 3 and the roots are
    // 3 +- theta (discriminant 12 = 2, sqrt(2) = 2*theta).
    FqCtx f25 = roots25[0].context();
    CHECK(roots25[0] == FqElem::from_coeffs(f25, {3, 1}));
    CHECK(roots25[1] == FqElem::from_coeffs(f25, {3, 4}));
    for (const FqElem& r : roots25) {
        CHECK(h.eval(r).is_zero());
    }
    // No element of F_25 outside the returned set is a root.
    std::uint64_t found = 0;
    for (std::uint64_t v = 0; v < 25; ++v) {
        FqElem a = FqElem::from_coeffs(f25, {v % 5, v / 5});
        if (h.eval(a).is_zero()) ++found;
    }
    CHECK(found == roots25.size());
}

TEST_CASE("roots via equal-degree splitting beyond the exhaustive bound") {
    // p^2 = 1018081 just exceeds the 10^6 exhaustive bound, forcing the
    // splitting path.  x^2 - 2 has roots in F_p iff 2 is a QR mod p.
    std::uint64_t p = 1009;
    FqCtx fp = FqContext::prime(p);
    FqPoly g = FqPoly::from_int_coeffs(fp, {-2, 0, 1});
    auto roots = roots_in_ext(g, 2);
    REQUIRE(roots.size() == 2);
    for (const FqElem& r : roots) CHECK(g.eval(r).is_zero());
}

TEST_CASE("polynomial division, gcd, eval") {
    FqCtx f7 = FqContext::prime(7);
    FqPoly a = FqPoly::from_int_coeffs(f7, {1, 0, 2, 1});  // x^3+2x^2+1
    FqPoly b = FqPoly::from_int_coeffs(f7, {3, 1});        // x+3
    auto [quot, rem] = a.divmod(b);
    CHECK(quot * b + rem == a);
    CHECK(rem.degree() < b.degree());

    FqPoly c = a * b;
    CHECK(poly_gcd(c, b) == b.monic());
    CHECK(c.eval(el(f7, 4)) == a.eval(el(f7, 4)) * b.eval(el(f7, 4)));
}
