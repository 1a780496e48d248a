#include "doctest.h"

#include <random>

#include "frobsplit/surfcalc.hpp"

using namespace frobsplit;

namespace {

RatMat mat(const std::vector<std::vector<int>>& rows) {
    RatMat out;
    for (const auto& r : rows) {
        RatVec row;
        for (int v : r) row.push_back(Rat(v));
        out.push_back(row);
    }
    return out;
}

// Characteristic-polynomial oracle (Faddeev-LeVerrier): a symmetric
// rational matrix is negative definite iff det(xI - A) has every
// coefficient strictly positive (all roots real and negative).
std::vector<Rat> char_poly(const RatMat& a) {
    const std::size_t n = a.size();
    RatMat m(n, RatVec(n, Rat(0)));
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMat am = a;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            // am = a * (previous am + c_{n-k+1} I)
            RatMat tmp = m;
            RatMat prod(n, RatVec(n, Rat(0)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Rat s = 0;
                    for (std::size_t t = 0; t < n; ++t) s += a[i][t] * tmp[t][j];
                    prod[i][j] = s;
                }
            am = prod;
        }
        Rat trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
        c[n - k] = -trace / Rat(Int(k));
        m = am;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k];
    }
    return c;
}

bool negdef_oracle(const RatMat& a) {
    for (const Rat& coeff : char_poly(a))
        if (coeff <= 0) return false;
    return true;
}

} // namespace

TEST_CASE("negative definiteness agrees with the characteristic-polynomial oracle") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = dim(rng);
        RatMat g(n, RatVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                g[i][j] = Rat(entry(rng));
                g[j][i] = g[i][j];
            }
        if (trial % 3 == 0) {
            // guaranteed negative definite: -(M^T M + I)
            RatMat m(n, RatVec(n, Rat(0)));
            for (auto& row : m)
                for (auto& v : row) v = Rat(entry(rng));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Rat s = i == j ? Rat(1) : Rat(0);
                    for (std::size_t t = 0; t < n; ++t) s += m[t][i] * m[t][j];
                    g[i][j] = -s;
                }
        }
        CHECK(is_negative_definite(g) == negdef_oracle(g));
    }
}

TEST_CASE("inertia of small matrices") {
    CHECK(symmetric_inertia(mat({{0, 1}, {1, 0}})) == Inertia{1, 1, 0});
    CHECK(symmetric_inertia(mat({{-2, 1}, {1, -2}})) == Inertia{0, 2, 0});
    CHECK(symmetric_inertia(mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}})) == Inertia{1, 1, 1});
}

TEST_CASE("P1xP1 model basics") {
    SurfaceModel m = p1xp1_model();
    const RatVec& c = m.tracked_class("C").coords;
    CHECK(m.pair(c, c) == 2);
    CHECK(m.pair(m.canonical(), c) == -4); // adjunction: K.C + C^2 = -2
    Inertia sig = symmetric_inertia(m.gram());
    CHECK(sig == Inertia{1, 1, 0});
}

TEST_CASE("blow-up arithmetic") {
    SurfaceModel m = p1xp1_model();
    // blow up a point on C and F1 (their intersection)
    SurfaceModel up = blow_up(m, {{"C", 1}, {"F1", 1}}, "E");
    const RatVec& c = up.tracked_class("C").coords;
    const RatVec& f1 = up.tracked_class("F1").coords;
    const RatVec& e = up.tracked_class("E").coords;
    CHECK(up.pair(c, c) == 2 - 1);
    CHECK(up.pair(f1, f1) == -1);
    CHECK(up.pair(c, f1) == 1 - 1);  // C.F1 - m_C m_F1
    CHECK(up.pair(e, e) == -1);
    CHECK(up.pair(c, e) == 1);
    CHECK(up.pair(up.canonical(), up.canonical()) ==
          m.pair(m.canonical(), m.canonical()) - 1);

    // blow up away from all tracked curves: self-intersections unchanged
    SurfaceModel off = blow_up(m, {}, "E0");
    for (const CurveClass& t : m.tracked())
        CHECK(off.pair(off.tracked_class(t.label).coords, off.tracked_class(t.label).coords) ==
              m.pair(t.coords, t.coords));

    // adjunction bookkeeping survives: K.T + T^2 = -2 for the rational curves
    for (const char* label : {"C", "F1", "E"})
        CHECK(up.pair(up.canonical(), up.tracked_class(label).coords) +
                  up.pair(up.tracked_class(label).coords, up.tracked_class(label).coords) ==
              -2);
}

TEST_CASE("contraction of a single (-1)-curve") {
    SurfaceModel m = p1xp1_model();
    SurfaceModel up = blow_up(m, {{"C", 1}, {"F1", 1}}, "E");
    ContractionData cd = contract(up, {"E"});
    CHECK(cd.target.rank() == 2);
    REQUIRE(cd.discrepancies.size() == 1);
    CHECK(cd.discrepancies[0] == 1);

    // projection formula
    const RatVec& c = up.tracked_class("C").coords;
    const RatVec& f2 = up.tracked_class("F2").coords;
    RatVec pc = cd.project(c);
    CHECK(up.pair(pc, up.tracked_class("E").coords) == 0);
    CHECK(up.pair(cd.project(c), cd.project(f2)) ==
          cd.target.pair(cd.pushforward(c), cd.pushforward(f2)));

    // pullback of a pushforward is the projection
    CHECK(cd.pullback(cd.pushforward(c)) == cd.project(c));

    // different along C at the image of a smooth point: the cluster is
    // met but carries coefficient 0 (direct adjunction on the small model).
    auto diff = different_coefficients(cd, "C");
    REQUIRE(diff.size() == 1);
    CHECK(diff.begin()->second == 0);
}

TEST_CASE("contraction requires negative definiteness") {
    SurfaceModel m = p1xp1_model();
    CHECK_THROWS_AS(contract(m, {"C"}), DomainError); // C^2 = 2 > 0
    // no-op contraction is legal and exact
    ContractionData cd = contract(m, {});
    CHECK(cd.target.rank() == 2);
    CHECK(different_coefficients(cd, "C").empty());
}

TEST_CASE("positivity reports") {
    SurfaceModel m = p1xp1_model();
    SurfaceModel up = blow_up(m, {{"C", 1}, {"F1", 1}}, "E");
    PositivityReport bad = positivity_check(up, up.tracked_class("E"));
    CHECK_FALSE(bad.all_positive);
    CHECK(bad.self_intersection == -1);
}

TEST_CASE("del Pezzo tower identities for n = 4..12") {
    for (std::uint64_t n = 4; n <= 12; ++n) {
        TowerReport r = build_del_pezzo_tower(n);
        for (const NamedCheck& c : r.checks) CHECK(c.ok);

        CHECK(r.c_y_sq == Rat(7, 2) - Rat(Int(n)));
        // Closed forms from solving the chain's tridiagonal system by hand:
        // E_Y^2 = -2/(2n+1), a = -1/E_Y^2 = n + 1/2, b = (2n-8)/(2n-7).
        CHECK(r.e_y_sq == Rat(-2, Int(2 * n + 1)));
        CHECK(r.a == Rat(Int(2 * n + 1), 2));
        CHECK(r.b == Rat(Int(2 * n - 8), Int(2 * n - 7)));
        CHECK(r.one_minus_b == Rat(1, Int(2 * n - 7)));
        CHECK(r.pairing_bound == Rat(1, 2));

        REQUIRE(r.diff.size() == 4);
        for (const auto& [cluster, v] : r.diff) CHECK(v == Rat(1, 2));

        CHECK(r.cz_positivity.all_positive);
        CHECK(r.cz_positivity.self_intersection == 4);
        CHECK(r.fey_positivity.all_positive);
        // (f_*E_Y)^2 = 16 / ((2n+1)(2n-7))
        CHECK(r.fey_positivity.self_intersection == Rat(16, Int((2 * n + 1) * (2 * n - 7))));

        REQUIRE(r.ranks.size() == 5);
        CHECK(r.ranks[2].second == 6 + n);
    }
    CHECK_THROWS_AS(build_del_pezzo_tower(3), DomainError);
}

TEST_CASE("tower bound example at n = 10") {
    TowerReport r = build_del_pezzo_tower(10);
    CHECK(r.one_minus_b <= Rat(2) / Rat(13, 2)); // 2/(n - 7/2) at n = 10
    CHECK(r.b > 0);
    CHECK(r.b < 1);
}
