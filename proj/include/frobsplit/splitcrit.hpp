#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobsplit/finitefield.hpp"
#include "frobsplit/polyfrob.hpp"
#include "frobsplit/rational.hpp"

namespace frobsplit {

/// Closed point of P^1 over a fixed field context: a finite value lambda
/// (the point [lambda : 1]) or infinity ([1 : 0]).
class P1Point {
public:
    static P1Point infinity(FqCtx ctx);
    static P1Point finite(FqElem value);

    bool is_infinity() const { return !value_.has_value(); }
    const FqElem& value() const;
    const FqCtx& context() const { return ctx_; }
    bool operator==(const P1Point& rhs) const;
    std::string str() const;

private:
    P1Point(FqCtx ctx, std::optional<FqElem> v) : ctx_(std::move(ctx)), value_(std::move(v)) {}
    FqCtx ctx_;
    std::optional<FqElem> value_;
};

/// Effective divisor on P^1: pairwise distinct points with exact rational
/// coefficients >= 0, all points sharing one field context.
class DivisorP1 {
public:
    struct Entry {
        P1Point point;
        Rat coeff;
    };

    explicit DivisorP1(FqCtx ctx) : ctx_(std::move(ctx)) {}
    void add(P1Point point, Rat coeff);

    const FqCtx& context() const { return ctx_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    Rat degree() const;
    std::string str() const;

private:
    FqCtx ctx_;
    std::vector<Entry> entries_;
};

/// The configuration of the four-point lemma: 1/2(inf + 0 + (-1) + (-mu)).
/// Throws if the four points collide (mu in {0, 1}).
DivisorP1 half_configuration(const FqCtx& ctx, const FqElem& mu);

/// Outcome of one level-e splitting test, with the witness monomial of the
/// product of linear forms when it splits.
struct SplitWitness {
    bool split = false;
    std::uint64_t q = 0;
    std::vector<std::int64_t> multiplicities; // aligned with the divisor entries
    std::optional<std::pair<std::uint64_t, std::uint64_t>> monomial; // (s-exp, t-exp)
    std::optional<FqElem> coefficient;
    std::string reason; // non-split diagnostics
};

/// Level-e Frobenius splitting test for (P^1, delta), as the Fedder-type
/// membership: with d_i the rounded multiples of (p^e-1) and l_i the linear
/// form vanishing at the i-th point, the pair splits at level e iff
/// sum d_i <= 2(p^e-1) and prod l_i^{d_i} is not in (s^{p^e}, t^{p^e}).
///
/// Rounding: d_i = floor((p^e-1) a_i) when the denominator of a_i is prime
/// to p, and ceil otherwise (the sharp convention; the floor map cannot
/// detect the boundary when p divides a denominator).  At adapted levels
/// the two conventions agree.
bool level_split_test(std::uint64_t p, std::uint32_t e, const DivisorP1& delta);
SplitWitness level_split_witness(std::uint64_t p, std::uint32_t e, const DivisorP1& delta);

/// The monic polynomial sum_i C(n,i)^2 mu^i over F_p, n = (p-1)/2; its
/// roots are exactly the parameters mu for which the four-point
/// half-configuration is non-split at level 1.  p must be odd.
FqPoly lemma_polynomial(std::uint64_t p);

/// Result of the mu-search.  For p = 2 every choice of four distinct
/// points works and no specific mu is returned.
struct MuResult {
    bool any_choice = false;
    std::optional<FqElem> mu;
};

/// Finds mu in F_{p^2} \ {0,1} with a non-split half-configuration,
/// verifying the non-splitting at level 1 before returning.  Prefers
/// mu = -1 when it is a root (the harmonic configuration), then the
/// canonically smallest root in F_p, then in F_{p^2}.
MuResult find_nonsplit_mu(std::uint64_t p);

/// Coefficient of (xyz)^{p-1} in cubic^{p-1}; zero iff the smooth plane
/// cubic is supersingular.  Requires p > 3 and a homogeneous cubic in
/// three variables; smoothness is the caller's responsibility.
FqElem hasse_invariant(std::uint64_t p, const SparsePoly& cubic);

/// #E(F_p) for y^2 = x(x-1)(x-lambda) by brute force, point at infinity
/// included; the independent ordinarity oracle.  Requires p >= 5 and
/// lambda in F_p \ {0,1}.
std::uint64_t point_count_legendre(std::uint64_t p, const FqElem& lambda);

/// Fedder's criterion at the origin: the hypersurface {f = 0} is F-pure
/// there iff f^{p-1} is not in (x_1^p, ..., x_r^p).  f must vanish at the
/// origin.
bool fedder_hypersurface(std::uint64_t p, const SparsePoly& f);

/// nu(e): the largest s >= 0 such that the divisor with exact integer
/// multiplicities (p^e-1)*delta + s*d passes the Fedder-type box test;
/// -1 when even s = 0 fails.  Requires (p^e-1)*delta integral and d
/// effective, nonzero, with integer coefficients.  Descending linear scan
/// from the degree bound; monotonicity of the scan is re-checked.
std::int64_t nu(std::uint64_t p, std::uint32_t e, const DivisorP1& delta, const DivisorP1& d);

/// fst interval from the nu-bracketing nu(e) <= (p^e-1)c <= nu(e)+1.
struct FstInterval {
    Rat lower;
    Rat upper;
    std::vector<std::pair<std::uint32_t, std::int64_t>> per_e;
};

/// Aggregates [nu(e)/(p^e-1), (nu(e)+1)/(p^e-1)] over the levels e <= e_max
/// at which (p^e-1)*delta is integral.  Errors if no level is valid or the
/// base pair fails to split at a valid level.
FstInterval fst_bounds(std::uint64_t p, const DivisorP1& delta, const DivisorP1& d, std::uint32_t e_max);

} // namespace frobsplit
