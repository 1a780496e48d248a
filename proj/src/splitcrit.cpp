#include "frobsplit/splitcrit.hpp"

#include <algorithm>
#include <sstream>

#include "frobsplit/config.hpp"

namespace frobsplit {

namespace {

std::uint64_t checked_pow(std::uint64_t p, std::uint32_t e) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (q > limits::kPowCeiling / p) throw ResourceLimitError("p^e exceeds the 2^63-1 ceiling");
        q *= p;
    }
    return q;
}

std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

// ---------------------------------------------------------------------------
// Points and divisors

P1Point P1Point::infinity(FqCtx ctx) { return P1Point(std::move(ctx), std::nullopt); }

P1Point P1Point::finite(FqElem value) {
    FqCtx ctx = value.context();
    return P1Point(std::move(ctx), std::move(value));
}

const FqElem& P1Point::value() const {
    if (!value_) throw DomainError("the point at infinity has no finite value");
    return *value_;
}

bool P1Point::operator==(const P1Point& rhs) const {
    if (!ctx_->same(*rhs.ctx_)) throw ContextMismatchError("P^1 point context mismatch");
    if (is_infinity() || rhs.is_infinity()) return is_infinity() == rhs.is_infinity();
    return *value_ == *rhs.value_;
}

std::string P1Point::str() const { return is_infinity() ? "inf" : value_->str(); }

void DivisorP1::add(P1Point point, Rat coeff) {
    if (!point.context()->same(*ctx_))
        throw ContextMismatchError("divisor point context mismatch");
    if (coeff < 0) throw DomainError("divisor coefficients must be >= 0");
    for (const Entry& entry : entries_)
        if (entry.point == point) throw DomainError("divisor points must be pairwise distinct");
    entries_.push_back(Entry{std::move(point), std::move(coeff)});
}

Rat DivisorP1::degree() const {
    Rat d = 0;
    for (const Entry& entry : entries_) d += entry.coeff;
    return d;
}

std::string DivisorP1::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Entry& entry : entries_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(entry.coeff) << "@" << entry.point.str();
    }
    return os.str();
}

DivisorP1 half_configuration(const FqCtx& ctx, const FqElem& mu) {
    DivisorP1 div(ctx);
    Rat half(1, 2);
    div.add(P1Point::infinity(ctx), half);
    div.add(P1Point::finite(FqElem::zero(ctx)), half);
    div.add(P1Point::finite(FqElem::from_int(ctx, -1)), half);
    div.add(P1Point::finite(-mu.embed(ctx)), half);
    return div;
}

// ---------------------------------------------------------------------------
// The Fedder-type box test on P^1
//
// With multiplicities d_i, the product  t^{d_inf} * prod (s - lambda_i t)^{d_i}
// is a binary form; the level splits iff the form keeps a monomial
// s^a t^b with a, b <= q-1.  The form is expanded as a dense window in the
// s-degree a, pruning both ideal directions after every factor.  Each
// factor (x - lambda)^d is decomposed along base-p digits of d, because
// (x - lambda)^{p^k} = x^{p^k} - lambda^{p^k}, which keeps every partial
// factor at most p+1 terms wide.

namespace {

// C(n, k) mod p for n, k < p.
std::uint64_t small_binom_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1 % p;
    for (std::uint64_t i = 0; i < k; ++i) {
        c = mulmod_u(c, (n - i) % p, p);
        // (i+1) < p is invertible mod p
        std::uint64_t inv = 1, base = (i + 1) % p, exp = p - 2;
        while (exp) {
            if (exp & 1) inv = mulmod_u(inv, base, p);
            base = mulmod_u(base, base, p);
            exp >>= 1;
        }
        c = mulmod_u(c, inv, p);
    }
    return c;
}

struct BoxAccumulator {
    std::int64_t lo = 0;           // s-degree of c[0]
    std::vector<FqElem> c;
    std::uint64_t work = 0;

    explicit BoxAccumulator(const FqCtx& ctx) { c.push_back(FqElem::one(ctx)); }

    bool empty() const {
        return std::all_of(c.begin(), c.end(), [](const FqElem& v) { return v.is_zero(); });
    }

    void prune(std::int64_t n_fin_so_far, std::int64_t d_inf, std::uint64_t q) {
        std::int64_t keep_lo = std::max<std::int64_t>(0, n_fin_so_far + d_inf - (static_cast<std::int64_t>(q) - 1));
        std::int64_t keep_hi = static_cast<std::int64_t>(q) - 1;
        std::int64_t hi = lo + static_cast<std::int64_t>(c.size()) - 1;
        std::int64_t new_lo = std::max(lo, keep_lo), new_hi = std::min(hi, keep_hi);
        if (new_lo > new_hi) {
            c.clear();
            lo = 0;
            return;
        }
        if (new_lo != lo || new_hi != hi) {
            std::vector<FqElem> trimmed(c.begin() + (new_lo - lo), c.begin() + (new_hi - lo + 1));
            c = std::move(trimmed);
            lo = new_lo;
        }
    }

    // Multiplies by a sparse factor given as (offset, coeff) pairs.
    void multiply(const std::vector<std::pair<std::uint64_t, FqElem>>& factor, const FqCtx& ctx) {
        if (c.empty()) return;
        std::uint64_t max_off = 0;
        for (const auto& [off, coeff] : factor) max_off = std::max(max_off, off);
        std::vector<FqElem> out(c.size() + max_off, FqElem::zero(ctx));
        work += static_cast<std::uint64_t>(c.size()) * factor.size();
        if (work > limits::kSplitWorkBudget)
            throw ResourceLimitError("splitting test exceeded its work budget");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (const auto& [off, coeff] : factor)
                out[i + off] = out[i + off] + c[i] * coeff;
        }
        c = std::move(out);
    }
};

SplitWitness box_test(const FqCtx& ctx, const std::vector<P1Point>& points,
                      const std::vector<std::int64_t>& mult, std::uint64_t q) {
    SplitWitness w;
    w.q = q;
    w.multiplicities = mult;

    std::int64_t d_inf = 0;
    std::vector<std::pair<FqElem, std::int64_t>> finite;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (mult[i] < 0) throw DomainError("negative multiplicity in the box test");
        if (mult[i] == 0) continue;
        total += mult[i];
        if (points[i].is_infinity())
            d_inf += mult[i];
        else
            finite.emplace_back(points[i].value(), mult[i]);
    }
    if (total > 2 * (static_cast<std::int64_t>(q) - 1)) {
        w.split = false;
        w.reason = "total multiplicity exceeds 2(p^e - 1)";
        return w;
    }

    const std::uint64_t p = ctx->p();
    BoxAccumulator acc(ctx);
    std::int64_t n_fin = 0;
    for (const auto& [lambda, d] : finite) {
        std::uint64_t rest = static_cast<std::uint64_t>(d);
        std::uint64_t pk = 1;
        while (rest > 0) {
            std::uint64_t digit = rest % p;
            rest /= p;
            if (digit > 0) {
                // (x^{p^k} - lambda^{p^k})^digit
                FqElem lpk = lambda.pow(pk);
                std::vector<std::pair<std::uint64_t, FqElem>> factor;
                factor.reserve(digit + 1);
                for (std::uint64_t j = 0; j <= digit; ++j) {
                    FqElem coeff = FqElem::from_int(ctx, static_cast<std::int64_t>(small_binom_mod(digit, j, p)));
                    FqElem sign_pow = (-lpk).pow(digit - j);
                    factor.emplace_back(j * pk, coeff * sign_pow);
                }
                n_fin += static_cast<std::int64_t>(digit * pk);
                acc.multiply(factor, ctx);
                acc.prune(n_fin, d_inf, q);
                if (acc.empty()) {
                    w.split = false;
                    w.reason = "every monomial of the product lies in (s^q, t^q)";
                    return w;
                }
            }
            if (rest > 0) {
                if (pk > limits::kPowCeiling / p) throw ResourceLimitError("multiplicity digit overflow");
                pk *= p;
            }
        }
    }
    acc.prune(n_fin, d_inf, q);
    for (std::size_t i = 0; i < acc.c.size(); ++i) {
        if (acc.c[i].is_zero()) continue;
        std::int64_t a = acc.lo + static_cast<std::int64_t>(i);
        w.split = true;
        w.monomial = {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(n_fin - a + d_inf)};
        w.coefficient = acc.c[i];
        return w;
    }
    w.split = false;
    w.reason = "every monomial of the product lies in (s^q, t^q)";
    return w;
}

} // namespace

SplitWitness level_split_witness(std::uint64_t p, std::uint32_t e, const DivisorP1& delta) {
    PrimeModulus pm(p);
    if (e < 1) throw DomainError("level e must be >= 1");
    if (delta.context()->p() != p) throw ContextMismatchError("divisor characteristic differs from p");
    std::uint64_t q = checked_pow(p, e);
    if (q > limits::kMaxSplitLevel) throw ResourceLimitError("p^e exceeds the splitting-test ceiling");

    std::vector<P1Point> points;
    std::vector<std::int64_t> mult;
    for (const auto& entry : delta.entries()) {
        if (entry.coeff < 0 || entry.coeff > 1)
            throw DomainError("level_split_test requires coefficients in [0, 1]");
        Rat scaled = Rat(Int(q - 1)) * entry.coeff;
        Int d = rat_den(entry.coeff) % p == 0 ? rat_ceil(scaled) : rat_floor(scaled);
        points.push_back(entry.point);
        mult.push_back(static_cast<std::int64_t>(d));
    }
    return box_test(delta.context(), points, mult, q);
}

bool level_split_test(std::uint64_t p, std::uint32_t e, const DivisorP1& delta) {
    return level_split_witness(p, e, delta).split;
}

// ---------------------------------------------------------------------------

FqPoly lemma_polynomial(std::uint64_t p) {
    PrimeModulus pm(p);
    if (p == 2) throw DomainError("the coefficient polynomial needs an odd characteristic");
    std::uint64_t n = (p - 1) / 2;
    FqCtx ctx = FqContext::prime(p);
    std::vector<FqElem> coeffs;
    coeffs.reserve(n + 1);
    std::uint64_t binom = 1; // C(n, i) mod p, built multiplicatively (i+1 < p)
    coeffs.push_back(FqElem::one(ctx));
    for (std::uint64_t i = 0; i < n; ++i) {
        binom = mulmod_u(binom, (n - i) % p, p);
        std::uint64_t inv = 1, base = (i + 1) % p, exp = p - 2;
        while (exp) {
            if (exp & 1) inv = mulmod_u(inv, base, p);
            base = mulmod_u(base, base, p);
            exp >>= 1;
        }
        binom = mulmod_u(binom, inv, p);
        coeffs.push_back(FqElem::from_int(ctx, static_cast<std::int64_t>(mulmod_u(binom, binom, p))));
    }
    return FqPoly::from_coeffs(ctx, std::move(coeffs));
}

MuResult find_nonsplit_mu(std::uint64_t p) {
    PrimeModulus pm(p);
    MuResult result;
    if (p == 2) {
        result.any_choice = true;
        return result;
    }
    FqPoly H = lemma_polynomial(p);

    auto admissible = [&](const FqElem& r) {
        return !r.is_zero() && !r.is_one();
    };
    std::optional<FqElem> chosen;
    std::vector<FqElem> roots = roots_in_ext(H, 1);
    if (!roots.empty()) {
        FqElem minus_one = FqElem::from_int(H.context(), -1);
        for (const FqElem& r : roots) {
            if (!admissible(r)) continue;
            if (r == minus_one) { chosen = r; break; }
            if (!chosen) chosen = r;
        }
    }
    if (!chosen) {
        for (const FqElem& r : roots_in_ext(H, 2)) {
            if (admissible(r)) { chosen = r; break; }
        }
    }
    if (!chosen)
        throw IdentityError("no admissible root of the coefficient polynomial in F_{p^2}; "
                            "supersingular parameters must lie there");

    DivisorP1 config = half_configuration(chosen->context(), *chosen);
    if (level_split_test(p, 1, config))
        throw IdentityError("found mu fails the non-splitting verification at level 1");
    result.mu = chosen;
    return result;
}

FqElem hasse_invariant(std::uint64_t p, const SparsePoly& cubic) {
    PrimeModulus pm(p);
    if (p <= 3) throw DomainError("the Hasse invariant computation requires p > 3");
    if (cubic.context()->p() != p) throw ContextMismatchError("cubic characteristic differs from p");
    if (cubic.nvars() != 3) throw DomainError("expected a ternary cubic");
    if (cubic.homogeneous_degree() != 3) throw DomainError("expected a homogeneous cubic");
    SparsePoly power = pow_mod_frobpower(cubic, p - 1, p);
    Monomial target = Monomial::unit(3);
    target.e[0] = target.e[1] = target.e[2] = static_cast<std::uint32_t>(p - 1);
    return power.coefficient_of(target);
}

std::uint64_t point_count_legendre(std::uint64_t p, const FqElem& lambda) {
    PrimeModulus pm(p);
    if (p < 5) throw DomainError("point counting requires p >= 5");
    if (p > 10'000'000) throw ResourceLimitError("point counting bound exceeded");
    if (lambda.context()->degree() != 1 || lambda.context()->p() != p)
        throw DomainError("lambda must lie in the prime field F_p");
    std::uint64_t lam = lambda.coeff(0);
    if (lam == 0 || lam == 1) throw DomainError("lambda must avoid {0, 1}");

    std::vector<bool> is_square(p, false);
    for (std::uint64_t y = 0; y < p; ++y) is_square[mulmod_u(y, y, p)] = true;
    std::uint64_t count = 1; // the point at infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t r = mulmod_u(x, (x + p - 1) % p, p);
        r = mulmod_u(r, (x + p - lam) % p, p);
        if (r == 0)
            count += 1;
        else if (is_square[r])
            count += 2;
    }
    // Hasse bound sanity: |count - (p+1)| <= 2 sqrt(p).
    std::int64_t trace = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(count);
    if (static_cast<std::uint64_t>(trace * trace) > 4 * p)
        throw IdentityError("point count violates the Hasse bound");
    return count;
}

bool fedder_hypersurface(std::uint64_t p, const SparsePoly& f) {
    PrimeModulus pm(p);
    if (f.context()->p() != p) throw ContextMismatchError("hypersurface characteristic differs from p");
    if (!f.coefficient_of(Monomial::unit(f.nvars())).is_zero())
        throw DomainError("the origin does not lie on the hypersurface");
    return !pow_mod_frobpower(f, p - 1, p).is_zero();
}

// ---------------------------------------------------------------------------
// nu and fst

namespace {

struct IntegerDivisor {
    std::vector<P1Point> points;
    std::vector<std::int64_t> mult;
};

// Exact integer multiplicities of (q-1)*delta, shared-point aware.
void accumulate(IntegerDivisor& out, const P1Point& pt, std::int64_t m) {
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (out.points[i] == pt) {
            out.mult[i] += m;
            return;
        }
    }
    out.points.push_back(pt);
    out.mult.push_back(m);
}

} // namespace

std::int64_t nu(std::uint64_t p, std::uint32_t e, const DivisorP1& delta, const DivisorP1& d) {
    PrimeModulus pm(p);
    if (e < 1) throw DomainError("level e must be >= 1");
    std::uint64_t q = checked_pow(p, e);
    if (q > limits::kMaxSplitLevel) throw ResourceLimitError("p^e exceeds the splitting-test ceiling");
    if (d.empty() || d.degree() == 0) throw DomainError("nu requires an effective nonzero divisor D");
    if (!delta.context()->same(*d.context()))
        throw ContextMismatchError("delta and D must share one field context");

    IntegerDivisor base;
    std::int64_t delta_deg = 0;
    for (const auto& entry : delta.entries()) {
        Rat scaled = Rat(Int(q - 1)) * entry.coeff;
        if (!rat_is_integer(scaled))
            throw DomainError("(p^e-1)*delta must have integer coefficients at level e = " + std::to_string(e));
        std::int64_t m = static_cast<std::int64_t>(rat_num(scaled));
        delta_deg += m;
        accumulate(base, entry.point, m);
    }
    std::vector<std::pair<P1Point, std::int64_t>> dvec;
    std::int64_t d_deg = 0;
    for (const auto& entry : d.entries()) {
        if (!rat_is_integer(entry.coeff) || entry.coeff <= 0)
            throw DomainError("nu requires D with positive integer coefficients");
        std::int64_t m = static_cast<std::int64_t>(rat_num(entry.coeff));
        d_deg += m;
        dvec.emplace_back(entry.point, m);
    }

    std::int64_t budget = 2 * (static_cast<std::int64_t>(q) - 1) - delta_deg;
    std::int64_t s_max = budget >= 0 ? budget / d_deg : -1;
    std::int64_t found = -1;
    for (std::int64_t s = std::max<std::int64_t>(s_max, 0); s >= 0; --s) {
        IntegerDivisor combined = base;
        for (const auto& [pt, m] : dvec) accumulate(combined, pt, s * m);
        bool split = box_test(delta.context(), combined.points, combined.mult, q).split;
        if (split && found < 0) {
            found = s;
        } else if (!split && found >= 0) {
            throw IdentityError("splitting failed below a splitting level; monotonicity in s is broken");
        }
    }
    return found;
}

FstInterval fst_bounds(std::uint64_t p, const DivisorP1& delta, const DivisorP1& d, std::uint32_t e_max) {
    PrimeModulus pm(p);
    if (e_max < 1) throw DomainError("e_max must be >= 1");
    FstInterval interval;
    bool have_level = false;
    for (std::uint32_t e = 1; e <= e_max; ++e) {
        std::uint64_t q = checked_pow(p, e);
        bool adapted = true;
        for (const auto& entry : delta.entries()) {
            if (!rat_is_integer(Rat(Int(q - 1)) * entry.coeff)) {
                adapted = false;
                break;
            }
        }
        if (!adapted) continue;
        std::int64_t nu_e = nu(p, e, delta, d);
        if (nu_e < 0)
            throw DomainError("the base pair (X, delta) is not split at level e = " + std::to_string(e));
        Rat lower(Int(nu_e), Int(q - 1));
        Rat upper(Int(nu_e + 1), Int(q - 1));
        if (!have_level) {
            interval.lower = lower;
            interval.upper = upper;
            have_level = true;
        } else {
            interval.lower = std::max(interval.lower, lower);
            interval.upper = std::min(interval.upper, upper);
        }
        interval.per_e.emplace_back(e, nu_e);
    }
    if (!have_level) throw DomainError("no level e <= e_max has (p^e-1)*delta integral");
    if (interval.lower > interval.upper)
        throw IdentityError("empty fst interval; the nu-bracketing is violated");
    return interval;
}

} // namespace frobsplit
