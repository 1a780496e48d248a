#include "frobsplit/finitefield.hpp"

#include <algorithm>
#include <sstream>

#include "frobsplit/config.hpp"

namespace frobsplit {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is exact for all 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : value(p) {
    if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
    if (p > (std::uint64_t{1} << 61)) throw ResourceLimitError("characteristic too large");
}

// ---------------------------------------------------------------------------
// FqContext

FqContext::FqContext(PrimeModulus p, std::uint32_t m, std::vector<std::uint64_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {}

FqCtx FqContext::prime(std::uint64_t p) {
    PrimeModulus pm(p);
    return FqCtx(new FqContext(pm, 1, {0, 1}));
}

FqCtx FqContext::extension(std::uint64_t p, std::uint32_t m) {
    if (m == 0) throw DomainError("extension degree must be >= 1");
    if (m == 1) return prime(p);
    FqPoly mod = find_irreducible(p, m);
    std::vector<std::uint64_t> coeffs;
    coeffs.reserve(m + 1);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(m); ++i)
        coeffs.push_back(mod.coeff(i).coeff(0));
    return with_modulus(p, std::move(coeffs));
}

FqCtx FqContext::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    PrimeModulus pm(p);
    if (modulus.size() < 2) throw DomainError("modulus must have degree >= 1");
    std::uint32_t m = static_cast<std::uint32_t>(modulus.size() - 1);
    for (std::uint64_t c : modulus)
        if (c >= p) throw DomainError("modulus coefficient out of range");
    if (modulus.back() != 1) throw DomainError("modulus must be monic");
    FqCtx ctx(new FqContext(pm, m, std::move(modulus)));
    ctx->order(); // enforce the p^m ceiling up front
    if (m >= 2) {
        FqCtx base = prime(p);
        std::vector<FqElem> cs;
        for (std::uint64_t c : ctx->modulus())
            cs.push_back(FqElem::from_int(base, static_cast<std::int64_t>(c)));
        if (!is_irreducible(FqPoly::from_coeffs(base, std::move(cs))))
            throw DomainError("modulus is reducible over F_p");
    }
    return ctx;
}

std::uint64_t FqContext::order() const {
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (result > limits::kPowCeiling / p_.value)
            throw ResourceLimitError("field order p^m exceeds the 2^63-1 ceiling");
        result *= p_.value;
    }
    return result;
}

bool FqContext::same(const FqContext& other) const {
    return p_.value == other.p_.value && m_ == other.m_ && modulus_ == other.modulus_;
}

std::string FqContext::str() const {
    std::ostringstream os;
    if (m_ == 1) {
        os << "F_" << p_.value;
        return os.str();
    }
    os << "F_" << p_.value << "^" << m_ << " = F_" << p_.value << "[t]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || modulus_[i] != 1) os << modulus_[i];
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// FqElem

FqElem FqElem::zero(const FqCtx& ctx) {
    return FqElem(ctx, Coeffs(ctx->degree(), 0));
}

FqElem FqElem::one(const FqCtx& ctx) {
    Coeffs c(ctx->degree(), 0);
    c[0] = 1 % ctx->p();
    return FqElem(ctx, std::move(c));
}

FqElem FqElem::from_int(const FqCtx& ctx, std::int64_t n) {
    std::int64_t p = static_cast<std::int64_t>(ctx->p());
    std::int64_t r = n % p;
    if (r < 0) r += p;
    Coeffs c(ctx->degree(), 0);
    c[0] = static_cast<std::uint64_t>(r);
    return FqElem(ctx, std::move(c));
}

FqElem FqElem::from_coeffs(const FqCtx& ctx, Coeffs coeffs) {
    if (coeffs.size() != ctx->degree())
        throw DomainError("coefficient vector length does not match the field degree");
    for (std::uint64_t c : coeffs)
        if (c >= ctx->p()) throw DomainError("coefficient out of [0, p)");
    return FqElem(ctx, std::move(coeffs));
}

void FqElem::check_same_context(const FqElem& rhs) const {
    if (!ctx_->same(*rhs.ctx_))
        throw ContextMismatchError("field context mismatch: " + ctx_->str() + " vs " + rhs.ctx_->str());
}

bool FqElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool FqElem::is_one() const {
    if (c_[0] != 1 % ctx_->p()) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

FqElem FqElem::operator+(const FqElem& rhs) const {
    check_same_context(rhs);
    Coeffs out(c_.size(), 0);
    std::uint64_t p = ctx_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::uint64_t s = c_[i] + rhs.c_[i];
        out[i] = s >= p ? s - p : s;
    }
    return FqElem(ctx_, std::move(out));
}

FqElem FqElem::operator-(const FqElem& rhs) const {
    check_same_context(rhs);
    Coeffs out(c_.size(), 0);
    std::uint64_t p = ctx_->p();
    for (std::size_t i = 0; i < c_.size(); ++i)
        out[i] = c_[i] >= rhs.c_[i] ? c_[i] - rhs.c_[i] : c_[i] + p - rhs.c_[i];
    return FqElem(ctx_, std::move(out));
}

FqElem FqElem::operator-() const {
    Coeffs out(c_.size(), 0);
    std::uint64_t p = ctx_->p();
    for (std::size_t i = 0; i < c_.size(); ++i)
        out[i] = c_[i] == 0 ? 0 : p - c_[i];
    return FqElem(ctx_, std::move(out));
}

FqElem FqElem::operator*(const FqElem& rhs) const {
    check_same_context(rhs);
    std::uint64_t p = ctx_->p();
    std::size_t m = c_.size();
    if (m == 1) {
        Coeffs out(1, mulmod(c_[0], rhs.c_[0], p));
        return FqElem(ctx_, std::move(out));
    }
    // Schoolbook product, then top-down reduction by the monic modulus.
    std::vector<std::uint64_t> buf(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j)
            buf[i + j] = (buf[i + j] + static_cast<unsigned __int128>(c_[i]) * rhs.c_[j]) % p;
    }
    const auto& mod = ctx_->modulus();
    for (std::size_t i = buf.size(); i-- > m;) {
        std::uint64_t f = buf[i];
        if (f == 0) continue;
        buf[i] = 0;
        for (std::size_t j = 0; j < m; ++j) {
            std::uint64_t sub = mulmod(f, mod[j], p);
            std::uint64_t& tgt = buf[i - m + j];
            tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
        }
    }
    Coeffs out(buf.begin(), buf.begin() + m);
    return FqElem(ctx_, std::move(out));
}

FqElem FqElem::pow(std::uint64_t e) const {
    FqElem base = *this;
    FqElem acc = FqElem::one(ctx_);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FqElem FqElem::inv() const {
    if (is_zero()) throw DomainError("division by zero in " + ctx_->str());
    // Fermat: a^(q-2).  order() is guarded by the p^m ceiling.
    return pow(ctx_->order() - 2);
}

FqElem FqElem::operator/(const FqElem& rhs) const {
    check_same_context(rhs);
    return *this * rhs.inv();
}

bool FqElem::operator==(const FqElem& rhs) const {
    check_same_context(rhs);
    return c_ == rhs.c_;
}

int FqElem::compare(const FqElem& rhs) const {
    check_same_context(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != rhs.c_[i]) return c_[i] < rhs.c_[i] ? -1 : 1;
    }
    return 0;
}

FqElem FqElem::embed(const FqCtx& target) const {
    if (ctx_->same(*target)) return FqElem(target, c_);
    if (ctx_->degree() != 1 || ctx_->p() != target->p())
        throw ContextMismatchError("only prime-field elements embed into extensions");
    Coeffs c(target->degree(), 0);
    c[0] = c_[0];
    return FqElem(target, std::move(c));
}

std::string FqElem::str() const {
    if (ctx_->degree() == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// FqPoly

FqPoly::FqPoly(FqCtx ctx) : ctx_(std::move(ctx)) {}

void FqPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPoly FqPoly::from_coeffs(const FqCtx& ctx, std::vector<FqElem> coeffs) {
    FqPoly f(ctx);
    for (const FqElem& c : coeffs)
        if (!c.context()->same(*ctx)) throw ContextMismatchError("polynomial coefficient context mismatch");
    f.c_ = std::move(coeffs);
    f.normalize();
    return f;
}

FqPoly FqPoly::from_int_coeffs(const FqCtx& ctx, const std::vector<std::int64_t>& coeffs) {
    std::vector<FqElem> cs;
    cs.reserve(coeffs.size());
    for (std::int64_t c : coeffs) cs.push_back(FqElem::from_int(ctx, c));
    return from_coeffs(ctx, std::move(cs));
}

FqPoly FqPoly::x(const FqCtx& ctx) {
    return from_coeffs(ctx, {FqElem::zero(ctx), FqElem::one(ctx)});
}

FqPoly FqPoly::constant(FqElem value) {
    FqCtx ctx = value.context();
    return from_coeffs(ctx, {std::move(value)});
}

FqElem FqPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : FqElem::zero(ctx_);
}

FqElem FqPoly::leading_coeff() const {
    return c_.empty() ? FqElem::zero(ctx_) : c_.back();
}

FqPoly FqPoly::operator+(const FqPoly& rhs) const {
    std::vector<FqElem> out;
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coeff(i) + rhs.coeff(i));
    return from_coeffs(ctx_, std::move(out));
}

FqPoly FqPoly::operator-(const FqPoly& rhs) const {
    std::vector<FqElem> out;
    std::size_t n = std::max(c_.size(), rhs.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coeff(i) - rhs.coeff(i));
    return from_coeffs(ctx_, std::move(out));
}

FqPoly FqPoly::operator*(const FqPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return FqPoly(ctx_);
    std::vector<FqElem> out(c_.size() + rhs.c_.size() - 1, FqElem::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            out[i + j] = out[i + j] + c_[i] * rhs.c_[j];
    }
    return from_coeffs(ctx_, std::move(out));
}

bool FqPoly::operator==(const FqPoly& rhs) const {
    if (!ctx_->same(*rhs.ctx_)) throw ContextMismatchError("polynomial context mismatch");
    return c_ == rhs.c_;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    FqPoly rem = *this;
    FqPoly quot(ctx_);
    quot.c_.assign(c_.size(), FqElem::zero(ctx_));
    FqElem lead_inv = divisor.leading_coeff().inv();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - divisor.degree());
        FqElem factor = rem.leading_coeff() * lead_inv;
        quot.c_[shift] = quot.c_[shift] + factor;
        for (std::size_t i = 0; i < rem.c_.size() && static_cast<std::int64_t>(i) <= divisor.degree(); ++i) {
            rem.c_[shift + i] = rem.c_[shift + i] - factor * divisor.c_[i];
        }
        rem.normalize();
    }
    quot.normalize();
    return {quot, rem};
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    FqElem inv = leading_coeff().inv();
    std::vector<FqElem> out;
    out.reserve(c_.size());
    for (const FqElem& c : c_) out.push_back(c * inv);
    return from_coeffs(ctx_, std::move(out));
}

FqPoly FqPoly::derivative() const {
    if (c_.size() <= 1) return FqPoly(ctx_);
    std::vector<FqElem> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        FqElem k = FqElem::from_int(ctx_, static_cast<std::int64_t>(i % ctx_->p()));
        out.push_back(c_[i] * k);
    }
    return from_coeffs(ctx_, std::move(out));
}

FqElem FqPoly::eval(const FqElem& at) const {
    FqElem acc = FqElem::zero(at.context());
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * at + c_[i].embed(at.context());
    return acc;
}

FqPoly FqPoly::powmod(std::uint64_t e, const FqPoly& h) const {
    FqPoly base = *this % h;
    FqPoly acc = FqPoly::constant(FqElem::one(ctx_));
    while (e) {
        if (e & 1) acc = (acc * base) % h;
        base = (base * base) % h;
        e >>= 1;
    }
    return acc;
}

std::string FqPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c_[i].is_one();
        if (!unit || i == 0) os << c_[i].str();
        if (i >= 1) {
            if (!unit) os << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// ---------------------------------------------------------------------------
// Irreducibility and roots

bool is_irreducible(const FqPoly& g_in) {
    if (g_in.context()->degree() != 1)
        throw DomainError("irreducibility test expects a polynomial over a prime field");
    FqPoly g = g_in.monic();
    std::int64_t m = g.degree();
    if (m <= 0) return false;
    if (m == 1) return true;
    std::uint64_t p = g.context()->p();
    const FqPoly X = FqPoly::x(g.context());
    // xq[k] = X^(p^(k+1)) mod g, built by iterated p-th powers.
    std::vector<FqPoly> xq;
    FqPoly cur = X;
    for (std::int64_t k = 1; k <= m; ++k) {
        cur = cur.powmod(p, g);
        xq.push_back(cur);
    }
    if (!((xq.back() - X) % g).is_zero()) return false;
    for (std::int64_t ell = 2; ell <= m; ++ell) {
        if (m % ell != 0) continue;
        bool prime_div = true;
        for (std::int64_t d = 2; d * d <= ell; ++d)
            if (ell % d == 0) { prime_div = false; break; }
        if (!prime_div) continue;
        const FqPoly& xqk = xq[static_cast<std::size_t>(m / ell) - 1];
        if (poly_gcd(xqk - X, g).degree() != 0) return false;
    }
    return true;
}

FqPoly find_irreducible(std::uint64_t p, std::uint32_t m) {
    if (m == 0) throw DomainError("degree must be >= 1");
    FqCtx ctx = FqContext::prime(p);
    if (m == 1) return FqPoly::x(ctx);
    constexpr std::uint64_t kScanCap = 10'000'000;
    for (std::uint64_t v = 0; v < kScanCap; ++v) {
        std::vector<FqElem> coeffs;
        coeffs.reserve(m + 1);
        std::uint64_t rest = v;
        for (std::uint32_t i = 0; i < m; ++i) {
            coeffs.push_back(FqElem::from_int(ctx, static_cast<std::int64_t>(rest % p)));
            rest /= p;
        }
        if (rest != 0) break; // exhausted all monic candidates of degree m
        coeffs.push_back(FqElem::one(ctx));
        FqPoly candidate = FqPoly::from_coeffs(ctx, std::move(coeffs));
        if (is_irreducible(candidate)) return candidate;
    }
    throw ResourceLimitError("irreducible polynomial scan exceeded its cap");
}

namespace {

/// Elements of ctx enumerated by counting base p (constant coefficient
/// least significant).
class ElementCounter {
public:
    explicit ElementCounter(const FqCtx& ctx)
        : ctx_(ctx), coeffs_(ctx->degree(), 0), done_(false) {}
    bool done() const { return done_; }
    FqElem value() const { return FqElem::from_coeffs(ctx_, coeffs_); }
    void advance() {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (++coeffs_[i] < ctx_->p()) return;
            coeffs_[i] = 0;
        }
        done_ = true;
    }

private:
    FqCtx ctx_;
    FqElem::Coeffs coeffs_;
    bool done_;
};

FqPoly lift(const FqPoly& f, const FqCtx& ext) {
    std::vector<FqElem> cs;
    cs.reserve(f.coeffs().size());
    for (const FqElem& c : f.coeffs()) cs.push_back(c.embed(ext));
    return FqPoly::from_coeffs(ext, std::move(cs));
}

/// Deterministic equal-degree splitting of a monic squarefree product of
/// linear factors over F_q, q odd: gcd with (X+a)^((q-1)/2) - 1 for a
/// running over the canonical element enumeration.
void split_linear_factors(const FqPoly& h, std::vector<FqElem>& out, int depth) {
    if (depth > 128) throw ResourceLimitError("equal-degree splitting exceeded its iteration budget");
    const FqCtx& ctx = h.context();
    if (h.degree() == 0) return;
    if (h.degree() == 1) {
        FqPoly m = h.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    std::uint64_t q = ctx->order();
    const FqPoly one = FqPoly::constant(FqElem::one(ctx));
    for (ElementCounter it(ctx); !it.done(); it.advance()) {
        std::vector<FqElem> shift = {it.value(), FqElem::one(ctx)};
        FqPoly base = FqPoly::from_coeffs(ctx, std::move(shift));
        FqPoly w = base.powmod((q - 1) / 2, h) - one;
        FqPoly d = poly_gcd(w, h);
        if (d.degree() > 0 && d.degree() < h.degree()) {
            split_linear_factors(d, out, depth + 1);
            split_linear_factors(h.divmod(d).first, out, depth + 1);
            return;
        }
    }
    throw ResourceLimitError("equal-degree splitting failed to converge");
}

} // namespace

std::vector<FqElem> roots_in_ext(const FqPoly& g, std::uint32_t m) {
    if (g.is_zero()) throw DomainError("roots of the zero polynomial are undefined");
    if (g.context()->degree() != 1)
        throw DomainError("roots_in_ext expects a polynomial over a prime field");
    std::uint64_t p = g.context()->p();
    FqCtx ext = FqContext::extension(p, m);
    std::vector<FqElem> roots;
    if (g.degree() == 0) return roots;

    // gcd(g, X^(p^m) - X) collects exactly the roots lying in F_{p^m}.
    FqPoly gm = g.monic();
    const FqPoly X = FqPoly::x(g.context());
    FqPoly xq = X;
    for (std::uint32_t k = 0; k < m; ++k) xq = xq.powmod(p, gm);
    FqPoly h = poly_gcd(xq - X, gm);
    if (h.degree() <= 0) return roots;

    std::uint64_t q = ext->order();
    if (q <= limits::kRootSearchBound) {
        for (ElementCounter it(ext); !it.done(); it.advance()) {
            FqElem a = it.value();
            if (h.eval(a).is_zero()) roots.push_back(a);
        }
    } else if (p == 2) {
        throw ResourceLimitError("root search beyond the exhaustive bound unavailable in characteristic 2");
    } else {
        FqPoly hq = lift(h, ext);
        split_linear_factors(hq, roots, 0);
    }
    if (static_cast<std::int64_t>(roots.size()) != h.degree())
        throw IdentityError("root count disagrees with the degree of gcd(g, X^q - X)");
    std::sort(roots.begin(), roots.end(),
              [](const FqElem& a, const FqElem& b) { return a.compare(b) < 0; });
    return roots;
}

} // namespace frobsplit
