#include "frobsplit/polyfrob.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "frobsplit/config.hpp"

namespace frobsplit {

std::uint64_t Monomial::total_degree() const {
    std::uint64_t d = 0;
    for (std::uint32_t v : e) d += v;
    return d;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    if (e.size() != rhs.e.size()) throw DomainError("monomial length mismatch");
    Exps out(e.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::uint64_t s = std::uint64_t{e[i]} + rhs.e[i];
        if (s > 0x7fffffffu) throw ResourceLimitError("monomial exponent overflow");
        out[i] = static_cast<std::uint32_t>(s);
    }
    return Monomial(std::move(out));
}

bool Monomial::in_frobpower_ideal(std::uint64_t q) const {
    for (std::uint32_t v : e)
        if (v >= q) return true;
    return false;
}

bool Monomial::operator<(const Monomial& rhs) const {
    std::uint64_t da = total_degree(), db = rhs.total_degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(e.begin(), e.end(), rhs.e.begin(), rhs.e.end());
}

// ---------------------------------------------------------------------------

SparsePoly::SparsePoly(FqCtx ctx, std::vector<std::string> vars)
    : ctx_(std::move(ctx)), vars_(std::move(vars)) {}

SparsePoly SparsePoly::constant(const FqCtx& ctx, std::vector<std::string> vars, const FqElem& value) {
    SparsePoly f(ctx, std::move(vars));
    f.add_term(Monomial::unit(f.nvars()), value);
    return f;
}

SparsePoly SparsePoly::variable(const FqCtx& ctx, std::vector<std::string> vars, std::size_t index) {
    SparsePoly f(ctx, std::move(vars));
    if (index >= f.nvars()) throw DomainError("variable index out of range");
    Monomial m = Monomial::unit(f.nvars());
    m.e[index] = 1;
    f.add_term(m, FqElem::one(ctx));
    return f;
}

std::uint64_t SparsePoly::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

std::int64_t SparsePoly::homogeneous_degree() const {
    if (terms_.empty()) return 0;
    std::uint64_t d = terms_.begin()->first.total_degree();
    for (const auto& [m, c] : terms_)
        if (m.total_degree() != d) return -1;
    return static_cast<std::int64_t>(d);
}

void SparsePoly::add_term(const Monomial& m, const FqElem& coeff) {
    if (m.e.size() != nvars()) throw DomainError("monomial length does not match the variable count");
    if (!coeff.context()->same(*ctx_)) throw ContextMismatchError("term coefficient context mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

FqElem SparsePoly::coefficient_of(const Monomial& m) const {
    if (m.e.size() != nvars()) throw DomainError("monomial length does not match the variable count");
    auto it = terms_.find(m);
    return it == terms_.end() ? FqElem::zero(ctx_) : it->second;
}

void SparsePoly::check_compatible(const SparsePoly& rhs) const {
    if (!ctx_->same(*rhs.ctx_) || vars_ != rhs.vars_)
        throw ContextMismatchError("polynomial ring mismatch");
}

SparsePoly SparsePoly::operator+(const SparsePoly& rhs) const {
    check_compatible(rhs);
    SparsePoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
    return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& rhs) const {
    check_compatible(rhs);
    SparsePoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
    return out;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out(ctx_, vars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

SparsePoly SparsePoly::scaled(const FqElem& c) const {
    SparsePoly out(ctx_, vars_);
    if (c.is_zero()) return out;
    for (const auto& [m, coeff] : terms_) out.add_term(m, coeff * c);
    return out;
}

SparsePoly SparsePoly::operator*(const SparsePoly& rhs) const {
    check_compatible(rhs);
    const std::uint64_t budget = limits::term_budget();
    if (static_cast<std::uint64_t>(term_count()) * rhs.term_count() > budget)
        throw ResourceLimitError("polynomial product exceeds the term budget");
    SparsePoly out(ctx_, vars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            out.add_term(ma * mb, ca * cb);
            if (out.terms_.size() > budget)
                throw ResourceLimitError("polynomial product exceeds the term budget");
        }
    }
    return out;
}

bool SparsePoly::operator==(const SparsePoly& rhs) const {
    check_compatible(rhs);
    return terms_ == rhs.terms_;
}

SparsePoly SparsePoly::partial_derivative(std::size_t var_index) const {
    if (var_index >= nvars()) throw DomainError("variable index out of range");
    SparsePoly out(ctx_, vars_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var_index] == 0) continue;
        FqElem k = FqElem::from_int(ctx_, static_cast<std::int64_t>(m.e[var_index] % ctx_->p()));
        if (k.is_zero()) continue;
        Monomial d = m;
        d.e[var_index] -= 1;
        out.add_term(d, c * k);
    }
    return out;
}

FqElem SparsePoly::eval(const std::vector<FqElem>& point) const {
    if (point.size() != nvars()) throw DomainError("evaluation point has the wrong arity");
    FqElem acc = FqElem::zero(ctx_);
    for (const auto& [m, c] : terms_) {
        FqElem t = c;
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!point[i].context()->same(*ctx_)) throw ContextMismatchError("evaluation point context mismatch");
            t = t * point[i].pow(m.e[i]);
        }
        acc = acc + t;
    }
    return acc;
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto& [m, c] = *it;
        bool unit = c.is_one();
        bool constant = m.total_degree() == 0;
        if (!unit || constant) os << c.str();
        bool need_star = !unit;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (need_star) os << "*";
            need_star = true;
            os << vars_[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) { return a * b; }

SparsePoly reduce_mod_frobpower(const SparsePoly& f, std::uint64_t q) {
    if (q < 1) throw DomainError("Frobenius power q must be >= 1");
    SparsePoly out(f.context(), f.vars());
    for (const auto& [m, c] : f.terms())
        if (!m.in_frobpower_ideal(q)) out.add_term(m, c);
    return out;
}

namespace {

// Packed engine: prime field, <= 4 variables, all exponents < 2^15 so one
// 16-bit lane per variable can never carry during a reduced multiply.
constexpr std::uint64_t kLaneBound = 1u << 15;

bool packable(const SparsePoly& f, std::uint64_t q) {
    if (f.context()->degree() != 1 || f.nvars() > 4 || q > kLaneBound) return false;
    for (const auto& [m, c] : f.terms())
        for (std::uint32_t v : m.e)
            if (v >= kLaneBound) return false;
    return true;
}

using PackedTerms = std::unordered_map<std::uint64_t, std::uint64_t>;

std::uint64_t pack_key(const Monomial& m) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < m.e.size(); ++i) key |= std::uint64_t{m.e[i]} << (16 * i);
    return key;
}

Monomial unpack_key(std::uint64_t key, std::size_t nvars) {
    Monomial m = Monomial::unit(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m.e[i] = static_cast<std::uint32_t>((key >> (16 * i)) & 0xffff);
    return m;
}

bool packed_in_ideal(std::uint64_t key, std::size_t nvars, std::uint64_t q) {
    for (std::size_t i = 0; i < nvars; ++i)
        if (((key >> (16 * i)) & 0xffff) >= q) return true;
    return false;
}

PackedTerms packed_mul_reduce(const PackedTerms& acc, const PackedTerms& base, std::size_t nvars,
                              std::uint64_t q, std::uint64_t p) {
    const std::uint64_t budget = limits::term_budget();
    PackedTerms out;
    out.reserve(acc.size());
    for (const auto& [ka, ca] : acc) {
        for (const auto& [kb, cb] : base) {
            std::uint64_t key = ka + kb; // no lane carry: all lanes < 2^15
            if (packed_in_ideal(key, nvars, q)) continue;
            std::uint64_t prod = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(ca) * cb) % p);
            auto [it, inserted] = out.try_emplace(key, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second >= p) it->second -= p;
                if (it->second == 0) out.erase(it);
            }
        }
        if (out.size() > budget) throw ResourceLimitError("Frobenius power exceeds the term budget");
    }
    return out;
}

SparsePoly pow_mod_frobpower_packed(const SparsePoly& f, std::uint64_t k, std::uint64_t q) {
    const std::uint64_t p = f.context()->p();
    const std::size_t nvars = f.nvars();
    PackedTerms base;
    for (const auto& [m, c] : f.terms()) {
        if (m.in_frobpower_ideal(q)) continue;
        base.emplace(pack_key(m), c.coeff(0));
    }
    PackedTerms acc;
    acc.emplace(0, 1 % p);
    if (k <= 1024 || base.size() <= 64) {
        for (std::uint64_t i = 0; i < k && !acc.empty(); ++i)
            acc = packed_mul_reduce(acc, base, nvars, q, p);
    } else {
        while (k && !base.empty()) {
            if (k & 1) acc = packed_mul_reduce(acc, base, nvars, q, p);
            k >>= 1;
            if (k) base = packed_mul_reduce(base, base, nvars, q, p);
            if (acc.empty()) break;
        }
    }
    SparsePoly out(f.context(), f.vars());
    for (const auto& [key, c] : acc)
        out.add_term(unpack_key(key, nvars), FqElem::from_int(f.context(), static_cast<std::int64_t>(c)));
    return out;
}

} // namespace

SparsePoly pow_mod_frobpower(const SparsePoly& f, std::uint64_t k, std::uint64_t q) {
    if (q < 1) throw DomainError("Frobenius power q must be >= 1");
    if (k == 0) return SparsePoly::constant(f.context(), f.vars(), FqElem::one(f.context()));
    if (packable(f, q)) return pow_mod_frobpower_packed(f, k, q);
    SparsePoly base = reduce_mod_frobpower(f, q);
    SparsePoly acc = SparsePoly::constant(f.context(), f.vars(), FqElem::one(f.context()));
    if (k <= 1024 || base.term_count() <= 64) {
        for (std::uint64_t i = 0; i < k && !acc.is_zero(); ++i)
            acc = reduce_mod_frobpower(acc * base, q);
        return acc;
    }
    while (k && !base.is_zero()) {
        if (k & 1) acc = reduce_mod_frobpower(acc * base, q);
        k >>= 1;
        if (k) base = reduce_mod_frobpower(base * base, q);
        if (acc.is_zero()) break;
    }
    return acc;
}

SparsePoly substitute_linear(const SparsePoly& f, const std::vector<std::vector<FqElem>>& M) {
    const std::size_t n = f.nvars();
    if (M.size() != n) throw DomainError("substitution matrix must be square of the variable count");
    for (const auto& row : M)
        if (row.size() != n) throw DomainError("substitution matrix must be square of the variable count");

    // Invertibility via Gaussian elimination.
    std::vector<std::vector<FqElem>> g = M;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && g[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw DomainError("singular substitution matrix");
        std::swap(g[pivot], g[col]);
        FqElem inv = g[col][col].inv();
        for (std::size_t j = 0; j < n; ++j) g[col][j] = g[col][j] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || g[r][col].is_zero()) continue;
            FqElem factor = g[r][col];
            for (std::size_t j = 0; j < n; ++j) g[r][j] = g[r][j] - factor * g[col][j];
        }
    }

    std::vector<SparsePoly> forms;
    forms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SparsePoly Li(f.context(), f.vars());
        for (std::size_t j = 0; j < n; ++j) {
            Monomial m = Monomial::unit(n);
            m.e[j] = 1;
            Li.add_term(m, M[i][j]);
        }
        forms.push_back(std::move(Li));
    }

    // Per-variable power cache; exponents at the call sites are small.
    std::vector<std::vector<SparsePoly>> powers(n);
    auto form_power = [&](std::size_t i, std::uint32_t e) -> const SparsePoly& {
        auto& cache = powers[i];
        if (cache.empty())
            cache.push_back(SparsePoly::constant(f.context(), f.vars(), FqElem::one(f.context())));
        while (cache.size() <= e) cache.push_back(cache.back() * forms[i]);
        return cache[e];
    };

    SparsePoly out(f.context(), f.vars());
    for (const auto& [m, c] : f.terms()) {
        SparsePoly term = SparsePoly::constant(f.context(), f.vars(), c);
        for (std::size_t i = 0; i < n; ++i)
            if (m.e[i] > 0) term = term * form_power(i, m.e[i]);
        out = out + term;
    }
    return out;
}

} // namespace frobsplit
