#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "frobsplit/finitefield.hpp"

namespace frobsplit {

/// Exponent vector of one term; the length always equals the variable
/// count of the owning polynomial.
struct Monomial {
    using Exps = boost::container::small_vector<std::uint32_t, 4>;
    Exps e;

    Monomial() = default;
    explicit Monomial(Exps exps) : e(std::move(exps)) {}
    static Monomial unit(std::size_t nvars) { return Monomial(Exps(nvars, 0)); }

    std::uint64_t total_degree() const;
    /// Exponent-wise sum, overflow-checked.
    Monomial operator*(const Monomial& rhs) const;
    /// True iff some exponent is >= q, i.e. the term lies in the
    /// Frobenius-power ideal (x_1^q, ..., x_r^q).
    bool in_frobpower_ideal(std::uint64_t q) const;

    bool operator==(const Monomial& rhs) const { return e == rhs.e; }
    /// Graded order: total degree first, then lexicographic.
    bool operator<(const Monomial& rhs) const;
};

/// Sparse multivariate polynomial over one field context with named,
/// ordered variables.  Terms never store zero coefficients; storage is an
/// ordered map, so iteration order is deterministic.
class SparsePoly {
public:
    using Terms = std::map<Monomial, FqElem>;

    SparsePoly(FqCtx ctx, std::vector<std::string> vars);
    static SparsePoly constant(const FqCtx& ctx, std::vector<std::string> vars, const FqElem& value);
    static SparsePoly variable(const FqCtx& ctx, std::vector<std::string> vars, std::size_t index);

    const FqCtx& context() const { return ctx_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    std::uint64_t total_degree() const;
    /// Degree if homogeneous (zero polynomial counts as homogeneous of
    /// degree 0), otherwise nullopt semantics via -1.
    std::int64_t homogeneous_degree() const;

    /// Accumulates coeff on m (erasing the term if the sum is zero).
    void add_term(const Monomial& m, const FqElem& coeff);
    FqElem coefficient_of(const Monomial& m) const;

    SparsePoly operator+(const SparsePoly& rhs) const;
    SparsePoly operator-(const SparsePoly& rhs) const;
    SparsePoly operator*(const SparsePoly& rhs) const;
    SparsePoly operator-() const;
    SparsePoly scaled(const FqElem& c) const;
    bool operator==(const SparsePoly& rhs) const;
    bool operator!=(const SparsePoly& rhs) const { return !(*this == rhs); }

    SparsePoly partial_derivative(std::size_t var_index) const;
    FqElem eval(const std::vector<FqElem>& point) const;

    std::string str() const;

private:
    void check_compatible(const SparsePoly& rhs) const;
    FqCtx ctx_;
    std::vector<std::string> vars_;
    Terms terms_;
};

/// Exact product (alias of operator*).
SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);

/// Deletes every term with some exponent >= q.  f lies in the ideal
/// (x_1^q, ..., x_r^q) iff the result is zero.
SparsePoly reduce_mod_frobpower(const SparsePoly& f, std::uint64_t q);

/// reduce_mod_frobpower(f^k, q), with the reduction interleaved after
/// every multiplication; sound because the Frobenius-power ideal absorbs
/// multiplication.  Uses a packed fixed-width key internally when the
/// field is prime, the variable count is <= 4 and all exponents stay
/// below 2^15.
SparsePoly pow_mod_frobpower(const SparsePoly& f, std::uint64_t k, std::uint64_t q);

inline FqElem coefficient_of(const SparsePoly& f, const Monomial& m) { return f.coefficient_of(m); }

/// Substitutes x_i -> sum_j M[i][j] x_j; M must be square and invertible.
SparsePoly substitute_linear(const SparsePoly& f, const std::vector<std::vector<FqElem>>& M);

} // namespace frobsplit
