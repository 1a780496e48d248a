#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "frobsplit/errors.hpp"

namespace frobsplit {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// A prime characteristic, validated at construction.
struct PrimeModulus {
    std::uint64_t value;
    explicit PrimeModulus(std::uint64_t p);
};

class FqContext;
using FqCtx = std::shared_ptr<const FqContext>;

/// Identifies one concrete finite field F_{p^m} = F_p[t]/(modulus).
///
/// Every FqElem carries its context; the library treats elements of
/// structurally different contexts as incomparable and throws
/// ContextMismatchError when they are mixed.  The canonical modulus for a
/// given (p, m) is the monic irreducible whose non-leading coefficients,
/// read as a base-p integer (constant term least significant), are minimal.
class FqContext : public std::enable_shared_from_this<FqContext> {
public:
    static FqCtx prime(std::uint64_t p);
    /// Canonical extension of degree m (m = 1 gives the prime field).
    static FqCtx extension(std::uint64_t p, std::uint32_t m);
    /// Extension with an explicit monic irreducible modulus (validated).
    static FqCtx with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

    std::uint64_t p() const { return p_.value; }
    std::uint32_t degree() const { return m_; }
    /// Monic modulus, length degree()+1, constant term first.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    /// p^m; throws ResourceLimitError beyond the 2^63-1 ceiling.
    std::uint64_t order() const;

    bool same(const FqContext& other) const;
    std::string str() const;

private:
    FqContext(PrimeModulus p, std::uint32_t m, std::vector<std::uint64_t> modulus);
    PrimeModulus p_;
    std::uint32_t m_;
    std::vector<std::uint64_t> modulus_;
};

/// Element of F_{p^m}: coefficient vector of length m over F_p, attached to
/// its context.  Immutable value type.
class FqElem {
public:
    using Coeffs = boost::container::small_vector<std::uint64_t, 2>;

    static FqElem zero(const FqCtx& ctx);
    static FqElem one(const FqCtx& ctx);
    /// Canonical residue of n (negative values allowed).
    static FqElem from_int(const FqCtx& ctx, std::int64_t n);
    static FqElem from_coeffs(const FqCtx& ctx, Coeffs coeffs);

    const FqCtx& context() const { return ctx_; }
    const Coeffs& coeffs() const { return c_; }
    std::uint64_t coeff(std::uint32_t i) const { return i < c_.size() ? c_[i] : 0; }

    bool is_zero() const;
    bool is_one() const;

    FqElem operator+(const FqElem& rhs) const;
    FqElem operator-(const FqElem& rhs) const;
    FqElem operator*(const FqElem& rhs) const;
    FqElem operator/(const FqElem& rhs) const;
    FqElem operator-() const;
    bool operator==(const FqElem& rhs) const;
    bool operator!=(const FqElem& rhs) const { return !(*this == rhs); }

    FqElem inv() const;
    FqElem pow(std::uint64_t e) const;

    /// Lexicographic comparison of coefficient vectors (constant term
    /// first); the canonical element order used wherever determinism
    /// requires picking one root.
    int compare(const FqElem& rhs) const;

    /// Re-interprets a prime-field element inside an extension with the
    /// same characteristic (the only embedding this library needs).
    FqElem embed(const FqCtx& target) const;

    std::string str() const;

private:
    FqElem(FqCtx ctx, Coeffs c) : ctx_(std::move(ctx)), c_(std::move(c)) {}
    void check_same_context(const FqElem& rhs) const;
    FqCtx ctx_;
    Coeffs c_;
};

/// Dense univariate polynomial over one field context.  Coefficient 0 is
/// the constant term; the zero polynomial has degree -1.
class FqPoly {
public:
    explicit FqPoly(FqCtx ctx);
    static FqPoly from_coeffs(const FqCtx& ctx, std::vector<FqElem> coeffs);
    static FqPoly from_int_coeffs(const FqCtx& ctx, const std::vector<std::int64_t>& coeffs);
    static FqPoly x(const FqCtx& ctx);
    static FqPoly constant(FqElem value);

    const FqCtx& context() const { return ctx_; }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FqElem coeff(std::size_t i) const;
    FqElem leading_coeff() const;
    const std::vector<FqElem>& coeffs() const { return c_; }

    FqPoly operator+(const FqPoly& rhs) const;
    FqPoly operator-(const FqPoly& rhs) const;
    FqPoly operator*(const FqPoly& rhs) const;
    bool operator==(const FqPoly& rhs) const;
    bool operator!=(const FqPoly& rhs) const { return !(*this == rhs); }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& divisor) const;
    FqPoly operator%(const FqPoly& divisor) const { return divmod(divisor).second; }

    FqPoly monic() const;
    FqPoly derivative() const;
    FqElem eval(const FqElem& at) const;
    /// this^e mod h, square-and-multiply.
    FqPoly powmod(std::uint64_t e, const FqPoly& h) const;

    std::string str(const std::string& var = "t") const;

private:
    void normalize();
    FqCtx ctx_;
    std::vector<FqElem> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
FqPoly poly_gcd(FqPoly a, FqPoly b);

/// True iff g (over a prime field) is irreducible; Rabin's test.
bool is_irreducible(const FqPoly& g);

/// The canonical monic irreducible of degree m over F_p: minimal when the
/// non-leading coefficients are read as a base-p integer.  Deterministic.
FqPoly find_irreducible(std::uint64_t p, std::uint32_t m);

/// All roots of g (a nonzero polynomial over F_p) that lie in F_{p^m},
/// returned in canonical order.  Uses gcd with X^{p^m} - X, then exhaustive
/// evaluation when p^m is small and deterministic equal-degree splitting
/// otherwise.
std::vector<FqElem> roots_in_ext(const FqPoly& g, std::uint32_t m);

} // namespace frobsplit
