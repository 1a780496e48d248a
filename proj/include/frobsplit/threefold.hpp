#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobsplit/certificate.hpp"
#include "frobsplit/polyfrob.hpp"

namespace frobsplit {

/// The cone family X_n = Spec k[x,y,z,w]/(f(x,y,z) + w^n) with f a cubic
/// in Weierstrass or Legendre normal form.  General ternary cubics are
/// not accepted.
class ConeFamily {
public:
    /// f = y^2 z - (x^3 + A x z^2 + B z^3); requires p > 3.
    static ConeFamily weierstrass(std::uint64_t p, const FqElem& A, const FqElem& B, std::uint64_t n);
    /// f = y^2 z - x(x - z)(x - lambda z); lambda outside {0, 1}.
    static ConeFamily legendre(std::uint64_t p, const FqElem& lambda, std::uint64_t n);

    std::uint64_t p() const { return p_; }
    std::uint64_t n() const { return n_; }
    bool is_weierstrass() const { return weierstrass_; }
    const FqCtx& context() const { return ctx_; }

    /// The cubic as a sparse polynomial in (x, y, z).
    SparsePoly cubic() const;
    /// Coefficients of -f + y^2 z = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3.
    FqElem a2() const { return a2_; }
    FqElem a4() const { return a4_; }
    FqElem a6() const { return a6_; }
    std::string str() const;

private:
    ConeFamily(std::uint64_t p, FqCtx ctx, bool w, FqElem a2, FqElem a4, FqElem a6, std::uint64_t n);
    std::uint64_t p_;
    FqCtx ctx_;
    bool weierstrass_;
    FqElem a2_, a4_, a6_;
    std::uint64_t n_;
};

/// Smoothness verdict for the family's cubic: the normal-form criterion
/// plus, when p^m stays under the brute-force bound, an exhaustive search
/// for common projective zeros of f and its partials over F_{p^m}, m <= 2.
struct SmoothCheck {
    bool smooth = false;
    std::string detail;
    bool brute_forced = false;
    std::vector<std::uint64_t> searched_orders;
};
SmoothCheck smooth_cubic_check(const ConeFamily& family);

enum class ChainVerdict { Smooth, TerminalBase, CrepantStep };
std::string verdict_name(ChainVerdict v);

struct ChainStep {
    std::uint64_t n = 0;
    ChainVerdict verdict = ChainVerdict::Smooth;
    Json evidence = Json::object();
};

/// The blow-up recursion n -> n-3 certifying that X_n is canonical:
/// crepant steps carry chart-smoothness evidence and the multiplicity-3
/// crepancy identity, the n = 2 base carries the du Val slice data, and
/// n <= 1 is smooth.  Requires p > 5 and a smooth cubic.
struct CanonicityChain {
    std::vector<ChainStep> steps;
};
CanonicityChain canonicity_chain(const ConeFamily& family);

/// Fedder test for X_n, valid for every n and p; when n >= p the
/// three-variable reduction is verified against the four-variable test.
struct FpureResult {
    bool fpure = false;
    bool reduction_checked = false;
    bool three_var_result = false;
    Json data = Json::object();
};
FpureResult fpure_check_Xn(const ConeFamily& family);

/// Theorem-2 pipeline: for p <= 5 the fixed equation x^2 + y^3 + z^5, for
/// p > 5 a supersingular cubic cone with n = p.
Certificate build_non_fpure_canonical(std::uint64_t p);

} // namespace frobsplit
