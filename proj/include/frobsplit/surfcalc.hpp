#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frobsplit/rational.hpp"

namespace frobsplit {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

/// Exact solve of A x = b (A square, or consistent rectangular).
RatVec solve_linear(RatMat A, RatVec b);

/// Leading-principal-minor test: minors alternate (-1)^k strictly.
bool is_negative_definite(const RatMat& g);

/// Inertia (positive, negative, zero) of a symmetric rational matrix via
/// congruence diagonalization.
struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    bool operator==(const Inertia&) const = default;
};
Inertia symmetric_inertia(RatMat g);

/// Named rational class in the basis of its owning SurfaceModel.
struct CurveClass {
    std::string label;
    RatVec coords;
};

/// Free rational lattice of curve classes: a basis with a symmetric Gram
/// matrix, the canonical class, and the effective curves the model tracks.
/// Immutable; every operation returns a new model.
class SurfaceModel {
public:
    SurfaceModel() = default; // the empty rank-0 model
    SurfaceModel(std::vector<std::string> basis, RatMat gram, RatVec canonical);

    std::size_t rank() const { return basis_.size(); }
    const std::vector<std::string>& basis() const { return basis_; }
    const RatMat& gram() const { return gram_; }
    const RatVec& canonical() const { return canonical_; }

    Rat pair(const RatVec& a, const RatVec& b) const;
    bool is_zero_class(const RatVec& v) const;
    /// Numerical triviality: the zero vector, hence orthogonal to
    /// everything the model knows.
    bool numerically_trivial(const RatVec& v) const;

    void track(CurveClass c);
    const std::vector<CurveClass>& tracked() const { return tracked_; }
    bool has_tracked(const std::string& label) const;
    const CurveClass& tracked_class(const std::string& label) const;

private:
    std::vector<std::string> basis_;
    RatMat gram_;
    RatVec canonical_;
    std::vector<CurveClass> tracked_;
};

/// P^1 x P^1 with basis {f1, f2}, Gram [[0,1],[1,0]], K = -2f1 - 2f2;
/// tracked: the diagonal C = f1 + f2 and four fibers F1, F2 ~ f1,
/// F3, F4 ~ f2.
SurfaceModel p1xp1_model();

/// Blow-up at one point with the given multiplicities on tracked curves
/// (absent labels get multiplicity 0).  The new exceptional curve gets
/// E^2 = -1, every tracked class C becomes C - m_C E, and K becomes K + E.
SurfaceModel blow_up(const SurfaceModel& model, const std::map<std::string, std::uint64_t>& mults,
                     const std::string& exceptional_label);

/// Contraction of a negative-definite set of tracked curves.  Downstairs
/// classes are represented upstairs through the Mumford numerical
/// pullback (the unique representative orthogonal to every contracted
/// curve); the target model's Gram matrix is rational.
struct ContractionData {
    SurfaceModel source;
    SurfaceModel target;
    std::vector<std::string> contracted;
    std::vector<RatVec> contracted_classes; // upstairs coords, aligned with `contracted`
    RatMat contracted_gram;                 // negative definite
    std::vector<RatVec> pullback_rows;      // target basis written upstairs
    std::vector<Rat> discrepancies;         // K_up = pullback(K_down) + sum d_i E_i

    /// Orthogonal projection onto the complement of the contracted span
    /// (= pullback of the pushforward), in upstairs coordinates.
    RatVec project(const RatVec& upstairs) const;
    /// Downstairs coordinates of the pushforward.
    RatVec pushforward(const RatVec& upstairs) const;
    /// Upstairs representative of a downstairs class.
    RatVec pullback(const RatVec& downstairs) const;
};

ContractionData contract(const SurfaceModel& model, const std::vector<std::string>& labels);

/// Coefficients of the different along a non-contracted tracked curve:
/// for each connected cluster of contracted curves meeting the curve,
/// sum_j c_j (E_j . C~) with c_j the log-crepant pullback coefficients of
/// K_down + C_down.  Cluster keys are the sorted member labels joined
/// with '+'.
std::map<std::string, Rat> different_coefficients(const ContractionData& cd, const std::string& curve);

/// Nakai-Moishezon-style positivity against the tracked set only: D^2 > 0
/// and D.T > 0 for every tracked class.
struct PositivityReport {
    std::string label;
    Rat self_intersection;
    std::vector<std::pair<std::string, Rat>> against_tracked;
    bool all_positive = false;
};
PositivityReport positivity_check(const SurfaceModel& model, const CurveClass& d);

struct NamedCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Everything the del Pezzo pipeline computes and verifies for one n.
struct TowerReport {
    std::uint64_t n = 0;
    std::vector<std::pair<std::string, std::size_t>> ranks;
    Rat c_y_sq;       // = 7/2 - n
    Rat e_y_sq;       // computed by the solver; no closed form asserted here
    Rat a;            // g*C_Z = C_Y + a E_Y
    Rat b;            // K_Y + b C_Y = f*K_X
    Rat pairing_bound; // -(K_Y + C_Y).C_Y
    Rat one_minus_b;
    Rat b_bound;      // 2/(n - 7/2)
    std::map<std::string, Rat> diff; // psi: S -> Z along C
    PositivityReport cz_positivity;
    PositivityReport fey_positivity;
    std::vector<NamedCheck> checks;
};

/// Runs P^1xP^1 -> S -> S-bar -> Y -> {Z, X} for the given n >= 4 and
/// verifies every numeric identity of the construction; throws
/// IdentityError naming the first identity that fails.
TowerReport build_del_pezzo_tower(std::uint64_t n);

} // namespace frobsplit
