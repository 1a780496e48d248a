#include "frobsplit/surfcalc.hpp"

#include <algorithm>
#include <sstream>

namespace frobsplit {

// ---------------------------------------------------------------------------
// Exact linear algebra

RatVec solve_linear(RatMat A, RatVec b) {
    const std::size_t rows = A.size();
    if (rows != b.size()) throw DomainError("solve_linear: dimension mismatch");
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    for (const auto& row : A)
        if (row.size() != cols) throw DomainError("solve_linear: ragged matrix");

    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        Rat inv = Rat(1) / A[r][c];
        for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) throw DomainError("solve_linear: inconsistent system");
    if (pivot_col_of_row.size() < cols)
        throw DomainError("solve_linear: singular or underdetermined system");
    RatVec x(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = b[i];
    return x;
}

bool is_negative_definite(const RatMat& g) {
    const std::size_t n = g.size();
    for (const auto& row : g)
        if (row.size() != n) throw DomainError("definiteness test: not square");
    if (n == 0) return true;
    // Symmetric elimination without pivoting: negative definite iff every
    // pivot is negative (equivalently the leading minors alternate sign).
    RatMat a = g;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] >= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

Inertia symmetric_inertia(RatMat g) {
    const std::size_t n = g.size();
    Inertia result;
    for (std::size_t k = 0; k < n; ++k) {
        if (g[k][k] == 0) {
            // congruence fix-ups preserve inertia
            std::size_t j = k + 1;
            while (j < n && g[j][j] == 0) ++j;
            if (j < n) {
                std::swap(g[k], g[j]);
                for (auto& row : g) std::swap(row[k], row[j]);
            } else {
                j = k + 1;
                while (j < n && g[k][j] == 0) ++j;
                if (j == n) {
                    ++result.zero;
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) g[k][c] += g[j][c];
                for (std::size_t rr = 0; rr < n; ++rr) g[rr][k] += g[rr][j];
            }
        }
        if (g[k][k] > 0)
            ++result.positive;
        else
            ++result.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (g[i][k] == 0) continue;
            Rat f = g[i][k] / g[k][k];
            for (std::size_t c = 0; c < n; ++c) g[i][c] -= f * g[k][c];
            for (std::size_t rr = 0; rr < n; ++rr) g[rr][i] -= f * g[rr][k];
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// SurfaceModel

SurfaceModel::SurfaceModel(std::vector<std::string> basis, RatMat gram, RatVec canonical)
    : basis_(std::move(basis)), gram_(std::move(gram)), canonical_(std::move(canonical)) {
    const std::size_t n = basis_.size();
    if (gram_.size() != n || canonical_.size() != n)
        throw DomainError("surface model: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n) throw DomainError("surface model: Gram matrix not square");
        for (std::size_t j = 0; j < i; ++j)
            if (gram_[i][j] != gram_[j][i]) throw DomainError("surface model: Gram matrix not symmetric");
    }
}

Rat SurfaceModel::pair(const RatVec& a, const RatVec& b) const {
    if (a.size() != rank() || b.size() != rank()) throw DomainError("pairing: dimension mismatch");
    Rat total = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) {
            if (b[j] == 0) continue;
            total += a[i] * gram_[i][j] * b[j];
        }
    }
    return total;
}

bool SurfaceModel::is_zero_class(const RatVec& v) const {
    if (v.size() != rank()) throw DomainError("class: dimension mismatch");
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

bool SurfaceModel::numerically_trivial(const RatVec& v) const {
    if (!is_zero_class(v)) return false;
    for (const CurveClass& t : tracked_)
        if (pair(v, t.coords) != 0) return false;
    return true;
}

void SurfaceModel::track(CurveClass c) {
    if (c.coords.size() != rank()) throw DomainError("tracked class: dimension mismatch");
    if (has_tracked(c.label)) throw DomainError("tracked label already present: " + c.label);
    tracked_.push_back(std::move(c));
}

bool SurfaceModel::has_tracked(const std::string& label) const {
    for (const CurveClass& t : tracked_)
        if (t.label == label) return true;
    return false;
}

const CurveClass& SurfaceModel::tracked_class(const std::string& label) const {
    for (const CurveClass& t : tracked_)
        if (t.label == label) return t;
    throw DomainError("no tracked class labelled " + label);
}

SurfaceModel p1xp1_model() {
    SurfaceModel m({"f1", "f2"}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, {Rat(-2), Rat(-2)});
    m.track({"C", {Rat(1), Rat(1)}});
    m.track({"F1", {Rat(1), Rat(0)}});
    m.track({"F2", {Rat(1), Rat(0)}});
    m.track({"F3", {Rat(0), Rat(1)}});
    m.track({"F4", {Rat(0), Rat(1)}});
    return m;
}

SurfaceModel blow_up(const SurfaceModel& model, const std::map<std::string, std::uint64_t>& mults,
                     const std::string& exceptional_label) {
    for (const auto& [label, m] : mults) {
        (void)m;
        if (!model.has_tracked(label)) throw DomainError("blow-up multiplicity on unknown curve " + label);
    }
    const std::size_t n = model.rank();
    std::vector<std::string> basis = model.basis();
    if (std::find(basis.begin(), basis.end(), exceptional_label) != basis.end())
        throw DomainError("exceptional label already used: " + exceptional_label);
    basis.push_back(exceptional_label);

    RatMat gram(n + 1, RatVec(n + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] = model.gram()[i][j];
    gram[n][n] = Rat(-1);

    RatVec canonical = model.canonical();
    canonical.push_back(Rat(1));

    SurfaceModel out(std::move(basis), std::move(gram), std::move(canonical));
    for (const CurveClass& t : model.tracked()) {
        RatVec coords = t.coords;
        auto it = mults.find(t.label);
        coords.push_back(it == mults.end() ? Rat(0) : -Rat(Int(it->second)));
        out.track({t.label, std::move(coords)});
    }
    RatVec exc(n + 1, Rat(0));
    exc[n] = Rat(1);
    out.track({exceptional_label, std::move(exc)});
    return out;
}

// ---------------------------------------------------------------------------
// Contraction

RatVec ContractionData::project(const RatVec& upstairs) const {
    if (contracted.empty()) return upstairs;
    RatVec rhs(contracted.size());
    for (std::size_t i = 0; i < contracted.size(); ++i)
        rhs[i] = -source.pair(contracted_classes[i], upstairs);
    RatVec a = solve_linear(contracted_gram, rhs);
    RatVec out = upstairs;
    for (std::size_t i = 0; i < contracted.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += a[i] * contracted_classes[i][j];
    return out;
}

RatVec ContractionData::pushforward(const RatVec& upstairs) const {
    RatVec proj = project(upstairs);
    // solve sum_j c_j * pullback_rows[j] = proj
    const std::size_t nup = source.rank(), ndown = pullback_rows.size();
    RatMat A(nup, RatVec(ndown, Rat(0)));
    for (std::size_t j = 0; j < ndown; ++j)
        for (std::size_t i = 0; i < nup; ++i) A[i][j] = pullback_rows[j][i];
    return solve_linear(std::move(A), std::move(proj));
}

RatVec ContractionData::pullback(const RatVec& downstairs) const {
    if (downstairs.size() != pullback_rows.size()) throw DomainError("pullback: dimension mismatch");
    RatVec out(source.rank(), Rat(0));
    for (std::size_t j = 0; j < downstairs.size(); ++j)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += downstairs[j] * pullback_rows[j][i];
    return out;
}

ContractionData contract(const SurfaceModel& model, const std::vector<std::string>& labels) {
    ContractionData cd;
    cd.source = model;
    cd.contracted = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        cd.contracted_classes.push_back(model.tracked_class(labels[i]).coords);
        for (std::size_t j = 0; j < i; ++j)
            if (labels[j] == labels[i]) throw DomainError("duplicate contracted label " + labels[i]);
    }
    const std::size_t k = labels.size();
    cd.contracted_gram.assign(k, RatVec(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cd.contracted_gram[i][j] = model.pair(cd.contracted_classes[i], cd.contracted_classes[j]);
    if (!is_negative_definite(cd.contracted_gram))
        throw DomainError("contracted configuration is not negative definite");

    // Pick a downstairs basis: projections of upstairs basis vectors,
    // greedily keeping an independent set.
    const std::size_t n = model.rank();
    std::vector<std::string> down_labels;
    RatMat reduced; // row-echelon copies for the independence test
    for (std::size_t i = 0; i < n && cd.pullback_rows.size() < n - k; ++i) {
        RatVec e(n, Rat(0));
        e[i] = Rat(1);
        RatVec candidate = cd.project(e);
        RatVec work = candidate;
        for (const RatVec& row : reduced) {
            std::size_t lead = 0;
            while (lead < n && row[lead] == 0) ++lead;
            if (lead < n && work[lead] != 0) {
                Rat f = work[lead] / row[lead];
                for (std::size_t j = 0; j < n; ++j) work[j] -= f * row[j];
            }
        }
        bool nonzero = std::any_of(work.begin(), work.end(), [](const Rat& x) { return x != 0; });
        if (!nonzero) continue;
        reduced.push_back(std::move(work));
        cd.pullback_rows.push_back(std::move(candidate));
        down_labels.push_back(model.basis()[i]);
    }
    if (cd.pullback_rows.size() != n - k)
        throw IdentityError("projection rank does not match rank - #contracted");

    RatMat down_gram(n - k, RatVec(n - k, Rat(0)));
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j)
            down_gram[i][j] = model.pair(cd.pullback_rows[i], cd.pullback_rows[j]);

    // discrepancies: K_up = pullback(K_down) + sum d_i E_i
    if (k > 0) {
        RatVec rhs(k);
        for (std::size_t i = 0; i < k; ++i)
            rhs[i] = model.pair(cd.contracted_classes[i], model.canonical());
        cd.discrepancies = solve_linear(cd.contracted_gram, std::move(rhs));
    }

    SurfaceModel target(std::move(down_labels), std::move(down_gram), RatVec(n - k, Rat(0)));
    // canonical and tracked classes move by pushforward
    cd.target = target; // temporary: pushforward needs pullback_rows only
    RatVec k_down = cd.pushforward(model.canonical());
    SurfaceModel final_target(cd.target.basis(), cd.target.gram(), k_down);
    for (const CurveClass& t : model.tracked()) {
        if (std::find(labels.begin(), labels.end(), t.label) != labels.end()) continue;
        final_target.track({t.label, cd.pushforward(t.coords)});
    }
    cd.target = std::move(final_target);

    // Contracting a negative-definite set from a (1, r-1) lattice must
    // leave (1, r-k-1); anything else is an internal inconsistency.
    Inertia up = symmetric_inertia(model.gram());
    if (up.positive == 1 && up.zero == 0) {
        Inertia down = symmetric_inertia(cd.target.gram());
        if (!(down.positive == 1 && down.zero == 0 && down.negative == n - k - 1))
            throw IdentityError("contraction broke the lattice signature");
    }
    return cd;
}

std::map<std::string, Rat> different_coefficients(const ContractionData& cd, const std::string& curve) {
    const SurfaceModel& up = cd.source;
    if (std::find(cd.contracted.begin(), cd.contracted.end(), curve) != cd.contracted.end())
        throw DomainError("the curve carrying the different must not be contracted");
    const CurveClass& c = up.tracked_class(curve);
    const std::size_t k = cd.contracted.size();
    std::map<std::string, Rat> out;
    if (k == 0) return out;

    // log-crepant coefficients: pullback(K_down + C_down) = (K + C~) + sum gamma_j E_j
    RatVec kc = up.canonical();
    for (std::size_t i = 0; i < kc.size(); ++i) kc[i] += c.coords[i];
    RatVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = up.pair(cd.contracted_classes[i], kc);
    RatVec gamma = solve_linear(cd.contracted_gram, std::move(rhs));
    for (Rat& g : gamma) g = -g;

    // connected clusters of the contracted configuration
    std::vector<std::size_t> comp(k);
    for (std::size_t i = 0; i < k; ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                if (i == j || cd.contracted_gram[i][j] == 0) continue;
                std::size_t lo = std::min(comp[i], comp[j]);
                if (comp[i] != lo || comp[j] != lo) {
                    comp[i] = comp[j] = lo;
                    changed = true;
                }
            }
    }
    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < k; ++i) clusters[comp[i]].push_back(i);

    for (const auto& [rep, members] : clusters) {
        (void)rep;
        bool meets = false;
        Rat value = 0;
        std::vector<std::string> names;
        for (std::size_t j : members) {
            Rat inter = up.pair(cd.contracted_classes[j], c.coords);
            if (inter != 0) meets = true;
            value += gamma[j] * inter;
            names.push_back(cd.contracted[j]);
        }
        if (!meets) continue; // clusters away from the curve contribute no point
        std::sort(names.begin(), names.end());
        std::string key = names[0];
        for (std::size_t i = 1; i < names.size(); ++i) key += "+" + names[i];
        out[key] = value;
    }
    return out;
}

PositivityReport positivity_check(const SurfaceModel& model, const CurveClass& d) {
    PositivityReport report;
    report.label = d.label;
    report.self_intersection = model.pair(d.coords, d.coords);
    report.all_positive = report.self_intersection > 0;
    for (const CurveClass& t : model.tracked()) {
        Rat v = model.pair(d.coords, t.coords);
        report.against_tracked.emplace_back(t.label, v);
        if (v <= 0) report.all_positive = false;
    }
    return report;
}

// ---------------------------------------------------------------------------
// The del Pezzo tower

namespace {

void require(TowerReport& report, const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
    if (!ok) throw IdentityError("del Pezzo tower check failed: " + name + " (" + detail + ")");
}

RatVec add_scaled(const RatVec& a, const Rat& s, const RatVec& b) {
    RatVec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
    return out;
}

} // namespace

TowerReport build_del_pezzo_tower(std::uint64_t n) {
    if (n < 4) throw DomainError("the tower needs n >= 4");
    TowerReport report;
    report.n = n;

    SurfaceModel p1p1 = p1xp1_model();
    report.ranks.emplace_back("P1xP1", p1p1.rank());
    {
        const RatVec& c = p1p1.tracked_class("C").coords;
        require(report, "C^2 = 2 on P1xP1", p1p1.pair(c, c) == 2, rat_str(p1p1.pair(c, c)));
        require(report, "K.C = -4 on P1xP1", p1p1.pair(p1p1.canonical(), c) == -4,
                rat_str(p1p1.pair(p1p1.canonical(), c)));
        RatVec lc = p1p1.canonical();
        lc = add_scaled(lc, Rat(1), c);
        for (const char* f : {"F1", "F2", "F3", "F4"})
            lc = add_scaled(lc, Rat(1, 2), p1p1.tracked_class(f).coords);
        for (Rat& v : lc) v *= 2;
        require(report, "2(K + C + 1/2 sum F) ~ 0 on P1xP1", p1p1.numerically_trivial(lc), "log Calabi-Yau");
    }

    // S: blow up the four points (F1 u F2) n (F3 u F4).
    SurfaceModel s = p1p1;
    const std::pair<const char*, const char*> centers[4] = {
        {"F1", "F3"}, {"F1", "F4"}, {"F2", "F3"}, {"F2", "F4"}};
    for (int i = 0; i < 4; ++i) {
        std::map<std::string, std::uint64_t> mults{{centers[i].first, 1}, {centers[i].second, 1}};
        s = blow_up(s, mults, "G" + std::to_string(i + 1));
        Rat ksq = s.pair(s.canonical(), s.canonical());
        require(report, "K^2 drops by one (blow-up " + std::to_string(i + 1) + ")",
                ksq == Rat(8 - (i + 1)), rat_str(ksq));
    }
    report.ranks.emplace_back("S", s.rank());
    for (const char* fi : {"F1", "F2", "F3", "F4"}) {
        const RatVec& v = s.tracked_class(fi).coords;
        require(report, std::string(fi) + " is a (-2)-curve on S", s.pair(v, v) == -2, rat_str(s.pair(v, v)));
        for (const char* fj : {"F1", "F2", "F3", "F4"}) {
            if (std::string(fi) >= fj) continue;
            Rat inter = s.pair(v, s.tracked_class(fj).coords);
            require(report, std::string("fibers disjoint: ") + fi + "." + fj, inter == 0, rat_str(inter));
        }
    }
    {
        RatVec lc = s.canonical();
        lc = add_scaled(lc, Rat(1), s.tracked_class("C").coords);
        for (const char* f : {"F1", "F2", "F3", "F4"})
            lc = add_scaled(lc, Rat(1, 2), s.tracked_class(f).coords);
        for (Rat& v : lc) v *= 2;
        require(report, "2(K + C + 1/2 sum F) ~ 0 on S", s.numerically_trivial(lc), "log Calabi-Yau");
    }

    // psi: S -> Z contracts the four (-2)-fibers.
    ContractionData psi = contract(s, {"F1", "F2", "F3", "F4"});
    {
        RatVec kc = psi.target.canonical();
        kc = add_scaled(kc, Rat(1), psi.target.tracked_class("C").coords);
        for (Rat& v : kc) v *= 2;
        require(report, "2(K_Z + C_Z) ~ 0", psi.target.numerically_trivial(kc), "log Calabi-Yau on Z");
        for (const Rat& d : psi.discrepancies)
            require(report, "psi is crepant (A1 discrepancies vanish)", d == 0, rat_str(d));
        report.diff = different_coefficients(psi, "C");
        bool four_halves = report.diff.size() == 4;
        for (const auto& [cluster, value] : report.diff)
            if (value != Rat(1, 2)) four_halves = false;
        std::ostringstream os;
        for (const auto& [cluster, value] : report.diff) os << cluster << ":" << rat_str(value) << " ";
        require(report, "Diff_{C_Z} = 1/2 sum Q_i", four_halves, os.str());
        report.cz_positivity = positivity_check(psi.target, psi.target.tracked_class("C"));
        require(report, "C_Z is ample against the tracked set", report.cz_positivity.all_positive,
                "C_Z^2 = " + rat_str(report.cz_positivity.self_intersection));
    }

    // S-bar: n infinitely-near blow-ups along C, starting at C n F1.
    SurfaceModel sbar = s;
    {
        std::map<std::string, std::uint64_t> first{{"C", 1}, {"F1", 1}};
        sbar = blow_up(sbar, first, "E1");
        for (std::uint64_t i = 2; i <= n; ++i) {
            std::map<std::string, std::uint64_t> mults{{"C", 1}, {"E" + std::to_string(i - 1), 1}};
            sbar = blow_up(sbar, mults, "E" + std::to_string(i));
        }
    }
    report.ranks.emplace_back("S-bar", sbar.rank());
    require(report, "rank(S-bar) = 6 + n", sbar.rank() == 6 + n, std::to_string(sbar.rank()));
    {
        RatVec lc = sbar.canonical();
        lc = add_scaled(lc, Rat(1), sbar.tracked_class("C").coords);
        for (const char* f : {"F1", "F2", "F3", "F4"})
            lc = add_scaled(lc, Rat(1, 2), sbar.tracked_class(f).coords);
        for (std::uint64_t i = 1; i <= n; ++i)
            lc = add_scaled(lc, Rat(1, 2), sbar.tracked_class("E" + std::to_string(i)).coords);
        for (Rat& v : lc) v *= 2;
        require(report, "2(K + C + 1/2 sum F + 1/2 sum E) ~ 0 on S-bar", sbar.numerically_trivial(lc),
                "log Calabi-Yau");
    }

    // h: S-bar -> Y contracts F2, F3, F4 and the chain E_{n-1}, ..., E_1, F1.
    std::vector<std::string> h_set = {"F2", "F3", "F4"};
    for (std::uint64_t i = n - 1; i >= 1; --i) h_set.push_back("E" + std::to_string(i));
    h_set.push_back("F1");
    ContractionData h = contract(sbar, h_set);
    report.ranks.emplace_back("Y", h.target.rank());
    require(report, "rank(Y) = 3", h.target.rank() == 3, std::to_string(h.target.rank()));

    const SurfaceModel& y = h.target;
    const std::string ey_label = "E" + std::to_string(n);
    RatVec c_y = y.tracked_class("C").coords;
    RatVec e_y = y.tracked_class(ey_label).coords;
    report.c_y_sq = y.pair(c_y, c_y);
    report.e_y_sq = y.pair(e_y, e_y);
    require(report, "C_Y^2 = 7/2 - n", report.c_y_sq == Rat(7, 2) - Rat(Int(n)), rat_str(report.c_y_sq));
    require(report, "C_Y is contractible (C_Y^2 < 0)", report.c_y_sq < 0, rat_str(report.c_y_sq));
    require(report, "E_Y is contractible (E_Y^2 < 0)", report.e_y_sq < 0, rat_str(report.e_y_sq));
    {
        RatVec kcy = add_scaled(add_scaled(y.canonical(), Rat(1), c_y), Rat(1, 2), e_y);
        require(report, "K_Y + C_Y + 1/2 E_Y ~ 0", y.numerically_trivial(kcy), "pullback of K_Z + C_Z");
        RatVec kc = add_scaled(y.canonical(), Rat(1), c_y);
        report.pairing_bound = -y.pair(kc, c_y);
        require(report, "0 < -(K_Y + C_Y).C_Y <= 2",
                report.pairing_bound > 0 && report.pairing_bound <= 2, rat_str(report.pairing_bound));
    }

    // g: Y -> Z contracts E_Y; the pullback of C_Z carries a > 0 on E_Y.
    ContractionData g = contract(y, {ey_label});
    {
        RatVec cz_up = g.project(c_y); // = C_Y + a E_Y
        report.a = -y.pair(c_y, e_y) / report.e_y_sq;
        RatVec expect = add_scaled(c_y, report.a, e_y);
        require(report, "g*C_Z = C_Y + a E_Y with a > 0",
                cz_up == expect && report.a > 0, "a = " + rat_str(report.a));
        // Two independent routes to Z agree on C_Z^2.
        Rat czsq_via_g = y.pair(cz_up, cz_up);
        Rat czsq_via_psi = report.cz_positivity.self_intersection;
        require(report, "both routes to Z give the same C_Z^2", czsq_via_g == czsq_via_psi,
                rat_str(czsq_via_g) + " vs " + rat_str(czsq_via_psi));
    }

    // f: Y -> X contracts C_Y.
    ContractionData f = contract(y, {"C"});
    report.ranks.emplace_back("Z and X", f.target.rank());
    require(report, "rank(Z) = rank(X) = 2",
            psi.target.rank() == 2 && g.target.rank() == 2 && f.target.rank() == 2,
            std::to_string(g.target.rank()) + ", " + std::to_string(f.target.rank()));
    {
        report.b = -y.pair(y.canonical(), c_y) / report.c_y_sq;
        // cross-check through the contraction's discrepancy: K_Y =
        // f*K_X + d C_Y forces b = -d.
        require(report, "b agrees with the f-discrepancy", report.b == -f.discrepancies[0],
                rat_str(report.b) + " vs " + rat_str(-f.discrepancies[0]));
        report.one_minus_b = Rat(1) - report.b;
        report.b_bound = Rat(2) / (Rat(Int(n)) - Rat(7, 2));
        require(report, "0 < 1 - b <= 2/(n - 7/2)",
                report.one_minus_b > 0 && report.one_minus_b <= report.b_bound,
                rat_str(report.one_minus_b) + " <= " + rat_str(report.b_bound));

        RatVec e_x = f.pushforward(e_y);
        CurveClass fey{"f_*E_Y", e_x};
        report.fey_positivity = positivity_check(f.target, fey);
        require(report, "f_*E_Y is ample against the tracked set", report.fey_positivity.all_positive,
                "(f_*E_Y)^2 = " + rat_str(report.fey_positivity.self_intersection));

        // -K_X ~ (1/2) f_* E_Y, so X is a del Pezzo surface.
        RatVec minus_kx = f.target.canonical();
        for (Rat& v : minus_kx) v = -v;
        RatVec half_ex = e_x;
        for (Rat& v : half_ex) v /= 2;
        require(report, "-K_X = 1/2 f_*E_Y", minus_kx == half_ex, "anticanonical is half the image of E_Y");
    }

    require(report, "rank bookkeeping 2 -> 6 -> 6+n -> 3 -> 2",
            report.ranks[0].second == 2 && report.ranks[1].second == 6 &&
                report.ranks[2].second == 6 + n && report.ranks[3].second == 3 &&
                report.ranks[4].second == 2,
            "");
    return report;
}

} // namespace frobsplit
