#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "duality.hpp"
#include "operator_path.hpp"

namespace hpcx {

/// Hilbert-Poincare pair (E, b, T, P): an (n+1)-dimensional complex with a
/// duality E_p -> E_{n+1-p} and the 0/1 diagonal projection onto the
/// boundary-supported basis.
struct HpPair {
    GradedChainComplex E;        // complex of the pair, dimension n+1
    DualityOperator T;           // symmetrized, d = n+1
    std::vector<char> on_boundary;  // P diagonal per flat index
    int boundary_dim = 0;        // n

    int pair_dim() const { return E.n; }

    SparseQ P() const {
        SparseQ p(E.size(), E.size());
        for (int i = 0; i < E.size(); ++i)
            if (on_boundary[i]) p.set(i, i, Rational(1));
        return p;
    }
    SparseQ P_perp() const {
        SparseQ p(E.size(), E.size());
        for (int i = 0; i < E.size(); ++i)
            if (!on_boundary[i]) p.set(i, i, Rational(1));
        return p;
    }
    std::vector<int> p_indices() const {
        std::vector<int> out;
        for (int i = 0; i < E.size(); ++i)
            if (on_boundary[i]) out.push_back(i);
        return out;
    }
    std::vector<int> p_perp_indices() const {
        std::vector<int> out;
        for (int i = 0; i < E.size(); ++i)
            if (!on_boundary[i]) out.push_back(i);
        return out;
    }
};

struct PairValidation {
    bool subcomplex_exact = false;     // P b P = b P
    bool range_condition_exact = false;  // range(T b* + (-1)^p b T) inside range(P)
    bool symmetry_exact = false;       // T* = (-1)^{p(n+1-p)} T
    bool quotient_duality_iso = false;  // P-perp T : dual -> quotient is a homology iso
    bool pass() const {
        return subcomplex_exact && range_condition_exact && symmetry_exact && quotient_duality_iso;
    }
    std::string detail;
};

/// The quotient complex (P-perp E, P-perp b) of a pair, with the index map
/// back into the pair's flat basis.
inline GradedChainComplex quotient_complex(const HpPair& pair, std::vector<int>& idx) {
    idx = pair.p_perp_indices();
    GradedChainComplex Q;
    Q.n = pair.E.n;
    Q.offset.assign(Q.n + 2, 0);
    auto deg = pair.E.degrees_vector();
    std::vector<std::vector<int>> by_deg(Q.n + 1);
    for (int i : idx) by_deg[deg[i]].push_back(i);
    idx.clear();
    for (int p = 0; p <= Q.n; ++p) {
        Q.offset[p + 1] = Q.offset[p] + (int)by_deg[p].size();
        for (int i : by_deg[p]) idx.push_back(i);
    }
    Q.control.resize(idx.size());
    Q.label.resize(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        Q.control[k] = pair.E.control[idx[k]];
        Q.label[k] = pair.E.label[idx[k]];
    }
    Q.b = pair.E.b.submatrix(idx, idx);
    return Q;
}

inline PairValidation validate_pair(const HpPair& pair) {
    PairValidation rep;
    SparseQ P = pair.P();
    SparseQ Pp = pair.P_perp();
    rep.subcomplex_exact = (P * pair.E.b * P - pair.E.b * P).is_zero();
    SparseQ T0_spread = axiom2_residual(pair.E, pair.T.mat);  // T b* + (-1)^p b T
    rep.range_condition_exact = (Pp * T0_spread).is_zero();
    rep.symmetry_exact = axiom1_residual(pair.E, pair.T.mat, pair.pair_dim()).is_zero();

    // quotient duality: P-perp T as a chain map from the dual of (E, b) to
    // (P-perp E, P-perp b), then homology iso per degree
    std::vector<int> qidx;
    GradedChainComplex Q = quotient_complex(pair, qidx);
    DualComplex D = dual_complex(pair.E);
    SparseQ That = duality_as_chain_map(pair.E, D, pair.T.mat);
    // restrict rows to the quotient
    SparseQ PpT(Q.size(), D.E.size());
    {
        std::vector<int> rowpos(pair.E.size(), -1);
        for (std::size_t k = 0; k < qidx.size(); ++k) rowpos[qidx[k]] = (int)k;
        for (int c = 0; c < D.E.size(); ++c)
            for (auto& [r, v] : That.column(c))
                if (rowpos[r] >= 0) PpT.add(rowpos[r], c, v);
    }
    bool chain_map = (Q.b * PpT - PpT * D.E.b).is_zero();
    if (chain_map) {
        Homology HD(D.E), HQ(Q);
        rep.quotient_duality_iso = true;
        for (int q = 0; q <= Q.n; ++q) {
            SparseQ ind = induced_on_homology(PpT, D.E, Q, HD, HQ, q);
            if (!matrix_invertible(ind)) {
                rep.quotient_duality_iso = false;
                rep.detail += "quotient duality fails in degree " + std::to_string(q) + "; ";
            }
        }
    } else {
        rep.detail += "P-perp T is not a chain map; ";
    }
    return rep;
}

/// Builds the pair of an oriented pseudomanifold with boundary: relative
/// fundamental cycle, cap, symmetrize, boundary projection from the detected
/// boundary faces.
inline HpPair pair_from_boundary(const SimplicialComplex& K) {
    if (!K.has_boundary()) throw Error(ErrorKind::EmptyBoundary, "complex is closed");
    HpPair pair;
    pair.E = chain_complex(K);
    auto fc = fundamental_cycle(K, pair.E, true);
    pair.T = symmetrize(pair.E, cap_duality(K, pair.E, fc.xi));
    pair.boundary_dim = K.dim - 1;
    pair.on_boundary.assign(pair.E.size(), 0);
    auto supp = boundary_support(K);
    for (int p = 0; p <= K.dim; ++p)
        for (int i = 0; i < (int)K.simplices[p].size(); ++i)
            if (supp.count(K.simplices[p][i].v)) pair.on_boundary[pair.E.offset[p] + i] = 1;
    PairValidation v = validate_pair(pair);
    if (!v.pass())
        throw Error(ErrorKind::PairInvariantViolation, "pair axioms failed: " + v.detail);
    return pair;
}

/// Boundary operator T0 = T b* + (-1)^p b T of a pair (full flat form).
inline SparseQ boundary_duality_operator(const HpPair& pair) {
    return axiom2_residual(pair.E, pair.T.mat);
}

struct BoundaryOfPair {
    HpComplex hp;                 // (PE, Pb, T0), dimension n
    std::vector<int> flat_index;  // boundary flat index -> pair flat index
    bool t0_equals_PT0P = false;  // T0 = P T0 = T0 P exactly
};

/// The boundary HP complex (PE, Pb, T0); verifies the boundary-lemma
/// conclusions exactly before returning.
inline BoundaryOfPair boundary_of_pair(const HpPair& pair) {
    BoundaryOfPair out;
    SparseQ T0 = boundary_duality_operator(pair);
    SparseQ P = pair.P();
    out.t0_equals_PT0P = (P * T0 - T0).is_zero() && (T0 * P - T0).is_zero();
    if (!out.t0_equals_PT0P)
        throw Error(ErrorKind::PairInvariantViolation, "T0 is not supported on the boundary");

    // boundary complex on the P-flagged basis
    auto deg = pair.E.degrees_vector();
    std::vector<std::vector<int>> by_deg(pair.boundary_dim + 1);
    for (int i : pair.p_indices()) {
        if (deg[i] > pair.boundary_dim)
            throw Error(ErrorKind::PairInvariantViolation, "boundary basis in top degree");
        by_deg[deg[i]].push_back(i);
    }
    GradedChainComplex Eb;
    Eb.n = pair.boundary_dim;
    Eb.offset.assign(Eb.n + 2, 0);
    for (int p = 0; p <= Eb.n; ++p) {
        Eb.offset[p + 1] = Eb.offset[p] + (int)by_deg[p].size();
        for (int i : by_deg[p]) out.flat_index.push_back(i);
    }
    Eb.control.resize(out.flat_index.size());
    Eb.label.resize(out.flat_index.size());
    for (std::size_t k = 0; k < out.flat_index.size(); ++k) {
        Eb.control[k] = pair.E.control[out.flat_index[k]];
        Eb.label[k] = pair.E.label[out.flat_index[k]];
    }
    Eb.b = pair.E.b.submatrix(out.flat_index, out.flat_index);

    out.hp.E = std::move(Eb);
    out.hp.l = pair.boundary_dim / 2;
    out.hp.T.d = pair.boundary_dim;
    out.hp.T.symmetrized = true;
    out.hp.T.mat = T0.submatrix(out.flat_index, out.flat_index);

    // the lemma's conclusions, exactly
    if (!axiom1_residual(out.hp.E, out.hp.T.mat, out.hp.T.d).is_zero())
        throw Error(ErrorKind::PairInvariantViolation, "T0 symmetry failed");
    if (!axiom2_residual(out.hp.E, out.hp.T.mat).is_zero())
        throw Error(ErrorKind::PairInvariantViolation, "T0 anti-commutation failed");
    auto rep = validate_hp(out.hp.E, out.hp.T);
    if (!rep.pass())
        throw Error(ErrorKind::PairInvariantViolation, "T0 is not a homology equivalence");
    return out;
}

// ---------------------------------------------------------------------------
// mapping cone
// ---------------------------------------------------------------------------

/// Mapping cone of lambda P-perp: (E, b) -> (P-perp E, P-perp b). In the
/// duality grading the cone runs from degree -1 (interior vertices of the
/// second summand) to n+1 (top chains of the first); we store it with all
/// degrees shifted up by one, so stored degree q holds E_{q-1} (+) P-perp E_q
/// and the duality pairs stored degrees q and (n+2)-q. Signs and phases
/// always use the true degree q-1.
struct MappingCone {
    GradedChainComplex E;            // stored grading 0 .. n+2; E.b is b~_lambda
    int hp_dim = 0;                  // n: the duality pairs true degrees p and n-p
    static constexpr int degree_shift = 1;  // stored = true + 1
    std::vector<int> comp1;          // pair flat idx -> cone flat idx, E part
    std::vector<int> comp2;          // pair flat idx -> cone flat idx (interior only)
    Rational lambda;
    double s = 0;
    std::optional<SparseGQ> T_exact;  // at quarter phases e^{i pi s}
    SparseCD T_num;

    int true_degree(int flat) const { return E.degree_of(flat) - degree_shift; }

    template <class T, class F>
    SparseMat<T> true_degree_diagonal(F f) const {
        SparseMat<T> d(E.size(), E.size());
        for (int q = 0; q <= E.n; ++q) {
            T v = f(q - degree_shift);
            for (int i = E.offset[q]; i < E.offset[q + 1]; ++i) d.set(i, i, v);
        }
        return d;
    }

    /// S-operator of the cone at the stored phase; exact at quarter phases.
    std::optional<SparseGQ> S_exact() const {
        if (!T_exact) return std::nullopt;
        int l = hp_dim / 2;
        SparseGQ phases = true_degree_diagonal<GaussQ>(
            [&](int p) { return i_power((long)p * (p - 1) + l); });
        return *T_exact * phases;
    }
    SparseCD S_num() const {
        int l = hp_dim / 2;
        SparseCD phases = true_degree_diagonal<std::complex<double>>(
            [&](int p) { return to_cd(i_power((long)p * (p - 1) + l)); });
        return T_num * phases;
    }

    std::vector<int> even_indices() const {
        std::vector<int> out;
        for (int i = 0; i < E.size(); ++i)
            if (((true_degree(i) % 2) + 2) % 2 == 0) out.push_back(i);
        return out;
    }
    std::vector<int> odd_indices() const {
        std::vector<int> out;
        for (int i = 0; i < E.size(); ++i)
            if (((true_degree(i) % 2) + 2) % 2 == 1) out.push_back(i);
        return out;
    }
};

inline MappingCone mapping_cone(const HpPair& pair, const Rational& lambda, double s) {
    if (lambda < -1 || lambda > 0 || s < 0 || s > 1)
        throw Error(ErrorKind::ParameterOutOfRange, "need lambda in [-1,0], s in [0,1]");
    MappingCone cone;
    cone.lambda = lambda;
    cone.s = s;
    cone.hp_dim = pair.boundary_dim;
    const GradedChainComplex& E = pair.E;
    auto deg = E.degrees_vector();
    const int n = pair.boundary_dim;
    const int stored_top = n + 2;

    cone.comp1.assign(E.size(), -1);
    cone.comp2.assign(E.size(), -1);
    GradedChainComplex& C = cone.E;
    C.n = stored_top;
    C.offset.assign(stored_top + 2, 0);
    int cur = 0;
    for (int q = 0; q <= stored_top; ++q) {
        C.offset[q] = cur;
        if (q >= 1 && q - 1 <= E.n)
            for (int i = E.offset[q - 1]; i < E.offset[q]; ++i) cone.comp1[i] = cur++;
        if (q <= E.n)
            for (int i = E.offset[q]; i < E.offset[q + 1]; ++i)
                if (!pair.on_boundary[i]) cone.comp2[i] = cur++;
    }
    C.offset[stored_top + 1] = cur;
    C.control.resize(cur);
    C.label.resize(cur);
    for (int i = 0; i < E.size(); ++i) {
        if (cone.comp1[i] >= 0) {
            C.control[cone.comp1[i]] = E.control[i];
            C.label[cone.comp1[i]] = E.label[i];
        }
        if (cone.comp2[i] >= 0) {
            C.control[cone.comp2[i]] = E.control[i];
            C.label[cone.comp2[i]] = E.label[i] + "'";
        }
    }

    // b~ = [[b, 0], [lambda P-perp, -P-perp b]]
    C.b = SparseQ(cur, cur);
    for (int c = 0; c < E.size(); ++c) {
        for (auto& [r, v] : E.b.column(c)) {
            C.b.add(cone.comp1[r], cone.comp1[c], v);
            if (cone.comp2[c] >= 0 && cone.comp2[r] >= 0) C.b.add(cone.comp2[r], cone.comp2[c], -v);
        }
        if (lambda != 0 && cone.comp2[c] >= 0)
            C.b.add(cone.comp2[c], cone.comp1[c], lambda);
    }

    // T~ = [[0, e^{i pi s} T iota], [(-1)^p e^{-i pi s} P-perp T, 0]]
    bool quarter = false;
    GaussQ phase_exact;
    long twice = std::lround(2 * s);
    if (std::abs(2 * s - (double)twice) < 1e-15) {
        quarter = true;
        phase_exact = i_power(twice);  // e^{i pi s} = i^{2s}
    }
    std::complex<double> phase(std::cos(std::numbers::pi * s), std::sin(std::numbers::pi * s));
    cone.T_num = SparseCD(cur, cur);
    if (quarter) cone.T_exact = SparseGQ(cur, cur);
    for (int c = 0; c < E.size(); ++c) {
        int p = deg[c];
        for (auto& [r, v] : pair.T.mat.column(c)) {
            // comp2 -> comp1 block: input P-perp E_{p}, true degree p-1
            if (cone.comp2[c] >= 0) {
                cone.T_num.add(cone.comp1[r], cone.comp2[c], phase * to_cd(v));
                if (quarter)
                    cone.T_exact->add(cone.comp1[r], cone.comp2[c], phase_exact * GaussQ(v));
            }
            // comp1 -> comp2 block: (-1)^p e^{-i pi s} P-perp T, true source degree p
            if (cone.comp2[r] >= 0) {
                double sgn = (p % 2 == 0) ? 1.0 : -1.0;
                cone.T_num.add(cone.comp2[r], cone.comp1[c], sgn * std::conj(phase) * to_cd(v));
                if (quarter)
                    cone.T_exact->add(cone.comp2[r], cone.comp1[c],
                                      GaussQ(Rational(p % 2 == 0 ? 1 : -1)) *
                                          conj_scalar(phase_exact) * GaussQ(v));
            }
        }
    }
    if (!(C.b * C.b).is_zero())
        throw Error(ErrorKind::PairInvariantViolation, "cone differential does not square to zero");
    return cone;
}

/// Exact residual of T~* - (-1)^{(n-p)p} T~ in true degrees.
inline SparseGQ cone_symmetry_residual(const MappingCone& cone) {
    if (!cone.T_exact) throw Error(ErrorKind::InputError, "cone phase is not a quarter turn");
    SparseGQ Tadj = cone.T_exact->adjoint();
    SparseGQ out(cone.E.size(), cone.E.size());
    for (int c = 0; c < cone.E.size(); ++c) {
        int p = cone.true_degree(c);
        int sgn = (((cone.hp_dim - p) * p) % 2 == 0) ? 1 : -1;
        for (auto& [r, v] : Tadj.column(c)) out.add(r, c, GaussQ(Rational(sgn)) * v);
    }
    return out - *cone.T_exact;
}

/// Exact residual of T~ b~* + (-1)^p b~ T~ in true degrees.
inline SparseGQ cone_anticommutation_residual(const MappingCone& cone) {
    if (!cone.T_exact) throw Error(ErrorKind::InputError, "cone phase is not a quarter turn");
    SparseGQ bg = to_gauss_mat(cone.E.b);
    SparseGQ sign = cone.true_degree_diagonal<GaussQ>(
        [](int p) { return GaussQ(Rational((((p % 2) + 2) % 2 == 0) ? 1 : -1)); });
    return *cone.T_exact * bg.adjoint() + bg * *cone.T_exact * sign;
}

/// The inclusion A: (PE, Pb) -> cone, v -> (v, 0); a chain map for every
/// lambda and a homotopy equivalence at lambda = -1.
inline SparseQ cone_inclusion(const HpPair& pair, const BoundaryOfPair& bd, const MappingCone& cone) {
    SparseQ A(cone.E.size(), bd.hp.E.size());
    for (std::size_t k = 0; k < bd.flat_index.size(); ++k)
        A.set(cone.comp1[bd.flat_index[k]], (int)k, Rational(1));
    return A;
}

struct ConeEquivalenceReport {
    bool chain_map_exact = false;
    bool quasi_iso = false;
    bool homology_duality_match = false;  // H(A T0 A^t) = H(T~) as maps on homology
    bool pass() const { return chain_map_exact && quasi_iso && homology_duality_match; }
};

/// Exact verification that A conjugates the boundary HP structure into the
/// lambda = -1 cone up to homology.
inline ConeEquivalenceReport verify_cone_equivalence(const HpPair& pair,
                                                     const BoundaryOfPair& bd,
                                                     const MappingCone& cone) {
    ConeEquivalenceReport rep;
    if (!cone.T_exact) return rep;
    SparseQ A = cone_inclusion(pair, bd, cone);
    rep.chain_map_exact = (cone.E.b * A - A * bd.hp.E.b).is_zero();
    if (!rep.chain_map_exact) return rep;

    Homology Hb(bd.hp.E), Hc(cone.E);
    rep.quasi_iso = true;
    for (int q = 0; q <= bd.hp.E.n; ++q) {
        SparseQ ind = induced_on_homology(A, bd.hp.E, cone.E, Hb, Hc, q,
                                          q + MappingCone::degree_shift);
        if (!matrix_invertible(ind)) rep.quasi_iso = false;
    }
    if (!rep.quasi_iso) return rep;

    // homology-level duality: T~ and A T0 A* induce the same map from the
    // cone's dual homology (phase 0 or 1 cases: entries rational)
    SparseQ Tc = cone.T_exact->map<Rational>([](const GaussQ& z) {
        if (z.im != 0) throw Error(ErrorKind::InputError, "cone duality not rational");
        return z.re;
    });
    SparseQ AT0A = A * bd.hp.T.mat * A.adjoint();
    DualComplex D = dual_complex(cone.E);
    SparseQ M1 = duality_as_chain_map(cone.E, D, Tc, MappingCone::degree_shift);
    SparseQ M2 = duality_as_chain_map(cone.E, D, AT0A, MappingCone::degree_shift);
    Homology HD(D.E);
    rep.homology_duality_match = true;
    for (int q = 0; q <= cone.E.n; ++q) {
        SparseQ i1 = induced_on_homology(M1, D.E, cone.E, HD, Hc, q);
        SparseQ i2 = induced_on_homology(M2, D.E, cone.E, HD, Hc, q);
        if (!(i1 == i2)) rep.homology_duality_match = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// bordism path
// ---------------------------------------------------------------------------

struct BordismPathOptions {
    double inv_tol = 1e-8;
    double gap_tol = 1e-9;
    bool store_operators = false;
};

/// The two-segment family contracting the boundary signature element through
/// the mapping cone: coupling -(1-2t) P-perp for t in [0,1/2], phase
/// e^{i(2t-1)pi} for t in [1/2,1]. Every sample is certified; the endpoints
/// carry exact data.
inline OperatorPath bordism_path(const HpPair& pair, int samples,
                                 const BordismPathOptions& opt = {}) {
    if (samples < 2) throw Error(ErrorKind::ParameterOutOfRange, "need samples >= 2");
    const int n = pair.boundary_dim;
    OperatorPath path;
    path.even = (n % 2 == 0);

    auto eval = [&](int i) {
        Rational t_r(i, samples - 1);
        PathSample smp;
        smp.t = to_double(t_r);
        Rational lam;
        double s;
        if (t_r <= Rational(1, 2)) {
            lam = 2 * t_r - 1;  // -(1 - 2t), exact
            s = 0;
            smp.segment = "cone-segment";
        } else {
            lam = Rational(0);
            s = to_double(2 * t_r - 1);
            smp.segment = "phase-segment";
        }
        MappingCone cone = mapping_cone(pair, lam, s);
        SparseCD B = (cone.E.b + cone.E.b.adjoint()).to_complex();
        SparseCD S = cone.S_num();
        SparseCD plus = B + S;
        SparseCD minus = B - S;
        if (path.even) {
            InertiaCount cp = hermitian_inertia(plus, opt.gap_tol);
            InertiaCount cm = hermitian_inertia(minus, opt.gap_tol);
            smp.min_singular = std::min(cp.min_abs, cm.min_abs);
            smp.invertible = (cp.near_zero == 0 && cm.near_zero == 0);
            if (!smp.invertible)
                throw Error(ErrorKind::InvertibilityFailure,
                            "gap failure at t=" + std::to_string(smp.t));
            smp.rank_difference = cp.positive - cm.positive;
        } else {
            std::vector<int> ev = cone.even_indices(), od = cone.odd_indices();
            SparseCD Y = minus.submatrix(ev, od);
            SparseCD X = plus.submatrix(ev, od);
            double sy = std::min(min_singular_value(Y), min_singular_value(X));
            smp.min_singular = sy;
            smp.invertible = sy > opt.inv_tol;
            if (!smp.invertible)
                throw Error(ErrorKind::InvertibilityFailure,
                            "B - S not invertible at t=" + std::to_string(smp.t));
        }
        SparseCD probe = plus;
        smp.propagation = propagation(probe, cone.E.control).value;
        if (opt.store_operators) smp.op = plus;
        return smp;
    };

    for (int i = 0; i < samples; ++i) path.samples.push_back(eval(i));

    // exact endpoint data: t = 0 is the lambda = -1 cone, t = 1 the phase-pi
    // cone whose duality is -T~_0
    MappingCone c0 = mapping_cone(pair, Rational(-1), 0.0);
    MappingCone c1 = mapping_cone(pair, Rational(0), 1.0);
    MappingCone c_half = mapping_cone(pair, Rational(0), 0.0);
    path.endpoint0_exact = c0.S_exact();
    path.endpoint1_exact = c1.S_exact();
    if (c1.T_exact && c_half.T_exact) {
        if (!(*c1.T_exact + *c_half.T_exact).is_zero())
            throw Error(ErrorKind::InvertibilityFailure, "phase endpoint is not -T~");
        path.note = "t=1 duality equals -T~ exactly";
    }
    return path;
}

}  // namespace hpcx
