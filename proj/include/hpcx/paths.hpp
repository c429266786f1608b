#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "duality.hpp"
#include "operator_path.hpp"
#include "pairs.hpp"
#include "subdivision.hpp"

namespace hpcx {

/// Chain-level homotopy-equivalence data between complexes N and M:
/// f: C(N) -> C(M), g: C(M) -> C(N), with homotopies h_N (gf ~ id_N) and
/// h_M (fg ~ id_M), all exact.
struct HomotopyEquivalenceData {
    SparseQ f, g, h_N, h_M;
    // optional duality-compatibility homotopy: f T_N f* - T_M = b eta + eta b*
    std::optional<SparseQ> eta;
    double prop_f = 0, prop_g = 0, prop_h_N = 0, prop_h_M = 0;

    void measure(const GradedChainComplex& N, const GradedChainComplex& M) {
        prop_f = propagation(f, M.control, N.control).value;
        prop_g = propagation(g, N.control, M.control).value;
        prop_h_N = propagation(h_N, N.control).value;
        prop_h_M = propagation(h_M, M.control).value;
    }
};

struct HomotopyDataValidation {
    bool f_chain_map = false, g_chain_map = false;
    bool gf_homotopy_exact = false, fg_homotopy_exact = false;
    bool duality_compatible_homology = false;  // [g T_M g*] = [T_N] on homology
    bool pass() const {
        return f_chain_map && g_chain_map && gf_homotopy_exact && fg_homotopy_exact &&
               duality_compatible_homology;
    }
};

/// Exact validation of equivalence data against the HP structures.
inline HomotopyDataValidation validate_homotopy_data(const HpComplex& N, const HpComplex& M,
                                                     const HomotopyEquivalenceData& d) {
    HomotopyDataValidation rep;
    rep.f_chain_map = (M.E.b * d.f - d.f * N.E.b).is_zero();
    rep.g_chain_map = (N.E.b * d.g - d.g * M.E.b).is_zero();
    SparseQ gf = d.g * d.f - SparseQ::identity(N.E.size());
    SparseQ fg = d.f * d.g - SparseQ::identity(M.E.size());
    rep.gf_homotopy_exact = (gf == N.E.b * d.h_N + d.h_N * N.E.b);
    rep.fg_homotopy_exact = (fg == M.E.b * d.h_M + d.h_M * M.E.b);
    if (!(rep.f_chain_map && rep.g_chain_map)) return rep;

    // homology-level duality compatibility: g T_M g* and T_N induce the same
    // map from the dual complex of N
    SparseQ gTg = d.g * M.T.mat * d.g.adjoint();
    DualComplex D = dual_complex(N.E);
    SparseQ m1 = duality_as_chain_map(N.E, D, gTg);
    SparseQ m2 = duality_as_chain_map(N.E, D, N.T.mat);
    bool cm = (N.E.b * m1 - m1 * D.E.b).is_zero();
    if (cm) {
        Homology HD(D.E), HN(N.E);
        rep.duality_compatible_homology = true;
        for (int q = 0; q <= N.E.n; ++q)
            if (!(induced_on_homology(m1, D.E, N.E, HD, HN, q) ==
                  induced_on_homology(m2, D.E, N.E, HD, HN, q)))
                rep.duality_compatible_homology = false;
    }
    return rep;
}

/// Identity self-equivalence of an HP complex.
inline HomotopyEquivalenceData identity_equivalence(const HpComplex& M) {
    HomotopyEquivalenceData d;
    int n = M.E.size();
    d.f = SparseQ::identity(n);
    d.g = SparseQ::identity(n);
    d.h_N = SparseQ(n, n);
    d.h_M = SparseQ(n, n);
    d.eta = SparseQ(n, n);
    d.measure(M.E, M.E);
    return d;
}

/// Equivalence data between a complex and its refinement: f = pr (fine to
/// coarse), g = sd, with the acyclic-carrier homotopy on the fine side and
/// the zero homotopy on the coarse side (pr o sd = id exactly). N is the
/// fine complex, M the coarse one.
inline HomotopyEquivalenceData subdivision_equivalence(const SubdivisionTower& tower) {
    HomotopyEquivalenceData d;
    d.f = tower.pr;
    d.g = tower.sd;
    d.h_N = tower.h;
    d.h_M = SparseQ(tower.coarse().size(), tower.coarse().size());
    d.measure(tower.fine(), tower.coarse());
    return d;
}

/// Constructs the duality-compatibility homotopy eta with
/// f T_N f* - T_M = b eta + eta b* degree-wise, by column-wise boundary
/// solves (the two sides induce the same homology map, so the recursion is
/// solvable). Expensive; used on the small bundled complexes and in tests.
inline SparseQ duality_compat_homotopy(const HpComplex& M, const SparseQ& delta) {
    // solve  delta = b eta + eta b*  with eta: E_p -> E_{n-p+1}.
    // Column recursion over the dual-degree filtration: process source
    // degrees p = 0..n; for a basis column x in degree p,
    //   (eta b*) x = eta (b* x) is already known (b* raises degree),
    // so b (eta x) = delta x - eta(b* x) must be solved for eta x.
    // Wait: b* raises the source degree, so recurse DOWNWARD: process p = n..0.
    const GradedChainComplex& E = M.E;
    SparseQ eta(E.size(), E.size());
    SparseQ bstar = E.b.adjoint();
    // per-target-degree eliminations of b (degree q+1 -> q blocks)
    std::vector<std::optional<Elimination>> elims(E.n + 2);
    auto elim_for = [&](int q) -> Elimination& {
        if (!elims[q + 1]) {
            SparseQ blockb = E.b.submatrix(E.degree_indices(q), E.degree_indices(q + 1));
            elims[q + 1].emplace(blockb);
        }
        return *elims[q + 1];
    };
    auto deg = E.degrees_vector();
    for (int p = E.n; p >= 0; --p) {
        for (int x : E.degree_indices(p)) {
            // rhs = delta e_x - eta (b* e_x)
            std::vector<Rational> rhs(E.size(), Rational(0));
            for (auto& [r, v] : delta.column(x)) rhs[r] = v;
            for (auto& [k, v] : bstar.column(x)) {
                for (auto& [r, w] : eta.column(k)) rhs[r] -= w * v;
            }
            // rhs lives in degree n - p + ... target of eta x is E_{n-p+1};
            // b(eta x) lives in E_{n-p}
            int qt = E.n - p;  // degree of rhs
            std::map<int, Rational> rhs_local;
            auto rows = E.degree_indices(qt);
            std::vector<int> rowpos(E.size(), -1);
            for (int i = 0; i < (int)rows.size(); ++i) rowpos[rows[i]] = i;
            for (int i = 0; i < E.size(); ++i)
                if (rhs[i] != 0) {
                    if (rowpos[i] < 0)
                        throw Error(ErrorKind::InputError, "compat residual off-degree");
                    rhs_local[rowpos[i]] = rhs[i];
                }
            auto sol = elim_for(qt).solve(rhs_local);
            if (!sol)
                throw Error(ErrorKind::MatchingFailure,
                            "duality compatibility homotopy does not exist");
            auto cols = E.degree_indices(qt + 1);
            for (auto& [j, v] : *sol) eta.add(cols[j], x, v);
        }
    }
    (void)deg;
    return eta;
}

inline HomotopyEquivalenceData homotopy_data_from_subdivision(const SimplicialComplex& K,
                                                              SubdivisionMethod method,
                                                              int levels) {
    if (levels == 0) {
        HpComplex hp = make_hp(K);
        return identity_equivalence(hp);
    }
    return subdivision_equivalence(subdivide(K, method, levels));
}

// ---------------------------------------------------------------------------
// the three-segment contraction path
// ---------------------------------------------------------------------------

struct HrPathOptions {
    int samples_per_segment = 32;
    double inv_tol = 1e-8;
    double gap_tol = 1e-9;
    bool store_operators = false;
};

namespace detail {

/// Duality of the union complex at a point of the three-segment family.
/// Segment 0 (s in [0,1]):   diag(T_M, (s-1) T_N - s g T_M g*)
/// Segment 1 (s in [0,pi/2]): [[cos s T_M, sin s T_M g*], [sin s g T_M, -cos s g T_M g*]]
/// Segment 2 (s in [0,pi]):   [[0, e^{is} T_M g*], [e^{-is} g T_M, 0]] as the
///                            S-level phase rotation.
template <class Scalar>
SparseMat<Scalar> hr_duality(const DisjointUnion& du, const SparseMat<Scalar>& TM,
                             const SparseMat<Scalar>& TN, const SparseMat<Scalar>& g,
                             int segment, Scalar c0, Scalar c1) {
    int n = du.E.size();
    SparseMat<Scalar> out(n, n);
    auto place = [&](const SparseMat<Scalar>& op, const std::vector<int>& rows,
                     const std::vector<int>& cols, const Scalar& scale) {
        if (scalar_is_zero(scale)) return;
        for (int c = 0; c < op.cols(); ++c)
            for (auto& [r, v] : op.column(c)) out.add(rows[r], cols[c], scale * v);
    };
    SparseMat<Scalar> gTg = g * TM * g.adjoint();
    SparseMat<Scalar> Tg = TM * g.adjoint();
    SparseMat<Scalar> gT = g * TM;
    switch (segment) {
        case 0:
            // c0 = s
            place(TM, du.m_index, du.m_index, Scalar(1));
            place(TN, du.n_index, du.n_index, c0 - Scalar(1));
            place(gTg, du.n_index, du.n_index, -c0);
            break;
        case 1:
            // c0 = cos s, c1 = sin s
            place(TM, du.m_index, du.m_index, c0);
            place(Tg, du.m_index, du.n_index, c1);
            place(gT, du.n_index, du.m_index, c1);
            place(gTg, du.n_index, du.n_index, -c0);
            break;
        default:
            // c0 = e^{is}, c1 = e^{-is}
            place(Tg, du.m_index, du.n_index, c0);
            place(gT, du.n_index, du.m_index, c1);
            break;
    }
    return out;
}

}  // namespace detail

/// The Higson-Roe contraction path on M u (-N) attached to a homotopy
/// equivalence: three concatenated segments from the union signature element
/// to the trivial one, every sample certified. M and N are closed HP
/// complexes of equal dimension; data.f: C(N) -> C(M).
inline OperatorPath hr_path(const HpComplex& M, const HpComplex& N,
                            const HomotopyEquivalenceData& data, const HrPathOptions& opt = {}) {
    if (M.n() != N.n()) throw Error(ErrorKind::DimensionMismatch, "hr_path needs equal dimensions");
    DisjointUnion du = disjoint_union(M.E, N.E);
    const int l = M.l;
    OperatorPath path;
    path.even = M.even();

    SparseCD b_union = du.E.b.to_complex();
    SparseCD B = (du.E.b + du.E.b.adjoint()).to_complex();
    SparseCD TMc = M.T.mat.to_complex();
    SparseCD TNc = N.T.mat.to_complex();
    SparseCD gc = data.g.to_complex();
    auto phase_diag = du.E.degree_diagonal<std::complex<double>>(
        [&](int p) { return to_cd(i_power((long)p * (p - 1) + l)); });

    const char* names[3] = {"T1-segment", "T2-segment", "phase-segment"};
    auto eval = [&](int segment, double t01) {
        PathSample smp;
        smp.segment = names[segment];
        std::complex<double> c0, c1;
        if (segment == 0) {
            c0 = t01;
        } else if (segment == 1) {
            c0 = std::cos(t01 * std::numbers::pi / 2);
            c1 = std::sin(t01 * std::numbers::pi / 2);
        } else {
            c0 = std::exp(std::complex<double>(0, t01 * std::numbers::pi));
            c1 = std::conj(c0);
        }
        SparseCD T = detail::hr_duality<std::complex<double>>(du, TMc, TNc, gc, segment, c0, c1);
        SparseCD S = T * phase_diag;
        if (segment == 2) {
            // the phase rotation acts in the denominator only: certify
            // B - S(s); the numerator stays at the segment start
            SparseCD S0 = detail::hr_duality<std::complex<double>>(
                              du, TMc, TNc, gc, 2, std::complex<double>(1), std::complex<double>(1)) *
                          phase_diag;
            if (path.even) {
                InertiaCount cp = hermitian_inertia(B + S0, opt.gap_tol);
                InertiaCount cm = hermitian_inertia(B - S, opt.gap_tol);
                smp.min_singular = std::min(cp.min_abs, cm.min_abs);
                smp.invertible = cp.near_zero == 0 && cm.near_zero == 0;
                smp.rank_difference = cp.positive - cm.positive;
            } else {
                double s1 = min_singular_value(B + S0);
                double s2 = min_singular_value(B - S);
                smp.min_singular = std::min(s1, s2);
                smp.invertible = smp.min_singular > opt.inv_tol;
            }
            smp.propagation = propagation(B - S, du.E.control).value;
            if (opt.store_operators) smp.op = B - S;
        } else {
            SparseCD plus = B + S, minus = B - S;
            if (path.even) {
                InertiaCount cp = hermitian_inertia(plus, opt.gap_tol);
                InertiaCount cm = hermitian_inertia(minus, opt.gap_tol);
                smp.min_singular = std::min(cp.min_abs, cm.min_abs);
                smp.invertible = cp.near_zero == 0 && cm.near_zero == 0;
                smp.rank_difference = cp.positive - cm.positive;
            } else {
                double s1 = min_singular_value(plus);
                double s2 = min_singular_value(minus);
                smp.min_singular = std::min(s1, s2);
                smp.invertible = smp.min_singular > opt.inv_tol;
            }
            smp.propagation = propagation(plus, du.E.control).value;
            if (opt.store_operators) smp.op = plus;
        }
        if (!smp.invertible)
            throw Error(ErrorKind::InvertibilityFailure,
                        std::string(names[segment]) + " not invertible at t=" + std::to_string(t01));
        return smp;
    };

    int ns = opt.samples_per_segment;
    if (ns < 2) throw Error(ErrorKind::ParameterOutOfRange, "need at least 2 samples per segment");
    for (int seg = 0; seg < 3; ++seg)
        for (int i = 0; i < ns; ++i) {
            double t01 = double(i) / double(ns - 1);
            PathSample smp = eval(seg, t01);
            smp.t = (seg + t01) / 3.0;
            path.samples.push_back(smp);
        }

    // exact endpoint identities: the segment-0 start is diag(T_M, -T_N), and
    // the phase-segment end has denominator equal to the numerator
    {
        SparseQ T0 = detail::hr_duality<Rational>(du, M.T.mat, N.T.mat, data.g, 0, Rational(0),
                                                  Rational(0));
        SparseQ expect = embed_block(M.T.mat, du.m_index, du.E.size()) -
                         embed_block(N.T.mat, du.n_index, du.E.size());
        if (!(T0 == expect))
            throw Error(ErrorKind::InvertibilityFailure, "path start is not diag(T, -T)");
        auto phases = du.E.degree_diagonal<GaussQ>(
            [&](int p) { return i_power((long)p * (p - 1) + l); });
        path.endpoint0_exact = to_gauss_mat(T0) * phases;
        SparseGQ Send = detail::hr_duality<GaussQ>(du, to_gauss_mat(M.T.mat),
                                                   to_gauss_mat(N.T.mat), to_gauss_mat(data.g), 2,
                                                   GaussQ(Rational(-1)), GaussQ(Rational(-1))) *
                        phases;
        SparseGQ Sstart = detail::hr_duality<GaussQ>(du, to_gauss_mat(M.T.mat),
                                                     to_gauss_mat(N.T.mat), to_gauss_mat(data.g), 2,
                                                     GaussQ(Rational(1)), GaussQ(Rational(1))) *
                          phases;
        if (!(Send + Sstart).is_zero())
            throw Error(ErrorKind::InvertibilityFailure, "phase endpoint is not -S");
        path.endpoint1_exact = Send;
        path.note = "endpoints: diag(T,-T) start, phase end -S exact";
    }
    return path;
}

}  // namespace hpcx
