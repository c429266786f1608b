#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chain_complex.hpp"
#include "compress.hpp"
#include "fundamental.hpp"
#include "homology.hpp"
#include "propagation.hpp"
#include "spectral.hpp"

namespace hpcx {

/// Graded duality family T: E_p -> E_{d-p} stored flat, d the complex
/// dimension (d = n for closed complexes, n+1 for pairs).
struct DualityOperator {
    int d = 0;
    SparseQ mat;
    bool symmetrized = false;
};

/// Front-face / back-face cap product with a top-degree cycle. The dual
/// basis cochain of tau picks out the top simplices whose leading face is
/// tau; each contributes its trailing face weighted by the cycle.
inline DualityOperator cap_duality(const SimplicialComplex& K, const GradedChainComplex& E,
                                   const Chain& xi) {
    const int d = K.dim;
    if (xi.degree != d)
        throw Error(ErrorKind::DegreeMismatch, "cap cycle must live in the top degree");
    DualityOperator T;
    T.d = d;
    T.mat = SparseQ(E.size(), E.size());
    for (auto& [flat, coef] : xi.coef) {
        int ti = flat - E.offset[d];
        const Simplex& sigma = K.simplices[d][ti];
        Rational c = coef * Rational(sigma.sign);
        for (int p = 0; p <= d; ++p) {
            std::vector<int> front(sigma.v.begin(), sigma.v.begin() + p + 1);
            std::vector<int> back(sigma.v.begin() + p, sigma.v.end());
            int fi = K.simplex_index(p, front);
            int bi = K.simplex_index(d - p, back);
            if (fi < 0 || bi < 0)
                throw Error(ErrorKind::ClosureViolation, "cap product hit a missing face");
            Rational entry = c * Rational(K.simplices[p][fi].sign) *
                             Rational(K.simplices[d - p][bi].sign);
            T.mat.add(E.offset[d - p] + bi, E.offset[p] + fi, entry);
        }
    }
    return T;
}

namespace detail {

inline int sym_sign(int d, int p) { return (((d - p) * p) % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Degree-wise adjoint-with-sign (-1)^{(d-p)p} T*, the symmetry axiom's
/// right-hand side.
inline SparseQ duality_adjoint_signed(const GradedChainComplex& E, const SparseQ& T, int d) {
    SparseQ Ts = T.adjoint();
    SparseQ out(E.size(), E.size());
    auto deg = E.degrees_vector();
    for (int c = 0; c < E.size(); ++c)
        for (auto& [r, v] : Ts.column(c))
            out.add(r, c, Rational(detail::sym_sign(d, deg[c])) * v);
    return out;
}

/// (T + (-1)^{(d-p)p} T*)/2; preserves the anti-commutation axiom exactly
/// and fixes the symmetry axiom.
inline DualityOperator symmetrize(const GradedChainComplex& E, const DualityOperator& T) {
    DualityOperator out;
    out.d = T.d;
    out.symmetrized = true;
    out.mat = (T.mat + duality_adjoint_signed(E, T.mat, T.d)).scaled(Rational(1, 2));
    return out;
}

/// Exact residual of axiom (2): T b* + (-1)^p b T per degree, as one flat
/// operator (zero iff the axiom holds).
inline SparseQ axiom2_residual(const GradedChainComplex& E, const SparseQ& T) {
    SparseQ bstar = E.b.adjoint();
    SparseQ sign = E.degree_diagonal<Rational>([](int p) { return Rational(p % 2 == 0 ? 1 : -1); });
    return T * bstar + E.b * T * sign;
}

inline SparseQ axiom1_residual(const GradedChainComplex& E, const SparseQ& T, int d) {
    return duality_adjoint_signed(E, T, d) - T;
}

/// The duality as an honest chain map from the dual complex, with the
/// degree-wise sign epsilon_q that axiom (2) dictates; returns the matrix in
/// (dual flat) -> (primal flat) indexing.
inline SparseQ duality_as_chain_map(const GradedChainComplex& E, const DualComplex& D,
                                    const SparseQ& T, int degree_offset = 0) {
    std::vector<Rational> eps(E.n + 1, Rational(1));
    for (int q = 1; q <= E.n; ++q) {
        // -(-1)^{p} with p the true primal degree of D_q
        int p = E.n - q - degree_offset;
        int s = ((((p % 2) + 2) % 2) == 0) ? -1 : 1;
        eps[q] = eps[q - 1] * Rational(s);
    }
    SparseQ out(E.size(), D.E.size());
    auto ddeg = D.E.degrees_vector();
    for (int c = 0; c < D.E.size(); ++c) {
        int primal = D.to_primal[c];
        for (auto& [r, v] : T.column(primal)) out.add(r, c, eps[ddeg[c]] * v);
    }
    return out;
}

/// Chain map dual(src) -> dst induced by a degree-reversing block B of a
/// duality (rows in dst, cols in src), with the sign recursion dictated by
/// the anticommutation relation; true degree = stored degree - offset.
inline SparseQ dual_to_primal_chain_map(const GradedChainComplex& src, const DualComplex& Dsrc,
                                        const GradedChainComplex& dst, const SparseQ& B,
                                        int degree_offset = 0) {
    std::vector<Rational> eps(src.n + 1, Rational(1));
    for (int q = 1; q <= src.n; ++q) {
        int p = src.n - q - degree_offset;  // true primal degree dualized by D_q
        eps[q] = eps[q - 1] * Rational(((((p % 2) + 2) % 2) == 0) ? -1 : 1);
    }
    SparseQ out(dst.size(), Dsrc.E.size());
    auto ddeg = Dsrc.E.degrees_vector();
    for (int c = 0; c < Dsrc.E.size(); ++c) {
        int primal = Dsrc.to_primal[c];
        for (auto& [r, v] : B.column(primal)) out.add(r, c, eps[ddeg[c]] * v);
    }
    return out;
}

struct HpValidation {
    bool axiom1_exact = false;       // symmetry
    bool axiom2_exact = false;       // anti-commutation with b
    bool axiom3_homology_iso = false;
    bool chain_map_exact = false;    // sign-fixed T is a chain map dual -> primal
    double axiom1_residual_norm = 0;
    double axiom2_residual_norm = 0;
    double propagation_T = 0;
    int bounded_geometry_k = 0;
    std::string detail;

    bool pass() const {
        return axiom1_exact && axiom2_exact && axiom3_homology_iso && chain_map_exact;
    }
};

/// Full Hilbert-Poincare axiom check: (1) and (2) exactly over Q, (3) as a
/// rational homology isomorphism from the dual complex.
inline HpValidation validate_hp(const GradedChainComplex& E, const DualityOperator& T,
                                int bounded_geometry_k = 0) {
    HpValidation rep;
    rep.bounded_geometry_k = bounded_geometry_k;
    SparseQ r1 = axiom1_residual(E, T.mat, T.d);
    SparseQ r2 = axiom2_residual(E, T.mat);
    rep.axiom1_exact = r1.is_zero();
    rep.axiom2_exact = r2.is_zero();
    rep.axiom1_residual_norm = r1.max_abs();
    rep.axiom2_residual_norm = r2.max_abs();
    rep.propagation_T = propagation(T.mat, E.control).value;

    DualComplex D = dual_complex(E);
    SparseQ That = duality_as_chain_map(E, D, T.mat);
    rep.chain_map_exact = (E.b * That - That * D.E.b).is_zero();
    if (rep.chain_map_exact) {
        Homology HD(D.E), HE(E);
        rep.axiom3_homology_iso = true;
        for (int q = 0; q <= E.n; ++q) {
            SparseQ ind = induced_on_homology(That, D.E, E, HD, HE, q);
            if (!matrix_invertible(ind)) {
                rep.axiom3_homology_iso = false;
                rep.detail += "homology map not invertible in degree " + std::to_string(q) + "; ";
            }
        }
    }
    return rep;
}

/// Closed-complex Hilbert-Poincare structure: symmetrized duality plus the
/// integer l with n = 2l or 2l + 1.
struct HpComplex {
    GradedChainComplex E;
    DualityOperator T;  // symmetrized
    int l = 0;

    int n() const { return E.n; }
    bool even() const { return E.n % 2 == 0; }

    SparseQ B() const { return E.b + E.b.adjoint(); }

    /// Phase multiplier i^{p(p-1)+l} of the S-operator on degree p.
    GaussQ s_phase(int p) const { return i_power((long)p * (p - 1) + l); }

    /// S(v) = i^{p(p-1)+l} T(v) on E_p; exact Gaussian-rational entries.
    SparseGQ S() const {
        SparseGQ phases = E.degree_diagonal<GaussQ>([&](int p) { return s_phase(p); });
        return to_gauss_mat(T.mat) * phases;
    }

    SparseGQ B_gauss() const { return to_gauss_mat(B()); }
    SparseGQ B_plus_S() const { return B_gauss() + S(); }
    SparseGQ B_minus_S() const { return B_gauss() - S(); }

    std::vector<int> even_indices() const {
        std::vector<int> idx;
        for (int p = 0; p <= E.n; p += 2)
            for (int i : E.degree_indices(p)) idx.push_back(i);
        return idx;
    }
    std::vector<int> odd_indices() const {
        std::vector<int> idx;
        for (int p = 1; p <= E.n; p += 2)
            for (int i : E.degree_indices(p)) idx.push_back(i);
        return idx;
    }
};

/// Builds the HP structure of a closed oriented pseudomanifold: cap with the
/// fundamental cycle, then symmetrize.
inline HpComplex make_hp(const SimplicialComplex& K) {
    HpComplex hp;
    hp.E = chain_complex(K);
    auto fc = fundamental_cycle(K, hp.E, false);
    hp.T = symmetrize(hp.E, cap_duality(K, hp.E, fc.xi));
    hp.l = K.dim / 2;
    return hp;
}

/// Report of the exact S-operator identities. The anticommutation relation
/// that follows from the duality axioms is b S + S b* = 0; the phase factor
/// i^{p(p-1)+l} is exactly what turns the (-1)^p of the axiom into a clean
/// anticommutator.
struct SOperatorReport {
    bool self_adjoint_exact = false;   // S = S*
    bool anticommutes_exact = false;   // b S + S b* = 0
    double self_adjoint_residual = 0;
};

inline SOperatorReport s_operator_report(const HpComplex& hp) {
    SOperatorReport rep;
    SparseGQ S = hp.S();
    SparseGQ r = S - S.adjoint();
    rep.self_adjoint_exact = r.is_zero();
    rep.self_adjoint_residual = r.max_abs();
    SparseGQ b = to_gauss_mat(hp.E.b);
    rep.anticommutes_exact = (b * S + S * b.adjoint()).is_zero();
    return rep;
}

// ---------------------------------------------------------------------------
// signature class
// ---------------------------------------------------------------------------

struct SignatureOptions {
    double gap_tol = 1e-9;
    double herm_tol = 1e-12;
    int compress_threshold = 2600;  // above this, reduce to homology first
    bool force_compress = false;
};

struct SignatureClass {
    bool even = true;
    long even_value = 0;
    double gap = 0.0;            // certified distance of spec(B +- S) from 0
    bool compressed = false;     // computed on the homology-reduced complex
    // odd case
    SparseCD odd_witness;        // u = (B+S)(B-S)^{-1} on E_ev
    double odd_sym_defect = 0;   // ||u - u*||
    double odd_propagation = 0;
    std::optional<std::vector<std::pair<std::string, long>>> equivariant_values;
};

/// Homology-reduced copy of an HP complex: zero differential, duality
/// conjugated through the Morse contraction. Signature-class computations
/// factor through this on large complexes.
inline HpComplex compress_hp(const HpComplex& hp) {
    MorseContraction mc(hp.E);
    HpComplex out;
    out.E = mc.reduced_complex();
    out.T.d = hp.T.d;
    out.T.symmetrized = hp.T.symmetrized;
    out.T.mat = mc.conjugate(hp.T.mat);
    out.l = hp.l;
    return out;
}

inline SignatureClass signature_class(const HpComplex& hp, const SignatureOptions& opt = {}) {
    SignatureClass out;
    out.even = hp.even();
    const bool compress = opt.force_compress || hp.E.size() > opt.compress_threshold;
    const HpComplex* use = &hp;
    HpComplex reduced;
    if (compress) {
        reduced = compress_hp(hp);
        use = &reduced;
        out.compressed = true;
    }
    SparseCD plus = use->B_plus_S().to_complex();
    SparseCD minus = use->B_minus_S().to_complex();
    if (out.even) {
        InertiaCount cp = hermitian_inertia(plus, opt.gap_tol);
        InertiaCount cm = hermitian_inertia(minus, opt.gap_tol);
        out.gap = std::min(cp.min_abs, cm.min_abs);
        if (cp.near_zero || cm.near_zero)
            throw Error(ErrorKind::SpectralGapFailure,
                        "eigenvalue of B +- S within " + std::to_string(opt.gap_tol) +
                            " of zero (gap " + std::to_string(out.gap) + ")");
        out.even_value = (long)cp.positive - (long)cm.positive;
    } else {
        auto ev = use->even_indices();
        auto od = use->odd_indices();
        SparseCD X = plus.submatrix(ev, od);
        SparseCD Y = minus.submatrix(ev, od);
        double sy = min_singular_value(Y);
        double sx = min_singular_value(X);
        out.gap = std::min(sx, sy);
        if (out.gap <= opt.gap_tol)
            throw Error(ErrorKind::SpectralGapFailure, "B +- S not certifiably invertible");
        // u = X Y^{-1}: solve Y^T z = X^T, then u = z^T
        Eigen::MatrixXcd z = Y.to_dense()
                                 .transpose()
                                 .colPivHouseholderQr()
                                 .solve(X.to_dense().transpose());
        Eigen::MatrixXcd U = z.transpose().eval();
        // store as sparse-backed dense copy
        out.odd_witness = SparseCD((int)U.rows(), (int)U.cols());
        for (int c = 0; c < U.cols(); ++c)
            for (int r = 0; r < U.rows(); ++r)
                if (std::abs(U(r, c)) > 1e-14) out.odd_witness.set(r, c, U(r, c));
        out.odd_sym_defect = (U - U.adjoint()).norm();
        std::vector<std::vector<double>> ctrl;
        for (int i : ev) ctrl.push_back(use->E.control[i]);
        out.odd_propagation = propagation(out.odd_witness, ctrl).value;
    }
    return out;
}

// ---------------------------------------------------------------------------
// HP structures on unions and products
// ---------------------------------------------------------------------------

/// HP complex of M u (-N): block differentials with duality diag(T_M, -T_N).
inline HpComplex hp_disjoint_union_reversed(const HpComplex& M, const HpComplex& N) {
    if (M.n() != N.n())
        throw Error(ErrorKind::DimensionMismatch, "union needs equal dimensions");
    DisjointUnion du = disjoint_union(M.E, N.E);
    HpComplex out;
    out.E = du.E;
    out.l = M.l;
    out.T.d = M.T.d;
    out.T.symmetrized = M.T.symmetrized && N.T.symmetrized;
    out.T.mat = embed_block(M.T.mat, du.m_index, du.E.size()) -
                embed_block(N.T.mat, du.n_index, du.E.size());
    return out;
}

/// HP structure on the chain-level product: T(x (x) y) =
/// (-1)^{q(m+p)} T_M x (x) T_N y, then symmetrized.
inline HpComplex hp_tensor_product(const HpComplex& M, const HpComplex& N,
                                   std::size_t size_cap = 200000) {
    TensorProduct tp = tensor_product(M.E, N.E, size_cap);
    const int m = M.n();
    SparseQ T(tp.E.size(), tp.E.size());
    auto degM = M.E.degrees_vector();
    auto degN = N.E.degrees_vector();
    for (int i = 0; i < M.E.size(); ++i) {
        int p = degM[i];
        const auto& colM = M.T.mat.column(i);
        for (int j = 0; j < N.E.size(); ++j) {
            int q = degN[j];
            int sgn = ((q * (m + p)) % 2 == 0) ? 1 : -1;
            const auto& colN = N.T.mat.column(j);
            int src = tp.pair_index[i][j];
            for (auto& [r1, v1] : colM)
                for (auto& [r2, v2] : colN)
                    T.add(tp.pair_index[r1][r2], src, Rational(sgn) * v1 * v2);
        }
    }
    HpComplex out;
    out.E = tp.E;
    out.l = out.E.n / 2;
    DualityOperator raw{out.E.n, T, false};
    out.T = symmetrize(out.E, raw);
    return out;
}

}  // namespace hpcx
