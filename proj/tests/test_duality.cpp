#include <catch2/catch_amalgamated.hpp>

#include <hpcx/duality.hpp>
#include <hpcx/subdivision.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace hpcx;

namespace {

HpComplex hp_of(const char* file) { return make_hp(load_data(file)); }

}  // namespace

TEST_CASE("cap product satisfies the anti-commutation axiom exactly") {
    for (const char* name : {"sphere_s2.json", "circle3.json", "torus_t2_7.json", "cp2_9.json"}) {
        auto K = load_data(name);
        auto E = chain_complex(K);
        auto fc = fundamental_cycle(K, E);
        auto T = cap_duality(K, E, fc.xi);
        INFO(name);
        CHECK(axiom2_residual(E, T.mat).is_zero());
    }
}

TEST_CASE("cap maps the vertex dual to a fundamental 2-cycle on the sphere") {
    auto K = load_data("sphere_s2.json");
    auto E = chain_complex(K);
    auto fc = fundamental_cycle(K, E);
    auto T = cap_duality(K, E, fc.xi);
    // the degree-0 cohomology generator is the constant cocycle
    std::vector<Rational> x(E.size(), Rational(0));
    for (int i : E.degree_indices(0)) x[i] = Rational(1);
    auto y = T.mat.apply(x);
    std::map<int, Rational> img;
    for (int i = 0; i < E.size(); ++i)
        if (y[i] != 0) {
            CHECK(E.degree_of(i) == 2);
            img[i - E.offset[2]] = y[i];
        }
    CHECK_FALSE(img.empty());
    // it is a cycle whose class is +- the fundamental class
    Homology H(E);
    auto co = H.coords(2, img);
    REQUIRE(co.has_value());
    REQUIRE(co->size() == 1);
    std::map<int, Rational> xi_local;
    for (auto& [i, c] : fc.xi.coef) xi_local[i - E.offset[2]] = c;
    auto cxi = H.coords(2, xi_local);
    REQUIRE(cxi.has_value());
    CHECK(((*co)[0] == (*cxi)[0] || (*co)[0] == -(*cxi)[0]));
}

TEST_CASE("relative cap on the interval hits the edge") {
    auto K = load_data("interval.json");
    auto E = chain_complex(K);
    auto fc = fundamental_cycle(K, E, true);
    auto T = cap_duality(K, E, fc.xi);
    // exactly one vertex dual maps to +- the edge, the other to zero
    int edge_flat = E.offset[1];
    int hits = 0;
    for (int v = 0; v < 2; ++v) {
        Rational c = T.mat.get(edge_flat, v);
        if (c != 0) {
            hits++;
            CHECK((c == 1 || c == -1));
        }
    }
    CHECK(hits == 1);
}

TEST_CASE("cap with the zero chain is the zero operator") {
    auto K = load_data("sphere_s2.json");
    auto E = chain_complex(K);
    Chain zero;
    zero.degree = 2;
    auto T = cap_duality(K, E, zero);
    CHECK(T.mat.is_zero());
}

TEST_CASE("symmetrize: fixed point, idempotence, homology action") {
    auto K = load_data("sphere_s2.json");
    auto E = chain_complex(K);
    auto fc = fundamental_cycle(K, E);
    auto T = cap_duality(K, E, fc.xi);
    auto T1 = symmetrize(E, T);
    auto T2 = symmetrize(E, T1);
    CHECK(T1.mat == T2.mat);  // idempotence / fixed point of symmetric input
    CHECK(axiom1_residual(E, T1.mat, 2).is_zero());
    CHECK(axiom2_residual(E, T1.mat).is_zero());

    // T and symmetrize(T) induce identical maps on rational homology
    DualComplex D = dual_complex(E);
    SparseQ A = duality_as_chain_map(E, D, T.mat);
    SparseQ B = duality_as_chain_map(E, D, T1.mat);
    Homology HD(D.E), HE(E);
    for (int q = 0; q <= 2; ++q) {
        SparseQ ia = induced_on_homology(A, D.E, E, HD, HE, q);
        SparseQ ib = induced_on_homology(B, D.E, E, HD, HE, q);
        CHECK(ia == ib);
    }
}

TEST_CASE("validate_hp passes on the sphere and detects corruption") {
    auto K = load_data("sphere_s2.json");
    auto hp = make_hp(K);
    auto rep = validate_hp(hp.E, hp.T, K.bounded_geometry_k);
    CHECK(rep.pass());
    CHECK(rep.axiom2_exact);
    CHECK(rep.propagation_T > 0);

    // zero duality on a complex with homology: axiom 3 fails
    DualityOperator zero{2, SparseQ(hp.E.size(), hp.E.size()), true};
    auto rep0 = validate_hp(hp.E, zero);
    CHECK_FALSE(rep0.axiom3_homology_iso);

    // corrupt one sign: axiom 2 residual becomes nonzero and is reported
    DualityOperator bad = hp.T;
    for (int c = 0; c < bad.mat.cols(); ++c) {
        auto& col = bad.mat.column_mut(c);
        if (!col.empty()) {
            col.begin()->second = -col.begin()->second;
            break;
        }
    }
    auto repb = validate_hp(hp.E, bad);
    CHECK_FALSE(repb.axiom2_exact);
    CHECK(repb.axiom2_residual_norm > 0);
}

TEST_CASE("s-operator identities") {
    // point complex: l = 0, S = T = identity scalar
    SimplicialComplex pt;
    pt.dim = 0;
    pt.vertex_ids = {0};
    pt.coords = {{0.0}};
    pt.simplices = {{Simplex{{0}, 1}}};
    validate_complex(pt);
    auto hp_pt = make_hp(pt);
    CHECK(hp_pt.l == 0);
    CHECK(hp_pt.S().get(0, 0) == GaussQ(Rational(1)));
    CHECK(hp_pt.T.mat.get(0, 0) == Rational(1));

    // n = 2 (l = 1): phase on degree 0 is i^{0+1} = i
    auto hp = hp_of("sphere_s2.json");
    CHECK(hp.s_phase(0) == i_power(1));

    auto rep = s_operator_report(hp);
    CHECK(rep.self_adjoint_exact);
    CHECK(rep.anticommutes_exact);
}

TEST_CASE("signature classes of bundled even complexes") {
    SignatureOptions opt;
    auto s2 = signature_class(hp_of("sphere_s2.json"), opt);
    CHECK(s2.even_value == 0);
    CHECK(s2.gap > 1e-9);

    auto t2 = signature_class(hp_of("torus_t2_7.json"), opt);
    CHECK(t2.even_value == 0);

    auto cp2 = signature_class(hp_of("cp2_9.json"), opt);
    long oracle_sig = oracle::intersection_form_signature(load_data("cp2_9.json"));
    CHECK(cp2.even_value == oracle_sig);
    CHECK(cp2.even_value == 1);
}

TEST_CASE("signature of M u -M vanishes") {
    for (const char* name : {"sphere_s2.json", "torus_t2_7.json", "cp2_9.json"}) {
        auto hp = hp_of(name);
        auto dbl = hp_disjoint_union_reversed(hp, hp);
        INFO(name);
        CHECK(axiom2_residual(dbl.E, dbl.T.mat).is_zero());
        CHECK(signature_class(dbl).even_value == 0);
    }
}

TEST_CASE("signature is invariant under barycentric subdivision") {
    auto K = load_data("sphere_s2.json");
    auto sub = subdivide_once(K, SubdivisionMethod::Barycentric);
    auto hp = make_hp(K);
    auto hps = make_hp(sub.refined);
    CHECK(signature_class(hp).even_value == signature_class(hps).even_value);
}

TEST_CASE("tensor product signatures multiply") {
    auto s2 = hp_of("sphere_s2.json");
    auto prod = hp_tensor_product(s2, s2);
    CHECK(axiom2_residual(prod.E, prod.T.mat).is_zero());
    auto sig = signature_class(prod);
    CHECK(sig.even_value == 0);  // hyperbolic intersection form

    // odd x odd and mixed products keep the axioms
    auto c3 = hp_of("circle3.json");
    auto cyl = hp_tensor_product(c3, c3);
    CHECK(axiom2_residual(cyl.E, cyl.T.mat).is_zero());
    auto rep = validate_hp(cyl.E, cyl.T);
    CHECK(rep.pass());
}

TEST_CASE("odd signature witness on circles") {
    auto c3 = hp_of("circle3.json");
    auto sig = signature_class(c3);
    CHECK_FALSE(sig.even);
    CHECK(sig.gap > 1e-9);
    CHECK(sig.odd_witness.rows() == 3);  // E_ev = E_0

    auto hex = hp_of("hexagon_s1.json");
    auto sigh = signature_class(hex);
    CHECK(sigh.gap > 1e-9);
}

TEST_CASE("compressed route agrees with the direct one") {
    SignatureOptions direct;
    SignatureOptions forced;
    forced.force_compress = true;
    for (const char* name : {"sphere_s2.json", "torus_t2_7.json", "cp2_9.json"}) {
        auto hp = hp_of(name);
        INFO(name);
        CHECK(signature_class(hp, direct).even_value ==
              signature_class(hp, forced).even_value);
    }
    auto c3 = hp_of("circle3.json");
    auto a = signature_class(c3, direct);
    auto b = signature_class(c3, forced);
    CHECK(a.gap > 1e-9);
    CHECK(b.gap > 1e-9);
}

TEST_CASE("morse contraction is an exact chain equivalence") {
    auto t2 = chain_complex(load_data("torus_t2_7.json"));
    MorseContraction mc(t2);
    CHECK((int)mc.critical().size() == 4);  // 1 + 2 + 1
    auto H = mc.reduced_complex();
    CHECK(H.dim_of(0) == 1);
    CHECK(H.dim_of(1) == 2);
    CHECK(H.dim_of(2) == 1);
    // f g = id on H
    for (int j = 0; j < H.size(); ++j) {
        std::vector<Rational> w(H.size(), Rational(0));
        w[j] = Rational(1);
        auto back = mc.project(mc.include(w));
        for (int i = 0; i < H.size(); ++i) CHECK(back[i] == (i == j ? Rational(1) : Rational(0)));
    }
    // g is a chain map into cycles: b g = 0 since d_H = 0
    for (int j = 0; j < H.size(); ++j) {
        std::vector<Rational> w(H.size(), Rational(0));
        w[j] = Rational(1);
        auto v = t2.b.apply(mc.include(w));
        for (auto& x : v) CHECK(x == 0);
    }
}
