#include <catch2/catch_amalgamated.hpp>

#include <hpcx/pairs.hpp>

#include "test_support.hpp"

using namespace hpcx;

TEST_CASE("pair invariants on the triangle and the solid tetrahedron") {
    auto d2 = pair_from_boundary(load_data("triangle_d2.json"));
    CHECK(d2.boundary_dim == 1);
    // P projects onto 3 edges + 3 vertices of the boundary circle
    CHECK(d2.p_indices().size() == 6);
    CHECK(validate_pair(d2).pass());

    auto d3 = pair_from_boundary(load_data("disk_d3.json"));
    CHECK(d3.boundary_dim == 2);
    CHECK(d3.p_indices().size() == 14);  // the boundary dDelta^3
    CHECK(validate_pair(d3).pass());
}

TEST_CASE("closed complexes have no pair structure") {
    CHECK_THROWS_MATCHES(pair_from_boundary(load_data("sphere_s2.json")), Error,
                         ErrorKindIs(ErrorKind::EmptyBoundary));
}

TEST_CASE("boundary of the D2 pair is an HP circle") {
    auto pair = pair_from_boundary(load_data("triangle_d2.json"));
    auto bd = boundary_of_pair(pair);
    CHECK(bd.hp.E.n == 1);
    CHECK(bd.hp.E.size() == 6);
    CHECK(bd.t0_equals_PT0P);
    auto rep = validate_hp(bd.hp.E, bd.hp.T);
    CHECK(rep.pass());
    // scaling T scales T0 linearly
    HpPair scaled = pair;
    scaled.T.mat = pair.T.mat.scaled(Rational(2));
    auto bd2 = boundary_of_pair(scaled);
    CHECK(bd2.hp.T.mat == bd.hp.T.mat.scaled(Rational(2)));
    CHECK(bd2.hp.E.b == bd.hp.E.b);
}

TEST_CASE("boundary of the D3 pair is the sphere with zero signature") {
    auto pair = pair_from_boundary(load_data("disk_d3.json"));
    auto bd = boundary_of_pair(pair);
    CHECK(bd.hp.E.n == 2);
    CHECK(homology_ranks(bd.hp.E) == std::vector<int>{1, 0, 1});
    auto sig = signature_class(bd.hp);
    CHECK(sig.even_value == 0);
}

TEST_CASE("mapping cone differential and HP structure") {
    auto pair = pair_from_boundary(load_data("triangle_d2.json"));
    // b~ squares to zero for a strictly interior lambda (checked on build)
    auto cone_half = mapping_cone(pair, Rational(-1, 2), 0.0);
    CHECK((cone_half.E.b * cone_half.E.b).is_zero());

    // lambda = -1: A is a chain homotopy equivalence from the boundary
    auto bd = boundary_of_pair(pair);
    auto cone = mapping_cone(pair, Rational(-1), 0.0);
    auto rep = verify_cone_equivalence(pair, bd, cone);
    CHECK(rep.chain_map_exact);
    CHECK(rep.quasi_iso);
    CHECK(rep.homology_duality_match);

    // lambda = 0: T~ at s=1 equals -T~ at s=0 exactly
    auto c0 = mapping_cone(pair, Rational(0), 0.0);
    auto c1 = mapping_cone(pair, Rational(0), 1.0);
    REQUIRE(c0.T_exact);
    REQUIRE(c1.T_exact);
    CHECK((*c0.T_exact + *c1.T_exact).is_zero());

    CHECK_THROWS_MATCHES(mapping_cone(pair, Rational(-2), 0.0), Error,
                         ErrorKindIs(ErrorKind::ParameterOutOfRange));
}

TEST_CASE("cone at quarter phases satisfies HP axioms exactly") {
    auto pair = pair_from_boundary(load_data("triangle_d2.json"));
    for (double s : {0.0, 0.5, 1.0}) {
        auto cone = mapping_cone(pair, Rational(0), s);
        REQUIRE(cone.T_exact);
        INFO("phase " << s);
        CHECK(cone_symmetry_residual(cone).is_zero());
        CHECK(cone_anticommutation_residual(cone).is_zero());
    }
    // the lambda segment at s = 0 keeps both identities as well
    for (const char* lam : {"-1", "-1/2"}) {
        auto cone = mapping_cone(pair, hpcx::rational_from_string(lam), 0.0);
        INFO("lambda " << lam);
        CHECK(cone_symmetry_residual(cone).is_zero());
        CHECK(cone_anticommutation_residual(cone).is_zero());
    }
}

TEST_CASE("bordism path on the D3 pair: even case") {
    auto pair = pair_from_boundary(load_data("disk_d3.json"));
    auto path = bordism_path(pair, 32);
    CHECK(path.even);
    CHECK(path.samples.size() == 32);
    CHECK(path.all_certified(1e-9));
    CHECK(path.rank_difference_constant());
    // the constant rank difference equals the boundary signature (zero)
    CHECK(path.samples.front().rank_difference == 0);
    CHECK(path.endpoint0_exact.has_value());
}

TEST_CASE("bordism path on the D2 pair: odd boundary case") {
    auto pair = pair_from_boundary(load_data("triangle_d2.json"));
    auto path = bordism_path(pair, 16);
    CHECK_FALSE(path.even);
    CHECK(path.all_certified(1e-8));
}

TEST_CASE("degenerate pair with full boundary projection") {
    // P = identity collapses the cone: P-perp = 0, so the cone equals (E, b)
    auto pair = pair_from_boundary(load_data("triangle_d2.json"));
    HpPair full = pair;
    full.on_boundary.assign(full.E.size(), 1);
    auto cone = mapping_cone(full, Rational(-1), 0.0);
    CHECK(cone.E.size() == full.E.size());  // only the E summand survives
    CHECK(cone.T_num.is_zero());            // T~ couples through P-perp only
    CHECK(cone.E.b * cone.E.b == SparseQ(cone.E.size(), cone.E.size()));
}
