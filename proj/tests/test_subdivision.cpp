#include <catch2/catch_amalgamated.hpp>

#include <hpcx/subdivision.hpp>

#include "test_support.hpp"

using namespace hpcx;

namespace {

/// Exact check of all equivalence identities for one subdivision step.
void check_equivalence(const Subdivision& s) {
    // chain maps commute with the differentials
    CHECK((s.E_fine.b * s.sd - s.sd * s.E_coarse.b).is_zero());
    CHECK((s.E_coarse.b * s.pr - s.pr * s.E_fine.b).is_zero());
    // pr o sd = id exactly
    SparseQ id_c = SparseQ::identity(s.E_coarse.size());
    CHECK(s.pr * s.sd == id_c);
    // sd o pr - id = b h + h b exactly
    SparseQ id_f = SparseQ::identity(s.E_fine.size());
    SparseQ lhs = s.sd * s.pr - id_f;
    SparseQ rhs = s.E_fine.b * s.h + s.h * s.E_fine.b;
    CHECK(lhs == rhs);
}

}  // namespace

TEST_CASE("interval edge subdivision") {
    auto K = load_data("interval.json");
    auto s = subdivide_once(K, SubdivisionMethod::Edge);
    CHECK(s.refined.f_vector() == std::vector<int>{3, 2});
    CHECK(s.mesh_after <= 0.5 * s.mesh_before + 1e-12);
    check_equivalence(s);
}

TEST_CASE("sphere barycentric subdivision f-vector") {
    auto K = load_data("sphere_s2.json");
    auto s = subdivide_once(K, SubdivisionMethod::Barycentric);
    CHECK(s.refined.f_vector() == std::vector<int>{14, 36, 24});
    CHECK(s.mesh_after <= (2.0 / 3.0) * s.mesh_before + 1e-12);
    check_equivalence(s);
    CHECK(homology_ranks(s.E_fine) == std::vector<int>{1, 0, 1});
}

TEST_CASE("sphere edge subdivision") {
    auto K = load_data("sphere_s2.json");
    auto s = subdivide_once(K, SubdivisionMethod::Edge);
    CHECK(s.refined.f_vector() == std::vector<int>{10, 24, 16});
    CHECK(s.mesh_after <= 0.5 * s.mesh_before + 1e-12);
    check_equivalence(s);
    CHECK(homology_ranks(s.E_fine) == std::vector<int>{1, 0, 1});
}

TEST_CASE("torus barycentric subdivision keeps homology") {
    auto K = load_data("torus_t2_7.json");
    auto s = subdivide_once(K, SubdivisionMethod::Barycentric);
    check_equivalence(s);
    CHECK(homology_ranks(s.E_fine) == std::vector<int>{1, 2, 1});
}

TEST_CASE("disk d3 edge subdivision with boundary") {
    auto K = load_data("disk_d3.json");
    auto s = subdivide_once(K, SubdivisionMethod::Edge);
    CHECK(s.refined.f_vector() == std::vector<int>{15, 54, 72, 32});
    check_equivalence(s);
    // boundary faces subdivide the boundary sphere: 4 per original triangle
    CHECK(s.refined.boundary_faces.size() == 4 * K.boundary_faces.size());
}

TEST_CASE("two-level tower composite identities") {
    auto K = load_data("sphere_s2.json");
    auto tower = subdivide(K, SubdivisionMethod::Edge, 2);
    const auto& C = tower.coarse();
    const auto& F = tower.fine();
    CHECK((F.b * tower.sd - tower.sd * C.b).is_zero());
    CHECK(tower.pr * tower.sd == SparseQ::identity(C.size()));
    SparseQ lhs = tower.sd * tower.pr - SparseQ::identity(F.size());
    SparseQ rhs = F.b * tower.h + tower.h * F.b;
    CHECK(lhs == rhs);
    auto mesh = tower.mesh_per_level();
    REQUIRE(mesh.size() == 3);
    CHECK(mesh[1] <= 0.5 * mesh[0] + 1e-12);
    CHECK(mesh[2] <= 0.5 * mesh[1] + 1e-12);
}

TEST_CASE("marker transfer under subdivision") {
    auto K = load_data("square_2ads.json");
    auto s = subdivide_once(K, SubdivisionMethod::Edge);
    REQUIRE(s.refined.boundary_markers.count("plus"));
    CHECK(s.refined.boundary_markers.at("plus").size() == 4);
    CHECK(s.refined.boundary_markers.at("minus").size() == 4);
}

TEST_CASE("levels must be positive") {
    auto K = load_data("interval.json");
    CHECK_THROWS_MATCHES(subdivide(K, SubdivisionMethod::Edge, 0), Error,
                         ErrorKindIs(ErrorKind::ParameterOutOfRange));
}
