#include <catch2/catch_amalgamated.hpp>

#include <hpcx/two_ads.hpp>

#include "test_support.hpp"

using namespace hpcx;

namespace {

TwoAds ads_of(const char* file) { return two_ads_from_markers(load_data(file)); }

const std::vector<std::pair<Rational, double>> admissible = {
    {Rational(-1), 0.0}, {Rational(-1, 2), 0.0}, {Rational(0), 0.0},
    {Rational(0), 0.5},  {Rational(0), 1.0}};

}  // namespace

TEST_CASE("square and split-disk 2-ads validate") {
    auto sq = ads_of("square_2ads.json");
    CHECK(sq.n == 0);
    auto rep = validate_two_ads(sq);
    CHECK(rep.cond1_subcomplexes);
    CHECK(rep.cond2_join_pair);
    CHECK(rep.cond3_side_pairs);
    CHECK(rep.cond3_corners_match);
    CHECK(rep.cond4_cross_equivalence);

    auto dd = ads_of("disk_split_2ads.json");
    CHECK(validate_two_ads(dd).pass());
    // corner of the split disk: the two endpoints of the arcs
    int corner = 0;
    auto cf = dd.and_flag();
    for (char c : cf) corner += c;
    CHECK(corner == 2);
}

TEST_CASE("marker coverage is enforced") {
    auto doc = complex_to_json(load_data("triangle_d2.json"));
    doc["boundary_markers"] = {{"plus", {{0, 1}}}, {"minus", {{1, 2}}}};  // omits {0,2}
    CHECK_THROWS_MATCHES(load_complex_json(doc), Error,
                         ErrorKindIs(ErrorKind::MarkerCoverageError));
}

TEST_CASE("block complexes satisfy the printed identities exactly") {
    auto sq = ads_of("square_2ads.json");
    for (bool positive : {true, false})
        for (auto& [lam, s] : admissible) {
            auto blk = two_ads_block_complex(sq, positive, lam, Rational(-1), s);
            INFO((positive ? "+" : "-") << " lambda=" << to_string(lam) << " s=" << s);
            CHECK((blk.E.b * blk.E.b).is_zero());
            CHECK(block_symmetry_residual(blk).is_zero());
            CHECK(block_anticommutation_residual(blk).is_zero());
        }
}

TEST_CASE("inadmissible parameters are rejected with the failed constraint") {
    auto sq = ads_of("square_2ads.json");
    CHECK_THROWS_MATCHES(two_ads_block_complex(sq, true, Rational(-1, 2), Rational(-1), 0.5),
                         Error, ErrorKindIs(ErrorKind::ConstraintViolation));
    CHECK_THROWS_MATCHES(two_ads_block_complex(sq, true, Rational(-1), Rational(0), 0.0), Error,
                         ErrorKindIs(ErrorKind::ConstraintViolation));
    CHECK_THROWS_MATCHES(two_ads_block_complex(sq, true, Rational(1), Rational(-1), 0.0), Error,
                         ErrorKindIs(ErrorKind::ConstraintViolation));
}

TEST_CASE("identity ledger is exact on the square 2-ads") {
    auto sq = ads_of("square_2ads.json");
    auto rep = two_ads_identities(sq);
    for (auto& a : rep.a_samples) {
        INFO("lambda=" << to_string(a.lambda) << " s=" << a.s << (a.positive ? " +" : " -"));
        CHECK(a.exact);
    }
    CHECK(rep.u_involution);
    CHECK(rep.u_differential_swap_exact);
    CHECK(rep.u_duality_s0_exact);
    CHECK(rep.u_duality_s1_exact);
    CHECK(rep.u_duality_half_conjugate);
    CHECK((rep.corner_exact_equal || rep.corner_homology_equal));
}

TEST_CASE("identity ledger is exact on the split disk") {
    auto dd = ads_of("disk_split_2ads.json");
    auto rep = two_ads_identities(dd);
    CHECK(rep.pass());
}

TEST_CASE("corrupting one sign of T is detected and localized") {
    auto sq = ads_of("square_2ads.json");
    TwoAds bad = sq;
    for (int c = 0; c < bad.T.mat.cols() && true; ++c) {
        auto& col = bad.T.mat.column_mut(c);
        if (!col.empty()) {
            col.begin()->second = -col.begin()->second;
            break;
        }
    }
    SparseGQ r = block_transfer_residual(bad, true, Rational(-1), 0.0);
    CHECK_FALSE(r.is_zero());
    CHECK(r.max_abs() > 0);
}

TEST_CASE("symmetric markers degenerate cleanly") {
    // P+ = P- on the triangle: the meet equals the join and the U identity
    // becomes symmetric but stays exact
    auto K = load_data("triangle_d2.json");
    TwoAds ads;
    ads.E = chain_complex(K);
    ads.n = K.dim - 2;
    auto fc = fundamental_cycle(K, ads.E, true);
    ads.T = symmetrize(ads.E, cap_duality(K, ads.E, fc.xi));
    ads.plus_flag.assign(ads.E.size(), 0);
    auto supp = boundary_support(K);
    for (int p = 0; p <= K.dim; ++p)
        for (int i = 0; i < (int)K.simplices[p].size(); ++i)
            if (supp.count(K.simplices[p][i].v)) ads.plus_flag[ads.E.offset[p] + i] = 1;
    ads.minus_flag = ads.plus_flag;
    CHECK(ads.and_flag() == ads.or_flag());
    Rational lam(-1), mu(-1, 2);
    auto bp = two_ads_block_complex(ads, true, lam, mu, 0.0);
    auto bm = two_ads_block_complex(ads, false, mu, lam, 0.0);
    SparseQ U = u_conjugation(bp, bm);
    CHECK(U * bp.E.b * U.adjoint() == bm.E.b);
}

TEST_CASE("short exact sequence edges are homology isomorphisms") {
    auto sq = ads_of("square_2ads.json");
    for (auto& [lam, s] : admissible) {
        if (s != 0) continue;
        auto blk = two_ads_block_complex(sq, true, lam, Rational(-1), s);
        auto rep = block_ses_equivalence(blk);
        INFO("lambda=" << to_string(lam));
        CHECK(rep.t1_chain_map);
        CHECK(rep.t1_iso);
        CHECK(rep.t2_chain_map);
        CHECK(rep.t2_iso);
    }
}
