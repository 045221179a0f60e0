#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pso/hypermatrix.hpp"
#include "pso/json_io.hpp"
#include "pso/operator.hpp"
#include "pso/rng.hpp"
#include "support/fixtures.hpp"
#include "support/naive_eval.hpp"

using namespace pso;
using pso_tests::load_fixture;

namespace {

using Entries = std::vector<std::pair<std::vector<int>, std::vector<double>>>;

Entries identity_lift_entries() {
    return {{{0, 0}, {1, 0}}, {{0, 1}, {0.5, 0.5}}, {{1, 1}, {0, 1}}};
}

}  // namespace

TEST_CASE("from_entries validates the row table") {
    CHECK_NOTHROW(StochasticHypermatrix::from_entries(2, 2, identity_lift_entries()));

    Entries missing = identity_lift_entries();
    missing.erase(missing.begin() + 1);
    CHECK_THROWS_AS(StochasticHypermatrix::from_entries(2, 2, missing), MissingRowError);

    Entries bad = identity_lift_entries();
    bad[0].second = {0.6, 0.6};
    CHECK_THROWS_AS(StochasticHypermatrix::from_entries(2, 2, bad), BadRowError);

    // permuted duplicate that agrees is averaged, disagreement is fatal
    Entries dup = identity_lift_entries();
    dup.push_back({{1, 0}, {0.5, 0.5}});
    CHECK_NOTHROW(StochasticHypermatrix::from_entries(2, 2, dup));
    dup.back().second = {1.0, 0.0};
    CHECK_THROWS_AS(StochasticHypermatrix::from_entries(2, 2, dup), SymmetryConflictError);
}

TEST_CASE("row bookkeeping") {
    const StochasticHypermatrix h = StochasticHypermatrix::from_entries(2, 2, identity_lift_entries());
    CHECK(h.row_count() == 3);
    CHECK(h.multiplicity(h.indexer().rank_of_tuple({0, 1})) == 2);
    CHECK(h.row_support(h.indexer().rank_of_tuple({0, 0})) == SubsetMask::of(2, {0}));
    for (int r = 0; r < h.row_count(); ++r) {
        double sum = 0;
        for (double v : h.row(r).coords()) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("quadratic and cubic ingestion") {
    // Volterra-style m=2 quadratic
    const std::vector<std::vector<double>> volterra = {{1, 0}, {0.5, 0.5}, {0.5, 0.5}, {0, 1}};
    const StochasticHypermatrix q = from_qso(2, volterra);
    CHECK(q.order() == 2);
    CHECK(q.row(q.indexer().rank_of_tuple({0, 1})).coords() == std::vector<double>{0.5, 0.5});

    const std::vector<std::vector<double>> asym = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
    CHECK_THROWS_AS(from_qso(2, asym), AsymmetryTooLargeError);

    // cubic with all rows equal to the barycenter
    std::vector<std::vector<double>> cso(8, std::vector<double>{0.5, 0.5});
    CHECK(from_cso(2, cso).order() == 3);
    CHECK_THROWS_AS(from_cso(2, std::vector<std::vector<double>>(4, std::vector<double>{0.5, 0.5})),
                    ValidationError);
}

TEST_CASE("order lift reproduces the linear identity example") {
    const StochasticHypermatrix linear = StochasticHypermatrix::from_rows(
        2, 1, {StochasticVector::vertex(2, 0), StochasticVector::vertex(2, 1)});
    const StochasticHypermatrix lifted = lift_order(linear);
    CHECK(lifted.order() == 2);
    CHECK(lifted.row(lifted.indexer().rank_of_tuple({0, 0})).coords() == std::vector<double>{1, 0});
    CHECK(lifted.row(lifted.indexer().rank_of_tuple({0, 1})).coords() == std::vector<double>{0.5, 0.5});
    CHECK(lifted.row(lifted.indexer().rank_of_tuple({1, 1})).coords() == std::vector<double>{0, 1});
}

TEST_CASE("order lift keeps the operator and the vertex rows") {
    Rng rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const int m = 2 + rng.below(3);
        const int l = 1 + rng.below(3);
        const StochasticHypermatrix p0 = random_hypermatrix(m, l, RandomMode::kGeneral, rng.next_u64());
        const StochasticHypermatrix lifted = lift_order(p0);
        const Pso base(p0);
        const Pso up(lifted);
        for (int s = 0; s < 25; ++s) {
            const StochasticVector x = StochasticVector::validated(rng.dirichlet_uniform(m), 1e-12);
            const StochasticVector a = base.evaluate(x);
            const StochasticVector b = up.evaluate(x);
            for (int k = 0; k < m; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-12);
        }
        for (int i = 0; i < m; ++i) {
            const std::vector<int> base_tuple(static_cast<size_t>(l), i);
            const std::vector<int> up_tuple(static_cast<size_t>(l) + 1, i);
            const StochasticVector& r0 = p0.row(p0.indexer().rank_of_tuple(base_tuple));
            const StochasticVector& r1 = lifted.row(lifted.indexer().rank_of_tuple(up_tuple));
            for (int k = 0; k < m; ++k) CHECK(std::abs(r0[k] - r1[k]) <= 1e-15);
        }
    }
}

TEST_CASE("random modes honor their row structure") {
    SUBCASE("op_structured rows live on the multiset's face") {
        const StochasticHypermatrix h = random_hypermatrix(3, 2, RandomMode::kOpStructured, 7);
        const int r = h.indexer().rank_of_tuple({0, 1});
        CHECK(h.row(r)[2] == 0.0);
        CHECK(h.row_support(r) == SubsetMask::of(3, {0, 1}));
    }
    SUBCASE("vertex_fixing pins the diagonal rows") {
        const StochasticHypermatrix h = random_hypermatrix(4, 3, RandomMode::kVertexFixing, 9);
        for (int i = 0; i < 4; ++i) {
            CHECK(h.row(h.indexer().rank_of_tuple({i, i, i})) == StochasticVector::vertex(4, i));
        }
    }
    SUBCASE("permuted_op rows live on the permuted face") {
        const Permutation pi({1, 2, 0});
        const StochasticHypermatrix h =
            random_hypermatrix(3, 2, RandomMode::kPermutedOp, 11, pi);
        const int r = h.indexer().rank_of_tuple({0, 0});
        CHECK(h.row(r) == StochasticVector::vertex(3, 1));
        CHECK_THROWS_AS(random_hypermatrix(3, 2, RandomMode::kPermutedOp, 11), ValidationError);
        CHECK_THROWS_AS(random_hypermatrix(4, 2, RandomMode::kPermutedOp, 11, pi), ValidationError);
    }
    SUBCASE("reproducible given the seed") {
        const StochasticHypermatrix a = random_hypermatrix(2, 2, RandomMode::kGeneral, 42);
        const StochasticHypermatrix b = random_hypermatrix(2, 2, RandomMode::kGeneral, 42);
        for (int r = 0; r < a.row_count(); ++r) CHECK(a.row(r) == b.row(r));
    }
}

TEST_CASE("output permutation composes with the operator") {
    const Pso b = pso_tests::qso3_nonop();
    const Permutation sigma({2, 0, 1});
    const Pso permuted(permute_outputs(b.hypermatrix(), sigma));
    Rng rng(3);
    for (int s = 0; s < 20; ++s) {
        const StochasticVector x = StochasticVector::validated(rng.dirichlet_uniform(3), 1e-12);
        const StochasticVector lhs = permuted.evaluate(x);
        const StochasticVector base = b.evaluate(x);
        for (int k = 0; k < 3; ++k) CHECK(lhs[sigma.apply(k)] == doctest::Approx(base[k]).epsilon(1e-15));
    }
}

TEST_CASE("JSON round trip and schema errors") {
    const StochasticHypermatrix h = load_fixture("identity_lift.json");
    const nlohmann::json doc = hypermatrix_to_json(h);
    const StochasticHypermatrix back = hypermatrix_from_json(doc);
    CHECK(back.row_count() == h.row_count());
    for (int r = 0; r < h.row_count(); ++r) CHECK(back.row(r) == h.row(r));

    SUBCASE("missing canonical key") {
        nlohmann::json bad = doc;
        bad["entries"].erase("1,2");
        CHECK_THROWS_AS(hypermatrix_from_json(bad), MissingRowError);
    }
    SUBCASE("permuted key spelling covers the canonical multiset") {
        nlohmann::json spelled = doc;
        spelled["entries"].erase("1,2");
        spelled["entries"]["2,1"] = {0.5, 0.5};
        CHECK_NOTHROW(hypermatrix_from_json(spelled));
    }
    SUBCASE("malformed documents") {
        CHECK_THROWS_AS(hypermatrix_from_json(nlohmann::json::array()), ValidationError);
        nlohmann::json no_l = doc;
        no_l.erase("l");
        CHECK_THROWS_AS(hypermatrix_from_json(no_l), ValidationError);
        nlohmann::json bad_key = doc;
        bad_key["entries"]["1,x"] = {0.5, 0.5};
        CHECK_THROWS_AS(hypermatrix_from_json(bad_key), ValidationError);
        nlohmann::json short_row = doc;
        short_row["entries"]["1,1"] = {1.0};
        CHECK_THROWS_AS(hypermatrix_from_json(short_row), BadRowError);
    }
    SUBCASE("stream parse errors are input errors") {
        std::istringstream in("{ not json");
        CHECK_THROWS_AS(hypermatrix_from_stream(in), ValidationError);
    }
}

TEST_CASE("evaluation is invariant under index reordering by construction") {
    const StochasticHypermatrix h = load_fixture("qso3_nonop.json");
    // ordered lookups for any permutation of a tuple return the same row object
    const StochasticVector& a = h.row(h.indexer().rank_of_tuple({0, 2}));
    const StochasticVector& b = h.row(h.indexer().rank_of_tuple({2, 0}));
    CHECK(&a == &b);
}
