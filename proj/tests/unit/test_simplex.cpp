#include <cmath>

#include "doctest.h"
#include "pso/rng.hpp"
#include "pso/simplex.hpp"

using namespace pso;

TEST_CASE("support thresholds") {
    CHECK(support(StochasticVector({1, 0, 0})) == SubsetMask::of(3, {0}));
    CHECK(support(StochasticVector({0.5, 0.5, 0})) == SubsetMask::of(3, {0, 1}));
    CHECK(support(StochasticVector({1.0 / 3, 1.0 / 3, 1.0 / 3})) == SubsetMask::of(3, {0, 1, 2}));
    // threshold vs exact-zero semantics
    const StochasticVector tiny({1e-13, 1.0 - 1e-13});
    CHECK(support(tiny, 1e-12) == SubsetMask::of(2, {1}));
    CHECK(support(tiny, 0.0) == SubsetMask::of(2, {0, 1}));
    CHECK_THROWS_AS(support(tiny, -1.0), ValidationError);
}

TEST_CASE("support and null set partition the index set") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + rng.below(6);
        const StochasticVector x = StochasticVector::validated(rng.dirichlet_uniform(m), 1e-12);
        const SubsetMask s = support(x);
        const SubsetMask n = null_set(x);
        CHECK((s & n).is_empty());
        CHECK((s | n).is_full());
    }
}

TEST_CASE("orthogonality") {
    CHECK(is_orthogonal(StochasticVector({1, 0}), StochasticVector({0, 1})));
    CHECK(is_orthogonal(StochasticVector({0.5, 0.5, 0}), StochasticVector({0, 0, 1})));
    CHECK_FALSE(is_orthogonal(StochasticVector({0.5, 0.5}), StochasticVector({1, 0})));
    CHECK_THROWS_AS(is_orthogonal(StochasticVector({1, 0}), StochasticVector({1, 0, 0})),
                    DimensionMismatchError);
}

TEST_CASE("orthogonality is symmetric and kills pointwise products") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + rng.below(5);
        const uint64_t full = (1ull << m) - 1;
        const uint64_t a = 1 + rng.next_u64() % (full - 1);
        const SubsetMask sa(m, a);
        const SubsetMask sb = sa.complement();
        const auto [x, y] = orthogonal_witness_pair(sa, sb, rng.next_u64());
        CHECK(is_orthogonal(x, y));
        CHECK(is_orthogonal(y, x));
        for (int k = 0; k < m; ++k) CHECK(std::min(x[k], y[k]) <= kSupportEps);
    }
}

TEST_CASE("facet interior sampling") {
    SUBCASE("singleton face is the vertex, exactly") {
        const StochasticVector x = facet_interior_sample(SubsetMask::of(3, {1}), 99u);
        CHECK(x.coords() == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("support contract, exhaustive subsets of m=4") {
        Rng rng(5);
        for (uint64_t bits = 1; bits < 16; ++bits) {
            const SubsetMask a(4, bits);
            const StochasticVector x = facet_interior_sample(a, rng);
            CHECK(support(x, 0.0) == a);
        }
    }
    SUBCASE("deterministic given seed") {
        const SubsetMask a = SubsetMask::of(3, {0, 1});
        CHECK(facet_interior_sample(a, 7u) == facet_interior_sample(a, 7u));
    }
    CHECK_THROWS_AS(facet_interior_sample(SubsetMask::empty_set(3), 1u), ValidationError);
}

TEST_CASE("orthogonal witness pairs") {
    const auto [x, y] = orthogonal_witness_pair(SubsetMask::of(3, {0, 1}), SubsetMask::of(3, {2}), 3u);
    CHECK(support(x, 0.0) == SubsetMask::of(3, {0, 1}));
    CHECK(y == StochasticVector::vertex(3, 2));
    CHECK_THROWS_AS(orthogonal_witness_pair(SubsetMask::of(2, {0}), SubsetMask::of(2, {0}), 1u),
                    ValidationError);
}

TEST_CASE("construction policy") {
    // renormalized within 1e-9
    const StochasticVector x({0.5 + 4e-10, 0.5});
    double sum = 0;
    for (double c : x.coords()) sum += c;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    // rejected beyond
    CHECK_THROWS_AS(StochasticVector({0.6, 0.6}), ValidationError);
    CHECK_THROWS_AS(StochasticVector({0.5, 0.5 + 1e-8}), ValidationError);
    // tiny negatives clamp to exact zero, larger ones reject
    CHECK(StochasticVector({-1e-13, 1.0})[0] == 0.0);
    CHECK_THROWS_AS(StochasticVector({-1e-6, 1.0 + 1e-6}), ValidationError);
    CHECK_THROWS_AS(StochasticVector({std::nan(""), 1.0}), ValidationError);
    CHECK_THROWS_AS(StochasticVector(std::vector<double>{}), ValidationError);
}

TEST_CASE("subset mask basics") {
    const SubsetMask a = SubsetMask::of(5, {0, 2, 4});
    CHECK(a.size() == 3);
    CHECK(a.complement() == SubsetMask::of(5, {1, 3}));
    CHECK(a.complement().complement() == a);
    CHECK(a.members() == std::vector<int>{0, 2, 4});
    CHECK(SubsetMask::of(5, {0}).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(SubsetMask::of(5, {0})));
    CHECK_THROWS_AS(SubsetMask(3, 0b1000), ValidationError);
}
