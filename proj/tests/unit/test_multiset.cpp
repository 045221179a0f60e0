#include <cmath>

#include "doctest.h"
#include "pso/multiset.hpp"

using namespace pso;

TEST_CASE("binomial and multiplicity") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(22, 3) == 1540);
    CHECK(binomial(3, 5) == 0);
    CHECK(multinomial_multiplicity({0, 0}) == 1);
    CHECK(multinomial_multiplicity({0, 1}) == 2);
    CHECK(multinomial_multiplicity({0, 0, 1}) == 3);
    CHECK(multinomial_multiplicity({0, 1, 2}) == 6);
    CHECK(multinomial_multiplicity({1, 1, 2, 2}) == 6);
}

TEST_CASE("indexer counts and lexicographic rank") {
    for (int m = 1; m <= 5; ++m) {
        for (int l = 1; l <= 4; ++l) {
            const MultisetIndexer indexer(m, l);
            CHECK(indexer.count() == static_cast<int>(binomial(m + l - 1, l)));
            for (int r = 0; r < indexer.count(); ++r) {
                CHECK(indexer.rank(indexer.at(r)) == r);
            }
        }
    }
}

TEST_CASE("ordered tuples canonicalize to the same rank") {
    const MultisetIndexer indexer(4, 3);
    CHECK(indexer.rank_of_tuple({2, 0, 1}) == indexer.rank_of_tuple({0, 1, 2}));
    CHECK(indexer.rank_of_tuple({3, 3, 0}) == indexer.rank_of_tuple({0, 3, 3}));
    CHECK_THROWS_AS(indexer.rank_of_tuple({0, 1}), DimensionMismatchError);
    CHECK_THROWS_AS((IndexMultiset(3, {0, 3})), ValidationError);
}

TEST_CASE("multiplicities cover all ordered tuples") {
    for (int m = 2; m <= 4; ++m) {
        for (int l = 1; l <= 4; ++l) {
            const MultisetIndexer indexer(m, l);
            uint64_t total = 0;
            for (const IndexMultiset& ms : indexer.all()) total += ms.multiplicity();
            CHECK(total == static_cast<uint64_t>(std::pow(m, l)));
        }
    }
}

TEST_CASE("ranks within a subset") {
    const MultisetIndexer indexer(4, 2);
    const auto ranks = indexer.ranks_within(SubsetMask::of(4, {1, 3}));
    CHECK(ranks.size() == 3);  // {11}, {13}, {33} in 0-based {1,3}
    for (int r : ranks) {
        CHECK(indexer.at(r).support_set().is_subset_of(SubsetMask::of(4, {1, 3})));
    }
    CHECK(indexer.ranks_within(SubsetMask::empty_set(4)).empty());
}

TEST_CASE("one-based rendering") {
    CHECK(to_one_based_string({0, 1, 2}) == "1,2,3");
    CHECK(to_one_based_string({}) == "");
}
