#ifndef PSO_TESTS_OP_ORACLE_HPP
#define PSO_TESTS_OP_ORACLE_HPP

#include "pso/operator.hpp"

namespace pso_tests {

// Test oracle for the orthogonal-preserving decider: scans every disjoint
// pair of nonempty subsets instead of only complementary pairs.
inline bool op_full_pair_scan(const pso::Pso& b) {
    const int m = b.dim();
    if (m == 1) return true;
    const uint64_t full = (1ull << m) - 1;
    for (uint64_t a = 1; a <= full; ++a) {
        for (uint64_t c = 1; c <= full; ++c) {
            if ((a & c) != 0) continue;
            const pso::SubsetMask ua = pso::image_support(b, pso::SubsetMask(m, a));
            const pso::SubsetMask uc = pso::image_support(b, pso::SubsetMask(m, c));
            if (!(ua & uc).is_empty()) return false;
        }
    }
    return true;
}

}  // namespace pso_tests

#endif
