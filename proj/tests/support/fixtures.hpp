#ifndef PSO_TESTS_FIXTURES_HPP
#define PSO_TESTS_FIXTURES_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include "pso/json_io.hpp"
#include "pso/operator.hpp"

namespace pso_tests {

inline pso::StochasticHypermatrix load_fixture(const std::string& name) {
    const std::string path = std::string(PSO_TEST_DATA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing test fixture " + path);
    return pso::hypermatrix_from_stream(in);
}

// m=2, l=2 lift of the identity map: rows 11:(1,0), 12:(.5,.5), 22:(0,1).
inline pso::Pso identity_lift() { return pso::Pso(load_fixture("identity_lift.json")); }

// m=3 quadratic operator with vertex-fixing rows but P_{12,.} = e_3;
// not orthogonal preserving, not surjective.
inline pso::Pso qso3_nonop() { return pso::Pso(load_fixture("qso3_nonop.json")); }

// m=2, l=2 coordinate swap with a mixed middle row; vertex permutation (2 1).
inline pso::Pso swap2() { return pso::Pso(load_fixture("swap2.json")); }

}  // namespace pso_tests

#endif
