#ifndef PSO_TESTS_NAIVE_EVAL_HPP
#define PSO_TESTS_NAIVE_EVAL_HPP

#include <vector>

#include "pso/hypermatrix.hpp"

namespace pso_tests {

// Independent test oracle: the ordered-tuple definition of the operator,
// summing all m^l monomials directly. Deliberately kept apart from the
// multiplicity-weighted evaluator it checks.
inline std::vector<double> naive_evaluate(const pso::StochasticHypermatrix& h,
                                          const std::vector<double>& x) {
    const int m = h.dim();
    const int l = h.order();
    std::vector<double> out(static_cast<size_t>(m), 0.0);
    std::vector<int> tuple(static_cast<size_t>(l), 0);
    while (true) {
        double w = 1.0;
        for (int i : tuple) w *= x[static_cast<size_t>(i)];
        const pso::StochasticVector& row = h.row(h.indexer().rank_of_tuple(tuple));
        for (int k = 0; k < m; ++k) out[static_cast<size_t>(k)] += w * row[k];
        int t = l - 1;
        while (t >= 0 && tuple[static_cast<size_t>(t)] == m - 1) --t;
        if (t < 0) break;
        ++tuple[static_cast<size_t>(t)];
        for (int s = t + 1; s < l; ++s) tuple[static_cast<size_t>(s)] = 0;
    }
    return out;
}

}  // namespace pso_tests

#endif
