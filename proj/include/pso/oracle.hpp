#ifndef PSO_ORACLE_HPP
#define PSO_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "pso/operator.hpp"

namespace pso {

// Euclidean projection onto the probability simplex (sort-and-threshold).
std::vector<double> project_to_simplex(std::vector<double> z);

// Analytic gradient of ||B(x) - y||^2 at an arbitrary coordinate vector.
// Exposed so the finite-difference verification can target exactly what the
// solver uses.
std::vector<double> preimage_objective_gradient(const Pso& b, const std::vector<double>& x,
                                                const std::vector<double>& y);

struct PreimageResult {
    StochasticVector target;
    StochasticVector best_x;
    double residual = 0.0;  // ||B(best_x) - target||_2, recomputable
    int starts_used = 0;
    bool converged = false;  // residual <= tol
};

// Multi-start projected-gradient least squares on the simplex. Starting
// points are y itself, the barycenter, then `starts` Dirichlet draws; the
// search stops at the first convergent start. Non-convergence is data, not
// an error; a non-surjectivity verdict is never concluded here, only a
// residual floor reported back to the exact combinatorial pipeline.
// Deterministic given the seed.
PreimageResult solve_preimage(const Pso& b, const StochasticVector& y, int starts = 64,
                              double tol = 1e-9, uint64_t seed = 0);

struct TargetFailure {
    StochasticVector target;
    double residual = 0.0;
};

struct SurjectivitySample {
    int targets_tested = 0;
    double max_residual = 0.0;
    std::vector<TargetFailure> failures;
    bool consistent_with_surjective() const { return failures.empty(); }
};

// Preimage solves over all vertices, all edge midpoints (failure modes
// concentrate on facets) and n_targets Dirichlet interior points.
SurjectivitySample sample_surjectivity(const Pso& b, int n_targets = 50, int starts = 64,
                                       double tol = 1e-9, uint64_t seed = 0);

// m = 2 closed form: f(t) = B((t, 1-t))_1 is continuous with f(0) = B(e_2)_1
// and f(1) = B(e_1)_1, so a grid min/max near 0 and 1 certifies surjectivity
// onto [0,1] by the intermediate value theorem.
struct M2Check {
    bool onto = false;
    double f_at_0 = 0.0;
    double f_at_1 = 0.0;
    double grid_min = 0.0;
    double grid_max = 0.0;
    bool vertex_fixing = false;
};

M2Check m2_polynomial_check(const Pso& b, int grid_points = 10000, double tol = 1e-9);

struct CollisionCandidate {
    StochasticVector x1;
    StochasticVector x2;
    double separation = 0.0;
    double image_gap = 0.0;
    bool confirmed = false;  // still violating after local refinement
};

struct InjectivityProbe {
    int pairs_tested = 0;
    double min_image_gap = 0.0;  // over all well-separated pairs tested
    std::vector<CollisionCandidate> candidates;
    int confirmed = 0;
};

// Evidence-gathering probe for "surjective implies injective": samples
// well-separated pairs and reports any pair whose images nearly coincide.
// Candidates are refined by a local two-point minimization before being
// reported. Report-only; requires a surjective operator.
InjectivityProbe probe_injectivity(const Pso& b, int n_pairs, double sep_tol, double img_tol,
                                   uint64_t seed);

// Dense barycentric grid scan of min ||B(x) - y||: an optimizer-independent
// lower-bound witness for small m (steps_per_unit = 100 gives step 0.01).
double grid_residual_floor(const Pso& b, const StochasticVector& y, int steps_per_unit = 100);

}  // namespace pso

#endif
