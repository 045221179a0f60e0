#ifndef PSO_OPERATOR_HPP
#define PSO_OPERATOR_HPP

#include <optional>
#include <vector>

#include "pso/hypermatrix.hpp"

namespace pso {

// The polynomial stochastic operator induced by a symmetric stochastic
// hypermatrix: B(x) = sum over canonical multisets mu of
// multiplicity(mu) * prod_{i in mu} x_i * P_{mu,.}.
//
// The multiset sum with exact integer multiplicities equals the ordered
// m^l-term definition; an independent ordered-sum evaluator in the test
// suite pins that equivalence.
class Pso {
public:
    explicit Pso(StochasticHypermatrix p) : p_(std::move(p)) {}

    int dim() const { return p_.dim(); }
    int order() const { return p_.order(); }
    const StochasticHypermatrix& hypermatrix() const { return p_; }

    // Evaluates at a simplex point. The result is asserted to be a simplex
    // point (sum drift <= 1e-12) but never renormalized.
    StochasticVector evaluate(const StochasticVector& x) const;

    // The same polynomial at an arbitrary coordinate vector, without simplex
    // validation of input or output (finite-difference probes, grid scans).
    std::vector<double> evaluate_raw(const std::vector<double>& x) const;

private:
    StochasticHypermatrix p_;
};

// U(A): union of row supports over all multisets inside A. Equals
// supp(B(x)) for every x with support exactly A, which makes image supports
// a purely combinatorial function of input supports.
SubsetMask image_support(const Pso& b, const SubsetMask& a);

// U(A) for every subset at once, as bitmasks indexed by A's mask.
// Capped at m <= 20 (2^m table).
std::vector<uint64_t> image_support_table(const Pso& b);

// Samples int Gamma_A and confirms supp(B(x)) = U(A) on every sample.
// Sanity layer only; decisions use image_support itself.
bool facet_image_check(const Pso& b, const SubsetMask& a, int samples, uint64_t seed);

// Trajectory [x0, B(x0), ..., B^steps(x0)]. Points are renormalized between
// steps so rounding drift cannot compound across iterations.
std::vector<StochasticVector> iterate(const Pso& b, const StochasticVector& x0, int steps);

struct BbWitness {
    StochasticVector x;
    int coordinate = 0;  // 0-based
    double value = 0.0;
};

// Observable content of the coordinate factorization B(x)_k = x_k * (...):
// whenever x_k = 0, B(x)_k must vanish. `structural_ok` reports whether the
// operator passes the all-small-subsets-absorbing precondition; the sampling
// probe runs either way so the check doubles as a falsification probe.
struct BbFactorizationCheck {
    bool structural_ok = false;
    bool holds = true;
    std::optional<BbWitness> witness;
};

BbFactorizationCheck check_bb_factorization(const Pso& b, int samples, uint64_t seed);

}  // namespace pso

#endif
