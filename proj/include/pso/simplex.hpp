#ifndef PSO_SIMPLEX_HPP
#define PSO_SIMPLEX_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pso/errors.hpp"

namespace pso {

class Rng;

// Zero threshold for support computation on float-valued coordinates.
// Data assembled from JSON literals and facet samples keeps its zeros
// exact, so callers working with such data may pass eps = 0; the default
// covers solver-produced points with rounding noise.
inline constexpr double kSupportEps = 1e-12;

// Coordinate sums within this distance of 1 are renormalized on
// construction; larger deviations are rejected as malformed data.
inline constexpr double kSumTolerance = 1e-9;

// An image coordinate counts as exactly 0 or 1 within this tolerance when
// detecting vertex images. Operators merely close to vertex-permuting are
// not rounded into scope.
inline constexpr double kVertexTol = 1e-12;

// A subset of I_m = {1,...,m}, stored 0-based as a bitmask. All user-facing
// I/O converts to 1-based indices at the boundary.
class SubsetMask {
public:
    SubsetMask() = default;
    SubsetMask(int m, uint64_t bits);

    static SubsetMask empty_set(int m) { return SubsetMask(m, 0); }
    static SubsetMask full_set(int m);
    static SubsetMask singleton(int m, int index);
    static SubsetMask of(int m, const std::vector<int>& indices);

    int ambient() const { return m_; }
    uint64_t bits() const { return bits_; }
    bool contains(int index) const { return index >= 0 && index < m_ && (bits_ >> index & 1); }
    int size() const;
    bool is_empty() const { return bits_ == 0; }
    bool is_full() const;
    SubsetMask complement() const;
    bool is_subset_of(const SubsetMask& other) const;
    std::vector<int> members() const;  // ascending

    friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
    friend SubsetMask operator|(const SubsetMask& a, const SubsetMask& b);
    friend SubsetMask operator&(const SubsetMask& a, const SubsetMask& b);

private:
    int m_ = 0;
    uint64_t bits_ = 0;
};

// A point of the simplex S^{m-1}. Construction either renormalizes (sum
// within kSumTolerance of 1) or rejects; coordinates are nonnegative with
// exact zeros preserved.
class StochasticVector {
public:
    explicit StochasticVector(std::vector<double> coords);

    // Trusted path for values produced by simplex-preserving arithmetic:
    // asserts |sum - 1| <= sum_tol and nonnegativity but does not divide.
    // Violations are internal errors, not input errors.
    static StochasticVector validated(std::vector<double> coords, double sum_tol = 1e-12);

    static StochasticVector vertex(int m, int index);
    static StochasticVector barycenter(int m);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int index) const { return coords_[static_cast<size_t>(index)]; }
    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const StochasticVector&, const StochasticVector&) = default;

private:
    struct Trusted {};
    StochasticVector(Trusted, std::vector<double> coords) : coords_(std::move(coords)) {}

    std::vector<double> coords_;
};

// supp(x) = { i : x_i > eps }.
SubsetMask support(const StochasticVector& x, double eps = kSupportEps);

// null(x), the complement of supp(x).
SubsetMask null_set(const StochasticVector& x, double eps = kSupportEps);

// x and y are orthogonal (singular) when their supports are disjoint.
bool is_orthogonal(const StochasticVector& x, const StochasticVector& y,
                   double eps = kSupportEps);

// A point of int Gamma_A: support exactly A, Dirichlet(1,...,1) on the
// face, exact zeros elsewhere. Deterministic given the seed.
StochasticVector facet_interior_sample(const SubsetMask& a, Rng& rng);
StochasticVector facet_interior_sample(const SubsetMask& a, uint64_t rng_seed);

// A pair (x, y) with supp(x) = A, supp(y) = B for disjoint nonempty A, B.
std::pair<StochasticVector, StochasticVector> orthogonal_witness_pair(
    const SubsetMask& a, const SubsetMask& b, uint64_t rng_seed);

double l2_distance(const StochasticVector& x, const StochasticVector& y);

}  // namespace pso

#endif
