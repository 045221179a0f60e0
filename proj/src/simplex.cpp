#include "pso/simplex.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "pso/rng.hpp"

namespace pso {

namespace {

// Tiny negatives from I/O rounding are clamped; anything worse is rejected.
constexpr double kNegativeClamp = 1e-12;
constexpr int kMaxAmbient = 32;

void check_ambient(int m) {
    if (m < 1 || m > kMaxAmbient) {
        throw ValidationError("ambient dimension must be in [1, 32], got " + std::to_string(m));
    }
}

uint64_t full_bits(int m) { return m == 64 ? ~0ull : (1ull << m) - 1; }

}  // namespace

SubsetMask::SubsetMask(int m, uint64_t bits) : m_(m), bits_(bits) {
    check_ambient(m);
    if (bits & ~full_bits(m)) {
        throw ValidationError("subset mask has members outside {1,...,m}");
    }
}

SubsetMask SubsetMask::full_set(int m) {
    check_ambient(m);
    return SubsetMask(m, full_bits(m));
}

SubsetMask SubsetMask::singleton(int m, int index) {
    check_ambient(m);
    if (index < 0 || index >= m) throw ValidationError("subset index out of range");
    return SubsetMask(m, 1ull << index);
}

SubsetMask SubsetMask::of(int m, const std::vector<int>& indices) {
    check_ambient(m);
    uint64_t bits = 0;
    for (int i : indices) {
        if (i < 0 || i >= m) throw ValidationError("subset index out of range");
        bits |= 1ull << i;
    }
    return SubsetMask(m, bits);
}

int SubsetMask::size() const { return std::popcount(bits_); }

bool SubsetMask::is_full() const { return m_ > 0 && bits_ == full_bits(m_); }

SubsetMask SubsetMask::complement() const {
    return SubsetMask(m_, bits_ ^ full_bits(m_));
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
    if (m_ != other.m_) throw DimensionMismatchError("subset comparison across different ambient sizes");
    return (bits_ & ~other.bits_) == 0;
}

std::vector<int> SubsetMask::members() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(size()));
    for (int i = 0; i < m_; ++i) {
        if (bits_ >> i & 1) out.push_back(i);
    }
    return out;
}

SubsetMask operator|(const SubsetMask& a, const SubsetMask& b) {
    if (a.m_ != b.m_) throw DimensionMismatchError("subset union across different ambient sizes");
    return SubsetMask(a.m_, a.bits_ | b.bits_);
}

SubsetMask operator&(const SubsetMask& a, const SubsetMask& b) {
    if (a.m_ != b.m_) throw DimensionMismatchError("subset intersection across different ambient sizes");
    return SubsetMask(a.m_, a.bits_ & b.bits_);
}

StochasticVector::StochasticVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("stochastic vector needs dimension >= 1");
    if (coords_.size() > static_cast<size_t>(kMaxAmbient)) {
        throw ValidationError("stochastic vector dimension exceeds 32");
    }
    double sum = 0.0;
    for (double& c : coords_) {
        if (!std::isfinite(c)) throw ValidationError("stochastic vector coordinate is not finite");
        if (c < 0.0) {
            if (c < -kNegativeClamp) {
                throw ValidationError("negative coordinate " + std::to_string(c) + " in stochastic vector");
            }
            c = 0.0;
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg << "coordinates sum to " << sum << ", outside 1 +/- " << kSumTolerance;
        throw ValidationError(msg.str());
    }
    for (double& c : coords_) c /= sum;
}

StochasticVector StochasticVector::validated(std::vector<double> coords, double sum_tol) {
    if (coords.empty()) throw std::logic_error("validated(): empty coordinate vector");
    double sum = 0.0;
    for (double& c : coords) {
        if (c < 0.0) {
            if (c < -1e-15) throw std::logic_error("validated(): negative coordinate " + std::to_string(c));
            c = 0.0;
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > sum_tol) {
        throw std::logic_error("validated(): coordinate sum drifted to " + std::to_string(sum));
    }
    return StochasticVector(Trusted{}, std::move(coords));
}

StochasticVector StochasticVector::vertex(int m, int index) {
    check_ambient(m);
    if (index < 0 || index >= m) throw ValidationError("vertex index out of range");
    std::vector<double> c(static_cast<size_t>(m), 0.0);
    c[static_cast<size_t>(index)] = 1.0;
    return StochasticVector(Trusted{}, std::move(c));
}

StochasticVector StochasticVector::barycenter(int m) {
    check_ambient(m);
    std::vector<double> c(static_cast<size_t>(m), 1.0 / m);
    return validated(std::move(c), 1e-12);
}

SubsetMask support(const StochasticVector& x, double eps) {
    if (eps < 0.0) throw ValidationError("support threshold must be >= 0");
    uint64_t bits = 0;
    for (int i = 0; i < x.dim(); ++i) {
        if (x[i] > eps) bits |= 1ull << i;
    }
    return SubsetMask(x.dim(), bits);
}

SubsetMask null_set(const StochasticVector& x, double eps) {
    return support(x, eps).complement();
}

bool is_orthogonal(const StochasticVector& x, const StochasticVector& y, double eps) {
    if (x.dim() != y.dim()) {
        throw DimensionMismatchError("orthogonality test across different dimensions");
    }
    return (support(x, eps) & support(y, eps)).is_empty();
}

StochasticVector facet_interior_sample(const SubsetMask& a, Rng& rng) {
    if (a.is_empty()) throw ValidationError("facet sample requires a nonempty index set");
    std::vector<double> coords(static_cast<size_t>(a.ambient()), 0.0);
    const std::vector<int> mem = a.members();
    const std::vector<double> w = rng.dirichlet_uniform(static_cast<int>(mem.size()));
    for (size_t t = 0; t < mem.size(); ++t) {
        coords[static_cast<size_t>(mem[t])] = w[t];
    }
    return StochasticVector::validated(std::move(coords), 1e-12);
}

StochasticVector facet_interior_sample(const SubsetMask& a, uint64_t rng_seed) {
    Rng rng(rng_seed);
    return facet_interior_sample(a, rng);
}

std::pair<StochasticVector, StochasticVector> orthogonal_witness_pair(
    const SubsetMask& a, const SubsetMask& b, uint64_t rng_seed) {
    if (a.ambient() != b.ambient()) {
        throw DimensionMismatchError("witness pair across different ambient sizes");
    }
    if (a.is_empty() || b.is_empty()) throw ValidationError("witness pair requires nonempty sets");
    if (!(a & b).is_empty()) throw ValidationError("witness pair requires disjoint sets");
    Rng rng(rng_seed);
    StochasticVector x = facet_interior_sample(a, rng);
    StochasticVector y = facet_interior_sample(b, rng);
    return {std::move(x), std::move(y)};
}

double l2_distance(const StochasticVector& x, const StochasticVector& y) {
    if (x.dim() != y.dim()) throw DimensionMismatchError("distance across different dimensions");
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace pso
