#include "pso/operator.hpp"

#include <cmath>
#include <string>

#include "pso/rng.hpp"

namespace pso {

namespace {

// Pairwise (tree-ordered) sum of weights[r] * row_r over [lo, hi).
std::vector<double> pairwise_row_sum(const StochasticHypermatrix& h,
                                     const std::vector<double>& weights, int lo, int hi) {
    if (hi - lo == 1) {
        const std::vector<double>& r = h.row(lo).coords();
        std::vector<double> out(r.size());
        const double w = weights[static_cast<size_t>(lo)];
        for (size_t k = 0; k < r.size(); ++k) out[k] = w * r[k];
        return out;
    }
    const int mid = lo + (hi - lo) / 2;
    std::vector<double> a = pairwise_row_sum(h, weights, lo, mid);
    const std::vector<double> b = pairwise_row_sum(h, weights, mid, hi);
    for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

double monomial(const std::vector<int>& indices, const std::vector<double>& x) {
    double p = 1.0;
    for (int i : indices) p *= x[static_cast<size_t>(i)];
    return p;
}

bool rows_face_supported(const StochasticHypermatrix& h) {
    for (int r = 0; r < h.row_count(); ++r) {
        if (!h.row_support(r).is_subset_of(h.indexer().at(r).support_set())) return false;
    }
    return true;
}

}  // namespace

StochasticVector Pso::evaluate(const StochasticVector& x) const {
    if (x.dim() != dim()) {
        throw DimensionMismatchError("operator dimension " + std::to_string(dim()) +
                                     " does not match point dimension " + std::to_string(x.dim()));
    }
    return StochasticVector::validated(evaluate_raw(x.coords()), 1e-12);
}

std::vector<double> Pso::evaluate_raw(const std::vector<double>& x) const {
    const int n = p_.row_count();
    std::vector<double> weights(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        weights[static_cast<size_t>(r)] =
            static_cast<double>(p_.multiplicity(r)) * monomial(p_.indexer().at(r).indices(), x);
    }
    return pairwise_row_sum(p_, weights, 0, n);
}

SubsetMask image_support(const Pso& b, const SubsetMask& a) {
    if (a.ambient() != b.dim()) throw DimensionMismatchError("subset does not match operator dimension");
    if (a.is_empty()) throw ValidationError("image support requires a nonempty set");
    uint64_t bits = 0;
    for (int r : b.hypermatrix().indexer().ranks_within(a)) {
        bits |= b.hypermatrix().row_support(r).bits();
    }
    return SubsetMask(b.dim(), bits);
}

std::vector<uint64_t> image_support_table(const Pso& b) {
    const int m = b.dim();
    if (m > 20) throw ValidationError("subset table enumeration capped at m <= 20");
    const size_t size = 1ull << m;
    std::vector<uint64_t> table(size, 0);
    const StochasticHypermatrix& h = b.hypermatrix();
    for (int r = 0; r < h.row_count(); ++r) {
        table[h.indexer().at(r).support_set().bits()] |= h.row_support(r).bits();
    }
    // subset-sum DP: after pass over bit i, table[A] includes contributions
    // from every S obtained by clearing any subset of processed bits
    for (int i = 0; i < m; ++i) {
        const uint64_t bit = 1ull << i;
        for (uint64_t mask = 0; mask < size; ++mask) {
            if (mask & bit) table[mask] |= table[mask ^ bit];
        }
    }
    table[0] = 0;
    return table;
}

bool facet_image_check(const Pso& b, const SubsetMask& a, int samples, uint64_t seed) {
    if (samples < 1) throw ValidationError("facet image check requires samples >= 1");
    const SubsetMask expected = image_support(b, a);
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const StochasticVector x = facet_interior_sample(a, rng);
        if (support(b.evaluate(x), 0.0) != expected) return false;
    }
    return true;
}

std::vector<StochasticVector> iterate(const Pso& b, const StochasticVector& x0, int steps) {
    if (steps < 0) throw ValidationError("trajectory length must be >= 0");
    std::vector<StochasticVector> traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    traj.push_back(x0);
    for (int s = 0; s < steps; ++s) {
        traj.push_back(StochasticVector(b.evaluate(traj.back()).coords()));
    }
    return traj;
}

BbFactorizationCheck check_bb_factorization(const Pso& b, int samples, uint64_t seed) {
    if (samples < 1) throw ValidationError("factorization check requires samples >= 1");
    BbFactorizationCheck out;
    out.structural_ok = rows_face_supported(b.hypermatrix());
    const int m = b.dim();
    if (m == 1) return out;  // no proper support patterns exist
    Rng rng(seed);
    const uint64_t full = (1ull << m) - 1;
    for (int s = 0; s < samples && out.holds; ++s) {
        const uint64_t bits = 1 + rng.next_u64() % (full - 1);  // nonempty proper subset
        const SubsetMask a(m, bits);
        const StochasticVector x = facet_interior_sample(a, rng);
        const StochasticVector y = b.evaluate(x);
        for (int k = 0; k < m; ++k) {
            if (!a.contains(k) && y[k] > 1e-12) {
                out.holds = false;
                out.witness = BbWitness{x, k, y[k]};
                break;
            }
        }
    }
    return out;
}

}  // namespace pso
