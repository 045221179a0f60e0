#ifndef PSO_HYPERMATRIX_HPP
#define PSO_HYPERMATRIX_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pso/multiset.hpp"
#include "pso/permutation.hpp"
#include "pso/simplex.hpp"

namespace pso {

// Ordered (non-canonical) duplicates whose rows agree within this bound are
// averaged; a larger disagreement is a hard error, since silently repairing
// data that violates the symmetry assumption would hide real defects.
inline constexpr double kSymmetryTol = 1e-9;

// Order-l, dimension-m symmetric stochastic hypermatrix. Rows are keyed by
// canonical index multisets, so invariance under index permutations holds by
// construction; the multinomial multiplicity of each multiset is precomputed
// exactly so the evaluator can reproduce the ordered-sum definition.
class StochasticHypermatrix {
public:
    // rows in the indexer's lexicographic order.
    static StochasticHypermatrix from_rows(int m, int l, std::vector<StochasticVector> rows);

    // entries may use any index ordering; they are canonicalized and merged.
    // Throws MissingRowError / BadRowError / SymmetryConflictError.
    static StochasticHypermatrix from_entries(
        int m, int l,
        const std::vector<std::pair<std::vector<int>, std::vector<double>>>& entries);

    int dim() const { return m_; }
    int order() const { return l_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    const MultisetIndexer& indexer() const { return indexer_; }

    const StochasticVector& row(int rank) const { return rows_[static_cast<size_t>(rank)]; }
    const StochasticVector& row(const IndexMultiset& ms) const { return rows_[static_cast<size_t>(indexer_.rank(ms))]; }
    uint64_t multiplicity(int rank) const { return mults_[static_cast<size_t>(rank)]; }
    // Exact-zero support of the row (zeros in rows are exact by construction).
    const SubsetMask& row_support(int rank) const { return supports_[static_cast<size_t>(rank)]; }

private:
    StochasticHypermatrix(int m, int l, std::vector<StochasticVector> rows);

    int m_;
    int l_;
    MultisetIndexer indexer_;
    std::vector<StochasticVector> rows_;
    std::vector<uint64_t> mults_;
    std::vector<SubsetMask> supports_;
};

// Order lift: builds the order-(l+1) hypermatrix whose row for a multiset is
// the average of the order-l rows with one position dropped. The induced
// operator is unchanged; tests enforce that identity rather than any
// particular normalization convention.
StochasticHypermatrix lift_order(const StochasticHypermatrix& p0);

// Quadratic case from an ordered m*m array of rows p_{ij,.} (index i*m+j).
// p_{ij,.} and p_{ji,.} are averaged when within kSymmetryTol, otherwise
// AsymmetryTooLargeError.
StochasticHypermatrix from_qso(int m, const std::vector<std::vector<double>>& ordered_rows);

// Cubic case from an ordered m*m*m array (index (i*m+j)*m+t).
StochasticHypermatrix from_cso(int m, const std::vector<std::vector<double>>& ordered_rows);

enum class RandomMode {
    kGeneral,      // every row Dirichlet(1,...,1) on S^{m-1}
    kVertexFixing, // general, but P_{i...i,.} = e_i
    kOpStructured, // row for a multiset with support S sampled inside Gamma_S
    kPermutedOp,   // row sampled inside Gamma_{pi(S)}
};

StochasticHypermatrix random_hypermatrix(
    int m, int l, RandomMode mode, uint64_t seed,
    const std::optional<Permutation>& perm = std::nullopt);

// Rows of Q_sigma composed with the operator: row'_k = row_{sigma^{-1}(k)},
// i.e. output coordinate j is relabeled to sigma(j).
StochasticHypermatrix permute_outputs(const StochasticHypermatrix& p, const Permutation& sigma);

}  // namespace pso

#endif
