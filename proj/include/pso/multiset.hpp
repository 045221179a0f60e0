#ifndef PSO_MULTISET_HPP
#define PSO_MULTISET_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pso/simplex.hpp"

namespace pso {

// Exact binomial coefficient (desk scale; no overflow checks needed below
// the enforced m <= 32, l <= 12 caps).
uint64_t binomial(int n, int k);

// Number of ordered tuples collapsing onto a sorted index tuple:
// l! / prod(count_i!).
uint64_t multinomial_multiplicity(const std::vector<int>& sorted_indices);

// "1,2,3" style rendering of 0-based indices as 1-based, for messages and
// the JSON key format.
std::string to_one_based_string(const std::vector<int>& indices);

// Canonical multiset of l indices from {0,...,m-1}, kept in non-decreasing
// order. Hypermatrix rows are keyed by these, which makes the symmetry
// assumption structural. Order 0 is allowed internally (used by the
// derivative machinery); hypermatrices require order >= 1.
class IndexMultiset {
public:
    IndexMultiset(int m, std::vector<int> indices);

    int dim() const { return m_; }
    int order() const { return static_cast<int>(idx_.size()); }
    const std::vector<int>& indices() const { return idx_; }
    SubsetMask support_set() const;
    uint64_t multiplicity() const { return multinomial_multiplicity(idx_); }
    uint64_t pack() const;

    friend bool operator==(const IndexMultiset&, const IndexMultiset&) = default;

private:
    int m_ = 0;
    std::vector<int> idx_;
};

// Lexicographic enumeration of all C(m+l-1, l) canonical multisets with a
// constant-time rank lookup. Row storage elsewhere follows this order.
class MultisetIndexer {
public:
    MultisetIndexer(int m, int l);

    int dim() const { return m_; }
    int order() const { return l_; }
    int count() const { return static_cast<int>(list_.size()); }
    const std::vector<IndexMultiset>& all() const { return list_; }
    const IndexMultiset& at(int rank) const { return list_[static_cast<size_t>(rank)]; }

    int rank(const IndexMultiset& ms) const;
    // Accepts any ordering of the tuple; canonicalizes first.
    int rank_of_tuple(std::vector<int> tuple) const;

    // Ranks of every multiset whose indices all lie in A, in lexicographic
    // order; there are C(|A|+l-1, l) of them.
    std::vector<int> ranks_within(const SubsetMask& a) const;

private:
    int m_ = 0;
    int l_ = 0;
    std::vector<IndexMultiset> list_;
    std::unordered_map<uint64_t, int> rank_;
};

}  // namespace pso

#endif
