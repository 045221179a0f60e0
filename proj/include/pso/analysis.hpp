#ifndef PSO_ANALYSIS_HPP
#define PSO_ANALYSIS_HPP

#include <optional>
#include <vector>

#include "pso/operator.hpp"
#include "pso/permutation.hpp"

namespace pso {

// Images of the vertices, B(e_i) = P_{i...i,.}. `permutation` is present
// exactly when every image is a vertex (within kVertexTol) and the vertex
// assignment is bijective; otherwise `offending_index` names the first
// vertex whose image breaks that structure.
struct VertexMap {
    std::vector<StochasticVector> images;
    std::optional<Permutation> permutation;
    std::optional<int> offending_index;
};

VertexMap vertex_map(const Pso& b);

// Certificate: row P_{mu,.} puts mass on a coordinate outside the allowed
// target set (the multiset's support, permuted when a relabeling applies).
struct StructuralViolation {
    IndexMultiset multiset;
    int coordinate = 0;  // 0-based, in the operator's original coordinates
};

// Certificate: disjoint input supports whose image supports meet.
struct SupportOverlap {
    SubsetMask set_a;
    SubsetMask set_b;
    int coordinate = 0;  // 0-based common element of U(A) and U(B)
};

struct OpVerdict {
    bool is_op = false;
    std::optional<StructuralViolation> structural_violation;
    std::optional<SupportOverlap> overlap;
};

enum class OpMethod {
    // Exact for every operator: OP holds iff U(A) and U(B) are disjoint for
    // all disjoint nonempty A, B. Since U is monotone it suffices to test
    // complementary pairs (A, A^c); the full-pair scan is kept as a test
    // oracle.
    kCombinatorial,
    // Requires a vertex permutation pi; OP holds iff after relabeling by
    // pi^{-1} every row satisfies supp(P_{mu,.}) <= support-set(mu).
    // Throws InapplicableError otherwise (the combinatorial method still
    // decides in that case).
    kStructural,
};

OpVerdict is_orthogonal_preserving(const Pso& b, OpMethod method);

// A is absorbing iff the multisets inside A see no mass outside A, i.e.
// U(A) = A. Computed exactly; applies to every nonempty A including I_m.
bool is_absorbing(const Pso& b, const SubsetMask& a);

// Three independent routes to the absorbing property: the exact
// combinatorial test, sampled forward-invariance of int Gamma_A, and the
// single-interior-point test. They must always agree.
struct AbsorbingEquivalence {
    bool exact = false;
    bool sampled_invariant = false;
    bool single_point = false;
    bool consistent() const { return exact == sampled_invariant && sampled_invariant == single_point; }
};

AbsorbingEquivalence absorbing_equivalence_check(const Pso& b, const SubsetMask& a,
                                                 int samples, uint64_t seed);

// True iff supp(P_{mu,.}) <= support-set(mu) for every multiset, which is
// exactly "every A with |A| <= l is absorbing" and implies that every
// subset of I_m is absorbing.
struct SmallSubsetsVerdict {
    bool all_absorbing = false;
    std::optional<StructuralViolation> violation;
};

SmallSubsetsVerdict all_small_subsets_absorbing(const Pso& b);

// Facet preimage condition at size k (1 <= k <= l), relative to the vertex
// permutation pi: for every A with |A| = k, the only input support whose
// image support equals pi(A) is A itself. Enumerates all 2^m subsets;
// capped at m <= 20.
struct FacetPreimageFailure {
    SubsetMask facet;                          // the A that failed
    std::vector<SubsetMask> preimage_supports; // all A' with U(A') = pi(A)
};

struct FacetPreimageResult {
    bool ok = false;
    std::optional<FacetPreimageFailure> failure;
};

FacetPreimageResult facet_preimage_condition(const Pso& b, const Permutation& pi, int k);

enum class SurjectivityReason {
    kNoVertexPermutation,
    kStructuralPass,
    kStructuralFail,
};

// Exact surjectivity verdict:
//  (1) vertex images must form a vertex permutation (surjectivity forces
//      this: each vertex target needs a distinct vertex source);
//  (2) after relabeling by the permutation, surjectivity is equivalent to
//      the all-small-subsets-absorbing structure, which is equivalent to
//      the orthogonal-preserving property.
struct SurjectivityVerdict {
    bool surjective = false;
    SurjectivityReason reason = SurjectivityReason::kNoVertexPermutation;
    std::optional<Permutation> permutation;
    std::optional<int> offending_index;          // NoVertexPermutation
    std::optional<StructuralViolation> violation;  // StructuralFail
};

SurjectivityVerdict decide_surjectivity(const Pso& b);

// All absorbing subsets (nonempty), ascending by mask. Capped at m <= 20.
std::vector<SubsetMask> absorbing_sets(const Pso& b);

}  // namespace pso

#endif
