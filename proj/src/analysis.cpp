#include "pso/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "pso/rng.hpp"

namespace pso {

namespace {

// Index j with image = e_j within kVertexTol, or -1.
int vertex_index(const StochasticVector& v) {
    int best = 0;
    for (int k = 1; k < v.dim(); ++k) {
        if (v[k] > v[best]) best = k;
    }
    if (std::abs(v[best] - 1.0) > kVertexTol) return -1;
    for (int k = 0; k < v.dim(); ++k) {
        if (k != best && v[k] > kVertexTol) return -1;
    }
    return best;
}

int vertex_row_rank(const StochasticHypermatrix& h, int i) {
    return h.indexer().rank_of_tuple(std::vector<int>(static_cast<size_t>(h.order()), i));
}

StructuralViolation to_original_coordinates(const StructuralViolation& v, const Permutation& pi) {
    // violation found on the pi^{-1}-relabeled operator; P'_{mu,k} = P_{mu,pi(k)}
    return StructuralViolation{v.multiset, pi.apply(v.coordinate)};
}

}  // namespace

VertexMap vertex_map(const Pso& b) {
    const int m = b.dim();
    VertexMap vm;
    vm.images.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        vm.images.push_back(b.hypermatrix().row(vertex_row_rank(b.hypermatrix(), i)));
    }
    std::vector<int> target(static_cast<size_t>(m), -1);
    std::vector<char> used(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        const int j = vertex_index(vm.images[static_cast<size_t>(i)]);
        if (j < 0 || used[static_cast<size_t>(j)]) {
            vm.offending_index = i;
            return vm;
        }
        used[static_cast<size_t>(j)] = 1;
        target[static_cast<size_t>(i)] = j;
    }
    vm.permutation = Permutation(std::move(target));
    return vm;
}

bool is_absorbing(const Pso& b, const SubsetMask& a) {
    if (a.is_empty()) throw ValidationError("absorbing test requires a nonempty set");
    return image_support(b, a) == a;
}

AbsorbingEquivalence absorbing_equivalence_check(const Pso& b, const SubsetMask& a,
                                                 int samples, uint64_t seed) {
    if (samples < 1) throw ValidationError("equivalence check requires samples >= 1");
    AbsorbingEquivalence out;
    out.exact = is_absorbing(b, a);
    Rng rng(seed);
    out.sampled_invariant = true;
    for (int s = 0; s < samples; ++s) {
        const StochasticVector x = facet_interior_sample(a, rng);
        if (support(b.evaluate(x), 0.0) != a) {
            out.sampled_invariant = false;
            break;
        }
    }
    const StochasticVector x0 = facet_interior_sample(a, rng);
    out.single_point = support(b.evaluate(x0), 0.0) == a;
    return out;
}

SmallSubsetsVerdict all_small_subsets_absorbing(const Pso& b) {
    const StochasticHypermatrix& h = b.hypermatrix();
    for (int r = 0; r < h.row_count(); ++r) {
        const SubsetMask allowed = h.indexer().at(r).support_set();
        const SubsetMask actual = h.row_support(r);
        if (!actual.is_subset_of(allowed)) {
            const uint64_t stray = actual.bits() & ~allowed.bits();
            const int k = std::countr_zero(stray);
            return {false, StructuralViolation{h.indexer().at(r), k}};
        }
    }
    return {true, std::nullopt};
}

OpVerdict is_orthogonal_preserving(const Pso& b, OpMethod method) {
    OpVerdict verdict;
    if (method == OpMethod::kStructural) {
        const VertexMap vm = vertex_map(b);
        if (!vm.permutation) {
            throw InapplicableError(
                "structural method requires vertex images forming a permutation "
                "(offending vertex " +
                std::to_string(vm.offending_index.value_or(0) + 1) + ")");
        }
        const Pso normalized(permute_outputs(b.hypermatrix(), vm.permutation->inverse()));
        const SmallSubsetsVerdict chk = all_small_subsets_absorbing(normalized);
        verdict.is_op = chk.all_absorbing;
        if (chk.violation) {
            verdict.structural_violation = to_original_coordinates(*chk.violation, *vm.permutation);
        }
        return verdict;
    }

    const int m = b.dim();
    verdict.is_op = true;
    if (m == 1) return verdict;  // no orthogonal pairs exist
    const std::vector<uint64_t> table = image_support_table(b);
    const uint64_t full = (1ull << m) - 1;
    for (uint64_t mask = 1; mask < full; ++mask) {
        const uint64_t comp = full ^ mask;
        if (mask > comp) continue;  // each complementary pair once
        const uint64_t meet = table[mask] & table[comp];
        if (meet != 0) {
            verdict.is_op = false;
            verdict.overlap = SupportOverlap{SubsetMask(m, mask), SubsetMask(m, comp),
                                             std::countr_zero(meet)};
            return verdict;
        }
    }
    return verdict;
}

FacetPreimageResult facet_preimage_condition(const Pso& b, const Permutation& pi, int k) {
    const int m = b.dim();
    if (pi.size() != m) throw DimensionMismatchError("permutation size does not match dimension");
    if (k < 1 || k > b.order()) {
        throw ValidationError("facet size must be in [1, l] = [1, " + std::to_string(b.order()) + "]");
    }
    const std::vector<uint64_t> table = image_support_table(b);
    const uint64_t full = (1ull << m) - 1;
    std::unordered_map<uint64_t, std::vector<uint64_t>> by_image;
    for (uint64_t mask = 1; mask <= full; ++mask) {
        by_image[table[mask]].push_back(mask);
    }
    for (uint64_t mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) != k) continue;
        const SubsetMask a(m, mask);
        const uint64_t target = pi.apply(a).bits();
        const auto it = by_image.find(target);
        const bool exact = it != by_image.end() && it->second.size() == 1 && it->second.front() == mask;
        if (!exact) {
            FacetPreimageFailure fail;
            fail.facet = a;
            if (it != by_image.end()) {
                for (uint64_t pre : it->second) fail.preimage_supports.emplace_back(m, pre);
            }
            return {false, std::move(fail)};
        }
    }
    return {true, std::nullopt};
}

SurjectivityVerdict decide_surjectivity(const Pso& b) {
    SurjectivityVerdict v;
    const VertexMap vm = vertex_map(b);
    if (!vm.permutation) {
        v.surjective = false;
        v.reason = SurjectivityReason::kNoVertexPermutation;
        v.offending_index = vm.offending_index;
        return v;
    }
    v.permutation = vm.permutation;
    const Pso normalized(permute_outputs(b.hypermatrix(), vm.permutation->inverse()));
    const SmallSubsetsVerdict chk = all_small_subsets_absorbing(normalized);
    if (chk.all_absorbing) {
        v.surjective = true;
        v.reason = SurjectivityReason::kStructuralPass;
    } else {
        v.surjective = false;
        v.reason = SurjectivityReason::kStructuralFail;
        v.violation = to_original_coordinates(*chk.violation, *vm.permutation);
    }
    return v;
}

std::vector<SubsetMask> absorbing_sets(const Pso& b) {
    const int m = b.dim();
    const std::vector<uint64_t> table = image_support_table(b);
    const uint64_t full = (1ull << m) - 1;
    std::vector<SubsetMask> out;
    for (uint64_t mask = 1; mask <= full; ++mask) {
        if (table[mask] == mask) out.emplace_back(m, mask);
    }
    return out;
}

}  // namespace pso
