#include "pso/permutation.hpp"

#include <numeric>

namespace pso {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int m = static_cast<int>(images_.size());
    if (m < 1 || m > 32) throw ValidationError("permutation size must be in [1, 32]");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (int v : images_) {
        if (v < 0 || v >= m || seen[static_cast<size_t>(v)]) {
            throw ValidationError("invalid permutation: not a bijection of {1,...," + std::to_string(m) + "}");
        }
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int m) {
    std::vector<int> img(static_cast<size_t>(m));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (size_t i = 0; i < images_.size(); ++i) {
        inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
    }
    return Permutation(std::move(inv));
}

SubsetMask Permutation::apply(const SubsetMask& a) const {
    if (a.ambient() != size()) throw DimensionMismatchError("permutation does not match subset ambient size");
    uint64_t bits = 0;
    for (int i : a.members()) bits |= 1ull << apply(i);
    return SubsetMask(a.ambient(), bits);
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != static_cast<int>(i)) return false;
    }
    return true;
}

}  // namespace pso
