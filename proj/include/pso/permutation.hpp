#ifndef PSO_PERMUTATION_HPP
#define PSO_PERMUTATION_HPP

#include <vector>

#include "pso/simplex.hpp"

namespace pso {

// A bijection of {0,...,m-1}; images[i] = pi(i).
class Permutation {
public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int m);

    int size() const { return static_cast<int>(images_.size()); }
    int apply(int i) const { return images_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }
    Permutation inverse() const;
    SubsetMask apply(const SubsetMask& a) const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

}  // namespace pso

#endif
