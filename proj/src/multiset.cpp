#include "pso/multiset.hpp"

#include <algorithm>
#include <sstream>

namespace pso {

namespace {

constexpr int kMaxOrder = 12;  // pack() uses 5 bits per index

}  // namespace

uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n-k+i) is always divisible by i at this point
        r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
    }
    return r;
}

uint64_t multinomial_multiplicity(const std::vector<int>& sorted_indices) {
    uint64_t r = 1;
    int n = 0;
    int run = 0;
    for (size_t t = 0; t < sorted_indices.size(); ++t) {
        ++run;
        ++n;
        const bool run_ends = t + 1 == sorted_indices.size() || sorted_indices[t + 1] != sorted_indices[t];
        if (run_ends) {
            r *= binomial(n, run);
            run = 0;
        }
    }
    return r;
}

std::string to_one_based_string(const std::vector<int>& indices) {
    std::ostringstream out;
    for (size_t t = 0; t < indices.size(); ++t) {
        if (t > 0) out << ',';
        out << indices[t] + 1;
    }
    return out.str();
}

IndexMultiset::IndexMultiset(int m, std::vector<int> indices)
    : m_(m), idx_(std::move(indices)) {
    if (m_ < 1 || m_ > 32) throw ValidationError("multiset dimension must be in [1, 32]");
    if (idx_.size() > static_cast<size_t>(kMaxOrder)) {
        throw ValidationError("multiset order exceeds 12");
    }
    for (int i : idx_) {
        if (i < 0 || i >= m_) {
            throw ValidationError("multiset index " + std::to_string(i + 1) +
                                  " outside {1,...," + std::to_string(m_) + "}");
        }
    }
    std::sort(idx_.begin(), idx_.end());
}

SubsetMask IndexMultiset::support_set() const {
    return SubsetMask::of(m_, idx_);
}

uint64_t IndexMultiset::pack() const {
    uint64_t key = 0;
    for (size_t t = 0; t < idx_.size(); ++t) {
        key |= static_cast<uint64_t>(idx_[t]) << (5 * t);
    }
    return key;
}

MultisetIndexer::MultisetIndexer(int m, int l) : m_(m), l_(l) {
    if (m_ < 1 || m_ > 32) throw ValidationError("indexer dimension must be in [1, 32]");
    if (l_ < 0 || l_ > kMaxOrder) throw ValidationError("indexer order must be in [0, 12]");
    if (l_ == 0) {
        list_.emplace_back(m_, std::vector<int>{});
    } else {
        std::vector<int> cur(static_cast<size_t>(l_), 0);
        while (true) {
            list_.emplace_back(m_, cur);
            int t = l_ - 1;
            while (t >= 0 && cur[static_cast<size_t>(t)] == m_ - 1) --t;
            if (t < 0) break;
            const int v = cur[static_cast<size_t>(t)] + 1;
            for (int s = t; s < l_; ++s) cur[static_cast<size_t>(s)] = v;
        }
    }
    rank_.reserve(list_.size() * 2);
    for (size_t i = 0; i < list_.size(); ++i) {
        rank_.emplace(list_[i].pack(), static_cast<int>(i));
    }
}

int MultisetIndexer::rank(const IndexMultiset& ms) const {
    if (ms.dim() != m_ || ms.order() != l_) {
        throw DimensionMismatchError("multiset does not match indexer shape");
    }
    return rank_.at(ms.pack());
}

int MultisetIndexer::rank_of_tuple(std::vector<int> tuple) const {
    return rank(IndexMultiset(m_, std::move(tuple)));
}

std::vector<int> MultisetIndexer::ranks_within(const SubsetMask& a) const {
    if (a.ambient() != m_) throw DimensionMismatchError("subset does not match indexer dimension");
    std::vector<int> out;
    if (l_ == 0) {
        out.push_back(0);
        return out;
    }
    const std::vector<int> mem = a.members();
    if (mem.empty()) return out;
    const int r = static_cast<int>(mem.size());
    out.reserve(static_cast<size_t>(binomial(r + l_ - 1, l_)));
    std::vector<int> pos(static_cast<size_t>(l_), 0);
    std::vector<int> tuple(static_cast<size_t>(l_), 0);
    while (true) {
        for (int t = 0; t < l_; ++t) tuple[static_cast<size_t>(t)] = mem[static_cast<size_t>(pos[static_cast<size_t>(t)])];
        out.push_back(rank_.at(IndexMultiset(m_, tuple).pack()));
        int t = l_ - 1;
        while (t >= 0 && pos[static_cast<size_t>(t)] == r - 1) --t;
        if (t < 0) break;
        const int v = pos[static_cast<size_t>(t)] + 1;
        for (int s = t; s < l_; ++s) pos[static_cast<size_t>(s)] = v;
    }
    return out;
}

}  // namespace pso
