#include "pso/hypermatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pso/rng.hpp"

namespace pso {

namespace {

std::vector<StochasticVector> merge_ordered_entries(
    int m, int l,
    const std::vector<std::pair<std::vector<int>, std::vector<double>>>& entries,
    bool ordered_array_input) {
    const MultisetIndexer indexer(m, l);
    const int n = indexer.count();
    std::vector<std::vector<double>> sums(static_cast<size_t>(n));
    std::vector<std::vector<double>> first(static_cast<size_t>(n));
    std::vector<int> seen(static_cast<size_t>(n), 0);

    for (const auto& [tuple, value] : entries) {
        if (static_cast<int>(tuple.size()) != l) {
            throw ValidationError("index tuple " + to_one_based_string(tuple) +
                                  " has length " + std::to_string(tuple.size()) +
                                  ", expected " + std::to_string(l));
        }
        const IndexMultiset ms(m, tuple);  // validates range, canonicalizes
        if (static_cast<int>(value.size()) != m) {
            throw BadRowError("row " + to_one_based_string(tuple) + " has length " +
                              std::to_string(value.size()) + ", expected " + std::to_string(m));
        }
        const size_t r = static_cast<size_t>(indexer.rank(ms));
        if (seen[r] == 0) {
            first[r] = value;
            sums[r] = value;
        } else {
            double dev = 0.0;
            for (int k = 0; k < m; ++k) {
                dev = std::max(dev, std::abs(value[static_cast<size_t>(k)] - first[r][static_cast<size_t>(k)]));
            }
            if (dev > kSymmetryTol) {
                const std::string msg = "rows for orderings of " +
                                        to_one_based_string(ms.indices()) + " disagree by " +
                                        std::to_string(dev);
                if (ordered_array_input) throw AsymmetryTooLargeError(msg);
                throw SymmetryConflictError(msg);
            }
            for (int k = 0; k < m; ++k) sums[r][static_cast<size_t>(k)] += value[static_cast<size_t>(k)];
        }
        ++seen[r];
    }

    std::vector<StochasticVector> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        if (seen[static_cast<size_t>(r)] == 0) {
            throw MissingRowError("missing row for multiset " +
                                  to_one_based_string(indexer.at(r).indices()));
        }
        std::vector<double> avg = std::move(sums[static_cast<size_t>(r)]);
        const double inv = 1.0 / seen[static_cast<size_t>(r)];
        for (double& v : avg) v *= inv;
        try {
            rows.emplace_back(std::move(avg));
        } catch (const ValidationError& e) {
            throw BadRowError("row " + to_one_based_string(indexer.at(r).indices()) + ": " + e.what());
        }
    }
    return rows;
}

}  // namespace

StochasticHypermatrix::StochasticHypermatrix(int m, int l, std::vector<StochasticVector> rows)
    : m_(m), l_(l), indexer_(m, l), rows_(std::move(rows)) {
    if (l_ < 1) throw ValidationError("hypermatrix order must be >= 1");
    if (static_cast<int>(rows_.size()) != indexer_.count()) {
        throw ValidationError("expected " + std::to_string(indexer_.count()) + " rows, got " +
                              std::to_string(rows_.size()));
    }
    mults_.reserve(rows_.size());
    supports_.reserve(rows_.size());
    for (int r = 0; r < indexer_.count(); ++r) {
        if (rows_[static_cast<size_t>(r)].dim() != m_) {
            throw DimensionMismatchError("row " + to_one_based_string(indexer_.at(r).indices()) +
                                         " has wrong dimension");
        }
        mults_.push_back(indexer_.at(r).multiplicity());
        supports_.push_back(support(rows_[static_cast<size_t>(r)], 0.0));
    }
}

StochasticHypermatrix StochasticHypermatrix::from_rows(int m, int l, std::vector<StochasticVector> rows) {
    return StochasticHypermatrix(m, l, std::move(rows));
}

StochasticHypermatrix StochasticHypermatrix::from_entries(
    int m, int l,
    const std::vector<std::pair<std::vector<int>, std::vector<double>>>& entries) {
    return StochasticHypermatrix(m, l, merge_ordered_entries(m, l, entries, false));
}

StochasticHypermatrix lift_order(const StochasticHypermatrix& p0) {
    const int m = p0.dim();
    const int l = p0.order();
    const MultisetIndexer up(m, l + 1);
    std::vector<StochasticVector> rows;
    rows.reserve(static_cast<size_t>(up.count()));
    std::vector<int> sub;
    sub.reserve(static_cast<size_t>(l));
    for (const IndexMultiset& ms : up.all()) {
        const std::vector<int>& idx = ms.indices();
        std::vector<double> acc(static_cast<size_t>(m), 0.0);
        for (int drop = 0; drop <= l; ++drop) {
            sub.clear();
            for (int t = 0; t <= l; ++t) {
                if (t != drop) sub.push_back(idx[static_cast<size_t>(t)]);
            }
            const StochasticVector& r = p0.row(p0.indexer().rank_of_tuple(sub));
            for (int k = 0; k < m; ++k) acc[static_cast<size_t>(k)] += r[k];
        }
        for (double& v : acc) v /= (l + 1);
        rows.push_back(StochasticVector::validated(std::move(acc), 1e-12));
    }
    return StochasticHypermatrix::from_rows(m, l + 1, std::move(rows));
}

StochasticHypermatrix from_qso(int m, const std::vector<std::vector<double>>& ordered_rows) {
    if (m < 1) throw ValidationError("dimension must be >= 1");
    if (ordered_rows.size() != static_cast<size_t>(m) * static_cast<size_t>(m)) {
        throw ValidationError("expected m*m ordered rows for a quadratic operator");
    }
    std::vector<std::pair<std::vector<int>, std::vector<double>>> entries;
    entries.reserve(ordered_rows.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            entries.push_back({{i, j}, ordered_rows[static_cast<size_t>(i * m + j)]});
        }
    }
    return StochasticHypermatrix::from_rows(m, 2, merge_ordered_entries(m, 2, entries, true));
}

StochasticHypermatrix from_cso(int m, const std::vector<std::vector<double>>& ordered_rows) {
    if (m < 1) throw ValidationError("dimension must be >= 1");
    const size_t mm = static_cast<size_t>(m);
    if (ordered_rows.size() != mm * mm * mm) {
        throw ValidationError("expected m*m*m ordered rows for a cubic operator");
    }
    std::vector<std::pair<std::vector<int>, std::vector<double>>> entries;
    entries.reserve(ordered_rows.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int t = 0; t < m; ++t) {
                entries.push_back({{i, j, t}, ordered_rows[static_cast<size_t>((i * m + j) * m + t)]});
            }
        }
    }
    return StochasticHypermatrix::from_rows(m, 3, merge_ordered_entries(m, 3, entries, true));
}

StochasticHypermatrix random_hypermatrix(int m, int l, RandomMode mode, uint64_t seed,
                                         const std::optional<Permutation>& perm) {
    if (mode == RandomMode::kPermutedOp) {
        if (!perm) throw ValidationError("permuted_op mode requires a permutation");
        if (perm->size() != m) throw ValidationError("permutation size does not match dimension");
    }
    const MultisetIndexer indexer(m, l);
    Rng rng(seed);
    std::vector<StochasticVector> rows;
    rows.reserve(static_cast<size_t>(indexer.count()));
    for (const IndexMultiset& ms : indexer.all()) {
        switch (mode) {
            case RandomMode::kGeneral:
                rows.push_back(StochasticVector::validated(rng.dirichlet_uniform(m), 1e-12));
                break;
            case RandomMode::kVertexFixing:
                if (ms.support_set().size() == 1) {
                    rows.push_back(StochasticVector::vertex(m, ms.indices().front()));
                } else {
                    rows.push_back(StochasticVector::validated(rng.dirichlet_uniform(m), 1e-12));
                }
                break;
            case RandomMode::kOpStructured:
                rows.push_back(facet_interior_sample(ms.support_set(), rng));
                break;
            case RandomMode::kPermutedOp:
                rows.push_back(facet_interior_sample(perm->apply(ms.support_set()), rng));
                break;
        }
    }
    return StochasticHypermatrix::from_rows(m, l, std::move(rows));
}

StochasticHypermatrix permute_outputs(const StochasticHypermatrix& p, const Permutation& sigma) {
    if (sigma.size() != p.dim()) throw DimensionMismatchError("permutation size does not match dimension");
    const Permutation inv = sigma.inverse();
    const int m = p.dim();
    std::vector<StochasticVector> rows;
    rows.reserve(static_cast<size_t>(p.row_count()));
    for (int r = 0; r < p.row_count(); ++r) {
        const StochasticVector& src = p.row(r);
        std::vector<double> out(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) out[static_cast<size_t>(k)] = src[inv.apply(k)];
        rows.push_back(StochasticVector::validated(std::move(out), 1e-12));
    }
    return StochasticHypermatrix::from_rows(m, p.order(), std::move(rows));
}

}  // namespace pso
