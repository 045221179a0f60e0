#include "pso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pso/analysis.hpp"
#include "pso/rng.hpp"

namespace pso {

namespace {

double sq_residual(const std::vector<double>& bx, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t k = 0; k < bx.size(); ++k) {
        const double d = bx[k] - y[k];
        s += d * d;
    }
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Partial derivatives via the symmetric structure: dB(x)/dx_j =
// l * sum over (l-1)-multisets nu of mult(nu) x^nu P_{nu+{j},.}.
class PsoDerivatives {
public:
    explicit PsoDerivatives(const Pso& b)
        : b_(&b), m_(b.dim()), l_(b.order()), sub_(b.dim(), b.order() - 1) {
        submult_.reserve(static_cast<size_t>(sub_.count()));
        for (const IndexMultiset& nu : sub_.all()) {
            submult_.push_back(static_cast<double>(nu.multiplicity()));
        }
        lookup_.resize(static_cast<size_t>(sub_.count()) * static_cast<size_t>(m_));
        std::vector<int> tmp;
        for (int s = 0; s < sub_.count(); ++s) {
            for (int j = 0; j < m_; ++j) {
                tmp = sub_.at(s).indices();
                tmp.push_back(j);
                lookup_[static_cast<size_t>(s) * static_cast<size_t>(m_) + static_cast<size_t>(j)] =
                    b.hypermatrix().indexer().rank_of_tuple(tmp);
            }
        }
    }

    // Row-major jacobian: jac[k*m + j] = dB(x)_k / dx_j.
    void jacobian(const std::vector<double>& x, std::vector<double>& jac) const {
        jac.assign(static_cast<size_t>(m_) * static_cast<size_t>(m_), 0.0);
        const StochasticHypermatrix& h = b_->hypermatrix();
        for (int s = 0; s < sub_.count(); ++s) {
            double w = submult_[static_cast<size_t>(s)];
            for (int i : sub_.at(s).indices()) w *= x[static_cast<size_t>(i)];
            if (w == 0.0) continue;
            for (int j = 0; j < m_; ++j) {
                const int rank = lookup_[static_cast<size_t>(s) * static_cast<size_t>(m_) + static_cast<size_t>(j)];
                const std::vector<double>& row = h.row(rank).coords();
                for (int k = 0; k < m_; ++k) {
                    jac[static_cast<size_t>(k) * static_cast<size_t>(m_) + static_cast<size_t>(j)] += w * row[static_cast<size_t>(k)];
                }
            }
        }
        for (double& v : jac) v *= l_;
    }

    // gradient of ||B(x) - y||^2: g = 2 J^T (B(x) - y)
    void objective_gradient(const std::vector<double>& x, const std::vector<double>& y,
                            std::vector<double>& grad, std::vector<double>& jac_scratch) const {
        jacobian(x, jac_scratch);
        const std::vector<double> bx = b_->evaluate_raw(x);
        grad.assign(static_cast<size_t>(m_), 0.0);
        for (int k = 0; k < m_; ++k) {
            const double rk = bx[static_cast<size_t>(k)] - y[static_cast<size_t>(k)];
            for (int j = 0; j < m_; ++j) {
                grad[static_cast<size_t>(j)] += 2.0 * rk * jac_scratch[static_cast<size_t>(k) * static_cast<size_t>(m_) + static_cast<size_t>(j)];
            }
        }
    }

    int dim() const { return m_; }

private:
    const Pso* b_;
    int m_;
    int l_;
    MultisetIndexer sub_;
    std::vector<double> submult_;
    std::vector<int> lookup_;
};

// Dense solve of A x = rhs by Gaussian elimination with partial pivoting;
// returns false on (near-)singularity. A is n*n row-major and destroyed.
bool solve_dense(std::vector<double>& a, std::vector<double>& rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a[static_cast<size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-300) return false;
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a[static_cast<size_t>(pivot) * n + c], a[static_cast<size_t>(col) * n + c]);
            std::swap(rhs[static_cast<size_t>(pivot)], rhs[static_cast<size_t>(col)]);
        }
        const double inv = 1.0 / a[static_cast<size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<size_t>(r) * n + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
            rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        double v = rhs[static_cast<size_t>(col)];
        for (int c = col + 1; c < n; ++c) v -= a[static_cast<size_t>(col) * n + c] * rhs[static_cast<size_t>(c)];
        rhs[static_cast<size_t>(col)] = v / a[static_cast<size_t>(col) * n + col];
    }
    return true;
}

constexpr int kMaxIterations = 5000;
constexpr double kArmijoSlope = 1e-4;

// Spectral projected gradient: Barzilai-Borwein step with monotone Armijo
// backtracking along the projection arc.
double spg_minimize(const Pso& b, const PsoDerivatives& derivs, const std::vector<double>& y,
                    std::vector<double>& x, double tol2) {
    x = project_to_simplex(std::move(x));
    double f = sq_residual(b.evaluate_raw(x), y);
    std::vector<double> grad, jac, xprev, gprev, cand, diff;
    double bb_step = 1.0;
    int stall = 0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        if (f <= tol2) break;
        derivs.objective_gradient(x, y, grad, jac);
        if (iter > 0) {
            double sts = 0.0;
            double stg = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                const double si = x[i] - xprev[i];
                sts += si * si;
                stg += si * (grad[i] - gprev[i]);
            }
            bb_step = stg > 1e-300 ? sts / stg : 1.0;
            bb_step = std::clamp(bb_step, 1e-10, 1e8);
        }
        xprev = x;
        gprev = grad;
        double t = bb_step;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            cand.assign(x.size(), 0.0);
            for (size_t i = 0; i < x.size(); ++i) cand[i] = x[i] - t * grad[i];
            cand = project_to_simplex(std::move(cand));
            diff.assign(x.size(), 0.0);
            double step_sq = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                diff[i] = cand[i] - x[i];
                step_sq += diff[i] * diff[i];
            }
            if (step_sq == 0.0) break;  // projected step vanished at this t
            const double fc = sq_residual(b.evaluate_raw(cand), y);
            if (fc <= f + kArmijoSlope * dot(grad, diff)) {
                x = cand;
                f = fc;
                accepted = true;
                stall = step_sq < 1e-28 ? stall + 1 : 0;
                break;
            }
            t *= 0.5;
        }
        if (!accepted || stall >= 3) break;  // stationary for this start
    }
    return f;
}

// Levenberg-Marquardt polish with simplex projection after each step.
// Near a zero-residual solution this converges quadratically where the
// first-order method only crawls.
double lm_polish(const Pso& b, const PsoDerivatives& derivs, const std::vector<double>& y,
                 std::vector<double>& x, double f, double tol2) {
    const int m = derivs.dim();
    double lambda = 1e-8;
    std::vector<double> jac, normal, rhs, cand;
    for (int iter = 0; iter < 60; ++iter) {
        if (f <= tol2) break;
        derivs.jacobian(x, jac);
        const std::vector<double> bx = b.evaluate_raw(x);
        normal.assign(static_cast<size_t>(m) * static_cast<size_t>(m), 0.0);
        rhs.assign(static_cast<size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                double s = 0.0;
                for (int k = 0; k < m; ++k) {
                    s += jac[static_cast<size_t>(k) * m + i] * jac[static_cast<size_t>(k) * m + j];
                }
                normal[static_cast<size_t>(i) * m + j] = s;
                normal[static_cast<size_t>(j) * m + i] = s;
            }
            double r = 0.0;
            for (int k = 0; k < m; ++k) {
                r -= jac[static_cast<size_t>(k) * m + i] * (bx[static_cast<size_t>(k)] - y[static_cast<size_t>(k)]);
            }
            rhs[static_cast<size_t>(i)] = r;
        }
        for (int i = 0; i < m; ++i) normal[static_cast<size_t>(i) * m + i] += lambda;
        std::vector<double> a = normal;
        std::vector<double> delta = rhs;
        if (!solve_dense(a, delta, m)) {
            lambda *= 10.0;
            if (lambda > 1e12) break;
            continue;
        }
        cand = x;
        for (int i = 0; i < m; ++i) cand[static_cast<size_t>(i)] += delta[static_cast<size_t>(i)];
        cand = project_to_simplex(std::move(cand));
        const double fc = sq_residual(b.evaluate_raw(cand), y);
        if (fc < f) {
            x = cand;
            f = fc;
            lambda = std::max(lambda / 3.0, 1e-12);
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    return f;
}

}  // namespace

std::vector<double> project_to_simplex(std::vector<double> z) {
    const int n = static_cast<int>(z.size());
    if (n == 0) throw ValidationError("projection requires dimension >= 1");
    std::vector<double> u = z;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double running = 0.0;
    double tau = 0.0;
    for (int j = 0; j < n; ++j) {
        running += u[static_cast<size_t>(j)];
        const double t = (running - 1.0) / (j + 1);
        if (u[static_cast<size_t>(j)] - t > 0.0) tau = t;
    }
    for (double& v : z) v = std::max(v - tau, 0.0);
    return z;
}

std::vector<double> preimage_objective_gradient(const Pso& b, const std::vector<double>& x,
                                                const std::vector<double>& y) {
    if (x.size() != static_cast<size_t>(b.dim()) || y.size() != static_cast<size_t>(b.dim())) {
        throw DimensionMismatchError("gradient point does not match operator dimension");
    }
    const PsoDerivatives derivs(b);
    std::vector<double> grad, jac;
    derivs.objective_gradient(x, y, grad, jac);
    return grad;
}

PreimageResult solve_preimage(const Pso& b, const StochasticVector& y, int starts, double tol,
                              uint64_t seed) {
    if (y.dim() != b.dim()) throw DimensionMismatchError("target does not match operator dimension");
    if (starts < 1) throw ValidationError("preimage solve requires starts >= 1");
    if (!(tol > 0.0)) throw ValidationError("preimage tolerance must be > 0");

    const PsoDerivatives derivs(b);
    const double tol2 = tol * tol;
    Rng rng(seed);

    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    int used = 0;

    const auto attempt = [&](std::vector<double> x0) {
        ++used;
        double f = spg_minimize(b, derivs, y.coords(), x0, tol2);
        if (f > tol2) f = lm_polish(b, derivs, y.coords(), x0, f, tol2);
        if (f < best_f) {
            best_f = f;
            best_x = x0;
        }
        return best_f <= tol2;
    };

    bool done = attempt(y.coords());
    if (!done) done = attempt(StochasticVector::barycenter(b.dim()).coords());
    for (int s = 0; s < starts && !done; ++s) {
        done = attempt(rng.dirichlet_uniform(b.dim()));
    }

    PreimageResult out{y, StochasticVector(best_x), 0.0, used, false};
    out.residual = std::sqrt(sq_residual(b.evaluate_raw(out.best_x.coords()), y.coords()));
    out.converged = out.residual <= tol;
    return out;
}

SurjectivitySample sample_surjectivity(const Pso& b, int n_targets, int starts, double tol,
                                       uint64_t seed) {
    if (n_targets < 1) throw ValidationError("surjectivity sampling requires n_targets >= 1");
    const int m = b.dim();
    std::vector<StochasticVector> targets;
    for (int i = 0; i < m; ++i) targets.push_back(StochasticVector::vertex(m, i));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            std::vector<double> mid(static_cast<size_t>(m), 0.0);
            mid[static_cast<size_t>(i)] = 0.5;
            mid[static_cast<size_t>(j)] = 0.5;
            targets.push_back(StochasticVector::validated(std::move(mid)));
        }
    }
    Rng rng(derive_seed(seed, 0));
    for (int t = 0; t < n_targets; ++t) {
        targets.push_back(StochasticVector::validated(rng.dirichlet_uniform(m), 1e-12));
    }

    SurjectivitySample out;
    out.targets_tested = static_cast<int>(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
        PreimageResult r = solve_preimage(b, targets[t], starts, tol, derive_seed(seed, 1 + t));
        out.max_residual = std::max(out.max_residual, r.residual);
        if (!r.converged) out.failures.push_back({r.target, r.residual});
    }
    return out;
}

M2Check m2_polynomial_check(const Pso& b, int grid_points, double tol) {
    if (b.dim() != 2) throw ValidationError("closed-form surjectivity check requires m = 2");
    if (grid_points < 2) throw ValidationError("grid needs at least 2 points");
    const auto f = [&b](double t) { return b.evaluate_raw({t, 1.0 - t})[0]; };
    M2Check out;
    out.f_at_0 = f(0.0);
    out.f_at_1 = f(1.0);
    // f(0) and f(1) are the first coordinates of the vertex images
    const int r0 = b.hypermatrix().indexer().rank_of_tuple(std::vector<int>(static_cast<size_t>(b.order()), 1));
    const int r1 = b.hypermatrix().indexer().rank_of_tuple(std::vector<int>(static_cast<size_t>(b.order()), 0));
    if (std::abs(out.f_at_0 - b.hypermatrix().row(r0)[0]) > 1e-12 ||
        std::abs(out.f_at_1 - b.hypermatrix().row(r1)[0]) > 1e-12) {
        throw std::logic_error("polynomial endpoints disagree with vertex rows");
    }
    out.vertex_fixing = std::abs(out.f_at_0) <= kVertexTol && std::abs(out.f_at_1 - 1.0) <= kVertexTol;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        const double v = f(t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.grid_min = lo;
    out.grid_max = hi;
    // image is [min, max] by continuity; onto [0,1] iff both ends attained
    out.onto = lo <= tol && hi >= 1.0 - tol;
    return out;
}

namespace {

// Local descent on ||B(x1)-B(x2)||^2 + max(0, sep - ||x1-x2||)^2 over the
// product of two simplices; only runs on collision candidates.
void refine_pair(const Pso& b, const PsoDerivatives& derivs, std::vector<double>& x1,
                 std::vector<double>& x2, double sep_tol) {
    const int m = b.dim();
    std::vector<double> jac1, jac2, g1, g2, c1, c2;
    const auto objective = [&](const std::vector<double>& a, const std::vector<double>& c) {
        const std::vector<double> d1 = b.evaluate_raw(a);
        const std::vector<double> d2 = b.evaluate_raw(c);
        double gap2 = 0.0;
        double sep2 = 0.0;
        for (int i = 0; i < m; ++i) {
            const double dg = d1[static_cast<size_t>(i)] - d2[static_cast<size_t>(i)];
            gap2 += dg * dg;
            const double ds = a[static_cast<size_t>(i)] - c[static_cast<size_t>(i)];
            sep2 += ds * ds;
        }
        const double slack = std::max(0.0, sep_tol - std::sqrt(sep2));
        return gap2 + slack * slack;
    };
    double f = objective(x1, x2);
    for (int iter = 0; iter < 200 && f > 0.0; ++iter) {
        derivs.jacobian(x1, jac1);
        derivs.jacobian(x2, jac2);
        const std::vector<double> b1 = b.evaluate_raw(x1);
        const std::vector<double> b2 = b.evaluate_raw(x2);
        double sep = 0.0;
        for (int i = 0; i < m; ++i) {
            const double ds = x1[static_cast<size_t>(i)] - x2[static_cast<size_t>(i)];
            sep += ds * ds;
        }
        sep = std::sqrt(sep);
        const double slack = std::max(0.0, sep_tol - sep);
        g1.assign(static_cast<size_t>(m), 0.0);
        g2.assign(static_cast<size_t>(m), 0.0);
        for (int k = 0; k < m; ++k) {
            const double rk = b1[static_cast<size_t>(k)] - b2[static_cast<size_t>(k)];
            for (int j = 0; j < m; ++j) {
                g1[static_cast<size_t>(j)] += 2.0 * rk * jac1[static_cast<size_t>(k) * m + j];
                g2[static_cast<size_t>(j)] -= 2.0 * rk * jac2[static_cast<size_t>(k) * m + j];
            }
        }
        if (slack > 0.0 && sep > 1e-300) {
            for (int j = 0; j < m; ++j) {
                const double dir = (x1[static_cast<size_t>(j)] - x2[static_cast<size_t>(j)]) / sep;
                g1[static_cast<size_t>(j)] -= 2.0 * slack * dir;
                g2[static_cast<size_t>(j)] += 2.0 * slack * dir;
            }
        }
        bool accepted = false;
        double t = 1.0;
        for (int bt = 0; bt < 40; ++bt) {
            c1 = x1;
            c2 = x2;
            for (int j = 0; j < m; ++j) {
                c1[static_cast<size_t>(j)] -= t * g1[static_cast<size_t>(j)];
                c2[static_cast<size_t>(j)] -= t * g2[static_cast<size_t>(j)];
            }
            c1 = project_to_simplex(std::move(c1));
            c2 = project_to_simplex(std::move(c2));
            const double fc = objective(c1, c2);
            if (fc < f) {
                x1 = c1;
                x2 = c2;
                f = fc;
                accepted = true;
                break;
            }
            t *= 0.25;
        }
        if (!accepted) break;
    }
}

}  // namespace

InjectivityProbe probe_injectivity(const Pso& b, int n_pairs, double sep_tol, double img_tol,
                                   uint64_t seed) {
    if (!decide_surjectivity(b).surjective) {
        throw InapplicableError("injectivity probe requires a surjective operator");
    }
    if (n_pairs < 1) throw ValidationError("probe requires n_pairs >= 1");
    if (!(sep_tol > 0.0)) throw ValidationError("separation tolerance must be > 0");
    if (img_tol < 0.0) throw ValidationError("image tolerance must be >= 0");

    const int m = b.dim();
    const PsoDerivatives derivs(b);
    Rng rng(seed);
    InjectivityProbe out;
    out.min_image_gap = std::numeric_limits<double>::infinity();
    for (int p = 0; p < n_pairs; ++p) {
        std::vector<double> x1 = rng.dirichlet_uniform(m);
        std::vector<double> x2 = rng.dirichlet_uniform(m);
        int tries = 0;
        while (std::sqrt(sq_residual(x1, x2)) < sep_tol && tries++ < 1000) {
            x2 = rng.dirichlet_uniform(m);
        }
        if (tries >= 1000) continue;  // degenerate geometry (m = 1)
        ++out.pairs_tested;
        const double gap = std::sqrt(sq_residual(b.evaluate_raw(x1), b.evaluate_raw(x2)));
        out.min_image_gap = std::min(out.min_image_gap, gap);
        if (gap <= img_tol) {
            refine_pair(b, derivs, x1, x2, sep_tol);
            const double sep = std::sqrt(sq_residual(x1, x2));
            const double refined_gap = std::sqrt(sq_residual(b.evaluate_raw(x1), b.evaluate_raw(x2)));
            const bool confirmed = refined_gap <= img_tol && sep >= sep_tol;
            if (confirmed) ++out.confirmed;
            out.candidates.push_back(CollisionCandidate{StochasticVector(std::move(x1)),
                                                        StochasticVector(std::move(x2)), sep,
                                                        refined_gap, confirmed});
        }
    }
    if (out.pairs_tested == 0) out.min_image_gap = 0.0;
    return out;
}

double grid_residual_floor(const Pso& b, const StochasticVector& y, int steps_per_unit) {
    const int m = b.dim();
    if (m > 4) throw ValidationError("grid scan supported for m <= 4");
    if (steps_per_unit < 1) throw ValidationError("grid scan needs steps >= 1");
    if (y.dim() != m) throw DimensionMismatchError("target does not match operator dimension");
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> x(static_cast<size_t>(m), 0.0);
    std::vector<int> counts(static_cast<size_t>(m), 0);
    const auto scan = [&](auto&& self, int coord, int remaining) -> void {
        if (coord == m - 1) {
            counts[static_cast<size_t>(coord)] = remaining;
            for (int i = 0; i < m; ++i) {
                x[static_cast<size_t>(i)] = static_cast<double>(counts[static_cast<size_t>(i)]) / steps_per_unit;
            }
            best = std::min(best, std::sqrt(sq_residual(b.evaluate_raw(x), y.coords())));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[static_cast<size_t>(coord)] = c;
            self(self, coord + 1, remaining - c);
        }
    };
    scan(scan, 0, steps_per_unit);
    return best;
}

}  // namespace pso
