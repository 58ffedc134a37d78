#include "minsvd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "minsvd/errors.hpp"
#include "minsvd/io.hpp"
#include "minsvd/sketch.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

namespace {

double col_norm(const DenseMatrix& a, index_t j) {
    double s = 0.0;
    const double* c = a.col(j);
    for (index_t i = 0; i < a.rows(); ++i) s += c[i] * c[i];
    return std::sqrt(s);
}

double max_col_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (index_t j = 0; j < a.cols(); ++j) best = std::max(best, col_norm(a, j));
    return best;
}

DenseMatrix hstack3(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c) {
    index_t rows = a.rows();
    if (b.cols() > 0) rows = std::max(rows, b.rows());
    if (c.cols() > 0) rows = std::max(rows, c.rows());
    DenseMatrix out(rows, a.cols() + b.cols() + c.cols());
    index_t at = 0;
    for (const DenseMatrix* m : {&a, &b, &c}) {
        for (index_t j = 0; j < m->cols(); ++j, ++at)
            std::copy(m->col(j), m->col(j) + rows, out.col(at));
    }
    return out;
}

// columns j0 .. j0+count-1 of a as a fresh matrix
DenseMatrix col_slice(const DenseMatrix& a, index_t j0, index_t count) {
    DenseMatrix out(a.rows(), count);
    for (index_t j = 0; j < count; ++j)
        std::copy(a.col(j0 + j), a.col(j0 + j) + a.rows(), out.col(j));
    return out;
}

[[noreturn]] void fail_iter(const char* what, int iter) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "solver: %s at iteration %d", what, iter);
    throw NumericalError(buf);
}

// W := M R for the chosen preconditioner kind. diag_inv_sq is only used
// by the diagonal kind and holds 1 / ||A(:,i)||^2 (1 for empty columns).
DenseMatrix apply_precond_block(PrecondKind kind, const Preconditioner& p,
                                const Vector& diag_inv_sq, const DenseMatrix& r) {
    if (kind == PrecondKind::none) return r;
    DenseMatrix w(r.rows(), r.cols());
    if (kind == PrecondKind::diagonal) {
        for (index_t j = 0; j < r.cols(); ++j)
            for (index_t i = 0; i < r.rows(); ++i)
                w(i, j) = r(i, j) * diag_inv_sq[static_cast<std::size_t>(i)];
        return w;
    }
    for (index_t j = 0; j < r.cols(); ++j) w.set_col(j, precond_apply(p, r.col_copy(j)));
    return w;
}

// Orthonormal basis of the span of g's columns without sign fixing, via
// two Gram-Schmidt passes per column. Columns that vanish are replaced by
// the first coordinate direction that keeps the set independent. Used for
// the coefficient-space factor of the history update, where a degenerate
// column means the new target block already contains the old one.
DenseMatrix orth_coefficients(const DenseMatrix& g) {
    index_t rows = g.rows();
    index_t cols = g.cols();
    DenseMatrix q(rows, cols);
    double scale_ref = max_col_norm(g);
    for (index_t j = 0; j < cols; ++j) {
        Vector w = g.col_copy(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (index_t l = 0; l < j; ++l) {
                double proj = 0.0;
                for (index_t i = 0; i < rows; ++i) proj += q(i, l) * w[static_cast<std::size_t>(i)];
                for (index_t i = 0; i < rows; ++i) w[static_cast<std::size_t>(i)] -= proj * q(i, l);
            }
        }
        double nrm = norm2(w);
        if (nrm <= 1e-14 * std::max(1.0, scale_ref)) {
            // fall back to a coordinate direction not already spanned
            bool placed = false;
            for (index_t cand = 0; cand < rows && !placed; ++cand) {
                Vector e(static_cast<std::size_t>(rows), 0.0);
                e[static_cast<std::size_t>(cand)] = 1.0;
                for (int pass = 0; pass < 2; ++pass) {
                    for (index_t l = 0; l < j; ++l) {
                        double proj = 0.0;
                        for (index_t i = 0; i < rows; ++i) proj += q(i, l) * e[static_cast<std::size_t>(i)];
                        for (index_t i = 0; i < rows; ++i) e[static_cast<std::size_t>(i)] -= proj * q(i, l);
                    }
                }
                double en = norm2(e);
                if (en > 1e-8) {
                    scale(e, 1.0 / en);
                    w = e;
                    placed = true;
                }
            }
            if (!placed) throw NumericalError("solver: history update basis collapsed");
        } else {
            scale(w, 1.0 / nrm);
        }
        q.set_col(j, w);
    }
    return q;
}

struct SketchPlan {
    Preconditioner p;
    DenseMatrix v0;
    bool skipped = false;
    index_t dim = 0;
};

SketchPlan prepare(const LinearOperator& a, const SolverOptions& opts, index_t b) {
    index_t m = a.rows();
    index_t n = a.cols();
    SketchPlan plan;
    if (opts.sketch_dim < 0 && m <= 4 * n) {
        plan.skipped = true;
        plan.p = build_preconditioner(a.to_dense());
    } else {
        index_t d = opts.sketch_dim < 0 ? round_up_to_multiple(4 * n, opts.zeta)
                                        : opts.sketch_dim;
        if (d < n) throw DimensionError("solver: sketch dimension below column count");
        SparseStackEmbedding s = build_sparsestack(d, m, opts.zeta, opts.seed);
        plan.p = build_preconditioner(sketch_apply(s, a));
        plan.dim = d;
    }
    plan.v0 = sketch_and_solve_init(plan.p, b);
    return plan;
}

}  // namespace

std::string ConvergenceRecord::to_csv() const {
    std::string out = "iter,matvecs_A,matvecs_At,wall_ms,theta,resid_norm,singval_relerr,sin_angle\n";
    char head[96];
    for (const RecordRow& r : rows) {
        std::snprintf(head, sizeof(head), "%d,%ld,%ld,", r.iter, r.matvecs_a, r.matvecs_at);
        out += head;
        out += format_double(r.wall_ms);
        out += ',';
        out += format_double(r.theta);
        out += ',';
        out += format_double(r.resid);
        out += ',';
        if (has_truth) {
            out += format_double(r.relerr);
            out += ',';
            out += format_double(r.sin_angle);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

const char* to_string(SolveStatus s) {
    return s == SolveStatus::converged ? "converged" : "max_iter_reached";
}

StopDecision check_convergence(const std::vector<double>& resid_hist,
                               const std::vector<double>& theta_hist, int i,
                               double sigma1_estimate, double tol, double factor,
                               bool use_stagnation) {
    if (i + 1 >= static_cast<int>(resid_hist.size()) ||
        i + 1 >= static_cast<int>(theta_hist.size()))
        throw DimensionError("check_convergence: history shorter than the loop counter");
    StopDecision d;
    d.tol_ok = resid_hist[static_cast<std::size_t>(i + 1)] <=
               sigma1_estimate * sigma1_estimate * tol;
    if (!use_stagnation) {
        d.stop = d.tol_ok;
        return d;
    }
    if (i >= 4)
        d.resid_stalled = factor * resid_hist[static_cast<std::size_t>(i + 1)] >=
                          resid_hist[static_cast<std::size_t>(i - 4)];
    if (i >= 9) {
        double den_now = theta_hist[static_cast<std::size_t>(i)] > 0.0
                             ? theta_hist[static_cast<std::size_t>(i)]
                             : 1.0;
        double den_then = theta_hist[static_cast<std::size_t>(i - 4)] > 0.0
                              ? theta_hist[static_cast<std::size_t>(i - 4)]
                              : 1.0;
        double recent = (theta_hist[static_cast<std::size_t>(i - 4)] -
                         theta_hist[static_cast<std::size_t>(i + 1)]) /
                        den_now;
        double earlier = (theta_hist[static_cast<std::size_t>(i - 9)] -
                          theta_hist[static_cast<std::size_t>(i - 4)]) /
                         den_then;
        d.progress_stalled = factor * recent >= earlier;
    }
    d.stop = d.tol_ok && d.resid_stalled && d.progress_stalled;
    return d;
}

index_t cgs2(DenseMatrix& w, const DenseMatrix& basis, SplitMix64& rng) {
    index_t n = w.rows();
    if (basis.cols() > 0 && basis.rows() != n)
        throw DimensionError("cgs2: basis row count mismatch");
    double scale_ref = max_col_norm(w);
    double drop =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale_ref;
    index_t replaced = 0;

    auto project_out = [&](Vector& x, index_t upto) {
        for (index_t l = 0; l < basis.cols(); ++l) {
            double proj = 0.0;
            const double* c = basis.col(l);
            for (index_t i = 0; i < n; ++i) proj += c[i] * x[static_cast<std::size_t>(i)];
            for (index_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= proj * c[i];
        }
        for (index_t l = 0; l < upto; ++l) {
            double proj = 0.0;
            const double* c = w.col(l);
            for (index_t i = 0; i < n; ++i) proj += c[i] * x[static_cast<std::size_t>(i)];
            for (index_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= proj * c[i];
        }
    };

    for (index_t j = 0; j < w.cols(); ++j) {
        Vector x = w.col_copy(j);
        project_out(x, j);
        project_out(x, j);
        double nrm = norm2(x);
        if (nrm <= drop) {
            // the search direction fell inside the current subspace; draw a
            // deterministic random replacement so the trial space keeps its
            // full width
            bool ok = false;
            for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
                for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.next_gaussian();
                project_out(x, j);
                project_out(x, j);
                nrm = norm2(x);
                ok = nrm > 1e-3 * std::sqrt(static_cast<double>(n));
            }
            if (!ok) throw NumericalError("cgs2: could not complete an orthonormal block");
            ++replaced;
        }
        scale(x, 1.0 / nrm);
        w.set_col(j, x);
    }
    return replaced;
}

PsdStep psd_step(const LinearOperator& a, const Preconditioner& p, const Vector& v,
                 const Vector& av) {
    index_t n = a.cols();
    if (static_cast<index_t>(v.size()) != n || static_cast<index_t>(av.size()) != a.rows())
        throw DimensionError("psd_step: vector length mismatch");
    double theta_sq = dot(av, av);
    Vector r = a.apply_adjoint(av);
    axpy(-theta_sq, v, r);
    Vector w = precond_apply(p, r);
    double wnorm0 = norm2(w);
    // orthogonalize against v, two passes
    for (int pass = 0; pass < 2; ++pass) axpy(-dot(v, w), v, w);
    double nrm = norm2(w);
    PsdStep out;
    if (nrm <= static_cast<double>(n) * std::numeric_limits<double>::epsilon() * wnorm0) {
        out.v = v;
        out.av = av;
        out.theta = std::sqrt(theta_sq);
        return out;
    }
    scale(w, 1.0 / nrm);
    Vector aw = a.apply(w);
    DenseMatrix at(a.rows(), 2);
    at.set_col(0, av);
    at.set_col(1, aw);
    SvdResult sv = dense_svd(at, false);
    double c0 = sv.v(0, 1);
    double c1 = sv.v(1, 1);
    out.theta = sv.sigma[1];
    out.v = v;
    scale(out.v, c0);
    axpy(c1, w, out.v);
    out.av = av;
    scale(out.av, c0);
    axpy(c1, aw, out.av);
    return out;
}

SolveResult lobpcg_solve(const LinearOperator& a, PrecondKind kind,
                         const SolverOptions& opts, const GroundTruth* truth) {
    const index_t m = a.rows();
    const index_t n = a.cols();
    const index_t b = opts.block_size;
    if (m < n) throw DimensionError("solver: matrix must have at least as many rows as columns");
    if (b < 1) throw DimensionError("solver: block size must be positive");
    if (n < 3 * b) throw DimensionError("solver: need at least 3x block size columns");
    const double tol = opts.tol < 0.0 ? default_tolerance(n) : opts.tol;
    if (!(tol >= 0.0 && tol < 1.0)) throw NumericalError("solver: tol must lie in [0, 1)");
    const int max_iter = opts.max_iter < 0 ? (b == 1 ? 200 : 100) : opts.max_iter;
    if (max_iter < 0 || opts.check_every < 1)
        throw NumericalError("solver: max_iter must be >= 0 and check_every >= 1");
    if (truth && static_cast<index_t>(truth->v_min.size()) != n)
        throw DimensionError("solver: ground-truth vector length mismatch");

    auto t_start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        if (!opts.record_timing) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         t_start)
            .count();
    };

    SketchPlan plan = prepare(a, opts, b);
    const double sigma1 = plan.p.sigma_max_estimate;

    SolveResult res;
    res.precond = plan.p;
    res.sigma_max_estimate = sigma1;
    res.sketch_skipped = plan.skipped;
    res.sketch_dim = plan.dim;
    res.zeta = plan.skipped ? 0 : opts.zeta;
    res.record.has_truth = truth != nullptr;

    Vector diag_inv_sq;
    if (kind == PrecondKind::diagonal) {
        diag_inv_sq = a.column_norms();
        for (double& c : diag_inv_sq) c = c > 0.0 ? 1.0 / (c * c) : 1.0;
    }

    SplitMix64 rng(opts.seed, 0x9e3779b97f4a7c15ull);

    long mv_a = 0;
    long mv_at = 0;

    // starting block and its products, then a Rayleigh-Ritz pass so the
    // block is aligned with its own singular directions from the start
    DenseMatrix v = plan.v0;
    DenseMatrix av = a.apply_block(v);
    mv_a += b;
    SvdResult rr0 = dense_svd(av, false);
    v = matmul(v, rr0.v);
    av = matmul(av, rr0.v);
    Vector theta = rr0.sigma;  // descending, length b

    auto residual_of = [&](const DenseMatrix& vcur, const DenseMatrix& avcur,
                           const Vector& th) {
        DenseMatrix r(n, b);
        for (index_t j = 0; j < b; ++j) {
            Vector rc = a.apply_adjoint(avcur.col_copy(j));
            ++mv_at;
            const double t2 = th[static_cast<std::size_t>(j)] * th[static_cast<std::size_t>(j)];
            const double* vc = vcur.col(j);
            for (index_t i = 0; i < n; ++i) rc[static_cast<std::size_t>(i)] -= t2 * vc[i];
            r.set_col(j, rc);
        }
        return r;
    };

    DenseMatrix r = residual_of(v, av, theta);

    std::vector<double> resid_hist;
    std::vector<double> theta_hist;  // largest Ritz value of the target block

    auto push_row = [&](int iter, const DenseMatrix& vcur, const Vector& th,
                        double resid) {
        RecordRow row;
        row.iter = iter;
        row.matvecs_a = mv_a;
        row.matvecs_at = mv_at;
        row.wall_ms = elapsed_ms();
        row.theta = th[static_cast<std::size_t>(b - 1)];
        row.resid = resid;
        if (truth) {
            double sn = truth->sigma_min;
            row.relerr = sn > 0.0 ? std::abs(row.theta - sn) / sn : std::abs(row.theta);
            double c = 0.0;
            const double* vc = vcur.col(b - 1);
            for (index_t i = 0; i < n; ++i) c += vc[i] * truth->v_min[static_cast<std::size_t>(i)];
            c = std::clamp(c, -1.0, 1.0);
            row.sin_angle = std::sqrt(std::max(0.0, 1.0 - c * c));
        }
        res.record.rows.push_back(row);
        resid_hist.push_back(resid);
        theta_hist.push_back(th[0]);
    };

    push_row(0, v, theta, max_col_norm(r));
    if (opts.store_iterates) res.trail_v.push_back(v);

    DenseMatrix x(n, 0);
    DenseMatrix ax(m, 0);

    for (int i = 0; i < max_iter; ++i) {
        DenseMatrix w = apply_precond_block(kind, plan.p, diag_inv_sq, r);
        if (!all_finite(w)) fail_iter("non-finite preconditioned residual", i);
        DenseMatrix vx = hstack3(v, x, DenseMatrix(n, 0));
        res.degenerate_replacements += cgs2(w, vx, rng);

        DenseMatrix t = hstack3(v, x, w);
        DenseMatrix at = hstack3(av, ax, a.apply_block(w));
        mv_a += b;
        if (!all_finite(at)) fail_iter("non-finite trial products", i);

        const index_t k = t.cols();
        SvdResult rr = dense_svd(at, false);
        DenseMatrix ct = col_slice(rr.v, k - b, b);  // target: smallest b Ritz values
        Vector theta_next(rr.sigma.end() - b, rr.sigma.end());
        DenseMatrix v_next = matmul(t, ct);
        DenseMatrix av_next = matmul(at, ct);

        r = residual_of(v_next, av_next, theta_next);
        push_row(i + 1, v_next, theta_next, max_col_norm(r));
        if (opts.store_iterates) {
            res.trail_t.push_back(t);
            res.trail_v.push_back(v_next);
        }

        if (opts.verify_cached_products && (i + 1) % 25 == 0) {
            DenseMatrix fresh = a.apply_block(v_next);
            res.verify_count += b;
            double drift = max_abs_diff(fresh, av_next);
            res.max_cache_drift = std::max(res.max_cache_drift, drift);
            if (drift > 1e-10 * sigma1) fail_iter("cached product drifted from a fresh one", i);
        }

        bool stop = false;
        if (i % opts.check_every == 0) {
            StopDecision d = check_convergence(resid_hist, theta_hist, i, sigma1, tol,
                                               opts.stagnation_factor, opts.use_stagnation);
            stop = d.stop;
        }

        if (stop) {
            v = v_next;
            av = av_next;
            theta = theta_next;
            res.status = SolveStatus::converged;
            break;
        }

        // history block: the part of the departing target block that the
        // new one does not already carry, kept in the trial space
        index_t lead = k - b;
        DenseMatrix g(lead, b);  // rows of C over the old target block, transposed
        for (index_t j = 0; j < lead; ++j)
            for (index_t l = 0; l < b; ++l) g(j, l) = rr.v(l, j);
        DenseMatrix q = orth_coefficients(g);
        DenseMatrix mix = matmul(col_slice(rr.v, 0, lead), q);
        x = matmul(t, mix);
        ax = matmul(at, mix);

        v = v_next;
        av = av_next;
        theta = theta_next;
    }

    // return ascending from the smallest triplet
    res.sigma = Vector(static_cast<std::size_t>(b));
    res.v = DenseMatrix(n, b);
    for (index_t j = 0; j < b; ++j) {
        res.sigma[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(b - 1 - j)];
        res.v.set_col(j, v.col_copy(b - 1 - j));
    }
    return res;
}

SolveResult rlobpcg_single(const LinearOperator& a, const SolverOptions& opts,
                           const GroundTruth* truth) {
    SolverOptions o = opts;
    o.block_size = 1;
    return lobpcg_solve(a, PrecondKind::randomized, o, truth);
}

SolveResult rlobpcg_block(const LinearOperator& a, const SolverOptions& opts,
                          const GroundTruth* truth) {
    return lobpcg_solve(a, PrecondKind::randomized, opts, truth);
}

}  // namespace minsvd
