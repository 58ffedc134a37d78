#include "minsvd/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "minsvd/errors.hpp"
#include "minsvd/svd.hpp"

namespace minsvd {

SolveResult lobpcg_generic(const LinearOperator& a, PrecondKind kind,
                           const SolverOptions& opts, const GroundTruth* truth) {
    return lobpcg_solve(a, kind, opts, truth);
}

namespace {

// two full passes against every stored column
void reorthogonalize(Vector& w, const DenseMatrix& basis, index_t used) {
    for (int pass = 0; pass < 2; ++pass) {
        for (index_t l = 0; l < used; ++l) {
            double proj = 0.0;
            const double* c = basis.col(l);
            for (std::size_t i = 0; i < w.size(); ++i)
                proj += c[i] * w[i];
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] -= proj * c[i];
        }
    }
}

DenseMatrix bidiagonal_section(const Vector& alpha, const Vector& beta, int j) {
    DenseMatrix b(j, j);
    for (int i = 0; i < j; ++i) {
        b(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < j) b(i, i + 1) = beta[static_cast<std::size_t>(i)];
    }
    return b;
}

DenseMatrix first_columns(const DenseMatrix& a, index_t count) {
    DenseMatrix out(a.rows(), count);
    for (index_t j = 0; j < count; ++j)
        out.set_col(j, a.col_copy(j));
    return out;
}

}  // namespace

LanczosResult lanczos_gk(const LinearOperator& a, int iters, const Vector& v0,
                         const GroundTruth* truth, bool record_timing) {
    const index_t m = a.rows();
    const index_t n = a.cols();
    if (m < n) throw DimensionError("lanczos_gk: matrix must be tall");
    if (iters < 1 || iters > n)
        throw DimensionError("lanczos_gk: step count must lie in [1, cols]");
    if (static_cast<index_t>(v0.size()) != n)
        throw DimensionError("lanczos_gk: starting vector length mismatch");
    double v0n = norm2(v0);
    if (v0n == 0.0) throw NumericalError("lanczos_gk: starting vector is zero");
    if (truth && static_cast<index_t>(truth->v_min.size()) != n)
        throw DimensionError("lanczos_gk: ground-truth vector length mismatch");

    auto t_start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        if (!record_timing) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         t_start)
            .count();
    };

    DenseMatrix vbasis(n, iters + 1);
    DenseMatrix ubasis(m, iters);
    Vector alpha(static_cast<std::size_t>(iters), 0.0);
    Vector beta(static_cast<std::size_t>(iters), 0.0);

    LanczosResult res;
    res.record.has_truth = truth != nullptr;

    Vector v = v0;
    scale(v, 1.0 / v0n);
    vbasis.set_col(0, v);

    Vector u = a.apply(v);
    long mv_a = 1;
    long mv_at = 0;
    double a1 = norm2(u);
    auto finish = [&](LanczosStatus status) -> LanczosResult {
        res.status = status;
        res.v_basis = first_columns(vbasis, res.steps);
        res.u_basis = first_columns(ubasis, res.steps);
        return std::move(res);
    };

    if (a1 == 0.0) {
        // v0 is an exact null vector of A
        res.sigma_min = 0.0;
        res.v = v;
        return finish(LanczosStatus::invariant_subspace);
    }
    alpha[0] = a1;
    scale(u, 1.0 / a1);
    ubasis.set_col(0, u);

    double coeff_scale = a1;  // largest recurrence coefficient seen so far

    for (int j = 1; j <= iters; ++j) {
        // adjoint step: completes section j and provides its residual scale
        Vector w = a.apply_adjoint(ubasis.col_copy(j - 1));
        ++mv_at;
        axpy(-alpha[static_cast<std::size_t>(j - 1)], vbasis.col_copy(j - 1), w);
        reorthogonalize(w, vbasis, j);
        double bj = norm2(w);
        coeff_scale = std::max(coeff_scale, bj);
        beta[static_cast<std::size_t>(j - 1)] = bj;

        SvdResult sec = dense_svd(bidiagonal_section(alpha, beta, j), false);
        double theta = sec.sigma[static_cast<std::size_t>(j - 1)];
        Vector y = sec.v.col_copy(j - 1);
        Vector v_est(static_cast<std::size_t>(n), 0.0);
        for (int l = 0; l < j; ++l)
            axpy(y[static_cast<std::size_t>(l)], vbasis.col_copy(l), v_est);
        double resid = alpha[static_cast<std::size_t>(j - 1)] * bj *
                       std::fabs(y[static_cast<std::size_t>(j - 1)]);

        RecordRow row;
        row.iter = j;
        row.matvecs_a = mv_a;
        row.matvecs_at = mv_at;
        row.wall_ms = elapsed_ms();
        row.theta = theta;
        row.resid = resid;
        if (truth) {
            double sn = truth->sigma_min;
            row.relerr = sn > 0.0 ? std::fabs(theta - sn) / sn : std::fabs(theta);
            double c = std::clamp(dot(v_est, truth->v_min), -1.0, 1.0);
            row.sin_angle = std::sqrt(std::max(0.0, 1.0 - c * c));
        }
        res.record.rows.push_back(row);
        res.sigma_min = theta;
        res.v = v_est;
        res.steps = j;

        if (bj <= 64.0 * std::numeric_limits<double>::epsilon() * coeff_scale)
            return finish(LanczosStatus::invariant_subspace);
        if (j == iters) break;

        scale(w, 1.0 / bj);
        vbasis.set_col(j, w);

        Vector unext = a.apply(w);
        ++mv_a;
        axpy(-bj, ubasis.col_copy(j - 1), unext);
        reorthogonalize(unext, ubasis, j);
        double aj = norm2(unext);
        coeff_scale = std::max(coeff_scale, aj);
        if (aj <= 64.0 * std::numeric_limits<double>::epsilon() * coeff_scale)
            return finish(LanczosStatus::invariant_subspace);
        alpha[static_cast<std::size_t>(j)] = aj;
        scale(unext, 1.0 / aj);
        ubasis.set_col(j, unext);
    }

    return finish(LanczosStatus::completed);
}

}  // namespace minsvd
