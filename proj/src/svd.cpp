#include "minsvd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace minsvd {

namespace {

double column_norm(const DenseMatrix& a, index_t col, index_t from) {
    const double* c = a.col(col);
    double s = 0.0;
    for (index_t i = from; i < a.rows(); ++i) s += c[i] * c[i];
    return std::sqrt(s);
}

} // namespace

HouseholderQr householder_qr(DenseMatrix a) {
    require_finite(a, "householder_qr");
    const index_t m = a.rows();
    const index_t n = a.cols();
    if (m < n) throw DimensionError("householder_qr: requires rows >= cols");

    HouseholderQr qr{std::move(a), Vector(static_cast<std::size_t>(n), 0.0)};
    DenseMatrix& w = qr.a;

    for (index_t k = 0; k < n; ++k) {
        double* ck = w.col(k);
        const double xnorm = column_norm(w, k, k);
        if (xnorm == 0.0) {
            qr.beta[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        const double alpha = ck[k] >= 0.0 ? -xnorm : xnorm;
        // v = x - alpha e_1, normalized so v(1) = 1.
        const double v0 = ck[k] - alpha;
        for (index_t i = k + 1; i < m; ++i) ck[i] /= v0;
        qr.beta[static_cast<std::size_t>(k)] = -v0 / alpha;
        ck[k] = alpha;

        const double beta = qr.beta[static_cast<std::size_t>(k)];
        for (index_t j = k + 1; j < n; ++j) {
            double* cj = w.col(j);
            double s = cj[k];
            for (index_t i = k + 1; i < m; ++i) s += ck[i] * cj[i];
            s *= beta;
            cj[k] -= s;
            for (index_t i = k + 1; i < m; ++i) cj[i] -= s * ck[i];
        }
    }
    return qr;
}

DenseMatrix qr_r(const HouseholderQr& qr) {
    const index_t n = qr.a.cols();
    DenseMatrix r(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i <= j; ++i) r(i, j) = qr.a(i, j);
    return r;
}

DenseMatrix qr_apply_q(const HouseholderQr& qr, const DenseMatrix& b) {
    const index_t m = qr.a.rows();
    const index_t n = qr.a.cols();
    if (b.rows() != n) throw DimensionError("qr_apply_q: dimension mismatch");

    DenseMatrix y(m, b.cols());
    for (index_t j = 0; j < b.cols(); ++j)
        for (index_t i = 0; i < n; ++i) y(i, j) = b(i, j);

    for (index_t k = n - 1; k >= 0; --k) {
        const double beta = qr.beta[static_cast<std::size_t>(k)];
        if (beta == 0.0) continue;
        const double* vk = qr.a.col(k);
        for (index_t j = 0; j < y.cols(); ++j) {
            double* cj = y.col(j);
            double s = cj[k];
            for (index_t i = k + 1; i < m; ++i) s += vk[i] * cj[i];
            s *= beta;
            cj[k] -= s;
            for (index_t i = k + 1; i < m; ++i) cj[i] -= s * vk[i];
        }
    }
    return y;
}

DenseMatrix qr_q_economy(const HouseholderQr& qr) {
    return qr_apply_q(qr, identity(qr.a.cols()));
}

namespace {

// One-sided Jacobi on a square or tall working matrix B (s x n, s >= n).
// Rotates column pairs until all pairs are numerically orthogonal; the
// accumulated rotations form V, and the column norms are the singular values.
void one_sided_jacobi(DenseMatrix& b, DenseMatrix& v) {
    const index_t s = b.rows();
    const index_t n = b.cols();
    constexpr double kOrthTol = 1e-15;
    constexpr int kMaxSweeps = 60;

    double worst = 0.0;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        worst = 0.0;
        for (index_t p = 0; p < n - 1; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                double* bp = b.col(p);
                double* bq = b.col(q);
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (index_t i = 0; i < s; ++i) {
                    app += bp[i] * bp[i];
                    aqq += bq[i] * bq[i];
                    apq += bp[i] * bq[i];
                }
                if (app == 0.0 || aqq == 0.0 || apq == 0.0) continue;
                const double rel = std::fabs(apq) / std::sqrt(app * aqq);
                worst = std::max(worst, rel);
                if (rel <= kOrthTol) continue;

                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;

                for (index_t i = 0; i < s; ++i) {
                    const double xp = bp[i];
                    const double xq = bq[i];
                    bp[i] = c * xp - sn * xq;
                    bq[i] = sn * xp + c * xq;
                }
                double* vp = v.col(p);
                double* vq = v.col(q);
                for (index_t i = 0; i < n; ++i) {
                    const double xp = vp[i];
                    const double xq = vq[i];
                    vp[i] = c * xp - sn * xq;
                    vq[i] = sn * xp + c * xq;
                }
            }
        }
        if (worst <= kOrthTol) return;
    }
    throw NumericalError("one_sided_jacobi: no convergence after " +
                         std::to_string(kMaxSweeps) + " sweeps (n=" + std::to_string(n) +
                         ", worst pair cosine=" + std::to_string(worst) + ")");
}

// Fill U columns for exactly zero singular values with unit vectors
// orthogonal to the columns already present.
void complete_u_column(DenseMatrix& u, index_t col) {
    const index_t m = u.rows();
    Vector w(static_cast<std::size_t>(m), 0.0);
    for (index_t cand = 0; cand < m; ++cand) {
        for (index_t i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = 0.0;
        w[static_cast<std::size_t>(cand)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (index_t j = 0; j < u.cols(); ++j) {
                if (j == col) continue;
                const double* cj = u.col(j);
                double s = 0.0;
                for (index_t i = 0; i < m; ++i) s += cj[i] * w[static_cast<std::size_t>(i)];
                for (index_t i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] -= s * cj[i];
            }
        }
        const double nw = norm2(w);
        if (nw > 0.5) {
            for (index_t i = 0; i < m; ++i) u(i, col) = w[static_cast<std::size_t>(i)] / nw;
            return;
        }
    }
    throw NumericalError("dense_svd: unable to complete an orthonormal U column");
}

} // namespace

SvdResult dense_svd(const DenseMatrix& m, bool want_u) {
    require_finite(m, "dense_svd");
    const index_t rows = m.rows();
    const index_t n = m.cols();
    if (rows < n) throw DimensionError("dense_svd: requires rows >= cols");
    if (n == 0) throw DimensionError("dense_svd: empty matrix");

    const bool reduce = rows > n;
    HouseholderQr qr;
    DenseMatrix b;
    if (reduce) {
        qr = householder_qr(m);
        b = qr_r(qr);
    } else {
        b = m;
    }

    DenseMatrix v = identity(n);
    one_sided_jacobi(b, v);

    Vector sigma(static_cast<std::size_t>(n), 0.0);
    for (index_t j = 0; j < n; ++j) sigma[static_cast<std::size_t>(j)] = column_norm(b, j, 0);

    std::vector<index_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t c) {
        return sigma[static_cast<std::size_t>(a)] > sigma[static_cast<std::size_t>(c)];
    });

    SvdResult out;
    out.sigma.resize(static_cast<std::size_t>(n));
    out.v = DenseMatrix(n, n);
    DenseMatrix usmall;
    if (want_u) usmall = DenseMatrix(b.rows(), n);

    for (index_t j = 0; j < n; ++j) {
        const index_t src = order[static_cast<std::size_t>(j)];
        const double s = sigma[static_cast<std::size_t>(src)];
        out.sigma[static_cast<std::size_t>(j)] = s;
        for (index_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
        if (want_u) {
            if (s > 0.0) {
                const double* bc = b.col(src);
                for (index_t i = 0; i < b.rows(); ++i) usmall(i, j) = bc[i] / s;
            }
            // zero columns are completed after the loop
        }
    }
    if (want_u)
        for (index_t j = 0; j < n; ++j)
            if (out.sigma[static_cast<std::size_t>(j)] == 0.0) complete_u_column(usmall, j);

    // Deterministic signs: largest-magnitude entry of each V column positive.
    for (index_t j = 0; j < n; ++j) {
        index_t imax = 0;
        double amax = -1.0;
        for (index_t i = 0; i < n; ++i) {
            const double a = std::fabs(out.v(i, j));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (out.v(imax, j) < 0.0) {
            for (index_t i = 0; i < n; ++i) out.v(i, j) = -out.v(i, j);
            if (want_u)
                for (index_t i = 0; i < b.rows(); ++i) usmall(i, j) = -usmall(i, j);
        }
    }

    if (want_u) out.u = reduce ? qr_apply_q(qr, usmall) : std::move(usmall);
    return out;
}

} // namespace minsvd
