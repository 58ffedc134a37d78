#include "minsvd/dense.hpp"

#include <cmath>
#include <cstring>

namespace minsvd {

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& a) {
    return std::sqrt(dot(a, a));
}

void scale(Vector& a, double s) {
    for (double& x : a) x *= s;
}

void axpy(double s, const Vector& x, Vector& y) {
    if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

bool all_finite(const Vector& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const DenseMatrix& a) {
    const double* p = a.data();
    const std::size_t n = static_cast<std::size_t>(a.rows() * a.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

void require_finite(const Vector& a, const char* what) {
    if (!all_finite(a)) throw NumericalError(std::string(what) + ": non-finite entry");
}

void require_finite(const DenseMatrix& a, const char* what) {
    if (!all_finite(a)) throw NumericalError(std::string(what) + ": non-finite entry");
}

Vector dense_matvec(const DenseMatrix& m, const Vector& x) {
    if (static_cast<index_t>(x.size()) != m.cols())
        throw DimensionError("dense_matvec: dimension mismatch");
    Vector y(static_cast<std::size_t>(m.rows()), 0.0);
    for (index_t j = 0; j < m.cols(); ++j) {
        const double xj = x[static_cast<std::size_t>(j)];
        const double* c = m.col(j);
        for (index_t i = 0; i < m.rows(); ++i) y[static_cast<std::size_t>(i)] += xj * c[i];
    }
    return y;
}

Vector dense_matvec_adjoint(const DenseMatrix& m, const Vector& x) {
    if (static_cast<index_t>(x.size()) != m.rows())
        throw DimensionError("dense_matvec_adjoint: dimension mismatch");
    Vector y(static_cast<std::size_t>(m.cols()), 0.0);
    for (index_t j = 0; j < m.cols(); ++j) {
        const double* c = m.col(j);
        double s = 0.0;
        for (index_t i = 0; i < m.rows(); ++i) s += c[i] * x[static_cast<std::size_t>(i)];
        y[static_cast<std::size_t>(j)] = s;
    }
    return y;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (index_t j = 0; j < b.cols(); ++j) {
        double* cj = c.col(j);
        const double* bj = b.col(j);
        for (index_t k = 0; k < a.cols(); ++k) {
            const double bkj = bj[k];
            if (bkj == 0.0) continue;
            const double* ak = a.col(k);
            for (index_t i = 0; i < a.rows(); ++i) cj[i] += bkj * ak[i];
        }
    }
    return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("matmul_at_b: dimension mismatch");
    DenseMatrix c(a.cols(), b.cols());
    for (index_t j = 0; j < b.cols(); ++j) {
        const double* bj = b.col(j);
        double* cj = c.col(j);
        for (index_t i = 0; i < a.cols(); ++i) {
            const double* ai = a.col(i);
            double s = 0.0;
            for (index_t k = 0; k < a.rows(); ++k) s += ai[k] * bj[k];
            cj[i] = s;
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
    return t;
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    const double* p = a.data();
    const std::size_t n = static_cast<std::size_t>(a.rows() * a.cols());
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(p[i]));
    return m;
}

double max_abs(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = static_cast<std::size_t>(a.rows() * a.cols());
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(pa[i] - pb[i]));
    return m;
}

double max_abs_diff(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    const double* p = a.data();
    const std::size_t n = static_cast<std::size_t>(a.rows() * a.cols());
    for (std::size_t i = 0; i < n; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

DenseMatrix identity(index_t n) {
    DenseMatrix m(n, n);
    for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

} // namespace minsvd
