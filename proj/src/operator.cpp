#include "minsvd/operator.hpp"

#include <cmath>

namespace minsvd {

DenseMatrix LinearOperator::apply_block(const DenseMatrix& x) const {
    if (x.rows() != cols()) throw DimensionError("apply_block: dimension mismatch");
    DenseMatrix y(rows(), x.cols());
    for (index_t j = 0; j < x.cols(); ++j) y.set_col(j, apply(x.col_copy(j)));
    return y;
}

DenseMatrix LinearOperator::apply_adjoint_block(const DenseMatrix& y) const {
    if (y.rows() != rows()) throw DimensionError("apply_adjoint_block: dimension mismatch");
    DenseMatrix x(cols(), y.cols());
    for (index_t j = 0; j < y.cols(); ++j) x.set_col(j, apply_adjoint(y.col_copy(j)));
    return x;
}

Vector LinearOperator::column_norms() const {
    const DenseMatrix a = to_dense();
    Vector norms(static_cast<std::size_t>(a.cols()), 0.0);
    for (index_t j = 0; j < a.cols(); ++j) {
        const double* c = a.col(j);
        double s = 0.0;
        for (index_t i = 0; i < a.rows(); ++i) s += c[i] * c[i];
        norms[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    return norms;
}

DenseOperator::DenseOperator(DenseMatrix a) : a_(std::move(a)) {
    require_finite(a_, "DenseOperator");
}

Vector DenseOperator::column_norms() const {
    Vector norms(static_cast<std::size_t>(a_.cols()), 0.0);
    for (index_t j = 0; j < a_.cols(); ++j) {
        const double* c = a_.col(j);
        double s = 0.0;
        for (index_t i = 0; i < a_.rows(); ++i) s += c[i] * c[i];
        norms[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    return norms;
}

CsrOperator::CsrOperator(CsrMatrix a) : a_(std::move(a)) {
    a_.validate();
}

FactoredSvdOperator::FactoredSvdOperator(DenseMatrix u, Vector sigma, DenseMatrix v)
    : u_(std::move(u)), sigma_(std::move(sigma)), v_(std::move(v)) {
    if (u_.cols() != static_cast<index_t>(sigma_.size()) || v_.cols() != u_.cols() ||
        v_.rows() != v_.cols())
        throw DimensionError("FactoredSvdOperator: inconsistent factor shapes");
    require_finite(u_, "FactoredSvdOperator U");
    require_finite(v_, "FactoredSvdOperator V");
    require_finite(sigma_, "FactoredSvdOperator sigma");
}

Vector FactoredSvdOperator::apply(const Vector& x) const {
    Vector t = dense_matvec_adjoint(v_, x);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= sigma_[i];
    return dense_matvec(u_, t);
}

Vector FactoredSvdOperator::apply_adjoint(const Vector& y) const {
    Vector t = dense_matvec_adjoint(u_, y);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= sigma_[i];
    return dense_matvec(v_, t);
}

Vector FactoredSvdOperator::column_norms() const {
    // column j of A is U diag(sigma) V^T e_j; U preserves norms
    Vector norms(static_cast<std::size_t>(v_.rows()), 0.0);
    for (index_t j = 0; j < v_.rows(); ++j) {
        double s = 0.0;
        for (index_t i = 0; i < v_.cols(); ++i) {
            const double x = sigma_[static_cast<std::size_t>(i)] * v_(j, i);
            s += x * x;
        }
        norms[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    return norms;
}

DenseMatrix FactoredSvdOperator::to_dense() const {
    DenseMatrix us = u_;
    for (index_t j = 0; j < us.cols(); ++j) {
        double* c = us.col(j);
        const double s = sigma_[static_cast<std::size_t>(j)];
        for (index_t i = 0; i < us.rows(); ++i) c[i] *= s;
    }
    return matmul(us, transpose(v_));
}

Vector CsrOperator::column_norms() const {
    Vector sq(static_cast<std::size_t>(a_.cols), 0.0);
    for (std::size_t k = 0; k < a_.values.size(); ++k)
        sq[static_cast<std::size_t>(a_.col_indices[k])] += a_.values[k] * a_.values[k];
    for (double& s : sq) s = std::sqrt(s);
    return sq;
}

} // namespace minsvd
