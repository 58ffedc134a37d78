#pragma once

#include <cstddef>
#include <vector>

#include "minsvd/errors.hpp"

namespace minsvd {

using Vector = std::vector<double>;
using index_t = std::ptrdiff_t;

/// Column-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(index_t rows, index_t cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {
        if (rows < 0 || cols < 0) throw DimensionError("DenseMatrix: negative dimension");
    }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(index_t i, index_t j) { return data_[static_cast<std::size_t>(j * rows_ + i)]; }
    double operator()(index_t i, index_t j) const { return data_[static_cast<std::size_t>(j * rows_ + i)]; }

    double* col(index_t j) { return data_.data() + j * rows_; }
    const double* col(index_t j) const { return data_.data() + j * rows_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    Vector col_copy(index_t j) const {
        return Vector(col(j), col(j) + rows_);
    }

    void set_col(index_t j, const Vector& v) {
        if (static_cast<index_t>(v.size()) != rows_)
            throw DimensionError("DenseMatrix::set_col: length mismatch");
        double* c = col(j);
        for (index_t i = 0; i < rows_; ++i) c[i] = v[static_cast<std::size_t>(i)];
    }

private:
    index_t rows_ = 0;
    index_t cols_ = 0;
    std::vector<double> data_;
};

// Vector and small dense kernels. All loops are plain and contiguous; at the
// problem sizes this library targets they run at memory bandwidth and there
// is no benefit in dispatching to an external BLAS.

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
void scale(Vector& a, double s);
/// y += s * x
void axpy(double s, const Vector& x, Vector& y);
bool all_finite(const Vector& a);
bool all_finite(const DenseMatrix& a);
/// Throws NumericalError when a non-finite entry is present.
void require_finite(const Vector& a, const char* what);
void require_finite(const DenseMatrix& a, const char* what);

/// y = M x
Vector dense_matvec(const DenseMatrix& m, const Vector& x);
/// y = M^T x
Vector dense_matvec_adjoint(const DenseMatrix& m, const Vector& x);
/// C = A B
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// C = A^T B
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);

/// Largest absolute entry.
double max_abs(const DenseMatrix& a);

double max_abs(const Vector& a);
/// max_ij |A - B|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// max_i |a - b|
double max_abs_diff(const Vector& a, const Vector& b);
/// Frobenius norm.
double frobenius_norm(const DenseMatrix& a);
DenseMatrix identity(index_t n);

} // namespace minsvd
