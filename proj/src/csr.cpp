#include "minsvd/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace minsvd {

void CsrMatrix::validate() const {
    if (rows < 0 || cols < 0) throw DimensionError("CsrMatrix: negative dimension");
    if (static_cast<index_t>(row_offsets.size()) != rows + 1)
        throw DimensionError("CsrMatrix: row_offsets length must be rows + 1");
    if (col_indices.size() != values.size())
        throw DimensionError("CsrMatrix: col_indices and values length mismatch");
    if (row_offsets.front() != 0 || row_offsets.back() != nnz())
        throw DimensionError("CsrMatrix: row_offsets endpoints inconsistent with nnz");
    for (index_t i = 0; i < rows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1])
            throw DimensionError("CsrMatrix: row_offsets not nondecreasing at row " + std::to_string(i));
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            const index_t j = col_indices[static_cast<std::size_t>(k)];
            if (j < 0 || j >= cols)
                throw DimensionError("CsrMatrix: column index out of range in row " + std::to_string(i));
            if (k > row_offsets[i] && col_indices[static_cast<std::size_t>(k - 1)] >= j)
                throw DimensionError("CsrMatrix: column indices not strictly increasing in row " +
                                     std::to_string(i));
        }
    }
    for (double v : values)
        if (!std::isfinite(v)) throw NumericalError("CsrMatrix: non-finite value");
}

Vector CsrMatrix::matvec(const Vector& x) const {
    if (static_cast<index_t>(x.size()) != cols)
        throw DimensionError("CsrMatrix::matvec: dimension mismatch");
    Vector y(static_cast<std::size_t>(rows), 0.0);
    for (index_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            s += values[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_indices[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

Vector CsrMatrix::matvec_adjoint(const Vector& y) const {
    if (static_cast<index_t>(y.size()) != rows)
        throw DimensionError("CsrMatrix::matvec_adjoint: dimension mismatch");
    Vector x(static_cast<std::size_t>(cols), 0.0);
    for (index_t i = 0; i < rows; ++i) {
        const double yi = y[static_cast<std::size_t>(i)];
        if (yi == 0.0) continue;
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            x[static_cast<std::size_t>(col_indices[static_cast<std::size_t>(k)])] +=
                values[static_cast<std::size_t>(k)] * yi;
    }
    return x;
}

DenseMatrix CsrMatrix::to_dense() const {
    DenseMatrix a(rows, cols);
    for (index_t i = 0; i < rows; ++i)
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            a(i, col_indices[static_cast<std::size_t>(k)]) = values[static_cast<std::size_t>(k)];
    return a;
}

CsrMatrix csr_from_triplets(index_t rows, index_t cols,
                            std::vector<index_t> ti, std::vector<index_t> tj,
                            std::vector<double> tv) {
    if (ti.size() != tj.size() || ti.size() != tv.size())
        throw DimensionError("csr_from_triplets: triplet arrays length mismatch");
    const std::size_t nnz = tv.size();
    std::vector<std::size_t> order(nnz);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ti[a] != ti[b]) return ti[a] < ti[b];
        return tj[a] < tj[b];
    });

    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_offsets.assign(static_cast<std::size_t>(rows) + 1, 0);
    m.col_indices.resize(nnz);
    m.values.resize(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        const std::size_t p = order[k];
        if (k > 0) {
            const std::size_t q = order[k - 1];
            if (ti[p] == ti[q] && tj[p] == tj[q])
                throw IoError("csr_from_triplets: duplicate entry at (" + std::to_string(ti[p]) +
                              ", " + std::to_string(tj[p]) + ")");
        }
        m.col_indices[k] = tj[p];
        m.values[k] = tv[p];
        m.row_offsets[static_cast<std::size_t>(ti[p]) + 1]++;
    }
    for (index_t i = 0; i < rows; ++i)
        m.row_offsets[static_cast<std::size_t>(i) + 1] += m.row_offsets[static_cast<std::size_t>(i)];
    m.validate();
    return m;
}

CsrMatrix csr_from_dense(const DenseMatrix& a, double drop_tol) {
    std::vector<index_t> ti, tj;
    std::vector<double> tv;
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            if (std::fabs(a(i, j)) > drop_tol) {
                ti.push_back(i);
                tj.push_back(j);
                tv.push_back(a(i, j));
            }
    return csr_from_triplets(a.rows(), a.cols(), std::move(ti), std::move(tj), std::move(tv));
}

} // namespace minsvd
