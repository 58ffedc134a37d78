#pragma once

#include <cstdint>
#include <vector>

#include "minsvd/dense.hpp"

namespace minsvd {

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row; validate() enforces the structural invariants and finiteness.
struct CsrMatrix {
    index_t rows = 0;
    index_t cols = 0;
    std::vector<index_t> row_offsets; // length rows + 1
    std::vector<index_t> col_indices; // length nnz
    std::vector<double> values;       // length nnz

    index_t nnz() const { return static_cast<index_t>(values.size()); }
    void validate() const;

    Vector matvec(const Vector& x) const;
    Vector matvec_adjoint(const Vector& y) const;
    DenseMatrix to_dense() const;
};

/// Build a CSR matrix from unsorted triplets. Duplicate (row, col) pairs are
/// an error; the caller decides whether duplicates are meaningful.
CsrMatrix csr_from_triplets(index_t rows, index_t cols,
                            std::vector<index_t> ti, std::vector<index_t> tj,
                            std::vector<double> tv);

CsrMatrix csr_from_dense(const DenseMatrix& a, double drop_tol = 0.0);

} // namespace minsvd
