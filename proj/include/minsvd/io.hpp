#pragma once

#include <string>

#include "minsvd/csr.hpp"
#include "minsvd/dense.hpp"

namespace minsvd {

/// Parsed Matrix Market file: either a dense array or a sparse coordinate
/// matrix, depending on the format line.
struct MatrixMarketData {
    bool is_sparse = false;
    DenseMatrix dense;
    CsrMatrix sparse;

    index_t rows() const { return is_sparse ? sparse.rows : dense.rows(); }
    index_t cols() const { return is_sparse ? sparse.cols : dense.cols(); }
    DenseMatrix to_dense() const { return is_sparse ? sparse.to_dense() : dense; }
};

/// Reads "array" and "coordinate" files with real or integer fields. The
/// symmetric qualifier is expanded; pattern and complex fields are rejected.
/// Malformed input raises IoError with the offending line number.
MatrixMarketData read_matrix_market(const std::string& path);

/// Writers emit 17 significant digits, enough for an exact decimal round
/// trip of every double.
void write_matrix_market_array(const std::string& path, const DenseMatrix& a,
                               const std::string& comment = "");
void write_matrix_market_coordinate(const std::string& path, const CsrMatrix& a,
                                    const std::string& comment = "");

/// printf %.17g formatting used by every text artifact.
std::string format_double(double x);

} // namespace minsvd
