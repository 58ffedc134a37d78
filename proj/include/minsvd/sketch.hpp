#pragma once

#include <cstdint>
#include <string>

#include "minsvd/operator.hpp"

namespace minsvd {

/// Sparse sign embedding with a stacked block layout: the d rows are split
/// into zeta equal blocks and every column gets exactly one entry of value
/// +-zeta^{-1/2} in each block, at a position drawn from a stream keyed by
/// (seed, column). Columns therefore have unit norm by construction and can
/// be regenerated independently and in any order.
struct SparseStackEmbedding {
    index_t d = 0;
    index_t m = 0;
    int zeta = 0;
    std::uint64_t seed = 0;
    // block-local nonzero positions and signs, zeta per column, column-major
    std::vector<std::uint32_t> positions;
    std::vector<std::int8_t> signs;

    index_t block_rows() const { return d / zeta; }
    double entry_value() const;
    void validate() const;
};

/// Smallest multiple of zeta that is >= d.
index_t round_up_to_multiple(index_t d, int zeta);

/// Requires zeta | d; the error message points at round_up_to_multiple.
SparseStackEmbedding build_sparsestack(index_t d, index_t m, int zeta, std::uint64_t seed);

DenseMatrix sparsestack_to_dense(const SparseStackEmbedding& s);

/// S * A without forming S. Dense, CSR and factored operands use direct
/// kernels costing O(zeta nnz); other operators fall back to extracting
/// columns with one forward product each.
DenseMatrix sketch_apply(const SparseStackEmbedding& s, const DenseMatrix& a);
DenseMatrix sketch_apply(const SparseStackEmbedding& s, const CsrMatrix& a);
DenseMatrix sketch_apply(const SparseStackEmbedding& s, const LinearOperator& a);

struct DistortionReport {
    double eta = 1.0;          // max(sigma_max^2 - 1, 1 - sigma_min^2) of S restricted to range(A)
    double sigma_min_sq = 0.0; // extreme squared singular values of S Q
    double sigma_max_sq = 0.0;
    bool is_embedding = false; // eta < 1
};

/// Exact distortion of S on range(A), measured by decomposing S Q for an
/// orthonormal basis Q of the range. A must have full column rank.
DistortionReport empirical_distortion(const SparseStackEmbedding& s, const LinearOperator& a);

/// Compact binary header (d, m, zeta, seed); the structure is regenerated
/// from the seed on load rather than stored.
void save_sparsestack(const std::string& path, const SparseStackEmbedding& s);
SparseStackEmbedding load_sparsestack(const std::string& path);

} // namespace minsvd
