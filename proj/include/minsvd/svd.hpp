#pragma once

#include "minsvd/dense.hpp"

namespace minsvd {

/// Economy singular value decomposition M = U diag(sigma) V^T.
/// sigma is descending; V is square orthonormal; U is empty unless requested.
struct SvdResult {
    DenseMatrix u;
    Vector sigma;
    DenseMatrix v;
};

/// Packed Householder factorization A = QR. Reflectors are stored below the
/// diagonal with unit leading entry (Trefethen and Bau, Lecture 10 layout).
struct HouseholderQr {
    DenseMatrix a;  // R on and above the diagonal, reflectors below
    Vector beta;    // scaling factor of each reflector
};

HouseholderQr householder_qr(DenseMatrix a);

/// The n x n upper triangular factor.
DenseMatrix qr_r(const HouseholderQr& qr);

/// Economy Q (rows x cols of the factored matrix), orthonormal columns.
DenseMatrix qr_q_economy(const HouseholderQr& qr);

/// Returns Q * [B; 0] for an n x k matrix B without forming Q.
DenseMatrix qr_apply_q(const HouseholderQr& qr, const DenseMatrix& b);

/// SVD of a tall or square matrix (rows >= cols). Tall inputs are first
/// reduced to the square triangular factor by Householder QR, then the
/// singular values and right vectors come from a one-sided Jacobi iteration,
/// which orthogonalizes column pairs until the Gram matrix is diagonal and
/// retains high relative accuracy for small singular values.
///
/// Conventions: singular values are sorted descending (ties keep the order
/// the iteration produced); each column of V is flipped so its entry of
/// largest magnitude is positive, making the factorization deterministic.
SvdResult dense_svd(const DenseMatrix& m, bool want_u);

} // namespace minsvd
