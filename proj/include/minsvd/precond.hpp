#pragma once

#include "minsvd/dense.hpp"

namespace minsvd {

// Randomized preconditioner in factored form: P = Vtilde * diag(1/sigma_tilde).
// Built from the SVD of the sketched matrix; applied as P (P^T r) without ever
// forming the n x n product.
struct Preconditioner {
    DenseMatrix vtilde;          // n x n, column-orthonormal
    Vector sigma_tilde;          // descending, strictly positive after flooring
    double sigma_max_estimate = 0.0; // sigma_tilde[0], doubles as a norm estimate of A
    bool floored = false;        // true when rank deficiency hit the floor
    index_t floor_count = 0;     // how many singular values were raised
};

// SVD of the (d x n, d >= n) sketched matrix; singular values below
// sqrt(n) * u * sigma_1 are raised to that floor so the inverse is finite.
Preconditioner build_preconditioner(const DenseMatrix& sa);

// Returns Vtilde * diag(sigma_tilde^-2) * Vtilde^T * r.
Vector precond_apply(const Preconditioner& p, const Vector& r);

// The b smallest right singular vectors of the sketch, as an n x b matrix
// whose last column corresponds to the smallest singular value.
DenseMatrix sketch_and_solve_init(const Preconditioner& p, index_t b);

} // namespace minsvd
