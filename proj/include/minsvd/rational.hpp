#pragma once

// AAA rational interpolation with Lawson minimax refinement.
//
// Complex arithmetic is confined to this module. Every nullspace problem is
// mapped to a real matrix of twice the size, handed to the real core (either
// a dense SVD or the preconditioned iterative solver), and the resulting
// vector is folded back into complex barycentric weights.

#include <complex>
#include <vector>

#include "minsvd/dense.hpp"
#include "minsvd/solver.hpp"

namespace minsvd {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Rational function in barycentric form,
//   r(z) = [sum_j w_j f_j / (z - z_j)] / [sum_j w_j / (z - z_j)].
// With k support points this spans ratios of polynomials of degree at most
// k - 1, and r interpolates f_j at every support point with nonzero weight.
struct BarycentricRational {
    ComplexVector support;  // z_j, pairwise distinct
    ComplexVector value;    // f_j
    ComplexVector weight;   // w_j, not all zero
    index_t degree() const { return static_cast<index_t>(support.size()) - 1; }
};

// Evaluates r at z. An exact hit on a support point returns the stored value
// when that weight is nonzero; zero-weight support points are skipped.
Complex eval_barycentric(const BarycentricRational& r, Complex z);

// max_i |r(z_i) - f_i| over a sample set.
double max_error(const BarycentricRational& r, const ComplexVector& z,
                 const ComplexVector& f);

// Column-major complex matrix, used only to assemble Loewner-type systems.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(index_t rows, index_t cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows * cols), Complex(0.0, 0.0)) {}

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }

    Complex& operator()(index_t i, index_t j) {
        return data_[static_cast<std::size_t>(j * rows_ + i)];
    }
    Complex operator()(index_t i, index_t j) const {
        return data_[static_cast<std::size_t>(j * rows_ + i)];
    }

  private:
    index_t rows_ = 0;
    index_t cols_ = 0;
    ComplexVector data_;
};

// Real 2m x 2n block form [[Re, -Im], [Im, Re]] of a complex m x n matrix.
// Its singular values are those of the complex matrix, each with multiplicity
// two, and a right singular vector [x; y] folds back to x + iy.
struct RealifiedOperator {
    DenseMatrix block;
    index_t complex_rows = 0;
    index_t complex_cols = 0;
};

RealifiedOperator realify(const ComplexMatrix& a);

// Folds a real vector [x; y] of even length 2n into the complex vector
// x + iy of length n.
ComplexVector fold_complex(const Vector& xy);

// Greedy rational interpolation: repeatedly adopts the worst-error sample as
// a support point and takes the weights from the minimum right singular
// vector of the Loewner matrix over the remaining samples. Stops when the
// max error drops below tol * max|f| or the requested degree is reached.
BarycentricRational aaa_fit(const ComplexVector& z, const ComplexVector& f,
                            index_t max_degree, double tol);

enum class NullspaceBackend { dense_svd, rlobpcg };

struct LawsonOptions {
    index_t steps = 20;
    NullspaceBackend backend = NullspaceBackend::dense_svd;
    // Settings for the iterative backend. The block size is forced to 2
    // because the realified problem carries every singular value twice; the
    // converged two-dimensional space folds back to a unique rational.
    SolverOptions solver;
    LawsonOptions() { solver.tol = 1e-15; }
};

struct LawsonResult {
    BarycentricRational refined;      // best approximant seen, by max error
    double initial_error = 0.0;       // max error of the input approximant
    double best_error = 0.0;
    std::vector<double> step_errors;  // per-step max error; may oscillate
    Vector final_lawson_weights;      // positive, sums to one
};

// Iteratively reweighted nullspace refinement toward the minimax weights:
// each step scales the Loewner rows by the square roots of the Lawson
// weights, recomputes the barycentric weights from the minimum right
// singular vector, then multiplies each Lawson weight by the local error
// magnitude and renormalizes. The best approximant across all steps (the
// input included) is returned.
LawsonResult lawson_refine(const BarycentricRational& r, const ComplexVector& z,
                           const ComplexVector& f, const LawsonOptions& options);
LawsonResult lawson_refine(const BarycentricRational& r, const ComplexVector& z,
                           const ComplexVector& f, index_t steps,
                           NullspaceBackend backend);

// Uniform samples on the two unit circles centered at +1.03 and -1.03,
// the benchmark domain for the discontinuous function below.
ComplexVector twin_circle_points(index_t per_circle);

// z * sign(Re z), discontinuous across the imaginary axis.
Complex signed_identity(Complex z);

}  // namespace minsvd
