#pragma once

#include "minsvd/solver.hpp"

namespace minsvd {

/// LOBPCG with a selectable preconditioner kind. Every kind shares the
/// iteration structure, the sketch-and-solve starting vector, and the
/// stopping scale with rlobpcg_single; the randomized kind IS
/// rlobpcg_single. The diagonal kind divides the residual by squared
/// column norms (a zero column counts as norm 1); none passes it through.
SolveResult lobpcg_generic(const LinearOperator& a, PrecondKind kind,
                           const SolverOptions& opts, const GroundTruth* truth = nullptr);

enum class LanczosStatus {
    completed,           ///< ran the requested number of steps
    invariant_subspace,  ///< recurrence broke down: the section is exact
};

struct LanczosResult {
    double sigma_min = 0.0;     ///< smallest Ritz value of the final section
    Vector v;                   ///< matching right Ritz vector, unit norm
    ConvergenceRecord record;   ///< one row per bidiagonalization step
    LanczosStatus status = LanczosStatus::completed;
    int steps = 0;              ///< sections actually evaluated
    DenseMatrix v_basis;        ///< right Krylov basis, one column per step
    DenseMatrix u_basis;        ///< left Krylov basis, one column per step
};

/// Golub-Kahan bidiagonalization driven from v0, with full two-pass
/// reorthogonalization of both Krylov bases. Row j of the record holds the
/// smallest Ritz value of the j-step section and its exact-arithmetic
/// residual norm alpha_j beta_j |y_j|. A vanishing recurrence coefficient
/// ends the run early with invariant_subspace status (the estimates are
/// then exact up to roundoff).
LanczosResult lanczos_gk(const LinearOperator& a, int iters, const Vector& v0,
                         const GroundTruth* truth = nullptr, bool record_timing = true);

}  // namespace minsvd
