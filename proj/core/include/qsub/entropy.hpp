#pragma once

#include "qsub/fock.hpp"

namespace qsub {

inline constexpr double kPositivityTol = 1e-10;

/// Eigenvalues of a density matrix, with entries in [-kPositivityTol, 0)
/// clamped to zero. Throws PositivityError below that.
RealVector density_spectrum(const DenseOperator& rho);

/// -tr(rho ln rho) with 0 ln 0 := 0.
double von_neumann_entropy(const DenseOperator& rho);

/// tr(rho ln sigma). Eigenvalues of sigma are clamped at 1e-300 once the
/// weight rho puts on sigma's (numerical) kernel has been checked to be below
/// kPositivityTol; otherwise the result would be infinite and PositivityError
/// is thrown.
double cross_log_trace(const DenseOperator& rho, const DenseOperator& sigma);

/// S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma).
double relative_entropy(const DenseOperator& rho, const DenseOperator& sigma);

/// S(rho || sigma_a (x) sigma_b) using ln(sigma_a (x) sigma_b) = ln sigma_a (x) I + I (x) ln sigma_b,
/// so only the reduced states of rho and the factors are diagonalised.
double relative_entropy_to_product(const DenseOperator& rho, const DenseOperator& sigma_a,
                                   const DenseOperator& sigma_b, int n_a, int n_b);

}  // namespace qsub
