#pragma once

#include <span>
#include <vector>

#include "qsub/fock.hpp"

namespace qsub {

/// U(t) = exp(-iHt) for a time-independent Hermitian H through its
/// eigendecomposition, reusable across any number of times.
///
/// H is first split into the connected components of its nonzero pattern
/// (parity or excitation-number sectors for the oscillator couplings), and
/// each block is conjugated by a diagonal phase matrix into a real symmetric
/// one whenever such a gauge exists. Both steps are exact; they only change
/// the cost of the eigensolve.
class SpectralPropagator {
 public:
  struct Block {
    std::vector<Eigen::Index> index;  // composite indices spanned by the block
    RealVector energies;              // ascending
    DenseOperator vectors;            // columns are eigenvectors in the bare basis
    Eigen::MatrixXd real_vectors;     // set when the block is real in a phase gauge
    Eigen::VectorXcd gauge;           // vectors = gauge.asDiagonal() * real_vectors
    bool real = false;
  };

  /// Throws DomainError when H is not Hermitian to hermiticity_tol (relative to
  /// its largest entry).
  explicit SpectralPropagator(const DenseOperator& h, double hermiticity_tol = 1e-12);

  Eigen::Index dim() const { return dim_; }
  std::span<const Block> blocks() const { return blocks_; }

  /// All eigenvalues, ascending.
  RealVector eigenvalues() const;

  DenseOperator unitary(double t) const;

  /// U rho0 U^dag.
  DenseOperator evolve(const DenseOperator& rho0, double t) const;

  /// U rho0 U^dag for a rho0 that is diagonal in the bare basis.
  DenseOperator evolve_diagonal(const RealVector& populations, double t) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<Block> blocks_;
};

/// Eigenvalues of a Hermitian matrix, ascending, using the same block/gauge
/// reduction but skipping eigenvectors.
RealVector hermitian_eigenvalues(const DenseOperator& h, double hermiticity_tol = 1e-12);

/// Single-shot evolution U rho0 U^dag with U = exp(-iHt).
DenseOperator evolve(const DenseOperator& h, const DenseOperator& rho0, double t);

}  // namespace qsub
