#pragma once

#include <Eigen/Dense>

#include "qsub/system.hpp"

// Composite index convention used throughout the Fock oracle: the basis state
// |n_a, n_b> sits at index n_a * n_b_dim + n_b (mode a is the slow, "outer"
// index), i.e. operators are built as kron(A, B). Partial traces and the
// effective Hamiltonian rely on this ordering.

namespace qsub {

using DenseOperator = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Truncated Fock space for the two modes.
struct FockConfig {
  int n_a = 32;  // levels 0 .. n_a - 1
  int n_b = 32;
  /// Maximum thermal population allowed above the cutoff of either mode.
  double tail_tol = 1e-12;
  /// Accuracy target for evolved expectation values; oracle heat values whose
  /// truncation-leakage estimate exceeds it are rejected.
  double evol_tol = 1e-6;

  static constexpr int kMaxLevels = 64;

  /// Smallest cutoff per mode whose geometric thermal tail is below tail_tol.
  /// Throws TruncationError (carrying the minimal feasible beta*omega) when more
  /// than max_levels would be needed.
  static FockConfig automatic(const OscillatorSystem& sys, const ThermalPreparation& prep,
                              double tail_tol = 1e-12, int max_levels = kMaxLevels);

  int dim() const { return n_a * n_b; }
  void validate() const;
};

/// Ladder, position and momentum operators on the composite space.
/// x_c = sqrt(1/(2 m w_c)) (c^dag + c), p_c = i sqrt(m w_c / 2) (c^dag - c).
struct ModeOperators {
  DenseOperator a, a_dag, b, b_dag;
  DenseOperator x_a, p_a, x_b, p_b;
};

ModeOperators build_operators(const FockConfig& cfg, double omega_a = 1.0, double omega_b = 1.0,
                              double mass = 1.0);

/// Single-mode annihilation operator on n levels: sqrt(k) on the superdiagonal.
DenseOperator annihilation(int n);

/// kron(A, B).
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// H = H0 + V with H0 = w_a a^dag a + w_b b^dag b.
struct HamiltonianParts {
  DenseOperator h, h0, v;
};

/// For the minimal-coupling kinds, V collects every term of the quoted
/// Hamiltonian beyond H0, including the q^2 x^2 / 2m self energy:
///   MinimalA: V = -(q/m) p_a x_b + (q^2/2m) x_b^2
///   MinimalB: V = +(q/m) x_a p_b + (q^2/2m) x_a^2
/// The constant zero-point energy (w_a + w_b)/2 is dropped.
HamiltonianParts build_hamiltonian(const OscillatorSystem& sys, const FockConfig& cfg);

/// Bare energies w_a n_a and w_b n_b on the composite basis (both diagonal).
RealVector bare_energy_a(const OscillatorSystem& sys, const FockConfig& cfg);
RealVector bare_energy_b(const OscillatorSystem& sys, const FockConfig& cfg);

/// Thermal population mass above the first n levels: e^{-beta omega n}.
double thermal_tail(double beta, double omega, int n);

/// Populations e^{-beta omega k} / Z on k = 0 .. n-1, renormalised over the
/// kept levels. Throws TruncationError when the tail exceeds tail_tol.
RealVector thermal_populations(double beta, double omega, int n, double tail_tol);

/// Diagonal Gibbs state of one mode, trace exactly one.
DenseOperator thermal_state(double beta, double omega, int n, double tail_tol = 1e-12);

/// rho_a^th (x) rho_b^th as the diagonal of the composite density matrix.
RealVector product_thermal_populations(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                       const FockConfig& cfg);

/// Frobenius norm of AB - BA.
double commutator_norm(const DenseOperator& a, const DenseOperator& b);

/// Largest |A - A^dag| entry.
double hermiticity_defect(const DenseOperator& a);

/// tr_b and tr_a of a composite operator.
DenseOperator partial_trace_b(const DenseOperator& op, int n_a, int n_b);
DenseOperator partial_trace_a(const DenseOperator& op, int n_a, int n_b);

}  // namespace qsub
