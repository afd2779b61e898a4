#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qsub/fock.hpp"
#include "qsub/spectral.hpp"

namespace qsub {

/// Truncated-Fock-space model of the two oscillators prepared in
/// rho_a^th (x) rho_b^th. Built once per (system, preparation, cutoff); all
/// queries are const and safe to share between threads.
class FockOracle {
 public:
  FockOracle(const OscillatorSystem& sys, const ThermalPreparation& prep, const FockConfig& cfg);

  const OscillatorSystem& system() const { return sys_; }
  const ThermalPreparation& preparation() const { return prep_; }
  const FockConfig& config() const { return cfg_; }
  const HamiltonianParts& hamiltonian() const { return ham_; }
  const SpectralPropagator& propagator() const { return prop_; }

  /// Diagonal of rho(0) in the bare basis.
  const RealVector& initial_populations() const { return pop0_; }

  /// tr(H_c rho(t)) - tr(H_c rho(0)) with no truncation check.
  HeatReport heat_unchecked(double t) const;

  /// As heat_unchecked, but throws TruncationError when leakage_estimate(t)
  /// exceeds cfg.evol_tol.
  HeatReport heat(double t) const;

  /// Heat at every time; the leakage scan is shared across the series.
  /// With `checked`, throws on the first time whose estimate exceeds evol_tol.
  std::vector<HeatReport> heat_series(std::span<const double> times, bool checked = true) const;

  /// Population in the top kept level of either mode.
  double edge_population(double t) const;

  /// Bound on the truncation error of evolved energies up to time t:
  ///   n_max * w_max * (w_max * t * excess + 2 * tail)
  /// where `excess` is the largest rise of the edge population above its
  /// initial value over [0, t] and `tail` the thermal mass above the cutoff.
  double leakage_estimate(double t) const;

  /// Same bound for every time in a sorted series, from one scan.
  std::vector<double> leakage_series(std::span<const double> sorted_times) const;

  /// Full density matrix at time t.
  DenseOperator state(double t) const;

  /// tr(O rho(t)).
  double expectation(const DenseOperator& op, double t) const;

 private:
  double diagonal_expectation(int which, double t) const;

  OscillatorSystem sys_;
  ThermalPreparation prep_;
  FockConfig cfg_;
  HamiltonianParts ham_;
  SpectralPropagator prop_;
  RealVector pop0_;
  RealVector energy_a_;
  RealVector energy_b_;
  double initial_energy_a_ = 0.0;
  double initial_energy_b_ = 0.0;
  double initial_edge_ = 0.0;
  double tail_ = 0.0;
  // Per block, Hadamard products (V^dag O V)^T .* (V^dag rho0 V) for O in
  // {H_a, H_b, edge projector}; tr(O rho(t)) = Re(c^T M conj(c)), c_j = e^{-iE_j t}.
  // Real-gauged blocks keep M real symmetric.
  struct Weighted {
    std::array<Eigen::MatrixXd, 3> real;
    std::array<DenseOperator, 3> complex;
  };
  std::vector<Weighted> weighted_;
};

/// Heat report of the oracle for one time; builds the oracle internally.
HeatReport heat_changes_numeric(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                const FockConfig& cfg, double t);

/// |<p_a, q_b| U(t) |n_a, m_b>|^2 for every pair of bare states.
class BareBasisAmplitudes {
 public:
  BareBasisAmplitudes(const SpectralPropagator& prop, int n_a, int n_b, double t);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }

  /// Transition probability |U_{pq;nm}|^2 into (p, q) from (n, m).
  double probability(int p, int q, int n, int m) const;

  /// Sum over final states of the probabilities out of (n, m); 1 for a unitary.
  double column_sum(int n, int m) const;

  /// Probability matrix indexed [final composite][initial composite].
  const Eigen::MatrixXd& matrix() const { return prob_; }

 private:
  int n_a_, n_b_;
  Eigen::MatrixXd prob_;
};

/// f(w_a^n, w_b^m, w_a^p, w_b^q): initial energies first, final energies last.
using ClassicalFunction = std::function<double(double, double, double, double)>;

/// E[f]_t = sum_{nmpq} lambda_a^n lambda_b^m |U_{pq;nm}(t)|^2 f(w_a^n, w_b^m, w_a^p, w_b^q).
double classical_average(const ClassicalFunction& f, double t, const FockOracle& oracle);
double classical_average(const ClassicalFunction& f, double t, const OscillatorSystem& sys,
                         const ThermalPreparation& prep, const FockConfig& cfg);

struct JarzynskiCheck {
  /// E[exp(beta_a (w_a - w_a') + beta_b (w_b - w_b'))]_t, equal to 1.
  double value = 0.0;
  /// exp(E[f]_t) for the same exponent f; Jensen: jensen_lhs <= value.
  double jensen_lhs = 0.0;
  /// E[f]_t = -dS0.
  double mean_exponent = 0.0;
};

JarzynskiCheck jarzynski_identity(double t, const FockOracle& oracle);
JarzynskiCheck jarzynski_identity(double t, const OscillatorSystem& sys,
                                  const ThermalPreparation& prep, const FockConfig& cfg);

struct EntropyProduction {
  double ds_a = 0.0;    // S(rho_a(t)) - S(rho_a(0))
  double ds_i_a = 0.0;  // S(rho(t) || rho_a(t) (x) rho_b(0))
  double ds_e_a = 0.0;  // -beta_b dQ_b(t)
};

EntropyProduction entropy_production(double t, const FockOracle& oracle);
EntropyProduction entropy_production(double t, const OscillatorSystem& sys,
                                     const ThermalPreparation& prep, const FockConfig& cfg);

struct TrueHeatTransfer {
  /// dQ_b^true - dQ_a^true with H_a^true = H - H_b, H_b^true = H - H_a.
  double dq_ab_true = 0.0;
  double dq_ab = 0.0;
  /// Fluxes read off the reservoir entropy flow: -(beta_b/beta_a) dQ_b and
  /// -(beta_a/beta_b) dQ_a.
  double dq_a_reversed = 0.0;
  double dq_b_reversed = 0.0;
};

TrueHeatTransfer true_heat_transfer_identity(double t, const FockOracle& oracle);
TrueHeatTransfer true_heat_transfer_identity(double t, const OscillatorSystem& sys,
                                             const ThermalPreparation& prep,
                                             const FockConfig& cfg);

/// {H - H_b, H - H_a}: subsystem energies that absorb the interaction.
std::pair<DenseOperator, DenseOperator> true_energies(const OscillatorSystem& sys,
                                                      const FockConfig& cfg);

/// H_a^eff = tr_b[V (I_a (x) rho_b)] for an arbitrary interaction and mode-b state.
DenseOperator effective_hamiltonian(const DenseOperator& v, const DenseOperator& rho_b, int n_a,
                                    int n_b);

/// H_a^eff(t) with rho_b(t) = tr_a rho(t).
DenseOperator effective_hamiltonian(double t, const FockOracle& oracle);
DenseOperator effective_hamiltonian(double t, const OscillatorSystem& sys,
                                    const ThermalPreparation& prep, const FockConfig& cfg);

struct DiagonalSplit {
  DenseOperator diagonal;      // part diagonal in the number basis, commutes with H_a
  DenseOperator off_diagonal;  // remainder
};

DiagonalSplit diagonal_split(const DenseOperator& h_eff);

struct SpectrumMatch {
  double max_discrepancy = 0.0;
  RealVector lowest_a;  // lowest k eigenvalues of the MinimalA Hamiltonian
  RealVector lowest_b;
  /// Mechanical subsystem energies m(xdot_c^2 + w^2 x_c^2)/2 in each picture:
  /// for MinimalA, H_a^true = H - H_b and H_b^true = H_b; for MinimalB,
  /// H_a^true = H_a and H_b^true = H' - H_a.
  DenseOperator h_a_true_a, h_b_true_a;
  DenseOperator h_a_true_b, h_b_true_b;
};

/// Compares the lowest k eigenvalues of the two minimal-coupling Hamiltonians.
/// Throws DomainError when k exceeds dim/4 (the truncation-contaminated band).
SpectrumMatch spectrum_match(const OscillatorSystem& sys_a, const OscillatorSystem& sys_b,
                             const FockConfig& cfg, int k);

}  // namespace qsub
