#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>

#include "qsub/errors.hpp"
#include "qsub/fock.hpp"

namespace qsub {

namespace {

// Levels needed for e^{-x n} < tail_tol.
int levels_for(double beta_omega, double tail_tol) {
  const double exact = -std::log(tail_tol) / beta_omega;
  int n = std::max(2, static_cast<int>(std::ceil(exact)));
  while (std::exp(-beta_omega * n) >= tail_tol) ++n;
  return n;
}

DenseOperator identity(int n) { return DenseOperator::Identity(n, n); }

Eigen::SparseMatrix<complex> sparse(const DenseOperator& m) {
  Eigen::SparseMatrix<complex> s = m.sparseView();
  s.makeCompressed();
  return s;
}

}  // namespace

FockConfig FockConfig::automatic(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                 double tail_tol, int max_levels) {
  sys.validate();
  prep.validate();
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("tail_tol must lie in (0, 1)");
  const double x_a = prep.beta_a * sys.omega_a;
  const double x_b = prep.beta_b * sys.omega_b;
  const double min_x = -std::log(tail_tol) / max_levels;
  if (std::min(x_a, x_b) * max_levels <= -std::log(tail_tol)) {
    throw TruncationError("thermal tail above " + std::to_string(max_levels) +
                              " levels exceeds tail_tol; beta*omega must exceed " +
                              std::to_string(min_x),
                          min_x);
  }
  FockConfig cfg;
  cfg.tail_tol = tail_tol;
  cfg.n_a = levels_for(x_a, tail_tol);
  cfg.n_b = levels_for(x_b, tail_tol);
  if (std::max(cfg.n_a, cfg.n_b) > max_levels) {
    throw TruncationError("thermal state needs more than " + std::to_string(max_levels) + " levels",
                          min_x);
  }
  return cfg;
}

void FockConfig::validate() const {
  if (n_a < 2 || n_b < 2) throw DomainError("each mode needs at least 2 levels");
  if (n_a > kMaxLevels || n_b > kMaxLevels) {
    throw DomainError("at most " + std::to_string(kMaxLevels) + " levels per mode");
  }
  if (!(tail_tol > 0.0) || !(evol_tol > 0.0)) throw DomainError("tolerances must be positive");
}

DenseOperator annihilation(int n) {
  if (n < 1) throw DomainError("annihilation operator needs n >= 1");
  DenseOperator a = DenseOperator::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

struct SingleMode {
  DenseOperator c, c_dag, x, p;
};

SingleMode single_mode(int n, double omega, double mass) {
  SingleMode m;
  m.c = annihilation(n);
  m.c_dag = m.c.adjoint();
  m.x = std::sqrt(1.0 / (2.0 * mass * omega)) * (m.c_dag + m.c);
  m.p = complex(0.0, std::sqrt(mass * omega / 2.0)) * (m.c_dag - m.c);
  return m;
}

}  // namespace

ModeOperators build_operators(const FockConfig& cfg, double omega_a, double omega_b, double mass) {
  cfg.validate();
  if (!(omega_a > 0.0) || !(omega_b > 0.0) || !(mass > 0.0)) {
    throw DomainError("frequencies and mass must be positive");
  }
  const auto ma = single_mode(cfg.n_a, omega_a, mass);
  const auto mb = single_mode(cfg.n_b, omega_b, mass);
  const auto ia = identity(cfg.n_a);
  const auto ib = identity(cfg.n_b);
  return {kron(ma.c, ib), kron(ma.c_dag, ib), kron(ia, mb.c), kron(ia, mb.c_dag),
          kron(ma.x, ib), kron(ma.p, ib),     kron(ia, mb.x), kron(ia, mb.p)};
}

RealVector bare_energy_a(const OscillatorSystem& sys, const FockConfig& cfg) {
  RealVector e(cfg.dim());
  for (int i = 0; i < cfg.n_a; ++i) e.segment(i * cfg.n_b, cfg.n_b).setConstant(sys.omega_a * i);
  return e;
}

RealVector bare_energy_b(const OscillatorSystem& sys, const FockConfig& cfg) {
  RealVector e(cfg.dim());
  for (int i = 0; i < cfg.n_a; ++i) {
    for (int j = 0; j < cfg.n_b; ++j) e(i * cfg.n_b + j) = sys.omega_b * j;
  }
  return e;
}

HamiltonianParts build_hamiltonian(const OscillatorSystem& sys, const FockConfig& cfg) {
  sys.validate();
  cfg.validate();
  const double m = sys.mass;
  const auto ma = single_mode(cfg.n_a, sys.omega_a, m);
  const auto mb = single_mode(cfg.n_b, sys.omega_b, m);
  const auto ia = identity(cfg.n_a);
  const auto ib = identity(cfg.n_b);
  const complex ig(0.0, sys.g);
  const double q = sys.charge;

  HamiltonianParts parts;
  parts.h0 = (bare_energy_a(sys, cfg) + bare_energy_b(sys, cfg)).cast<complex>().asDiagonal();
  switch (sys.kind) {
    case InteractionKind::None:
      parts.v = DenseOperator::Zero(cfg.dim(), cfg.dim());
      break;
    case InteractionKind::Rwa:
      parts.v = ig * (kron(ma.c, mb.c_dag) - kron(ma.c_dag, mb.c));
      break;
    case InteractionKind::Linear:
      parts.v = ig * kron(ma.c_dag + ma.c, mb.c_dag - mb.c);
      break;
    case InteractionKind::MinimalA:
      parts.v = -(q / m) * kron(ma.p, mb.x) + (q * q / (2.0 * m)) * kron(ia, mb.x * mb.x);
      break;
    case InteractionKind::MinimalB:
      parts.v = (q / m) * kron(ma.x, mb.p) + (q * q / (2.0 * m)) * kron(ma.x * ma.x, ib);
      break;
    default:
      throw DomainError("unknown interaction kind");
  }
  parts.h = parts.h0 + parts.v;
  return parts;
}

double thermal_tail(double beta, double omega, int n) { return std::exp(-beta * omega * n); }

RealVector thermal_populations(double beta, double omega, int n, double tail_tol) {
  if (!(beta > 0.0) || !(omega > 0.0)) throw DomainError("thermal state needs beta, omega > 0");
  if (n < 1) throw DomainError("thermal state needs at least one level");
  const double tail = thermal_tail(beta, omega, n);
  if (tail > tail_tol) {
    throw TruncationError("thermal population above level " + std::to_string(n) + " is " +
                              std::to_string(tail) + " > tail_tol",
                          -std::log(tail_tol) / n);
  }
  RealVector p(n);
  for (int k = 0; k < n; ++k) p(k) = std::exp(-beta * omega * k);
  return p / p.sum();
}

DenseOperator thermal_state(double beta, double omega, int n, double tail_tol) {
  return thermal_populations(beta, omega, n, tail_tol).cast<complex>().asDiagonal();
}

RealVector product_thermal_populations(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                       const FockConfig& cfg) {
  const RealVector pa = thermal_populations(prep.beta_a, sys.omega_a, cfg.n_a, cfg.tail_tol);
  const RealVector pb = thermal_populations(prep.beta_b, sys.omega_b, cfg.n_b, cfg.tail_tol);
  RealVector p(cfg.dim());
  for (int i = 0; i < cfg.n_a; ++i) p.segment(i * cfg.n_b, cfg.n_b) = pa(i) * pb;
  return p;
}

double commutator_norm(const DenseOperator& a, const DenseOperator& b) {
  // The oscillator operators are sparse; a sparse product keeps the audit
  // cheap at full cutoff.
  const auto sa = sparse(a);
  const auto sb = sparse(b);
  const Eigen::SparseMatrix<complex> c = sa * sb - sb * sa;
  return c.norm();
}

double hermiticity_defect(const DenseOperator& a) {
  if (a.rows() != a.cols()) throw DomainError("operator is not square");
  if (a.size() == 0) return 0.0;
  // Squared moduli stay inline; complex abs goes through libm hypot.
  return std::sqrt((a - a.adjoint()).cwiseAbs2().maxCoeff());
}

DenseOperator partial_trace_b(const DenseOperator& op, int n_a, int n_b) {
  if (op.rows() != Eigen::Index{n_a} * n_b || op.cols() != op.rows()) {
    throw DomainError("partial trace: operator does not match n_a * n_b");
  }
  DenseOperator out = DenseOperator::Zero(n_a, n_a);
  for (int i = 0; i < n_a; ++i) {
    for (int k = 0; k < n_a; ++k) out(i, k) = op.block(i * n_b, k * n_b, n_b, n_b).trace();
  }
  return out;
}

DenseOperator partial_trace_a(const DenseOperator& op, int n_a, int n_b) {
  if (op.rows() != Eigen::Index{n_a} * n_b || op.cols() != op.rows()) {
    throw DomainError("partial trace: operator does not match n_a * n_b");
  }
  DenseOperator out = DenseOperator::Zero(n_b, n_b);
  for (int i = 0; i < n_a; ++i) out += op.block(i * n_b, i * n_b, n_b, n_b);
  return out;
}

}  // namespace qsub
