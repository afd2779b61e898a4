#include "qsub/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qsub/entropy.hpp"
#include "qsub/errors.hpp"

namespace qsub {
namespace {

enum Observable { kEnergyA = 0, kEnergyB = 1, kEdge = 2 };

}  // namespace

FockOracle::FockOracle(const OscillatorSystem& sys, const ThermalPreparation& prep,
                       const FockConfig& cfg)
    : sys_(sys),
      prep_(prep),
      cfg_(cfg),
      ham_((sys.validate(), prep.validate(), build_hamiltonian(sys, cfg))),
      prop_(ham_.h),
      pop0_(product_thermal_populations(sys, prep, cfg)),
      energy_a_(bare_energy_a(sys, cfg)),
      energy_b_(bare_energy_b(sys, cfg)) {
  RealVector edge = RealVector::Zero(cfg.dim());
  for (int i = 0; i < cfg.n_a; ++i) {
    for (int j = 0; j < cfg.n_b; ++j) {
      if (i == cfg.n_a - 1 || j == cfg.n_b - 1) edge(i * cfg.n_b + j) = 1.0;
    }
  }
  tail_ = std::max(thermal_tail(prep.beta_a, sys.omega_a, cfg.n_a),
                   thermal_tail(prep.beta_b, sys.omega_b, cfg.n_b));

  const RealVector* observables[3] = {&energy_a_, &energy_b_, &edge};
  for (const auto& b : prop_.blocks()) {
    const auto n = static_cast<Eigen::Index>(b.index.size());
    RealVector p(n);
    std::array<RealVector, 3> o;
    for (auto& v : o) v.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      p(i) = pop0_(b.index[i]);
      for (int k = 0; k < 3; ++k) o[k](i) = (*observables[k])(b.index[i]);
    }
    Weighted w;
    if (b.real) {
      const Eigen::MatrixXd& r = b.real_vectors;
      const Eigen::MatrixXd rho = r.transpose() * p.asDiagonal() * r;
      for (int k = 0; k < 3; ++k) {
        const Eigen::MatrixXd ot = r.transpose() * o[k].asDiagonal() * r;
        w.real[k] = ot.cwiseProduct(rho);
      }
    } else {
      const DenseOperator& v = b.vectors;
      const DenseOperator rho = v.adjoint() * p.cast<complex>().asDiagonal() * v;
      for (int k = 0; k < 3; ++k) {
        const DenseOperator ot = v.adjoint() * o[k].cast<complex>().asDiagonal() * v;
        w.complex[k] = ot.transpose().cwiseProduct(rho);
      }
    }
    weighted_.push_back(std::move(w));
  }
  // Reference values go through the same arithmetic as later times, so the
  // heat at t = 0 is exactly zero.
  initial_energy_a_ = diagonal_expectation(kEnergyA, 0.0);
  initial_energy_b_ = diagonal_expectation(kEnergyB, 0.0);
  initial_edge_ = diagonal_expectation(kEdge, 0.0);
}

double FockOracle::diagonal_expectation(int which, double t) const {
  double total = 0.0;
  const auto blocks = prop_.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& e = blocks[k].energies;
    if (blocks[k].real) {
      // c = u - iv: Re(c^T M conj(c)) = u^T M u + v^T M v for real symmetric M.
      const RealVector u = (e * t).array().cos();
      const RealVector v = (e * t).array().sin();
      const auto& m = weighted_[k].real[which];
      total += u.dot(m * u) + v.dot(m * v);
    } else {
      Eigen::VectorXcd c(e.size());
      for (Eigen::Index j = 0; j < e.size(); ++j) c(j) = std::polar(1.0, -e(j) * t);
      total += (c.transpose() * weighted_[k].complex[which] * c.conjugate()).value().real();
    }
  }
  return total;
}

HeatReport FockOracle::heat_unchecked(double t) const {
  const double dq_a = diagonal_expectation(kEnergyA, t) - initial_energy_a_;
  const double dq_b = diagonal_expectation(kEnergyB, t) - initial_energy_b_;
  return make_heat_report(t, dq_a, dq_b, prep_, sys_.energy_scale());
}

namespace {

[[noreturn]] void throw_leakage(double t, double estimate, double tol) {
  std::ostringstream msg;
  msg << "truncation leakage estimate " << estimate << " at t = " << t << " exceeds evol_tol "
      << tol << "; raise the cutoff or shorten the time range";
  throw TruncationError(msg.str());
}

}  // namespace

HeatReport FockOracle::heat(double t) const {
  const double leak = leakage_estimate(t);
  if (leak > cfg_.evol_tol) throw_leakage(t, leak, cfg_.evol_tol);
  return heat_unchecked(t);
}

std::vector<HeatReport> FockOracle::heat_series(std::span<const double> times, bool checked) const {
  std::vector<HeatReport> out(times.size());
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return times[i] < times[j]; });
  std::vector<double> sorted(times.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = times[order[i]];

  std::vector<double> leak;
  if (checked) leak = leakage_series(sorted);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (checked && leak[i] > cfg_.evol_tol) throw_leakage(sorted[i], leak[i], cfg_.evol_tol);
    out[order[i]] = heat_unchecked(sorted[i]);
  }
  return out;
}

double FockOracle::edge_population(double t) const { return diagonal_expectation(kEdge, t); }

double FockOracle::leakage_estimate(double t) const {
  const double times[] = {t};
  return leakage_series(times).front();
}

std::vector<double> FockOracle::leakage_series(std::span<const double> sorted_times) const {
  if (!std::is_sorted(sorted_times.begin(), sorted_times.end())) {
    throw DomainError("leakage_series needs ascending times");
  }
  const double w = sys_.energy_scale();
  const double n_max = std::max(cfg_.n_a, cfg_.n_b);
  // The edge population is scanned on a grid fine enough to follow the
  // exchange between the modes, plus the requested times themselves.
  const double step = 0.25 / w;
  std::vector<double> out;
  out.reserve(sorted_times.size());
  double scanned = 0.0;
  double excess = 0.0;
  for (double t : sorted_times) {
    if (t < 0.0) throw DomainError("leakage_series needs non-negative times");
    while (scanned + step < t) {
      scanned += step;
      excess = std::max(excess, edge_population(scanned) - initial_edge_);
    }
    excess = std::max(excess, edge_population(t) - initial_edge_);
    scanned = std::max(scanned, t);
    out.push_back(n_max * w * (w * t * excess + 2.0 * tail_));
  }
  return out;
}

DenseOperator FockOracle::state(double t) const { return prop_.evolve_diagonal(pop0_, t); }

double FockOracle::expectation(const DenseOperator& op, double t) const {
  const DenseOperator rho = state(t);
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw DomainError("observable dimension mismatch");
  }
  return op.cwiseProduct(rho.transpose()).sum().real();
}

HeatReport heat_changes_numeric(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                const FockConfig& cfg, double t) {
  return FockOracle(sys, prep, cfg).heat(t);
}

BareBasisAmplitudes::BareBasisAmplitudes(const SpectralPropagator& prop, int n_a, int n_b, double t)
    : n_a_(n_a), n_b_(n_b) {
  if (prop.dim() != Eigen::Index{n_a} * n_b) throw DomainError("amplitude dimensions mismatch");
  prob_ = prop.unitary(t).cwiseAbs2();
}

double BareBasisAmplitudes::probability(int p, int q, int n, int m) const {
  return prob_(p * n_b_ + q, n * n_b_ + m);
}

double BareBasisAmplitudes::column_sum(int n, int m) const {
  return prob_.col(n * n_b_ + m).sum();
}

double classical_average(const ClassicalFunction& f, double t, const FockOracle& oracle) {
  const auto& cfg = oracle.config();
  const auto& sys = oracle.system();
  const BareBasisAmplitudes amps(oracle.propagator(), cfg.n_a, cfg.n_b, t);
  const auto& lambda = oracle.initial_populations();
  const auto& prob = amps.matrix();
  double total = 0.0;
  for (int n = 0; n < cfg.n_a; ++n) {
    for (int m = 0; m < cfg.n_b; ++m) {
      const int k = n * cfg.n_b + m;
      double column = 0.0;
      for (int p = 0; p < cfg.n_a; ++p) {
        for (int q = 0; q < cfg.n_b; ++q) {
          const double w = prob(p * cfg.n_b + q, k);
          if (w == 0.0) continue;
          column += w * f(sys.omega_a * n, sys.omega_b * m, sys.omega_a * p, sys.omega_b * q);
        }
      }
      total += lambda(k) * column;
    }
  }
  return total;
}

double classical_average(const ClassicalFunction& f, double t, const OscillatorSystem& sys,
                         const ThermalPreparation& prep, const FockConfig& cfg) {
  return classical_average(f, t, FockOracle(sys, prep, cfg));
}

JarzynskiCheck jarzynski_identity(double t, const FockOracle& oracle) {
  const double ba = oracle.preparation().beta_a;
  const double bb = oracle.preparation().beta_b;
  const auto exponent = [=](double ea, double eb, double ea_t, double eb_t) {
    return ba * (ea - ea_t) + bb * (eb - eb_t);
  };
  JarzynskiCheck out;
  out.value = classical_average(
      [&](double ea, double eb, double ea_t, double eb_t) {
        return std::exp(exponent(ea, eb, ea_t, eb_t));
      },
      t, oracle);
  out.mean_exponent = classical_average(exponent, t, oracle);
  out.jensen_lhs = std::exp(out.mean_exponent);
  return out;
}

JarzynskiCheck jarzynski_identity(double t, const OscillatorSystem& sys,
                                  const ThermalPreparation& prep, const FockConfig& cfg) {
  return jarzynski_identity(t, FockOracle(sys, prep, cfg));
}

EntropyProduction entropy_production(double t, const FockOracle& oracle) {
  const auto& cfg = oracle.config();
  const auto& sys = oracle.system();
  const auto& prep = oracle.preparation();
  const DenseOperator rho = oracle.state(t);
  const DenseOperator rho_a = partial_trace_b(rho, cfg.n_a, cfg.n_b);
  const DenseOperator rho_a0 = thermal_state(prep.beta_a, sys.omega_a, cfg.n_a, cfg.tail_tol);
  const DenseOperator rho_b0 = thermal_state(prep.beta_b, sys.omega_b, cfg.n_b, cfg.tail_tol);

  EntropyProduction out;
  out.ds_a = von_neumann_entropy(rho_a) - von_neumann_entropy(rho_a0);
  out.ds_i_a = relative_entropy_to_product(rho, rho_a, rho_b0, cfg.n_a, cfg.n_b);
  out.ds_e_a = -prep.beta_b * oracle.heat_unchecked(t).dq_b;
  return out;
}

EntropyProduction entropy_production(double t, const OscillatorSystem& sys,
                                     const ThermalPreparation& prep, const FockConfig& cfg) {
  return entropy_production(t, FockOracle(sys, prep, cfg));
}

std::pair<DenseOperator, DenseOperator> true_energies(const OscillatorSystem& sys,
                                                      const FockConfig& cfg) {
  const auto parts = build_hamiltonian(sys, cfg);
  const DenseOperator h_a = bare_energy_a(sys, cfg).cast<complex>().asDiagonal();
  const DenseOperator h_b = bare_energy_b(sys, cfg).cast<complex>().asDiagonal();
  return {parts.h - h_b, parts.h - h_a};
}

TrueHeatTransfer true_heat_transfer_identity(double t, const FockOracle& oracle) {
  const auto [h_a_true, h_b_true] = true_energies(oracle.system(), oracle.config());
  const DenseOperator rho = oracle.state(t);
  const DenseOperator rho0 = oracle.initial_populations().cast<complex>().asDiagonal();
  const auto mean = [](const DenseOperator& op, const DenseOperator& r) {
    return op.cwiseProduct(r.transpose()).sum().real();
  };
  const double dq_a_true = mean(h_a_true, rho) - mean(h_a_true, rho0);
  const double dq_b_true = mean(h_b_true, rho) - mean(h_b_true, rho0);
  const auto report = oracle.heat_unchecked(t);
  const auto& prep = oracle.preparation();

  TrueHeatTransfer out;
  out.dq_ab_true = dq_b_true - dq_a_true;
  out.dq_ab = report.dq_ab;
  out.dq_a_reversed = -(prep.beta_b / prep.beta_a) * report.dq_b;
  out.dq_b_reversed = -(prep.beta_a / prep.beta_b) * report.dq_a;
  return out;
}

TrueHeatTransfer true_heat_transfer_identity(double t, const OscillatorSystem& sys,
                                             const ThermalPreparation& prep,
                                             const FockConfig& cfg) {
  return true_heat_transfer_identity(t, FockOracle(sys, prep, cfg));
}

DenseOperator effective_hamiltonian(const DenseOperator& v, const DenseOperator& rho_b, int n_a,
                                    int n_b) {
  if (v.rows() != Eigen::Index{n_a} * n_b || v.cols() != v.rows()) {
    throw DomainError("interaction does not match n_a * n_b");
  }
  if (rho_b.rows() != n_b || rho_b.cols() != n_b) throw DomainError("rho_b must be n_b x n_b");
  // (H_eff)_{ii'} = sum_{jj'} V_{(ij),(i'j')} rho_b{j'j} = tr(V_block(i,i') rho_b).
  DenseOperator out(n_a, n_a);
  for (int i = 0; i < n_a; ++i) {
    for (int k = 0; k < n_a; ++k) {
      out(i, k) = v.block(i * n_b, k * n_b, n_b, n_b).cwiseProduct(rho_b.transpose()).sum();
    }
  }
  return out;
}

DenseOperator effective_hamiltonian(double t, const FockOracle& oracle) {
  const auto& cfg = oracle.config();
  const DenseOperator rho_b = partial_trace_a(oracle.state(t), cfg.n_a, cfg.n_b);
  return effective_hamiltonian(oracle.hamiltonian().v, rho_b, cfg.n_a, cfg.n_b);
}

DenseOperator effective_hamiltonian(double t, const OscillatorSystem& sys,
                                    const ThermalPreparation& prep, const FockConfig& cfg) {
  return effective_hamiltonian(t, FockOracle(sys, prep, cfg));
}

DiagonalSplit diagonal_split(const DenseOperator& h_eff) {
  if (h_eff.rows() != h_eff.cols()) throw DomainError("effective Hamiltonian must be square");
  DiagonalSplit out;
  out.diagonal = h_eff.diagonal().asDiagonal();
  out.off_diagonal = h_eff - out.diagonal;
  return out;
}

SpectrumMatch spectrum_match(const OscillatorSystem& sys_a, const OscillatorSystem& sys_b,
                             const FockConfig& cfg, int k) {
  if (sys_a.kind != InteractionKind::MinimalA || sys_b.kind != InteractionKind::MinimalB) {
    throw DomainError("spectrum_match compares a MinimalA system with a MinimalB system");
  }
  sys_a.validate();
  sys_b.validate();
  cfg.validate();
  if (sys_a.omega_a != sys_b.omega_a || sys_a.omega_b != sys_b.omega_b ||
      sys_a.mass != sys_b.mass || sys_a.charge != sys_b.charge) {
    throw DomainError("spectrum_match needs the same frequencies, mass and charge");
  }
  if (k < 1 || k > cfg.dim() / 4) {
    throw DomainError("k must lie in [1, dim/4]; higher levels are truncation-contaminated");
  }
  const auto ha = build_hamiltonian(sys_a, cfg);
  const auto hb = build_hamiltonian(sys_b, cfg);
  const RealVector ea = hermitian_eigenvalues(ha.h);
  const RealVector eb = hermitian_eigenvalues(hb.h);

  SpectrumMatch out;
  out.lowest_a = ea.head(k);
  out.lowest_b = eb.head(k);
  out.max_discrepancy = (out.lowest_a - out.lowest_b).cwiseAbs().maxCoeff();

  const DenseOperator bare_a = bare_energy_a(sys_a, cfg).cast<complex>().asDiagonal();
  const DenseOperator bare_b = bare_energy_b(sys_a, cfg).cast<complex>().asDiagonal();
  out.h_a_true_a = ha.h - bare_b;
  out.h_b_true_a = bare_b;
  out.h_a_true_b = bare_a;
  out.h_b_true_b = hb.h - bare_a;
  return out;
}

}  // namespace qsub
