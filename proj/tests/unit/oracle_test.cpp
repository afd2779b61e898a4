#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsub/analytic.hpp"
#include "qsub/errors.hpp"
#include "qsub/oracle.hpp"

namespace qsub {
namespace {

const ThermalPreparation kWarm{.beta_a = 0.5, .beta_b = 1.0};
const ThermalPreparation kCool{.beta_a = 1.0, .beta_b = 2.0};

FockConfig cutoff(int n, double tail_tol = 1e-8) {
  FockConfig cfg;
  cfg.n_a = cfg.n_b = n;
  cfg.tail_tol = tail_tol;
  return cfg;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(FockOracle, NoHeatAtZeroTime) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(24));
  const auto r = o.heat(0.0);
  EXPECT_EQ(r.dq_a, 0.0);
  EXPECT_EQ(r.dq_b, 0.0);
  EXPECT_EQ(r.ds0, 0.0);
}

TEST(FockOracle, RwaMatchesSineSquaredLaw) {
  const FockOracle o(OscillatorSystem::rwa(1.0, 0.1), kWarm, cutoff(40));
  const double dx = thermal_occupation(0.5, 1.0) - thermal_occupation(1.0, 1.0);
  for (double t : {0.5, 3.0, 10.0, 25.0}) {
    const double s = std::sin(0.1 * t);
    EXPECT_LT(rel(o.heat(t).dq_ab, 2.0 * dx * s * s), 1e-6) << t;
  }
}

// Closed forms against the oracle wherever the truncation-leakage estimate
// vouches for the oracle. Strong coupling near g = w/2 pumps population into
// the top levels quickly, so the estimate rejects g = 0.49 beyond t ~ 1.
TEST(FockOracle, AgreesWithClosedFormsWhereLeakageAllows) {
  const std::vector<double> times = {0.5, 1.0, 2.0, 5.0, 10.0};
  int accepted = 0;
  for (auto kind : {InteractionKind::Rwa, InteractionKind::Linear}) {
    for (double g : {0.05, 0.1, 0.3, 0.49}) {
      OscillatorSystem sys = kind == InteractionKind::Rwa ? OscillatorSystem::rwa(1.0, g)
                                                          : OscillatorSystem::linear(1.0, g);
      const FockOracle o(sys, kWarm, cutoff(40));
      const auto leak = o.leakage_series(times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        if (leak[i] > o.config().evol_tol) {
          EXPECT_THROW(o.heat(times[i]), TruncationError);
          continue;
        }
        ++accepted;
        const auto num = o.heat(times[i]);
        const auto ana = heat_at(sys, kWarm, times[i]);
        SCOPED_TRACE(::testing::Message() << to_string(kind) << " g=" << g << " t=" << times[i]);
        EXPECT_LT(rel(num.dq_a, ana.dq_a), 1e-6);
        EXPECT_LT(rel(num.dq_b, ana.dq_b), 1e-6);
      }
    }
  }
  EXPECT_GE(accepted, 30);
}

TEST(FockOracle, LinearRegimeBreaksMirrorAndHeatsA) {
  // Counter-rotating terms create excitations: oscillator a absorbs energy
  // for either temperature ordering.
  const auto sys = OscillatorSystem::linear(1.0, 0.1);
  for (const auto& prep : {kWarm, ThermalPreparation{.beta_a = 1.0, .beta_b = 0.5}}) {
    const FockOracle o(sys, prep, cutoff(40));
    bool absorbs = false;
    double asym = 0.0;
    for (double t = 0.25; t <= 10.0; t += 0.25) {
      const auto r = o.heat(t);
      absorbs = absorbs || r.dq_a > 1e-6;
      asym = std::max(asym, std::abs(r.dq_a + r.dq_b));
    }
    EXPECT_TRUE(absorbs);
    EXPECT_GT(asym, 1e-3);
  }
}

TEST(FockOracle, SeriesMatchesPointQueriesInAnyOrder) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.2), kCool, cutoff(24));
  const std::vector<double> times = {4.0, 0.0, 1.5, 4.0, 0.7};
  const auto series = o.heat_series(times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_EQ(series[i].dq_a, o.heat_unchecked(times[i]).dq_a);
    EXPECT_EQ(series[i].t, times[i]);
  }
}

TEST(FockOracle, LeakageEstimateGrowsAndRejects) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.49), kWarm, cutoff(40));
  const std::vector<double> times = {0.0, 1.0, 2.0, 5.0};
  const auto leak = o.leakage_series(times);
  EXPECT_TRUE(std::is_sorted(leak.begin(), leak.end()));
  EXPECT_THROW(o.heat(5.0), TruncationError);
  EXPECT_THROW(o.heat_series(times), TruncationError);
  EXPECT_NO_THROW(o.heat_series(times, false));
  const std::vector<double> unsorted = {2.0, 1.0};
  EXPECT_THROW(o.leakage_series(unsorted), DomainError);
}

TEST(FockOracle, StateStaysNormalisedAndPure) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(20, 1e-6));
  const DenseOperator rho0 = o.state(0.0);
  const double purity0 = (rho0 * rho0).trace().real();
  for (double t : {0.5, 2.0, 7.0}) {
    const DenseOperator rho = o.state(t);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR((rho * rho).trace().real(), purity0, 1e-12);
  }
}

TEST(FockOracle, ExpectationMatchesDiagonalPath) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(20, 1e-6));
  const DenseOperator ha = bare_energy_a(o.system(), o.config()).cast<complex>().asDiagonal();
  const double e0 = o.expectation(ha, 0.0);
  EXPECT_NEAR(o.expectation(ha, 2.5) - e0, o.heat_unchecked(2.5).dq_a, 1e-12);
}

TEST(BareBasisAmplitudes, ColumnsSumToOne) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(16, 1e-6));
  const BareBasisAmplitudes amps(o.propagator(), 16, 16, 1.3);
  for (int n = 0; n < 16; n += 5) {
    for (int m = 0; m < 16; m += 5) EXPECT_NEAR(amps.column_sum(n, m), 1.0, 1e-12);
  }
  EXPECT_NEAR(amps.probability(0, 0, 0, 0), amps.matrix()(0, 0), 0.0);
}

TEST(ClassicalAverage, MarginalsGiveEnergies) {
  const auto sys = OscillatorSystem::linear(1.0, 0.2);
  const FockOracle o(sys, kCool, cutoff(30));
  const double t = 3.0;
  const double one = classical_average([](double, double, double, double) { return 1.0; }, t, o);
  EXPECT_NEAR(one, 1.0, 1e-12);
  const double ea0 = classical_average([](double ea, double, double, double) { return ea; }, t, o);
  const double eat = classical_average([](double, double, double ea_t, double) { return ea_t; }, t, o);
  const DenseOperator ha = bare_energy_a(sys, o.config()).cast<complex>().asDiagonal();
  EXPECT_NEAR(ea0, o.expectation(ha, 0.0), 1e-12);
  EXPECT_NEAR(eat, o.expectation(ha, t), 1e-12);
}

TEST(Jarzynski, ExactAtZeroTime) {
  const auto j = jarzynski_identity(0.0, OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(20, 1e-6));
  EXPECT_NEAR(j.value, 1.0, 1e-12);
  EXPECT_NEAR(j.mean_exponent, 0.0, 1e-12);
}

TEST(Jarzynski, RwaAndJensen) {
  const FockOracle o(OscillatorSystem::rwa(1.0, 0.3), kWarm, cutoff(40));
  for (double t : {1.0, 5.0}) {
    const auto j = jarzynski_identity(t, o);
    EXPECT_NEAR(j.value, 1.0, 1e-6);
    EXPECT_LE(j.jensen_lhs, j.value);
    EXPECT_NEAR(j.mean_exponent, -o.heat(t).ds0, 1e-9);
  }
}

TEST(EntropyProduction, ZeroAtStart) {
  const auto e = entropy_production(0.0, OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(20, 1e-6));
  EXPECT_NEAR(e.ds_a, 0.0, 1e-12);
  EXPECT_NEAR(e.ds_i_a, 0.0, 1e-12);
  EXPECT_NEAR(e.ds_e_a, 0.0, 1e-12);
}

TEST(EntropyProduction, SplitIdentity) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kWarm, cutoff(40));
  const auto e = entropy_production(3.0, o);
  EXPECT_NEAR(e.ds_a, e.ds_i_a + e.ds_e_a, 1e-8);
  EXPECT_GE(e.ds_i_a, -1e-10);
}

TEST(TrueHeat, NoInteractionNoTransfer) {
  const auto r = true_heat_transfer_identity(2.0, OscillatorSystem::none(1.0, 1.0), kCool, cutoff(20, 1e-6));
  EXPECT_EQ(r.dq_ab, 0.0);
  EXPECT_NEAR(r.dq_ab_true, 0.0, 1e-14);
}

TEST(TrueHeat, InteractionCancels) {
  const FockOracle o(OscillatorSystem::linear(1.0, 0.3), kCool, cutoff(24));
  const auto r = true_heat_transfer_identity(2.0, o);
  EXPECT_NEAR(r.dq_ab_true, r.dq_ab, 1e-10);
  const auto h = o.heat_unchecked(2.0);
  EXPECT_DOUBLE_EQ(r.dq_a_reversed, -(kCool.beta_b / kCool.beta_a) * h.dq_b);
  EXPECT_DOUBLE_EQ(r.dq_b_reversed, -(kCool.beta_a / kCool.beta_b) * h.dq_a);
}

TEST(TrueHeat, EnergiesSumToHPlusV) {
  const auto sys = OscillatorSystem::minimal_a(1.0, 0.2);
  const auto cfg = cutoff(10, 0.5);
  const auto [ha, hb] = true_energies(sys, cfg);
  const auto parts = build_hamiltonian(sys, cfg);
  EXPECT_LT((ha + hb - parts.h - parts.v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EffectiveHamiltonian, VanishesForThermalLinearAndRwa) {
  for (const auto& sys : {OscillatorSystem::linear(1.0, 0.3), OscillatorSystem::rwa(1.0, 0.3)}) {
    const FockOracle o(sys, kCool, cutoff(24));
    for (double t : {0.0, 1.0, 5.0}) EXPECT_LT(effective_hamiltonian(t, o).norm(), 1e-8);
  }
}

TEST(EffectiveHamiltonian, ZeroInteraction) {
  EXPECT_EQ(effective_hamiltonian(1.0, OscillatorSystem::none(1.0, 1.0), kCool, cutoff(12, 1e-4)).norm(), 0.0);
}

TEST(EffectiveHamiltonian, DiagonalInteractionCounterexample) {
  const int n = 30;
  const double kappa = 0.2;
  const double beta_b = 1.2;
  const DenseOperator num = (annihilation(n).adjoint() * annihilation(n)).eval();
  const DenseOperator v = kappa * kron(num, num);
  const DenseOperator rho_b = thermal_state(beta_b, 1.0, n);
  const auto h = effective_hamiltonian(v, rho_b, n, n);
  const DenseOperator want = kappa * thermal_occupation(beta_b, 1.0) * num;
  EXPECT_LT((h - want).cwiseAbs().maxCoeff(), 1e-8);
  const auto split = diagonal_split(h);
  EXPECT_EQ(split.off_diagonal.norm(), 0.0);
  EXPECT_EQ(split.diagonal + split.off_diagonal, h);
}

TEST(EffectiveHamiltonian, ShapeErrors) {
  EXPECT_THROW(effective_hamiltonian(DenseOperator::Zero(6, 6), DenseOperator::Zero(2, 2), 2, 2),
               DomainError);
  EXPECT_THROW(effective_hamiltonian(DenseOperator::Zero(6, 6), DenseOperator::Zero(2, 2), 2, 3),
               DomainError);
}

TEST(SpectrumMatch, ZeroChargeIsBare) {
  const auto m = spectrum_match(OscillatorSystem::minimal_a(1.0, 0.0),
                                OscillatorSystem::minimal_b(1.0, 0.0), cutoff(10, 0.5), 10);
  EXPECT_EQ(m.max_discrepancy, 0.0);
}

TEST(SpectrumMatch, Errors) {
  const auto a = OscillatorSystem::minimal_a(1.0, 0.2);
  const auto b = OscillatorSystem::minimal_b(1.0, 0.2);
  EXPECT_THROW(spectrum_match(a, b, cutoff(8, 0.5), 17), DomainError);
  EXPECT_THROW(spectrum_match(b, a, cutoff(8, 0.5), 4), DomainError);
  EXPECT_THROW(spectrum_match(a, OscillatorSystem::minimal_b(1.0, 0.3), cutoff(8, 0.5), 4), DomainError);
}

}  // namespace
}  // namespace qsub
