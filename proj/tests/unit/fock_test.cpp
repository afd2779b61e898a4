#include <gtest/gtest.h>

#include <cmath>

#include "qsub/analytic.hpp"
#include "qsub/errors.hpp"
#include "qsub/fock.hpp"

namespace qsub {
namespace {

FockConfig small(int n) {
  FockConfig cfg;
  cfg.n_a = cfg.n_b = n;
  cfg.tail_tol = 0.5;
  return cfg;
}

TEST(Operators, TwoLevelAnnihilation) {
  DenseOperator expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(annihilation(2), expected);
}

TEST(Operators, CanonicalCommutatorExceptCorner) {
  const int n = 7;
  const auto a = annihilation(n);
  const DenseOperator c = a * a.adjoint() - a.adjoint() * a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double want = i != j ? 0.0 : (i == n - 1 ? -(n - 1.0) : 1.0);
      EXPECT_NEAR(std::abs(c(i, j) - want), 0.0, 1e-14) << i << "," << j;
    }
  }
}

TEST(Operators, DifferentModesCommute) {
  FockConfig cfg;
  cfg.n_a = 4;
  cfg.n_b = 5;
  const auto ops = build_operators(cfg);
  EXPECT_EQ(commutator_norm(ops.a, ops.b), 0.0);
  EXPECT_EQ(commutator_norm(ops.a, ops.b_dag), 0.0);
  EXPECT_EQ(commutator_norm(ops.x_a, ops.p_b), 0.0);
}

TEST(Operators, CompositeIndexIsModeAMajor) {
  FockConfig cfg;
  cfg.n_a = 3;
  cfg.n_b = 4;
  const auto ops = build_operators(cfg);
  // a^dag |0_a, 2_b> = |1_a, 2_b>: index 0*4+2 -> 1*4+2.
  EXPECT_EQ(ops.a_dag(6, 2), complex(1.0));
  EXPECT_EQ(ops.b_dag(3, 2), complex(std::sqrt(3.0)));
}

TEST(Operators, PositionMomentumScaling) {
  FockConfig cfg = small(3);
  const auto ops = build_operators(cfg, 1.0, 3.0, 0.5);
  // m w_a = 1/2: x_a = a^dag + a and p_a = (i/2)(a^dag - a).
  EXPECT_NEAR(std::abs(ops.x_a(0, cfg.n_b) - complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ops.p_a(cfg.n_b, 0) - complex(0.0, 0.5)), 0.0, 1e-15);
}

TEST(Hamiltonian, NoneIsBare) {
  const auto h = build_hamiltonian(OscillatorSystem::none(1.0, 1.5), small(5));
  EXPECT_EQ(h.v.norm(), 0.0);
  EXPECT_EQ(h.h, h.h0);
  EXPECT_EQ(h.h0(7, 7), complex(1.0 * 1 + 1.5 * 2));
}

TEST(Hamiltonian, AllKindsHermitian) {
  for (const auto& sys : {OscillatorSystem::rwa(1.0, 0.3), OscillatorSystem::linear(1.0, 0.3),
                          OscillatorSystem::minimal_a(1.0, 0.2), OscillatorSystem::minimal_b(1.0, 0.2, 2.0)}) {
    const auto h = build_hamiltonian(sys, small(10));
    EXPECT_LT(hermiticity_defect(h.h), 1e-12);
    EXPECT_LT(hermiticity_defect(h.v), 1e-12);
  }
}

TEST(Hamiltonian, RwaCommutesWithBareLinearDoesNot) {
  const auto rwa = build_hamiltonian(OscillatorSystem::rwa(1.0, 0.3), small(12));
  EXPECT_LT(commutator_norm(rwa.h0, rwa.v), 1e-12);
  const auto lin = build_hamiltonian(OscillatorSystem::linear(1.0, 0.3), small(12));
  EXPECT_GT(commutator_norm(lin.h0, lin.v), 0.1);
}

TEST(Hamiltonian, MinimalAMatchesSquaredForm) {
  // (p_a - q x_b)^2 / 2m + m w^2 x_a^2/2 + p_b^2/2m + m w^2 x_b^2/2 - (w_a + w_b)/2,
  // on the levels the truncated x^2, p^2 represent faithfully.
  const double q = 0.3;
  const double m = 1.5;
  const double w = 1.2;
  const auto cfg = small(8);
  const auto ops = build_operators(cfg, w, w, m);
  const DenseOperator k = ops.p_a - q * ops.x_b;
  const DenseOperator full = k * k / (2 * m) + 0.5 * m * w * w * ops.x_a * ops.x_a +
                             ops.p_b * ops.p_b / (2 * m) + 0.5 * m * w * w * ops.x_b * ops.x_b -
                             w * DenseOperator::Identity(cfg.dim(), cfg.dim());
  const auto h = build_hamiltonian(OscillatorSystem::minimal_a(w, q, m), cfg);
  // x^2 and p^2 differ from their exact forms only in the top level of each mode.
  for (int i = 0; i < cfg.n_a - 1; ++i) {
    for (int j = 0; j < cfg.n_b - 1; ++j) {
      const int r = i * cfg.n_b + j;
      for (int c = 0; c < cfg.dim(); ++c) {
        if (c / cfg.n_b == cfg.n_a - 1 || c % cfg.n_b == cfg.n_b - 1) continue;
        EXPECT_NEAR(std::abs(h.h(r, c) - full(r, c)), 0.0, 1e-12);
      }
    }
  }
}

TEST(ThermalState, GroundStateLimit) {
  const auto rho = thermal_state(50.0, 1.0, 4);
  EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-20);
  EXPECT_LT(rho(1, 1).real(), 1e-20);
}

TEST(ThermalState, LogTwoGeometricWeights) {
  const auto rho = thermal_state(std::log(2.0), 1.0, 3, 0.2);
  EXPECT_NEAR(rho(0, 0).real(), 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(rho(1, 1).real(), 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(rho(2, 2).real(), 1.0 / 7.0, 1e-15);
  EXPECT_EQ(rho.trace(), complex(1.0));
}

TEST(ThermalState, OccupationMatchesBose) {
  const double beta = 0.8;
  const int n = 40;
  const double tail_tol = 1e-12;
  const auto rho = thermal_state(beta, 1.0, n, tail_tol);
  const auto a = annihilation(n);
  const double occ = (a.adjoint() * a * rho).trace().real();
  EXPECT_NEAR(occ, thermal_occupation(beta, 1.0), tail_tol * n);
}

TEST(ThermalState, TailBeyondToleranceIsRejected) {
  EXPECT_THROW(thermal_state(0.1, 1.0, 10, 1e-12), TruncationError);
  try {
    thermal_populations(0.1, 1.0, 10, 1e-12);
  } catch (const TruncationError& e) {
    EXPECT_NEAR(e.min_feasible_beta_omega(), -std::log(1e-12) / 10, 1e-12);
  }
}

TEST(FockConfig, AutomaticPicksSmallestCutoff) {
  const auto cfg = FockConfig::automatic(OscillatorSystem::linear(1.0, 0.1),
                                         {.beta_a = 0.5, .beta_b = 1.0}, 1e-8);
  EXPECT_EQ(cfg.n_a, 37);  // e^{-0.5*37} < 1e-8 <= e^{-0.5*36}
  EXPECT_EQ(cfg.n_b, 19);
  EXPECT_LT(thermal_tail(0.5, 1.0, cfg.n_a), 1e-8);
  EXPECT_GE(thermal_tail(0.5, 1.0, cfg.n_a - 1), 1e-8);
}

TEST(FockConfig, AutomaticReportsFeasibleBetaOmega) {
  try {
    FockConfig::automatic(OscillatorSystem::rwa(1.0, 0.1), {.beta_a = 0.01, .beta_b = 0.02});
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_NEAR(e.min_feasible_beta_omega(), -std::log(1e-12) / 64, 1e-12);
  }
}

TEST(FockConfig, Validation) {
  EXPECT_THROW(small(1).validate(), DomainError);
  EXPECT_THROW(small(65).validate(), DomainError);
  auto cfg = small(4);
  cfg.evol_tol = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(PartialTrace, ProductOperator) {
  DenseOperator a(2, 2), b(3, 3);
  a << 1, 2, 3, 4;
  b << 1, 0, 0, 0, 2, 0, 0, 0, 5;
  const auto ab = kron(a, b);
  EXPECT_EQ(partial_trace_b(ab, 2, 3), a * b.trace());
  EXPECT_EQ(partial_trace_a(ab, 2, 3), b * a.trace());
  EXPECT_THROW(partial_trace_b(ab, 3, 3), DomainError);
}

TEST(Commutator, FrobeniusNorm) {
  DenseOperator x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  // [X, Z] = -2iY, Frobenius norm 2 sqrt 2.
  EXPECT_NEAR(commutator_norm(x, z), 2.0 * std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace qsub
