#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsub/analytic.hpp"
#include "qsub/fock.hpp"

namespace qsub::cli {

enum class Command { Figure, Sweep, Compare, Audit };

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalid = 2,  // validation, unsupported configuration, infeasible truncation
  kExitSingular = 3,
  kExitTolerance = 4,  // compare deviation above --tolerance
};

struct RunConfig {
  Command command = Command::Figure;
  int figure = 0;

  double omega = 1.0;
  double g = 0.1;
  InteractionKind kind = InteractionKind::Linear;
  double mass = 1.0;
  double charge = 0.0;

  // Either both betas or both temperatures; neither selects beta = (0.5, 1.0).
  std::optional<double> beta_a, beta_b, temp_a, temp_b;

  double t_max = 50.0;
  int samples = 1001;
  double tau_threshold = 0.0;  // 0: 3/omega
  double quad_tol = kDefaultQuadTol;

  int fock_n = 0;  // 0: smallest cutoff meeting tail_tol
  double tail_tol = 1e-12;
  double tolerance = 1e-6;

  std::vector<double> g_values{0.1, 0.3, 0.49, 0.5, 0.51};
  std::vector<double> dbeta_values{0.005, 0.01, 0.02};

  std::string out;  // empty or "-": standard output

  /// Throws DomainError describing the first invalid field.
  void validate() const;

  OscillatorSystem system() const;
  ThermalPreparation preparation() const;
  FockConfig fock_config() const;
};

}  // namespace qsub::cli
