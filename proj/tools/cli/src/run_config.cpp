#include "qsub_cli/run_config.hpp"

#include <cmath>

#include "qsub/errors.hpp"

namespace qsub::cli {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void RunConfig::validate() const {
  if (command == Command::Figure) require(figure >= 1 && figure <= 5, "figure number must be 1..5");
  require(positive(omega), "--omega must be positive");
  require(g >= 0.0 && std::isfinite(g), "--g must be non-negative");
  require(positive(mass), "--mass must be positive");
  require(charge >= 0.0 && std::isfinite(charge), "--charge must be non-negative");

  const bool any_beta = beta_a || beta_b;
  const bool any_temp = temp_a || temp_b;
  require(!(any_beta && any_temp), "give either inverse temperatures or temperatures, not both");
  if (any_beta) {
    require(beta_a && beta_b, "--beta-a and --beta-b must be given together");
    require(positive(*beta_a) && positive(*beta_b), "inverse temperatures must be positive");
  }
  if (any_temp) {
    require(temp_a && temp_b, "--temp-a and --temp-b must be given together");
    require(positive(*temp_a) && positive(*temp_b), "temperatures must be positive");
  }

  require(positive(t_max), "--t-max must be positive");
  require(samples >= 2, "--samples must be at least 2");
  require(tau_threshold >= 0.0 && std::isfinite(tau_threshold), "--tau-threshold must be >= 0");
  require(positive(quad_tol), "--quad-tol must be positive");
  require(fock_n == 0 || (fock_n >= 2 && fock_n <= FockConfig::kMaxLevels),
          "--fock-n must lie in [2, 64]");
  require(tail_tol > 0.0 && tail_tol < 1.0, "--tail-tol must lie in (0, 1)");
  require(positive(tolerance), "--tolerance must be positive");
  if (command == Command::Sweep) {
    require(!g_values.empty() && !dbeta_values.empty(), "sweep needs g and dbeta values");
    for (double v : g_values) require(v >= 0.0 && std::isfinite(v), "sweep g values must be >= 0");
    for (double d : dbeta_values) {
      require(std::isfinite(d) && preparation().beta_a + d > 0.0,
              "beta_a + dbeta must stay positive for every sweep cell");
    }
  }
}

OscillatorSystem RunConfig::system() const {
  return {.omega_a = omega, .omega_b = omega, .g = g, .mass = mass, .charge = charge, .kind = kind};
}

ThermalPreparation RunConfig::preparation() const {
  if (beta_a && beta_b) return {.beta_a = *beta_a, .beta_b = *beta_b};
  if (temp_a && temp_b) return ThermalPreparation::from_temperatures(*temp_a, *temp_b);
  return {.beta_a = 0.5, .beta_b = 1.0};
}

FockConfig RunConfig::fock_config() const {
  if (fock_n > 0) {
    FockConfig cfg;
    cfg.n_a = cfg.n_b = fock_n;
    cfg.tail_tol = tail_tol;
    return cfg;
  }
  return FockConfig::automatic(system(), preparation(), tail_tol);
}

}  // namespace qsub::cli
