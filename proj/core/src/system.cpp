#include "qsub/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsub/diagnostics.hpp"
#include "qsub/errors.hpp"

namespace qsub {

std::string_view to_string(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::None: return "none";
    case InteractionKind::Rwa: return "rwa";
    case InteractionKind::Linear: return "linear";
    case InteractionKind::MinimalA: return "minimal-a";
    case InteractionKind::MinimalB: return "minimal-b";
  }
  return "unknown";
}

InteractionKind parse_interaction_kind(std::string_view text) {
  for (auto kind : {InteractionKind::None, InteractionKind::Rwa, InteractionKind::Linear,
                    InteractionKind::MinimalA, InteractionKind::MinimalB}) {
    if (text == to_string(kind)) return kind;
  }
  throw DomainError("unknown interaction kind '" + std::string(text) + "'");
}

OscillatorSystem OscillatorSystem::none(double omega_a, double omega_b) {
  return {.omega_a = omega_a, .omega_b = omega_b, .kind = InteractionKind::None};
}

OscillatorSystem OscillatorSystem::rwa(double omega, double g) {
  return {.omega_a = omega, .omega_b = omega, .g = g, .kind = InteractionKind::Rwa};
}

OscillatorSystem OscillatorSystem::linear(double omega, double g) {
  return {.omega_a = omega, .omega_b = omega, .g = g, .kind = InteractionKind::Linear};
}

OscillatorSystem OscillatorSystem::minimal_a(double omega, double charge, double mass) {
  return {.omega_a = omega,
          .omega_b = omega,
          .mass = mass,
          .charge = charge,
          .kind = InteractionKind::MinimalA};
}

OscillatorSystem OscillatorSystem::minimal_b(double omega, double charge, double mass) {
  return {.omega_a = omega,
          .omega_b = omega,
          .mass = mass,
          .charge = charge,
          .kind = InteractionKind::MinimalB};
}

void OscillatorSystem::validate() const {
  if (!(omega_a > 0.0) || !(omega_b > 0.0) || !std::isfinite(omega_a) || !std::isfinite(omega_b)) {
    throw DomainError("oscillator frequencies must be positive and finite");
  }
  if (is_minimal(kind)) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
    if (!(charge >= 0.0) || !std::isfinite(charge)) {
      throw DomainError("minimal-coupling charge must be non-negative");
    }
  } else if (!(g >= 0.0) || !std::isfinite(g)) {
    throw DomainError("coupling strength g must be non-negative");
  }
}

bool OscillatorSystem::resonant() const {
  return std::abs(omega_a - omega_b) <= 1e-12 * std::max(omega_a, omega_b);
}

double OscillatorSystem::energy_scale() const { return std::max(omega_a, omega_b); }

ThermalPreparation ThermalPreparation::from_temperatures(double temp_a, double temp_b) {
  if (!(temp_a > 0.0) || !(temp_b > 0.0)) throw DomainError("temperatures must be positive");
  return {.beta_a = 1.0 / temp_a, .beta_b = 1.0 / temp_b};
}

void ThermalPreparation::validate() const {
  if (!(beta_a > 0.0) || !(beta_b > 0.0) || !std::isfinite(beta_a) || !std::isfinite(beta_b)) {
    throw DomainError("inverse temperatures must be positive and finite");
  }
}

std::array<double, 4> commutator_residuals(const PropagatorCoefficients& c) {
  const double aa = std::norm(c.f_a) - std::norm(c.g_a) + std::norm(c.f_b) - std::norm(c.g_b) - 1.0;
  const double bb = std::norm(c.p_b) - std::norm(c.q_b) + std::norm(c.p_a) - std::norm(c.q_a) - 1.0;
  const complex ab = c.f_a * c.q_a - c.g_a * c.p_a + c.f_b * c.q_b - c.g_b * c.p_b;
  const complex ab_dag = c.f_a * std::conj(c.p_a) - c.g_a * std::conj(c.q_a) +
                         c.f_b * std::conj(c.p_b) - c.g_b * std::conj(c.q_b);
  return {std::abs(aa), std::abs(bb), std::abs(ab), std::abs(ab_dag)};
}

HeatReport make_heat_report(double t, double dq_a, double dq_b, const ThermalPreparation& prep,
                            double energy_scale) {
  HeatReport r;
  r.t = t;
  r.dq_a = dq_a;
  r.dq_b = dq_b;
  r.dq_ab = dq_b - dq_a;
  r.ds0 = prep.beta_a * dq_a + prep.beta_b * dq_b;
  r.csl_ok = csl_check(r.dq_ab, prep, energy_scale, t).compliant;
  return r;
}

}  // namespace qsub
