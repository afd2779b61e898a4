#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace qsub {

using complex = std::complex<double>;

/// Form of the interaction between the two oscillators.
///
///   Rwa       V = i g (a b^dag - a^dag b)
///   Linear    V = i g (a^dag + a)(b^dag - b)
///   MinimalA  H = (p_a - q x_b)^2 / 2m + m w^2 x_a^2 / 2 + p_b^2 / 2m + m w^2 x_b^2 / 2
///   MinimalB  H = p_a^2 / 2m + m w^2 x_a^2 / 2 + (p_b + q x_a)^2 / 2m + m w^2 x_b^2 / 2
///   None      V = 0
enum class InteractionKind { None, Rwa, Linear, MinimalA, MinimalB };

std::string_view to_string(InteractionKind kind);

/// Parses "rwa", "linear", "minimal-a", "minimal-b" or "none".
InteractionKind parse_interaction_kind(std::string_view text);

inline bool is_minimal(InteractionKind kind) {
  return kind == InteractionKind::MinimalA || kind == InteractionKind::MinimalB;
}

/// Two oscillators H_a = w_a a^dag a, H_b = w_b b^dag b plus an interaction.
/// Units: hbar = k_B = 1, so frequencies, couplings and temperatures share
/// one energy unit and time is measured in inverse energy.
struct OscillatorSystem {
  double omega_a = 1.0;
  double omega_b = 1.0;
  double g = 0.0;       // Rwa / Linear coupling strength
  double mass = 1.0;    // minimal-coupling kinds only
  double charge = 0.0;  // minimal-coupling q
  InteractionKind kind = InteractionKind::None;

  static OscillatorSystem none(double omega_a, double omega_b);
  static OscillatorSystem rwa(double omega, double g);
  static OscillatorSystem linear(double omega, double g);
  static OscillatorSystem minimal_a(double omega, double charge, double mass = 1.0);
  static OscillatorSystem minimal_b(double omega, double charge, double mass = 1.0);

  /// Throws DomainError when an invariant is broken.
  void validate() const;

  /// omega_a == omega_b to 1e-12 relative.
  bool resonant() const;

  /// Largest single-mode frequency; used to scale absolute tolerances.
  double energy_scale() const;
};

/// Initial product of Gibbs states at inverse temperatures beta_a, beta_b.
struct ThermalPreparation {
  double beta_a = 1.0;
  double beta_b = 1.0;

  static ThermalPreparation from_temperatures(double temp_a, double temp_b);

  void validate() const;
};

/// Heisenberg-picture expansion at time t:
///   a(t) = f_a a + g_a a^dag + f_b b + g_b b^dag
///   b(t) = p_a a + q_a a^dag + p_b b + q_b b^dag
struct PropagatorCoefficients {
  double t = 0.0;
  complex f_a{1.0}, g_a{}, f_b{}, g_b{};
  complex p_a{}, q_a{}, p_b{1.0}, q_b{};
};

/// Residuals of the four canonical commutation relations carried by the
/// coefficients: [a,a^dag] = 1, [b,b^dag] = 1, [a,b] = 0, [a,b^dag] = 0.
/// All four vanish for an exact propagator.
std::array<double, 4> commutator_residuals(const PropagatorCoefficients& c);

struct HeatReport {
  double t = 0.0;
  double dq_a = 0.0;
  double dq_b = 0.0;
  double dq_ab = 0.0;  // dq_b - dq_a
  double ds0 = 0.0;    // beta_a dq_a + beta_b dq_b
  bool csl_ok = true;
};

/// Fills dq_ab, ds0 and csl_ok from dq_a and dq_b.
HeatReport make_heat_report(double t, double dq_a, double dq_b, const ThermalPreparation& prep,
                            double energy_scale);

}  // namespace qsub
