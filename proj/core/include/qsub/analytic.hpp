#pragma once

#include <span>
#include <vector>

#include "qsub/system.hpp"

namespace qsub {

/// Bose occupation 1/(e^{beta omega} - 1). Throws DomainError unless beta, omega > 0.
double thermal_occupation(double beta, double omega);

/// Free evolution: a(t) = e^{-i w_a t} a, b(t) = e^{-i w_b t} b. Any frequencies.
PropagatorCoefficients free_coefficients(const OscillatorSystem& sys, double t);

/// Resonant rotating-wave coupling:
///   a(t) = e^{-iwt} (a cos gt - b sin gt),  b(t) = e^{-iwt} (b cos gt + a sin gt).
/// Throws UnsupportedConfiguration off resonance.
PropagatorCoefficients rwa_coefficients(const OscillatorSystem& sys, double t);

/// Resonant linear coupling, solved through the normal modes
///   s = (a + i b)/sqrt2   with  ds/dt = -i(w - g) s + i g s^dag,  frequency mu_- = sqrt(w^2 - 2wg)
///   d = (b + i a)/sqrt2   with  dd/dt = -i(w + g) d + i g d^dag,  frequency mu_+ = sqrt(w^2 + 2wg)
/// and a = (s - i d)/sqrt2, b = (d - i s)/sqrt2. For g > w/2, mu_- is imaginary
/// and the complex cos/sin become cosh/sinh on the same code path.
/// Throws SingularConfiguration at g = w/2 and UnsupportedConfiguration off resonance.
PropagatorCoefficients linear_coefficients(const OscillatorSystem& sys, double t);

/// Dispatches on sys.kind (None, Rwa, Linear). Minimal-coupling kinds have no
/// closed form here and throw UnsupportedConfiguration.
PropagatorCoefficients propagator_coefficients(const OscillatorSystem& sys, double t);

/// Heat changes of both oscillators from the propagator coefficients:
///   dQ_a = w_a [(|f_a|^2 + |g_a|^2 - 1) X_a + (|f_b|^2 + |g_b|^2) X_b + |g_a|^2 + |g_b|^2]
///   dQ_b = w_b [(|p_b|^2 + |q_b|^2 - 1) X_b + (|p_a|^2 + |q_a|^2) X_a + |q_a|^2 + |q_b|^2]
HeatReport heat_changes(const PropagatorCoefficients& coeffs, const ThermalPreparation& prep,
                        const OscillatorSystem& sys);

/// propagator_coefficients followed by heat_changes.
HeatReport heat_at(const OscillatorSystem& sys, const ThermalPreparation& prep, double t);

inline constexpr double kDefaultQuadTol = 1e-8;

/// (1/tau) * integral_0^tau dQ_{a->b}(t) dt by adaptive Simpson quadrature.
double time_averaged_heat(const OscillatorSystem& sys, const ThermalPreparation& prep, double tau,
                          double quad_tol = kDefaultQuadTol);

/// Same quantity for every tau in `taus` (any order), integrating once over
/// the union of the intervals.
std::vector<double> time_averaged_heat_curve(const OscillatorSystem& sys,
                                             const ThermalPreparation& prep,
                                             std::span<const double> taus,
                                             double quad_tol = kDefaultQuadTol);

}  // namespace qsub
