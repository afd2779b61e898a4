#include "qsub/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsub/errors.hpp"
#include "qsub/quadrature.hpp"

namespace qsub {
namespace {

constexpr complex kI{0.0, 1.0};

void require_resonant(const OscillatorSystem& sys, const char* what) {
  sys.validate();
  if (!sys.resonant()) {
    throw UnsupportedConfiguration(std::string(what) +
                                   ": closed form requires omega_a == omega_b");
  }
}

void require_not_singular(const OscillatorSystem& sys) {
  const double w = sys.omega_a;
  if (sys.kind == InteractionKind::Linear && std::abs(2.0 * sys.g - w) <= 1e-12 * w) {
    throw SingularConfiguration("linear coupling at g = omega/2: the soft normal mode has zero "
                                "frequency; perturb g");
  }
}

// One normal mode c with dc/dt = -i detuning c + i g c^dag:
//   c(t) = c [cos mu t - i (detuning/mu) sin mu t] + c^dag (i g/mu) sin mu t,
// mu = sqrt(detuning^2 - g^2) taken complex so that mu^2 < 0 yields cosh/sinh.
struct ModeSolution {
  complex direct;
  complex conjugate;
};

ModeSolution solve_mode(double detuning, double g, double t) {
  const complex mu = std::sqrt(complex(detuning * detuning - g * g, 0.0));
  const complex c = std::cos(mu * t);
  const complex s = std::sin(mu * t) / mu;
  return {c - kI * detuning * s, kI * g * s};
}

}  // namespace

double thermal_occupation(double beta, double omega) {
  if (!(beta > 0.0) || !(omega > 0.0)) {
    throw DomainError("thermal_occupation requires beta > 0 and omega > 0");
  }
  return 1.0 / std::expm1(beta * omega);
}

PropagatorCoefficients free_coefficients(const OscillatorSystem& sys, double t) {
  PropagatorCoefficients c;
  c.t = t;
  c.f_a = std::exp(-kI * sys.omega_a * t);
  c.p_b = std::exp(-kI * sys.omega_b * t);
  return c;
}

PropagatorCoefficients rwa_coefficients(const OscillatorSystem& sys, double t) {
  require_resonant(sys, "rwa_coefficients");
  const complex phase = std::exp(-kI * sys.omega_a * t);
  const double cos_gt = std::cos(sys.g * t);
  const double sin_gt = std::sin(sys.g * t);

  PropagatorCoefficients c;
  c.t = t;
  c.f_a = phase * cos_gt;
  c.f_b = -phase * sin_gt;
  c.p_a = phase * sin_gt;
  c.p_b = phase * cos_gt;
  return c;
}

PropagatorCoefficients linear_coefficients(const OscillatorSystem& sys, double t) {
  require_resonant(sys, "linear_coefficients");
  require_not_singular(sys);
  const double w = sys.omega_a;
  const double g = sys.g;

  // s = (a + ib)/sqrt2 detuned by w - g, d = (b + ia)/sqrt2 by w + g.
  const auto [s_dir, s_conj] = solve_mode(w - g, g, t);
  const auto [d_dir, d_conj] = solve_mode(w + g, g, t);

  // a = (s - i d)/sqrt2 and b = (d - i s)/sqrt2, with s^dag = (a^dag - i b^dag)/sqrt2
  // and d^dag = (b^dag - i a^dag)/sqrt2, collected by a, a^dag, b, b^dag.
  PropagatorCoefficients c;
  c.t = t;
  c.f_a = 0.5 * (s_dir + d_dir);
  c.g_a = 0.5 * (s_conj - d_conj);
  c.f_b = 0.5 * kI * (s_dir - d_dir);
  c.g_b = -0.5 * kI * (s_conj + d_conj);
  c.p_a = 0.5 * kI * (d_dir - s_dir);
  c.q_a = -0.5 * kI * (d_conj + s_conj);
  c.p_b = 0.5 * (d_dir + s_dir);
  c.q_b = 0.5 * (d_conj - s_conj);
  return c;
}

PropagatorCoefficients propagator_coefficients(const OscillatorSystem& sys, double t) {
  switch (sys.kind) {
    case InteractionKind::None:
      sys.validate();
      return free_coefficients(sys, t);
    case InteractionKind::Rwa: return rwa_coefficients(sys, t);
    case InteractionKind::Linear: return linear_coefficients(sys, t);
    case InteractionKind::MinimalA:
    case InteractionKind::MinimalB: break;
  }
  throw UnsupportedConfiguration("no closed-form propagator for interaction kind '" +
                                 std::string(to_string(sys.kind)) + "'");
}

HeatReport heat_changes(const PropagatorCoefficients& c, const ThermalPreparation& prep,
                        const OscillatorSystem& sys) {
  prep.validate();
  const double x_a = thermal_occupation(prep.beta_a, sys.omega_a);
  const double x_b = thermal_occupation(prep.beta_b, sys.omega_b);

  const double dq_a =
      sys.omega_a * ((std::norm(c.f_a) + std::norm(c.g_a) - 1.0) * x_a +
                     (std::norm(c.f_b) + std::norm(c.g_b)) * x_b + std::norm(c.g_a) + std::norm(c.g_b));
  const double dq_b =
      sys.omega_b * ((std::norm(c.p_b) + std::norm(c.q_b) - 1.0) * x_b +
                     (std::norm(c.p_a) + std::norm(c.q_a)) * x_a + std::norm(c.q_a) + std::norm(c.q_b));
  return make_heat_report(c.t, dq_a, dq_b, prep, sys.energy_scale());
}

HeatReport heat_at(const OscillatorSystem& sys, const ThermalPreparation& prep, double t) {
  return heat_changes(propagator_coefficients(sys, t), prep, sys);
}

namespace {

// Upper bound on the angular frequencies present in dQ_{a->b}(t).
double max_frequency(const OscillatorSystem& sys) {
  const double w = sys.energy_scale();
  return 2.0 * (w + 2.0 * sys.g) + 1e-3 * w;
}

}  // namespace

std::vector<double> time_averaged_heat_curve(const OscillatorSystem& sys,
                                             const ThermalPreparation& prep,
                                             std::span<const double> taus, double quad_tol) {
  sys.validate();
  prep.validate();
  require_not_singular(sys);
  if (!(quad_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  for (double tau : taus) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("averaging time tau must be positive");
  }
  // Surface configuration errors before the integrand is evaluated.
  (void)propagator_coefficients(sys, 0.0);

  std::vector<std::size_t> order(taus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return taus[i] < taus[j]; });

  const auto integrand = [&](double t) { return heat_at(sys, prep, t).dq_ab; };
  QuadratureOptions options;
  options.rel_tol = quad_tol;
  options.max_depth = 40;
  options.max_panel = 0.5 * std::numbers::pi / max_frequency(sys);

  std::vector<double> result(taus.size());
  double lower = 0.0;
  double integral = 0.0;
  for (std::size_t i : order) {
    const double tau = taus[i];
    if (tau > lower) {
      integral += adaptive_simpson(integrand, lower, tau, options).value;
      lower = tau;
    }
    result[i] = integral / tau;
  }
  return result;
}

double time_averaged_heat(const OscillatorSystem& sys, const ThermalPreparation& prep, double tau,
                          double quad_tol) {
  const double taus[] = {tau};
  return time_averaged_heat_curve(sys, prep, taus, quad_tol).front();
}

}  // namespace qsub
