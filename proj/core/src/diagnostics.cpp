#include "qsub/diagnostics.hpp"

#include <cmath>

#include "qsub/errors.hpp"

namespace qsub {

CslVerdict csl_check(double dq_ab, const ThermalPreparation& prep, double energy_scale, double t) {
  prep.validate();
  CslVerdict v;
  v.t = t;
  v.dq_ab = dq_ab;
  const double tol = kCslZeroTol * energy_scale;
  if (prep.beta_a == prep.beta_b) {
    v.margin = -std::abs(dq_ab);
    v.anomaly = std::abs(dq_ab) > tol;
    v.compliant = !v.anomaly;
    return v;
  }
  const double sign = prep.beta_b > prep.beta_a ? 1.0 : -1.0;
  v.margin = sign * dq_ab;
  v.compliant = std::abs(dq_ab) <= tol || v.margin > 0.0;
  return v;
}

std::string_view to_string(ViolationClass c) {
  switch (c) {
    case ViolationClass::None: return "none";
    case ViolationClass::Transient: return "transient";
    case ViolationClass::Persistent: return "persistent";
  }
  return "unknown";
}

ViolationProfile scan_violations(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                 double t_max, int n_samples, double tau_threshold,
                                 double quad_tol) {
  sys.validate();
  prep.validate();
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive");
  if (n_samples < 16) throw DomainError("scan needs at least 16 samples");

  ViolationProfile out;
  const double scale = sys.energy_scale();
  out.tau_threshold = tau_threshold > 0.0 ? tau_threshold : kDefaultTauThreshold / scale;
  out.grid.resize(n_samples);
  out.dq_ab.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = t_max * i / (n_samples - 1);
    out.grid[i] = t;
    out.dq_ab[i] = heat_at(sys, prep, t).dq_ab;
    if (!csl_check(out.dq_ab[i], prep, scale, t).compliant) out.violations.push_back(t);
  }
  for (double t : out.grid) {
    if (t >= out.tau_threshold && t > 0.0) out.taus.push_back(t);
  }
  out.averages = time_averaged_heat_curve(sys, prep, out.taus, quad_tol);

  if (out.violations.empty()) {
    out.classification = ViolationClass::None;
    return out;
  }
  out.classification = ViolationClass::Transient;
  for (std::size_t i = 0; i < out.taus.size(); ++i) {
    if (!csl_check(out.averages[i], prep, scale, out.taus[i]).compliant) {
      out.classification = ViolationClass::Persistent;
      break;
    }
  }
  return out;
}

DecompositionAudit decomposition_audit(const OscillatorSystem& sys, const FockConfig& cfg) {
  const auto parts = build_hamiltonian(sys, cfg);
  DecompositionAudit a;
  a.norm_h0_v = commutator_norm(parts.h0, parts.v);
  a.norm_h_v = commutator_norm(parts.h, parts.v);
  a.norm_h0_h = commutator_norm(parts.h0, parts.h);
  a.csl_safe = a.norm_h0_v < kAuditTol && a.norm_h_v < kAuditTol && a.norm_h0_h < kAuditTol;
  return a;
}

}  // namespace qsub
