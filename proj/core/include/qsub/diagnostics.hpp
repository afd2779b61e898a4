#pragma once

#include <string_view>
#include <vector>

#include "qsub/analytic.hpp"
#include "qsub/fock.hpp"

namespace qsub {

/// |dQ_{a->b}| at or below kCslZeroTol * omega counts as zero transfer.
inline constexpr double kCslZeroTol = 1e-12;

struct CslVerdict {
  double t = 0.0;
  double dq_ab = 0.0;
  bool compliant = true;
  /// sgn(beta_b - beta_a) * dQ_{a->b}; negative margins are violations. For
  /// equal temperatures the margin is -|dQ_{a->b}|.
  double margin = 0.0;
  /// Heat flowing between equal-temperature oscillators.
  bool anomaly = false;
};

/// Clausius check sgn dQ_{a->b} = sgn(beta_b - beta_a), with zero transfer
/// always compliant.
CslVerdict csl_check(double dq_ab, const ThermalPreparation& prep, double energy_scale = 1.0,
                     double t = 0.0);

enum class ViolationClass { None, Transient, Persistent };

std::string_view to_string(ViolationClass c);

struct ViolationProfile {
  std::vector<double> grid;
  std::vector<double> dq_ab;       // on grid
  std::vector<double> violations;  // grid times with a non-compliant verdict
  std::vector<double> taus;        // grid times >= tau_threshold
  std::vector<double> averages;    // time-averaged dQ_{a->b} at taus
  ViolationClass classification = ViolationClass::None;
  double tau_threshold = 0.0;
};

inline constexpr double kDefaultTauThreshold = 3.0;  // in units of 1/omega

/// Samples dQ_{a->b} on a uniform grid over [0, t_max]. Violations are
/// Transient when every sampled average with tau >= tau_threshold complies,
/// Persistent otherwise. A non-positive tau_threshold selects 3/omega.
ViolationProfile scan_violations(const OscillatorSystem& sys, const ThermalPreparation& prep,
                                 double t_max, int n_samples, double tau_threshold = 0.0,
                                 double quad_tol = kDefaultQuadTol);

struct DecompositionAudit {
  double norm_h0_v = 0.0;  // ||[H0, V]||_F
  double norm_h_v = 0.0;   // ||[H, V]||_F
  double norm_h0_h = 0.0;  // ||[H0, H]||_F
  /// All three below kAuditTol: bare energy is conserved and the CSL follows.
  bool csl_safe = false;
};

inline constexpr double kAuditTol = 1e-10;

DecompositionAudit decomposition_audit(const OscillatorSystem& sys, const FockConfig& cfg);

}  // namespace qsub
