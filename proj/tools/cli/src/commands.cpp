#include "qsub_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qsub/diagnostics.hpp"
#include "qsub/errors.hpp"
#include "qsub/oracle.hpp"
#include "qsub_cli/csv.hpp"

namespace qsub::cli {
namespace {

const std::vector<std::string> kContractColumns = {"t", "dQ_a", "dQ_b", "dQ_ab", "dS0", "csl_ok"};

std::vector<double> time_grid(const RunConfig& cfg) {
  std::vector<double> t(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) t[i] = cfg.t_max * i / (cfg.samples - 1);
  return t;
}

// The time grid without t = 0, where an average is undefined.
std::vector<double> tau_grid(const RunConfig& cfg) {
  auto t = time_grid(cfg);
  t.erase(t.begin());
  return t;
}

void contract_cells(CsvWriter& w, const HeatReport& r) {
  w.cell(r.t).cell(r.dq_a).cell(r.dq_b).cell(r.dq_ab).cell(r.ds0).cell(r.csl_ok ? 1L : 0L);
}

std::vector<std::string> with_contract(std::vector<std::string> extra) {
  auto cols = kContractColumns;
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

// Figures 1-3: the hot-a curve in the contract columns, then one column per
// additional curve.
struct Curve {
  OscillatorSystem sys;
  ThermalPreparation prep;
  double HeatReport::*field;
};

void write_time_figure(const RunConfig& cfg, std::ostream& out, const OscillatorSystem& primary,
                       const std::vector<std::string>& names, const std::vector<Curve>& extra) {
  const auto hot_a = ThermalPreparation::from_temperatures(kHotTemp, kColdTemp);
  CsvWriter w(out);
  w.header(with_contract(names));
  for (double t : time_grid(cfg)) {
    contract_cells(w, heat_at(primary, hot_a, t));
    for (const auto& c : extra) w.cell(heat_at(c.sys, c.prep, t).*c.field);
    w.end_row();
  }
}

void write_average_figure(const RunConfig& cfg, std::ostream& out,
                          const std::vector<std::string>& names,
                          const std::vector<OscillatorSystem>& systems) {
  const auto hot_a = ThermalPreparation::from_temperatures(kHotTemp, kColdTemp);
  const auto taus = tau_grid(cfg);
  std::vector<std::vector<double>> cols;
  for (const auto& sys : systems) cols.push_back(time_averaged_heat_curve(sys, hot_a, taus, cfg.quad_tol));
  CsvWriter w(out);
  w.header(names);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    w.cell(taus[i]);
    for (const auto& c : cols) w.cell(c[i]);
    w.end_row();
  }
}

}  // namespace

int run_figure(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto hot_b = ThermalPreparation::from_temperatures(kColdTemp, kHotTemp);
  const auto hot_a = ThermalPreparation::from_temperatures(kHotTemp, kColdTemp);
  switch (cfg.figure) {
    case 1: {
      const auto rwa = OscillatorSystem::rwa(1.0, 0.1);
      write_time_figure(cfg, out, rwa, {"dQ_ab_hot_b"}, {{rwa, hot_b, &HeatReport::dq_ab}});
      break;
    }
    case 2: {
      const auto lin = OscillatorSystem::linear(1.0, 0.1);
      const auto rwa = OscillatorSystem::rwa(1.0, 0.1);
      write_time_figure(cfg, out, lin, {"dQ_a_hot_b", "dQ_a_rwa_hot_a", "dQ_a_rwa_hot_b"},
                        {{lin, hot_b, &HeatReport::dq_a},
                         {rwa, hot_a, &HeatReport::dq_a},
                         {rwa, hot_b, &HeatReport::dq_a}});
      break;
    }
    case 3: {
      const auto lin = OscillatorSystem::linear(1.0, 0.49);
      write_time_figure(cfg, out, lin, {"dQ_ab_hot_b"}, {{lin, hot_b, &HeatReport::dq_ab}});
      break;
    }
    case 4:
      write_average_figure(cfg, out, {"tau", "avg_dQ_ab", "avg_dQ_ab_rwa"},
                           {OscillatorSystem::linear(1.0, 0.49), OscillatorSystem::rwa(1.0, 0.49)});
      break;
    case 5:
      write_average_figure(cfg, out, {"tau", "avg_dQ_ab"}, {OscillatorSystem::linear(1.0, 0.51)});
      break;
    default:
      throw DomainError("figure number must be 1..5");
  }
  return kExitOk;
}

unsigned sweep_threads(std::size_t cells) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QSUB_THERMO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, cells)));
}

namespace {

struct SweepCell {
  double g = 0.0;
  double dbeta = 0.0;
  bool gap = false;
  ViolationProfile profile;
};

}  // namespace

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double beta_a = cfg.preparation().beta_a;
  std::vector<SweepCell> cells;
  for (double g : cfg.g_values) {
    for (double d : cfg.dbeta_values) {
      SweepCell c;
      c.g = g;
      c.dbeta = d;
      cells.push_back(std::move(c));
    }
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      auto& c = cells[i];
      try {
        auto sys = cfg.system();
        sys.g = c.g;
        const ThermalPreparation prep{.beta_a = beta_a, .beta_b = beta_a + c.dbeta};
        c.profile = scan_violations(sys, prep, cfg.t_max, cfg.samples, cfg.tau_threshold, cfg.quad_tol);
      } catch (const SingularConfiguration&) {
        c.gap = true;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = sweep_threads(cells.size());
  for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CsvWriter w(out);
  w.header({"g", "dbeta", "classification", "n_violations", "min_dQ_ab", "min_avg_dQ_ab"});
  for (const auto& c : cells) {
    w.cell(c.g).cell(c.dbeta);
    if (c.gap) {
      w.cell("gap").cell("").cell("").cell("");
    } else {
      const auto& p = c.profile;
      w.cell(to_string(p.classification)).cell(static_cast<long>(p.violations.size()));
      w.cell(*std::min_element(p.dq_ab.begin(), p.dq_ab.end()));
      if (p.averages.empty()) {
        w.cell("");
      } else {
        w.cell(*std::min_element(p.averages.begin(), p.averages.end()));
      }
    }
    w.end_row();
  }
  return kExitOk;
}

int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  cfg.validate();
  const auto sys = cfg.system();
  const auto prep = cfg.preparation();
  const auto times = time_grid(cfg);
  // Closed forms first: unsupported systems fail before the oracle is built.
  std::vector<HeatReport> analytic;
  analytic.reserve(times.size());
  for (double t : times) analytic.push_back(heat_at(sys, prep, t));

  const FockOracle oracle(sys, prep, cfg.fock_config());
  const auto numeric = oracle.heat_series(times, false);
  const auto leak = oracle.leakage_series(times);

  CsvWriter w(out);
  w.header(with_contract({"oracle_dQ_a", "oracle_dQ_b", "oracle_dQ_ab", "oracle_dS0", "leak_est", "rel_dev"}));
  double max_dev = 0.0;
  double max_leak = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& a = analytic[i];
    const auto& n = numeric[i];
    const double dev = std::max(std::abs(n.dq_a - a.dq_a) / std::max(1.0, std::abs(a.dq_a)),
                                std::abs(n.dq_b - a.dq_b) / std::max(1.0, std::abs(a.dq_b)));
    max_dev = std::max(max_dev, dev);
    max_leak = std::max(max_leak, leak[i]);
    contract_cells(w, a);
    w.cell(n.dq_a).cell(n.dq_b).cell(n.dq_ab).cell(n.ds0).cell(leak[i]).cell(dev);
    w.end_row();
  }
  w.comment("max_rel_dev," + format_double(max_dev));
  w.comment("max_leak_est," + format_double(max_leak));
  w.comment("fock_n," + std::to_string(oracle.config().n_a) + "," + std::to_string(oracle.config().n_b));
  if (max_dev > cfg.tolerance) {
    log << "compare: max relative deviation " << format_double(max_dev) << " exceeds tolerance "
        << format_double(cfg.tolerance) << " (max leakage estimate " << format_double(max_leak)
        << ")\n";
    return kExitTolerance;
  }
  return kExitOk;
}

int run_audit(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  FockConfig fc;
  if (cfg.fock_n > 0) fc.n_a = fc.n_b = cfg.fock_n;
  const auto sys = cfg.system();
  const auto a = decomposition_audit(sys, fc);
  out << "kind=" << to_string(sys.kind) << '\n'
      << (is_minimal(sys.kind) ? "q=" : "g=")
      << format_double(is_minimal(sys.kind) ? sys.charge : sys.g) << '\n'
      << "n_a=" << fc.n_a << '\n'
      << "n_b=" << fc.n_b << '\n'
      << "norm_H0V=" << format_double(a.norm_h0_v) << '\n'
      << "norm_HV=" << format_double(a.norm_h_v) << '\n'
      << "norm_H0H=" << format_double(a.norm_h0_h) << '\n'
      << "csl_safe=" << (a.csl_safe ? "true" : "false") << '\n';
  return kExitOk;
}

}  // namespace qsub::cli
