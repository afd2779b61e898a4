#include "qsub_cli/app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "qsub/errors.hpp"
#include "qsub_cli/commands.hpp"
#include "qsub_cli/csv.hpp"

namespace qsub::cli {
namespace {

void add_physics_options(CLI::App& app, RunConfig& cfg, std::string& kind) {
  app.add_option("--omega", cfg.omega, "Oscillator frequency (both modes)")->capture_default_str();
  app.add_option("--g", cfg.g, "Coupling strength for rwa/linear")->capture_default_str();
  app.add_option("--kind", kind, "Interaction kind")
      ->check(CLI::IsMember({"rwa", "linear", "minimal-a", "minimal-b", "none"}))
      ->capture_default_str();
  app.add_option("--mass", cfg.mass, "Mass for the minimal-coupling kinds")->capture_default_str();
  app.add_option("--charge", cfg.charge, "Charge q for the minimal-coupling kinds")
      ->capture_default_str();

  auto* ba = app.add_option("--beta-a", cfg.beta_a, "Inverse temperature of oscillator a");
  auto* bb = app.add_option("--beta-b", cfg.beta_b, "Inverse temperature of oscillator b");
  auto* ta = app.add_option("--temp-a", cfg.temp_a, "Temperature of oscillator a (beta = 1/T)");
  auto* tb = app.add_option("--temp-b", cfg.temp_b, "Temperature of oscillator b (beta = 1/T)");
  for (auto* t : {ta, tb}) {
    t->excludes(ba);
    t->excludes(bb);
  }

  app.add_option("--t-max", cfg.t_max, "End of the time (or tau) grid")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Points on the time grid")->capture_default_str();
  app.add_option("--tau-threshold", cfg.tau_threshold,
                 "Averages beyond this tau decide transient vs persistent (0: 3/omega)")
      ->capture_default_str();
  app.add_option("--quad-tol", cfg.quad_tol, "Relative tolerance of the time average")
      ->capture_default_str();
  app.add_option("--fock-n", cfg.fock_n, "Levels per mode for the oracle (0: automatic)")
      ->capture_default_str();
  app.add_option("--tail-tol", cfg.tail_tol, "Thermal mass allowed above the cutoff")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
}

int report(std::ostream& err, int code, const std::string& what) {
  err << "qsub-thermo: " << what << '\n';
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string kind = "linear";

  CLI::App app{"Heat transfer between two coupled quantum harmonic oscillators", "qsub-thermo"};
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.fallthrough();
  app.require_subcommand(1);
  add_physics_options(app, cfg, kind);

  auto* figure = app.add_subcommand("figure", "Analytic curves of a figure preset as CSV");
  figure->add_option("n", cfg.figure, "Figure number 1..5")->required()->check(CLI::Range(1, 5));

  auto* sweep = app.add_subcommand("sweep", "Violation classification over a (g, dbeta) grid");
  sweep->add_option("--g-values", cfg.g_values, "Coupling strengths")->delimiter(',');
  sweep->add_option("--dbeta-values", cfg.dbeta_values, "beta_b - beta_a values")->delimiter(',');

  auto* compare = app.add_subcommand("compare", "Closed forms against the Fock-space oracle");
  compare->add_option("--tolerance", cfg.tolerance, "Largest accepted relative deviation")
      ->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Commutators of H0, V and H");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    cfg.kind = parse_interaction_kind(kind);
    if (*figure) {
      cfg.command = Command::Figure;
      code = run_figure(cfg, buffer);
    } else if (*sweep) {
      cfg.command = Command::Sweep;
      code = run_sweep(cfg, buffer);
    } else if (*compare) {
      cfg.command = Command::Compare;
      code = run_compare(cfg, buffer, err);
    } else if (*audit) {
      cfg.command = Command::Audit;
      code = run_audit(cfg, buffer);
    }
  } catch (const SingularConfiguration& e) {
    return report(err, kExitSingular, e.what());
  } catch (const TruncationError& e) {
    std::string msg = e.what();
    if (e.min_feasible_beta_omega() > 0.0) {
      msg += " (smallest feasible beta*omega: " + format_double(e.min_feasible_beta_omega()) + ")";
    }
    return report(err, kExitInvalid, msg);
  } catch (const DomainError& e) {
    return report(err, kExitInvalid, e.what());
  } catch (const UnsupportedConfiguration& e) {
    return report(err, kExitInvalid, e.what());
  } catch (const std::exception& e) {
    return report(err, kExitFailure, e.what());
  }

  if (cfg.out.empty() || cfg.out == "-") {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!(file << buffer.str()) || !file.flush()) {
      return report(err, kExitFailure, "cannot write " + cfg.out);
    }
  }
  return code;
}

}  // namespace qsub::cli
