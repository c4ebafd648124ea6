// phwell: analyze, simulate and cross-check port-Hamiltonian boundary conditions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phwell/config.hpp"
#include "phwell/corpus.hpp"
#include "phwell/error.hpp"
#include "phwell/halfline_checker.hpp"
#include "phwell/interval_checker.hpp"
#include "phwell/oracle.hpp"
#include "phwell/simulator.hpp"
#include "phwell/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kDiscrepancy = 3;

int run_analyze(const std::string& path, bool text) {
  const phwell::Verdict v = phwell::analyze(phwell::parse_config(path));
  std::cout << (text ? phwell::to_text(v) : phwell::to_json(v) + "\n");
  return v.discrepancy ? kDiscrepancy : kOk;
}

struct SimulateArgs {
  std::string config;
  double tfinal = 1.0;
  int cells = 400;
  double cfl = 0.5;
  double theta = phwell::kDefaultUpwindWeight;
  std::string out;
  double bump_center = 0.3;
  double bump_radius = 0.1;
  int bump_component = 0;
  double length = 10.0;
  std::vector<double> snapshots;
  std::string snapshot_prefix = "snapshot";
};

int run_simulate(const SimulateArgs& a) {
  const phwell::PortHamiltonianSystem sys = phwell::parse_config(a.config);
  if (a.bump_component < 0 || a.bump_component >= sys.d()) {
    throw phwell::Error(phwell::ErrorKind::validation, "component out of range", "bump-component");
  }
  phwell::SimulationOptions opt;
  opt.t_final = a.tfinal;
  opt.nx = a.cells;
  opt.cfl = a.cfl;
  opt.theta = a.theta;
  opt.half_line_length = a.length;
  opt.snapshot_times = a.snapshots;
  const double extent = sys.interval() == phwell::IntervalKind::half_line ? a.length : 1.0;
  const int d = sys.d();
  const auto x0 = phwell::sample_cells(
      [&](double z) {
        phwell::CVector v = phwell::CVector::Zero(d);
        v(a.bump_component) = phwell::smooth_bump(z, a.bump_center, a.bump_radius);
        return v;
      },
      a.cells, extent);
  const phwell::EnergyTrace trace = phwell::simulate(sys, x0, opt);
  for (const auto& w : trace.warnings) std::cerr << "warning: " << w << "\n";
  if (a.out.empty() || a.out == "-") {
    std::cout << trace.to_csv();
  } else {
    std::ofstream f(a.out);
    if (!f) throw phwell::Error(phwell::ErrorKind::validation, "cannot write " + a.out, "out");
    f << trace.to_csv();
  }
  for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
    const std::string name = a.snapshot_prefix + "_" + std::to_string(i) + ".csv";
    std::ofstream f(name);
    f << phwell::snapshot_csv(trace.snapshots[i], trace.h);
  }
  std::cerr << "steps " << trace.times.size() - 1 << ", dt " << trace.dt << ", max energy increase "
            << trace.max_violation << "\n";
  return kOk;
}

int run_oracle(const std::string& path, int samples, std::uint64_t seed) {
  const phwell::PortHamiltonianSystem sys = phwell::parse_config(path);
  const phwell::OracleReport rep = phwell::dissipativity_oracle(sys, samples, seed);
  std::cout << rep.to_json() << "\n";
  const phwell::Verdict v = phwell::analyze(sys);
  const char* id = sys.interval() == phwell::IntervalKind::half_line ? "TA.3" : "T1.5";
  const bool agrees = v.at(id).holds == rep.holds;
  if (!agrees) std::cerr << "oracle disagrees with the kernel condition\n";
  if (!rep.consistent) std::cerr << "Rayleigh values do not match the boundary form\n";
  return agrees && rep.consistent ? kOk : kDiscrepancy;
}

int run_corpus(bool list, const std::string& name, const std::string& export_name) {
  if (!export_name.empty()) {
    const phwell::CorpusEntry* e = phwell::find_corpus_entry(export_name);
    if (e == nullptr) {
      std::cerr << "unknown corpus entry '" << export_name << "'\n";
      return kUsage;
    }
    std::cout << phwell::serialize_config(e->build(), e->name + ": " + e->note) << "\n";
    return kOk;
  }
  if (list) {
    for (const auto& e : phwell::corpus()) {
      std::cout << e.name << "\t" << e.parameters << "\t" << phwell::to_string(e.expected_consensus) << "\t"
                << phwell::to_string(e.expected_unitary) << "\t" << phwell::to_string(e.basis) << "\t" << e.note
                << "\n";
    }
    return kOk;
  }
  if (!name.empty()) {
    const phwell::CorpusEntry* e = phwell::find_corpus_entry(name);
    if (e == nullptr) {
      std::cerr << "unknown corpus entry '" << name << "'\n";
      return kUsage;
    }
    const phwell::CorpusOutcome out = phwell::run_corpus_entry(*e);
    std::cout << phwell::to_json(out.verdict) << "\n";
    if (!out.passed) std::cerr << out.message << "\n";
    return out.passed ? kOk : kDiscrepancy;
  }
  int failed = 0;
  for (const auto& e : phwell::corpus()) {
    const phwell::CorpusOutcome out = phwell::run_corpus_entry(e);
    std::cout << (out.passed ? "PASS " : "FAIL ") << e.name;
    if (!out.passed) std::cout << "  " << out.message;
    std::cout << "\n";
    failed += out.passed ? 0 : 1;
  }
  return failed == 0 ? kOk : kDiscrepancy;
}

int run_sweep(int count, std::uint64_t seed, const std::string& cls) {
  const phwell::SweepResult r = phwell::run_sweep(count, seed, phwell::parse_system_class(cls));
  std::cout << "class " << cls << ": " << r.count << " systems, " << r.contractions << " contraction, " << r.unitary
            << " unitary, " << r.discrepancies << " discrepancies, " << r.seconds << " s\n";
  for (const auto& f : r.failures) std::cout << "discrepancy: " << f << "\n";
  return r.discrepancies == 0 ? kOk : kDiscrepancy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-posedness checks for port-Hamiltonian boundary value problems"};
  app.require_subcommand(1);

  std::string config;
  bool as_json = false;
  bool as_text = false;
  auto* analyze = app.add_subcommand("analyze", "Evaluate every algebraic condition for a system file");
  analyze->add_option("config", config, "System definition (JSON)")->required();
  auto* json_flag = analyze->add_flag("--json", as_json, "JSON report (default)");
  analyze->add_flag("--text", as_text, "Plain-text table")->excludes(json_flag);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the N = 1 method-of-lines solver and write an energy trace");
  simulate->add_option("config", sim.config, "System definition (JSON)")->required();
  simulate->add_option("--tfinal", sim.tfinal, "Final time")->required();
  simulate->add_option("--cells", sim.cells, "Number of cells")->required();
  simulate->add_option("--cfl", sim.cfl, "CFL number in (0, 0.9]");
  simulate->add_option("--theta", sim.theta, "Upwind weight in [0, 1]");
  simulate->add_option("--out", sim.out, "Trace CSV path ('-' for stdout)");
  simulate->add_option("--bump-center", sim.bump_center, "Center of the initial bump");
  simulate->add_option("--bump-radius", sim.bump_radius, "Radius of the initial bump");
  simulate->add_option("--bump-component", sim.bump_component, "Component carrying the bump");
  simulate->add_option("--length", sim.length, "Truncation point for half-line systems");
  simulate->add_option("--snapshots", sim.snapshots, "Times at which to write the state")->delimiter(',');
  simulate->add_option("--snapshot-prefix", sim.snapshot_prefix, "Snapshot file prefix");

  int samples = 64;
  std::uint64_t seed = 1;
  std::string oracle_config;
  auto* oracle = app.add_subcommand("oracle", "Quadrature dissipativity check on sampled domain functions");
  oracle->add_option("config", oracle_config, "System definition (JSON)")->required();
  oracle->add_option("--samples", samples, "Number of random kernel samples");
  oracle->add_option("--seed", seed, "Random seed");

  bool list = false;
  std::string run_name;
  auto* corpus = app.add_subcommand("corpus", "Run or list the built-in examples");
  auto* list_flag = corpus->add_flag("--list", list, "List entries");
  auto* run_opt = corpus->add_option("--run", run_name, "Run one entry and print its report")->excludes(list_flag);
  std::string export_name;
  corpus->add_option("--export", export_name, "Print the system definition of one entry")
      ->excludes(list_flag)
      ->excludes(run_opt);

  int count = 200;
  std::uint64_t sweep_seed = 7;
  std::string cls = "interval_square";
  auto* sweep = app.add_subcommand("sweep", "Equivalence sweep over random systems");
  sweep->add_option("--count", count, "Number of systems");
  sweep->add_option("--seed", sweep_seed, "Random seed");
  sweep->add_option("--class", cls, "interval_square, interval_rect or halfline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(config, as_text);
    if (*simulate) return run_simulate(sim);
    if (*oracle) return run_oracle(oracle_config, samples, seed);
    if (*corpus) return run_corpus(list, run_name, export_name);
    if (*sweep) return run_sweep(count, sweep_seed, cls);
  } catch (const phwell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}
