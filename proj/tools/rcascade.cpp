// rcascade: generate graphs, run reversible threshold cascades, build seed
// sets and sweep parameter grids.
//
// Exit codes: 0 success, 1 usage, 2 guarantee violation, 3 I/O.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcascade/cascade.hpp"
#include "rcascade/experiment.hpp"
#include "rcascade/generators.hpp"
#include "rcascade/graph.hpp"
#include "rcascade/oracle.hpp"
#include "rcascade/seeders.hpp"

namespace {

using namespace rcascade;

enum ExitCode : int { kOk = 0, kUsage = 1, kGuarantee = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_rhos(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const auto& t : texts) out.push_back(Rational::parse(t));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through `write` to path, or to stdout for "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write(out);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

struct GenerateArgs {
  std::string generator = "er";
  std::size_t n = 0;
  double p = 0.0;
  double gamma = 2.5;
  double C = 4.0;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::size_t max_retries = 16;
  std::string out = "-";
};

int cmd_generate(const GenerateArgs& a) {
  Graph g;
  const RngSeed seed{a.seed, a.trial};
  switch (parse_generator(a.generator)) {
    case GeneratorKind::er:
      g = gen_er({a.n, a.p}, seed);
      break;
    case GeneratorKind::powerlaw:
      if (!(a.gamma > 2.0)) throw UsageError("--gamma must exceed 2");
      g = gen_powerlaw_connected({a.n, a.gamma, a.C}, seed, a.max_retries);
      break;
    case GeneratorKind::circulant:
      g = gen_circulant(a.n, a.d);
      break;
  }
  emit(a.out, [&](std::ostream& os) { write_edge_list(os, g); });
  return kOk;
}

struct CascadeArgs {
  std::string graph;
  std::string seeds;
  std::string seeds_file;
  bool all_seeds = false;
  std::string rho = "1/2";
  std::string mode = "sync";
  std::string scheduler = "round-robin";
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  bool trace = false;
};

VertexSet load_seeds(const CascadeArgs& a, std::size_t n) {
  const int given = (a.all_seeds ? 1 : 0) + (a.seeds.empty() ? 0 : 1) + (a.seeds_file.empty() ? 0 : 1);
  if (given != 1) throw UsageError("give exactly one of --seeds, --seeds-file, --all-seeds");
  if (a.all_seeds) return VertexSet::full(n);
  return parse_seeds(a.seeds.empty() ? read_file(a.seeds_file) : a.seeds, n);
}

int cmd_cascade(const CascadeArgs& a) {
  const auto g = load_edge_list(a.graph);
  const auto seeds = load_seeds(a, g.num_vertices());
  const ThresholdConfig cfg{Rational::parse(a.rho), parse_mode(a.mode)};
  const Scheduler sched{parse_scheduler(a.scheduler), RngSeed{a.seed, 0}};
  const auto budget = a.budget == 0 ? std::nullopt : std::optional<std::size_t>(a.budget);
  const auto trace = run_cascade(g, seeds, cfg, sched, budget, {.record_states = a.trace});
  if (a.trace) write_trace(std::cout, trace);
  else std::cout << "termination: " << trace.termination.str() << '\n';
  std::cout << "rounds_to_full: "
            << (trace.rounds_to_full ? std::to_string(*trace.rounds_to_full) : std::string("never")) << '\n'
            << "monotone: " << (trace.monotone ? "true" : "false") << '\n';
  return kOk;
}

struct SeedArgs {
  std::string graph;
  std::string rho = "1/2";
  std::string seeder = "highdeg";
  double C = 2.0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int cmd_seed(const SeedArgs& a) {
  const auto g = load_edge_list(a.graph);
  const auto rho = Rational::parse(a.rho);
  SeedSet s;
  switch (parse_seeder(a.seeder)) {
    case SeederKind::highdeg:
      s = highdeg_seeder(g, rho);
      break;
    case SeederKind::random_repair:
      s = random_repair_seeder(g, rho, a.C, RngSeed{a.seed, 0});
      break;
  }
  emit(a.out, [&](std::ostream& os) { os << format_seeds(s.vertices) << '\n'; });
  std::cerr << "budget: " << *s.budget << '\n';
  return kOk;
}

struct SweepArgs {
  std::string generator = "er";
  std::vector<std::size_t> ns;
  std::vector<std::string> rhos;
  std::vector<double> ps, p_mults, gammas, Cs;
  std::vector<std::size_t> degrees;
  std::size_t trials = 1;
  std::string seeder = "random-repair";
  double repair_c = 2.0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t max_retries = 16;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  SweepSpec spec;
  spec.generator = parse_generator(a.generator);
  spec.ns = a.ns;
  spec.rhos = parse_rhos(a.rhos);
  spec.trials = a.trials;
  spec.seeder = parse_seeder(a.seeder);
  spec.base_seed = a.seed;
  spec.ps = a.ps;
  spec.p_multipliers = a.p_mults;
  spec.gammas = a.gammas;
  spec.tail_constants = a.Cs;
  spec.degrees = a.degrees;
  spec.repair_c = a.repair_c;
  spec.threads = a.threads;
  spec.max_retries = a.max_retries;
  for (double g : spec.gammas) {
    if (!(g > 2.0)) throw UsageError("--gamma must exceed 2");
  }
  spec.validate();
  const auto rows = run_sweep(spec);
  emit(a.out, [&](std::ostream& os) { write_csv(os, rows); });
  std::cerr << "wrote " << rows.size() << " rows\n";
  return kOk;
}

struct FitArgs {
  std::string csv;
  double ceiling = 100.0;
  std::string dat;
};

int cmd_fit(const FitArgs& a) {
  std::ifstream in(a.csv);
  if (!in) throw std::ios_base::failure("cannot open " + a.csv);
  const auto rows = read_csv(in);
  const auto groups = fit_groups(rows, a.ceiling);
  write_fit_report(std::cout, groups);
  const auto dat = a.dat.empty() ? a.csv + ".dat" : a.dat;
  emit(dat, [&](std::ostream& os) { write_fit_dat(os, rows); });
  return kOk;
}

struct OracleArgs {
  std::string graph;
  std::string rho = "1/2";
  std::size_t k_max = 1;
  std::string mode = "sync";
};

int cmd_oracle(const OracleArgs& a) {
  const auto g = load_edge_list(a.graph);
  const auto curve = min_seed_curve(g, Rational::parse(a.rho), a.k_max, parse_mode(a.mode));
  for (const auto& r : curve) {
    std::cout << "k=" << r.k << " min_seed=" << r.minimum << " witness " << format_seeds(r.witness) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible threshold cascade laboratory"};
  app.require_subcommand(1);
  int status = kOk;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated graph as an edge list");
  generate->add_option("--generator", gen.generator, "er | powerlaw | circulant")->capture_default_str();
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--p", gen.p, "Edge probability (er)");
  generate->add_option("--gamma", gen.gamma, "Tail exponent > 2 (powerlaw)")->capture_default_str();
  generate->add_option("--C", gen.C, "Tail constant >= 1 (powerlaw)")->capture_default_str();
  generate->add_option("--d", gen.d, "Even degree (circulant)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Base RNG seed");
  generate->add_option("--trial", gen.trial, "Trial index mixed into the seed");
  generate->add_option("--max-retries", gen.max_retries, "Generation attempts (powerlaw)")->capture_default_str();
  generate->add_option("--out", gen.out, "Output path, - for stdout")->capture_default_str();
  generate->callback([&] { status = cmd_generate(gen); });

  CascadeArgs cas;
  auto* cascade = app.add_subcommand("cascade", "Run a cascade and summarize its termination");
  cascade->add_option("--graph", cas.graph, "Edge-list file")->required();
  cascade->add_option("--seeds", cas.seeds, "Seed ids, e.g. \"0,3,5\" or \"seeds 2: 0 1\"");
  cascade->add_option("--seeds-file", cas.seeds_file, "File holding a 'seeds k: ...' line");
  cascade->add_flag("--all-seeds", cas.all_seeds, "Seed every vertex");
  cascade->add_option("--rho", cas.rho, "Threshold as a/b")->capture_default_str();
  cascade->add_option("--mode", cas.mode, "sync | async | irrev")->capture_default_str();
  cascade->add_option("--scheduler", cas.scheduler, "round-robin | uniform | greedy-deactivate | full-sweep")
      ->capture_default_str();
  cascade->add_option("--seed", cas.seed, "Scheduler RNG seed");
  cascade->add_option("--max-steps", cas.budget, "Round/step budget (default 4n+16)");
  cascade->add_flag("--trace", cas.trace, "Dump every state as hex");
  cascade->callback([&] { status = cmd_cascade(cas); });

  SeedArgs sd;
  auto* seed = app.add_subcommand("seed", "Build a seed set");
  seed->add_option("--graph", sd.graph, "Edge-list file")->required();
  seed->add_option("--rho", sd.rho, "Threshold as a/b")->capture_default_str();
  seed->add_option("--seeder", sd.seeder, "highdeg | random-repair")->capture_default_str();
  seed->add_option("--C", sd.C, "Sampling constant C > 1 (random-repair)")->capture_default_str();
  seed->add_option("--seed", sd.seed, "RNG seed");
  seed->add_option("--out", sd.out, "Output path, - for stdout")->capture_default_str();
  seed->callback([&] { status = cmd_seed(sd); });

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write CSV");
  sweep->add_option("--generator", sw.generator, "er | powerlaw | circulant")->capture_default_str();
  sweep->add_option("--n", sw.ns, "Vertex counts")->delimiter(',');
  sweep->add_option("--rho", sw.rhos, "Thresholds a/b")->delimiter(',');
  sweep->add_option("--p", sw.ps, "Fixed edge probabilities (er)")->delimiter(',');
  sweep->add_option("--p-mult", sw.p_mults, "p = mult ln(e/rho)/(rho n) (er)")->delimiter(',');
  sweep->add_option("--gamma", sw.gammas, "Tail exponents (powerlaw)")->delimiter(',');
  sweep->add_option("--C", sw.Cs, "Tail constants (powerlaw)")->delimiter(',');
  sweep->add_option("--d", sw.degrees, "Degrees (circulant)")->delimiter(',');
  sweep->add_option("--trials", sw.trials)->capture_default_str();
  sweep->add_option("--seeder", sw.seeder, "highdeg | random-repair")->capture_default_str();
  sweep->add_option("--repair-c", sw.repair_c, "C of the random-repair sampler")->capture_default_str();
  sweep->add_option("--seed", sw.seed, "Base RNG seed");
  sweep->add_option("--threads", sw.threads, "Worker threads, 0 = all cores")->capture_default_str();
  sweep->add_option("--max-retries", sw.max_retries, "Generation attempts per row (powerlaw)")->capture_default_str();
  sweep->add_option("--out", sw.out, "CSV path, - for stdout")->required();
  sweep->callback([&] { status = cmd_sweep(sw); });

  FitArgs ft;
  auto* fit = app.add_subcommand("fit", "Summarize seed_count / theory_scale per group");
  fit->add_option("csv", ft.csv, "Sweep CSV")->required();
  fit->add_option("--ceiling", ft.ceiling, "Flag groups whose max ratio exceeds this")->capture_default_str();
  fit->add_option("--dat", ft.dat, "Plot data path (default <csv>.dat)");
  fit->callback([&] { status = cmd_fit(ft); });

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact min-seed curve for graphs up to 24 vertices");
  oracle->add_option("--graph", orc.graph, "Edge-list file")->required();
  oracle->add_option("--rho", orc.rho, "Threshold as a/b")->capture_default_str();
  oracle->add_option("--k-max", orc.k_max, "Largest round budget")->capture_default_str();
  oracle->add_option("--mode", orc.mode, "sync | irrev")->capture_default_str();
  oracle->callback([&] { status = cmd_oracle(orc); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const GuaranteeViolation& e) {
    std::cerr << "guarantee violation: " << e.what() << "\n  " << kCsvHeader << "\n  "
              << format_csv_row(e.record()) << '\n';
    return kGuarantee;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const CsvError& e) {
    std::cerr << "csv error: " << e.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const GenerationError& e) {
    std::cerr << "generator failure: " << e.what() << " (best tail constant " << e.best_tail_constant() << ")\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
