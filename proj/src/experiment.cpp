#include "rcascade/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "rcascade/cascade.hpp"
#include "rcascade/generators.hpp"
#include "rcascade/rng.hpp"
#include "rcascade/seeders.hpp"

namespace rcascade {

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::er: return "er";
    case GeneratorKind::powerlaw: return "powerlaw";
    case GeneratorKind::circulant: return "circulant";
  }
  return "unknown";
}

GeneratorKind parse_generator(std::string_view name) {
  if (name == "er") return GeneratorKind::er;
  if (name == "powerlaw") return GeneratorKind::powerlaw;
  if (name == "circulant") return GeneratorKind::circulant;
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

std::string_view to_string(SeederKind kind) {
  switch (kind) {
    case SeederKind::highdeg: return "highdeg";
    case SeederKind::random_repair: return "random-repair";
  }
  return "unknown";
}

SeederKind parse_seeder(std::string_view name) {
  if (name == "highdeg") return SeederKind::highdeg;
  if (name == "random-repair") return SeederKind::random_repair;
  throw std::invalid_argument("unknown seeder '" + std::string(name) + "'");
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// One generator parameter point, before n and rho are applied.
struct GenPoint {
  double p = -1.0;
  double p_mult = -1.0;
  double gamma = 0.0;
  double C = 0.0;
  std::size_t degree = 0;
};

std::vector<GenPoint> generator_points(const SweepSpec& spec) {
  std::vector<GenPoint> pts;
  switch (spec.generator) {
    case GeneratorKind::er:
      for (double p : spec.ps) pts.push_back({.p = p});
      for (double m : spec.p_multipliers) pts.push_back({.p_mult = m});
      break;
    case GeneratorKind::powerlaw:
      for (double g : spec.gammas) {
        for (double c : spec.tail_constants) pts.push_back({.gamma = g, .C = c});
      }
      break;
    case GeneratorKind::circulant:
      for (auto d : spec.degrees) pts.push_back({.degree = d});
      break;
  }
  return pts;
}

struct RowPlan {
  std::size_t n;
  GenPoint point;
  Rational rho;
  std::size_t trial;
};

std::vector<RowPlan> plan_rows(const SweepSpec& spec) {
  std::vector<RowPlan> rows;
  const auto pts = generator_points(spec);
  for (auto n : spec.ns) {
    for (const auto& pt : pts) {
      for (const auto& rho : spec.rhos) {
        for (std::size_t t = 0; t < spec.trials; ++t) rows.push_back({n, pt, rho, t});
      }
    }
  }
  return rows;
}

ExperimentRecord run_row(const SweepSpec& spec, const RowPlan& plan, std::size_t index) {
  ExperimentRecord rec;
  rec.trial = plan.trial;
  rec.generator = std::string(to_string(spec.generator));
  rec.rho = plan.rho;
  rec.seeder = std::string(to_string(spec.seeder));
  rec.rng_seed = row_seed(spec.base_seed, index);
  rec.n = plan.n;
  const RngSeed graph_seed{rec.rng_seed, 0};
  const RngSeed seeder_seed{rec.rng_seed, 1};
  const double rho = plan.rho.value();
  const double n = static_cast<double>(plan.n);

  Graph g;
  switch (spec.generator) {
    case GeneratorKind::er: {
      const double p = plan.point.p >= 0.0 ? plan.point.p : er_probability(plan.rho, plan.n, plan.point.p_mult);
      g = gen_er({plan.n, p}, graph_seed);
      rec.params = "n=" + std::to_string(plan.n) + " p=" + fmt_double(p);
      if (plan.point.p_mult >= 0.0) rec.params += " mult=" + fmt_double(plan.point.p_mult);
      rec.theory_scale = rho * n;
      break;
    }
    case GeneratorKind::powerlaw: {
      const PowerLawParams params{plan.n, plan.point.gamma, plan.point.C};
      g = gen_powerlaw_connected(params, graph_seed, spec.max_retries);
      rec.params = "n=" + std::to_string(plan.n) + " gamma=" + fmt_double(params.gamma) +
                   " C=" + fmt_double(params.C);
      rec.theory_scale = std::pow(rho, params.gamma - 1.0) * n;
      const auto mass = tail_mass_check(g, plan.rho, params.gamma, params.C);
      if (!mass.holds()) {
        throw GuaranteeViolation("high-degree mass " + fmt_double(mass.high_degree_mass) +
                                     " exceeds integral bound " + fmt_double(mass.integral_bound),
                                 rec);
      }
      break;
    }
    case GeneratorKind::circulant:
      g = gen_circulant(plan.n, plan.point.degree);
      rec.params = "n=" + std::to_string(plan.n) + " d=" + std::to_string(plan.point.degree);
      rec.theory_scale = rho * n;
      break;
  }

  const RunOptions quiet{.record_states = false};
  const ThresholdConfig cfg{plan.rho, CascadeMode::reversible_sync};
  switch (spec.seeder) {
    case SeederKind::highdeg: {
      const auto seeds = highdeg_seeder(g, plan.rho);
      rec.seed_count = seeds.size();
      rec.budget = *seeds.budget;
      rec.diameter = diameter(g);
      const auto trace = run_sync(g, seeds.vertices, cfg, std::nullopt, quiet);
      rec.rounds_to_full = trace.rounds_to_full;
      rec.monotone = trace.monotone;
      if (rec.seed_count > rec.budget) throw GuaranteeViolation("seed count exceeds budget", rec);
      if (!rec.rounds_to_full || *rec.rounds_to_full > *rec.diameter) {
        throw GuaranteeViolation("high-degree seeds did not activate all vertices within the diameter", rec);
      }
      if (!rec.monotone) throw GuaranteeViolation("high-degree cascade deactivated a vertex", rec);
      break;
    }
    case SeederKind::random_repair: {
      const auto seeds = random_repair_seeder(g, plan.rho, spec.repair_c, seeder_seed);
      rec.seed_count = seeds.size();
      rec.budget = *seeds.budget;
      const auto trace = run_sync(g, seeds.vertices, cfg, 2, quiet);
      rec.rounds_to_full = trace.rounds_to_full;
      rec.monotone = trace.monotone;
      if (!rec.rounds_to_full || *rec.rounds_to_full > 1) {
        throw GuaranteeViolation("random-repair seeds did not activate all vertices by round 1", rec);
      }
      break;
    }
  }
  return rec;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (ns.empty()) throw std::invalid_argument("sweep grid has no vertex counts");
  if (rhos.empty()) throw std::invalid_argument("sweep grid has no rho values");
  if (trials == 0) throw std::invalid_argument("sweep needs at least one trial");
  if (generator_points(*this).empty()) {
    throw std::invalid_argument("sweep grid has no " + std::string(to_string(generator)) + " parameters");
  }
  if (seeder == SeederKind::random_repair && !(repair_c > 1.0)) {
    throw std::invalid_argument("random repair needs C > 1");
  }
}

std::size_t SweepSpec::num_rows() const {
  return ns.size() * generator_points(*this).size() * rhos.size() * trials;
}

std::uint64_t row_seed(std::uint64_t base, std::size_t row) { return RngSeed{base, row}.stream(); }

double er_probability(const Rational& rho, std::size_t n, double multiplier) {
  const double r = rho.value();
  const double p = multiplier * (1.0 - std::log(r)) / (r * static_cast<double>(n));
  return std::clamp(p, 0.0, 1.0);
}

TailMassCheck tail_mass_check(const Graph& g, const Rational& rho, double gamma, double C) {
  TailMassCheck check;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (rho.exceeds_inverse(g.degree(v))) check.high_degree_mass += static_cast<double>(g.degree(v));
  }
  const double lower = 1.0 / rho.value() - 1.0;
  check.integral_bound = lower <= 0.0 ? std::numeric_limits<double>::infinity()
                                      : C * static_cast<double>(g.num_vertices()) *
                                            std::pow(lower, 2.0 - gamma) / (gamma - 2.0);
  return check;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto plans = plan_rows(spec);
  std::vector<std::optional<ExperimentRecord>> rows(plans.size());
  std::vector<std::exception_ptr> errors(plans.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < plans.size(); i = next++) {
      try {
        rows[i] = run_row(spec, plans[i], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, plans.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::vector<ExperimentRecord> out;
  out.reserve(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*rows[i]));
  }
  return out;
}

std::string format_csv_row(const ExperimentRecord& r) {
  std::string line = std::to_string(r.trial) + "," + r.generator + "," + r.params + "," + r.rho.str() + "," +
                     r.seeder + "," + std::to_string(r.seed_count) + "," + std::to_string(r.budget) + "," +
                     fmt_double(r.theory_scale) + "," +
                     (r.rounds_to_full ? std::to_string(*r.rounds_to_full) : std::string("never")) + "," +
                     (r.monotone ? "true" : "false") + "," + std::to_string(r.rng_seed);
  return line;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_csv_row(r) << '\n';
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw CsvError(1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError(1, "unexpected header '" + line + "'");

  std::vector<ExperimentRecord> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 11) {
      throw CsvError(lineno, "expected 11 columns, found " + std::to_string(cells.size()));
    }
    ExperimentRecord r;
    try {
      r.trial = std::stoull(cells[0]);
      r.generator = cells[1];
      r.params = cells[2];
      r.rho = Rational::parse(cells[3]);
      r.seeder = cells[4];
      r.seed_count = std::stoull(cells[5]);
      r.budget = std::stoull(cells[6]);
      r.theory_scale = std::stod(cells[7]);
      if (cells[8] != "never") r.rounds_to_full = std::stoull(cells[8]);
      if (cells[9] != "true" && cells[9] != "false") throw std::invalid_argument("monotone flag");
      r.monotone = cells[9] == "true";
      r.rng_seed = std::stoull(cells[10]);
    } catch (const std::exception& e) {
      throw CsvError(lineno, std::string("malformed row: ") + e.what());
    }
    std::istringstream params(r.params);
    std::string tok;
    while (params >> tok) {
      if (tok.rfind("n=", 0) == 0) r.n = std::stoull(tok.substr(2));
    }
    if (!(r.theory_scale > 0.0)) throw CsvError(lineno, "theory_scale must be positive");
    if (r.seeder == "highdeg" && r.seed_count > r.budget) {
      throw CsvError(lineno, "highdeg seed_count exceeds budget");
    }
    if (r.seeder == "random-repair" && (!r.rounds_to_full || *r.rounds_to_full > 1)) {
      throw CsvError(lineno, "random-repair row not all-active by round 1");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<FitGroup> fit_groups(const std::vector<ExperimentRecord>& rows, double ceiling) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> ratios;
  for (const auto& r : rows) {
    ratios[{r.generator, r.seeder}].push_back(static_cast<double>(r.seed_count) / r.theory_scale);
  }
  std::vector<FitGroup> out;
  for (const auto& [key, values] : ratios) {
    FitGroup g;
    g.generator = key.first;
    g.seeder = key.second;
    g.rows = values.size();
    g.max_ratio = *std::max_element(values.begin(), values.end());
    g.median_ratio = median(values);
    g.over_ceiling = g.max_ratio > ceiling;
    out.push_back(g);
  }
  return out;
}

void write_fit_report(std::ostream& out, const std::vector<FitGroup>& groups) {
  for (const auto& g : groups) {
    out << "generator=" << g.generator << " seeder=" << g.seeder << " rows=" << g.rows
        << " max_ratio=" << fmt_double(g.max_ratio) << " median_ratio=" << fmt_double(g.median_ratio)
        << (g.over_ceiling ? " FLAG: max ratio above ceiling" : "") << '\n';
  }
}

void write_fit_dat(std::ostream& out, const std::vector<ExperimentRecord>& rows) {
  // (generator, seeder, n) -> rho value -> (rho text, ratios)
  std::map<std::tuple<std::string, std::string, std::size_t>,
           std::map<double, std::pair<std::string, std::vector<double>>>>
      blocks;
  for (const auto& r : rows) {
    auto& cell = blocks[{r.generator, r.seeder, r.n}][r.rho.value()];
    cell.first = r.rho.str();
    cell.second.push_back(static_cast<double>(r.seed_count) / r.theory_scale);
  }
  bool first = true;
  for (const auto& [key, by_rho] : blocks) {
    if (!first) out << "\n\n";
    first = false;
    out << "# generator=" << std::get<0>(key) << " seeder=" << std::get<1>(key) << " n=" << std::get<2>(key)
        << "\n# rho median_ratio max_ratio\n";
    for (const auto& [rho, cell] : by_rho) {
      const auto& vals = cell.second;
      out << fmt_double(rho) << ' ' << fmt_double(median(vals)) << ' '
          << fmt_double(*std::max_element(vals.begin(), vals.end())) << '\n';
    }
  }
}

}  // namespace rcascade
