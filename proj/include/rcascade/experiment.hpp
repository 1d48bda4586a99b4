#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcascade/graph.hpp"
#include "rcascade/rational.hpp"

namespace rcascade {

enum class GeneratorKind { er, powerlaw, circulant };
enum class SeederKind { highdeg, random_repair };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator(std::string_view name);
std::string_view to_string(SeederKind kind);
SeederKind parse_seeder(std::string_view name);

// Grid = ns x (generator parameters) x rhos, each point repeated `trials` times.
struct SweepSpec {
  GeneratorKind generator = GeneratorKind::er;
  std::vector<std::size_t> ns;
  std::vector<Rational> rhos;
  std::size_t trials = 1;
  SeederKind seeder = SeederKind::random_repair;
  std::uint64_t base_seed = 0;

  // er: either fixed edge probabilities, or p = mult * ln(e/rho) / (rho n)
  // per multiplier (capped at 1).
  std::vector<double> ps;
  std::vector<double> p_multipliers;
  // powerlaw
  std::vector<double> gammas;
  std::vector<double> tail_constants;
  std::size_t max_retries = 16;
  // circulant
  std::vector<std::size_t> degrees;

  // The C > 1 of the random-repair sampling probability 8 C rho.
  double repair_c = 2.0;
  // Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  // Throws std::invalid_argument on an empty grid or zero trials.
  void validate() const;
  std::size_t num_rows() const;
};

struct ExperimentRecord {
  std::size_t trial = 0;
  std::string generator;
  std::string params;
  Rational rho{1, 1};
  std::string seeder;
  std::size_t seed_count = 0;
  std::size_t budget = 0;
  double theory_scale = 0.0;
  std::optional<std::size_t> rounds_to_full;
  bool monotone = true;
  std::uint64_t rng_seed = 0;

  // Not serialized.
  std::size_t n = 0;
  std::optional<std::size_t> diameter;
};

// A seeder broke one of its proven guarantees.
class GuaranteeViolation : public std::runtime_error {
public:
  GuaranteeViolation(const std::string& what, ExperimentRecord record)
      : std::runtime_error(what), record_(std::move(record)) {}
  const ExperimentRecord& record() const { return record_; }

private:
  ExperimentRecord record_;
};

class CsvError : public std::runtime_error {
public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

inline constexpr const char* kCsvHeader =
    "trial,generator,params,rho,seeder,seed_count,budget,theory_scale,rounds_to_full,monotone,rng_seed";

// Seed of row i: splitmix64(splitmix64(base) ^ i).
std::uint64_t row_seed(std::uint64_t base, std::size_t row);

// ln(e/rho) * mult / (rho n), clamped to [0, 1].
double er_probability(const Rational& rho, std::size_t n, double multiplier);

// Runs every grid point and trial; rows come back in grid order whatever the
// completion order. Throws GuaranteeViolation for the first failing row.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec);

// Sum of d(v) over d(v) > 1/rho, and the integral bound
// C n (1/rho - 1)^(2-gamma) / (gamma - 2) that caps it for graphs meeting the
// degree-tail condition (infinite when rho = 1).
struct TailMassCheck {
  double high_degree_mass = 0.0;
  double integral_bound = 0.0;
  bool holds() const { return high_degree_mass <= integral_bound; }
};
TailMassCheck tail_mass_check(const Graph& g, const Rational& rho, double gamma, double C);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows);
std::string format_csv_row(const ExperimentRecord& row);
// Validates the header and each row's invariants; throws CsvError.
std::vector<ExperimentRecord> read_csv(std::istream& in);

struct FitGroup {
  std::string generator;
  std::string seeder;
  std::size_t rows = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  bool over_ceiling = false;
};

// seed_count / theory_scale per (generator, seeder) group.
std::vector<FitGroup> fit_groups(const std::vector<ExperimentRecord>& rows, double ceiling);
void write_fit_report(std::ostream& out, const std::vector<FitGroup>& groups);
// Plot data: one block per (generator, seeder, n); lines "rho median max".
void write_fit_dat(std::ostream& out, const std::vector<ExperimentRecord>& rows);

double median(std::vector<double> values);

}  // namespace rcascade
