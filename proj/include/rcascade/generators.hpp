#pragma once

#include <cstddef>
#include <stdexcept>

#include "rcascade/graph.hpp"
#include "rcascade/rng.hpp"

namespace rcascade {

struct ErParams {
  std::size_t n = 0;
  double p = 0.0;
};

// Degree-tail target: fraction of degree-k vertices at most C / k^gamma.
struct PowerLawParams {
  std::size_t n = 0;
  double gamma = 2.5;
  double C = 4.0;
};

class GenerationError : public std::runtime_error {
public:
  GenerationError(const std::string& what, double best_tail_constant)
      : std::runtime_error(what), best_tail_constant_(best_tail_constant) {}
  double best_tail_constant() const { return best_tail_constant_; }

private:
  double best_tail_constant_;
};

// G(n, p) by geometric skipping over the pair sequence (Batagelj-Brandes).
Graph gen_er(const ErParams& params, RngSeed seed);

// Connected simple graph whose degree histogram satisfies the tail bound for
// (C, gamma). Degree counts max(floor((C/2) n / k^gamma), 1) for every
// k >= 2 with C n / k^gamma >= 1, the rest degree 1; configuration-model
// pairing, degree-preserving rewiring of loops and multi-edges, then
// degree-preserving swaps to join components.
// Throws std::invalid_argument for bad params, GenerationError when no
// certified graph is found within max_retries attempts.
Graph gen_powerlaw_connected(const PowerLawParams& params, RngSeed seed,
                             std::size_t max_retries = 16);

// v adjacent to v +- 1, ..., v +- d/2 (mod n).
Graph gen_circulant(std::size_t n, std::size_t d);

}  // namespace rcascade
