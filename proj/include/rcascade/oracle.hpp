#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcascade/cascade.hpp"
#include "rcascade/graph.hpp"
#include "rcascade/rational.hpp"

namespace rcascade {

inline constexpr std::size_t kOracleMaxVertices = 24;

struct OracleResult {
  std::size_t minimum = 0;
  VertexSet witness;
  std::size_t k = 0;
  // Subsets whose cascade was simulated.
  std::uint64_t explored = 0;
};

// Smallest W with Active^(k)(W) = V, by enumerating subsets in increasing
// size and lexicographic order inside a size; the first hit is the witness.
// mode must be reversible_sync or irreversible. Throws std::invalid_argument
// for n > kOracleMaxVertices or an async mode.
OracleResult min_seed_exact(const Graph& g, const Rational& rho, std::size_t k,
                            CascadeMode mode = CascadeMode::reversible_sync);

// Entry k equals min_seed_exact(g, rho, k, mode), computed in one pass.
std::vector<OracleResult> min_seed_curve(const Graph& g, const Rational& rho, std::size_t k_max,
                                         CascadeMode mode = CascadeMode::reversible_sync);

}  // namespace rcascade
