#include "rcascade/oracle.hpp"

#include <bit>
#include <optional>
#include <stdexcept>
#include <string>

namespace rcascade {

namespace {

using Mask = std::uint32_t;

// Bitmask cascade over at most 24 vertices.
class SmallCascade {
public:
  SmallCascade(const Graph& g, const Rational& rho, CascadeMode mode)
      : n_(g.num_vertices()), irreversible_(mode == CascadeMode::irreversible) {
    if (n_ > kOracleMaxVertices) {
      throw std::invalid_argument("exact oracle is capped at " + std::to_string(kOracleMaxVertices) +
                                  " vertices, graph has " + std::to_string(n_));
    }
    if (mode == CascadeMode::reversible_async) {
      throw std::invalid_argument("exact oracle supports sync and irreversible modes only");
    }
    full_ = n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1;
    for (Vertex v = 0; v < n_; ++v) {
      Mask m = 0;
      for (Vertex u : g.in_neighbors(v)) m |= Mask{1} << u;
      in_mask_.push_back(m);
      need_.push_back(static_cast<int>(rho.min_active(g.in_degree(v))));
    }
  }

  std::size_t size() const { return n_; }

  Mask step(Mask state) const {
    Mask next = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      const bool on = in_mask_[v] == 0 ? ((state >> v) & 1U) != 0
                                       : std::popcount(state & in_mask_[v]) >= need_[v];
      if (on) next |= Mask{1} << v;
    }
    return irreversible_ ? (next | state) : next;
  }

  // First round <= k_max in which every vertex is active.
  std::optional<std::size_t> first_full_round(Mask seeds, std::size_t k_max) const {
    Mask state = seeds;
    for (std::size_t r = 0;; ++r) {
      if (state == full_) return r;
      if (r == k_max) return std::nullopt;
      const Mask next = step(state);
      if (next == state) return std::nullopt;
      state = next;
    }
  }

private:
  std::size_t n_;
  bool irreversible_;
  Mask full_ = 0;
  std::vector<Mask> in_mask_;
  std::vector<int> need_;
};

VertexSet to_set(Mask m, std::size_t n) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) {
    if ((m >> v) & 1U) s.insert(v);
  }
  return s;
}

// Calls visit(mask) for every subset in (size, lexicographic) order until it
// returns false.
template <typename Visit>
void for_each_subset(std::size_t n, Visit&& visit) {
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Mask m = 0;
      for (auto i : idx) m |= Mask{1} << i;
      if (!visit(m)) return;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

OracleResult min_seed_exact(const Graph& g, const Rational& rho, std::size_t k, CascadeMode mode) {
  const SmallCascade cascade(g, rho, mode);
  OracleResult result;
  result.k = k;
  std::optional<Mask> hit;
  for_each_subset(cascade.size(), [&](Mask m) {
    ++result.explored;
    if (cascade.first_full_round(m, k)) {
      hit = m;
      return false;
    }
    return true;
  });
  if (!hit) throw std::logic_error("no seed set activates the graph, not even V");
  result.minimum = static_cast<std::size_t>(std::popcount(*hit));
  result.witness = to_set(*hit, cascade.size());
  return result;
}

std::vector<OracleResult> min_seed_curve(const Graph& g, const Rational& rho, std::size_t k_max,
                                         CascadeMode mode) {
  const SmallCascade cascade(g, rho, mode);
  const auto n = cascade.size();
  std::vector<std::optional<Mask>> best(k_max + 1);
  std::uint64_t explored = 0;
  std::size_t unset = k_max + 1;
  for_each_subset(n, [&](Mask m) {
    ++explored;
    if (const auto r = cascade.first_full_round(m, k_max)) {
      for (std::size_t k = *r; k <= k_max && !best[k]; ++k) {
        best[k] = m;
        --unset;
      }
    }
    return unset > 0;
  });

  std::vector<OracleResult> curve(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    curve[k].k = k;
    curve[k].minimum = static_cast<std::size_t>(std::popcount(*best[k]));
    curve[k].witness = to_set(*best[k], n);
    curve[k].explored = explored;
  }
  return curve;
}

}  // namespace rcascade
