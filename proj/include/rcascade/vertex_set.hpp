#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rcascade {

using Vertex = std::uint32_t;

// Dense bitset over the vertex ids 0..n-1.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexSet(std::size_t n, std::initializer_list<Vertex> members);
  VertexSet(std::size_t n, std::span<const Vertex> members);

  static VertexSet full(std::size_t n);

  std::size_t universe() const { return n_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool all() const { return count() == n_; }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void set(Vertex v, bool on) { on ? insert(v) : erase(v); }

  VertexSet& operator|=(const VertexSet& other);
  bool is_subset_of(const VertexSet& other) const;

  std::vector<Vertex> members() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t hash() const;

  // Most significant nibble first, vertex 0 in the lowest bit, ceil(n/4) digits.
  std::string to_hex() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rcascade
