#include "rcascade/vertex_set.hpp"

#include <bit>
#include <stdexcept>

#include "rcascade/rng.hpp"

namespace rcascade {

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members)
    : VertexSet(n, std::span<const Vertex>(members.begin(), members.size())) {}

VertexSet::VertexSet(std::size_t n, std::span<const Vertex> members) : VertexSet(n) {
  for (Vertex v : members) {
    if (v >= n) {
      throw std::out_of_range("vertex " + std::to_string(v) + " outside 0.." +
                              std::to_string(n == 0 ? 0 : n - 1));
    }
    insert(v);
  }
}

VertexSet VertexSet::full(std::size_t n) {
  VertexSet s(n);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (n % 64 != 0) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

std::size_t VertexSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  if (other.n_ != n_) throw std::invalid_argument("vertex set universes differ");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  if (other.n_ != n_) throw std::invalid_argument("vertex set universes differ");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t VertexSet::hash() const {
  std::uint64_t h = splitmix64(n_);
  for (auto w : words_) h = splitmix64(h ^ w);
  return h;
}

std::string VertexSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (n_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t v = d * 4 + b;
      if (v < n_ && contains(static_cast<Vertex>(v))) nibble |= 1U << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

}  // namespace rcascade
