#include "rcascade/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace rcascade {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den == 0 || num == 0 || num > den) {
    throw std::invalid_argument("rho must lie in (0,1], got " + std::to_string(num) + "/" +
                                std::to_string(den));
  }
  // Keep products den*count small enough for any realistic degree.
  if (den > (std::uint64_t{1} << 31)) {
    throw std::invalid_argument("rho denominator too large");
  }
  const auto g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_u64(text, text), 1);
  }
  return Rational(parse_u64(text.substr(0, slash), text), parse_u64(text.substr(slash + 1), text));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace rcascade
