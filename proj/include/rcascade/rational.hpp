#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rcascade {

// Activation fraction kept as an exact fraction so that threshold tests
// never go through floating point.
class Rational {
public:
  // Requires 0 < num <= den; throws std::invalid_argument otherwise.
  Rational(std::uint64_t num, std::uint64_t den);

  // Parses "a/b" or a bare integer "1".
  static Rational parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // True iff active / degree >= num/den, i.e. den*active >= num*degree.
  bool reached(std::uint64_t active, std::uint64_t degree) const {
    return den_ * active >= num_ * degree;
  }

  // Smallest active count satisfying reached(., degree): ceil(rho * degree).
  std::uint64_t min_active(std::uint64_t degree) const {
    return (num_ * degree + den_ - 1) / den_;
  }

  // degree > 1/rho  <=>  num*degree > den
  bool exceeds_inverse(std::uint64_t degree) const { return num_ * degree > den_; }

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;

private:
  std::uint64_t num_;
  std::uint64_t den_;
};

}  // namespace rcascade
