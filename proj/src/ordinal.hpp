#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "point.hpp"

namespace seqhyper {

// Ordinal below epsilon_0 in Cantor normal form:
//   omega^e_0 * c_0 + ... + omega^e_k * c_k,  e_0 > ... > e_k, c_i > 0.
class Ordinal {
 public:
  Ordinal() = default;  // zero

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_pow(const Ordinal& e, std::uint64_t coeff = 1);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;  // requires is_finite()

  std::size_t term_count() const { return coeffs_.size(); }
  const Ordinal& exponent(std::size_t i) const { return exps_[i]; }
  std::uint64_t coefficient(std::size_t i) const { return coeffs_[i]; }

  // Ordinal sum (non-commutative).
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  Ordinal plus(std::uint64_t n) const { return *this + finite(n); }
  Ordinal predecessor() const;  // requires is_successor()

  // k-th element of the standard fundamental sequence of a limit ordinal;
  // strictly increasing in k with supremum *this.
  Ordinal fundamental(std::uint64_t k) const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  Point to_point() const;
  static Ordinal from_point(const Point& p);

  std::string to_string() const;

 private:
  void push_term(const Ordinal& e, std::uint64_t c);

  std::vector<Ordinal> exps_;
  std::vector<std::uint64_t> coeffs_;
};

}  // namespace seqhyper
