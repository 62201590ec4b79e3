#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace seqhyper {

// Structural point codes. Every space interprets only the kinds it owns;
// equality is structural equality of the tree.
enum class PointKind : std::uint8_t {
  kNat,       // ints = {n}
  kFilter,    // the extra point of xi(F)
  kGen,       // ints = {g}, the point of generator g in Psi(A)
  kOrdinal,   // ints = coefficients, kids = exponents (Cantor normal form)
  kDyadic,    // ints = binary digits b_1 b_2 ... of a dyadic in [0,1), no trailing 0
  kDup,       // ints = {bit}, kids = {base point}
  kSum,       // ints = {side}, kids = {summand point}
  kSigma,     // ints = sorted coordinate ids, kids = non-base dyadic values
};

struct Point {
  PointKind kind = PointKind::kNat;
  std::vector<std::int64_t> ints;
  std::vector<Point> kids;

  std::strong_ordering operator<=>(const Point& o) const;
  bool operator==(const Point& o) const { return (*this <=> o) == 0; }

  static Point nat(std::int64_t n);
  static Point filter_point();
  static Point gen(std::int64_t g);
  static Point dyadic(std::int64_t num, std::int64_t exp);
  static Point dyadic_bits(std::vector<std::int64_t> bits);
  static Point dup(Point base, int bit);
  static Point sum(int side, Point inner);

  bool is_nat() const { return kind == PointKind::kNat; }
  std::int64_t nat_value() const;

  std::string to_string() const;
};

using PointList = std::vector<Point>;

bool contains_point(const PointList& list, const Point& p);

}  // namespace seqhyper
