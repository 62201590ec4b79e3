#pragma once

#include <compare>
#include <map>
#include <optional>
#include <cstdint>
#include <string>
#include <vector>

#include "point.hpp"

namespace seqhyper {

// Syntactic open sets. The first four kinds are understood by every space;
// the rest belong to one space kind each.
enum class OpenKind : std::uint8_t {
  kWhole,        // the whole space
  kSingleton,    // points = {p}; p must be isolated
  kMinus,        // kids = {U}, points = finite set removed from U
  kComplement,   // kids = {U}; U clopen
  kXiNbhd,       // ints = {k}: {filter point} + base(k)
  kPsiGen,       // ints = {g}: {A_g point} + A_g
  kPsiOffGen,    // naturals outside every generator (finite families only)
  kOrdInterval,  // points = {lo?, hi}; ints = {has_lo}: (lo, hi] or [0, hi]
  kDyInterval,   // ints = prefix bits s: dyadics whose expansion starts with s
  kHat,          // kids = {U}: U x {0,1}
  kSumSide,      // ints = {side}, kids = {U}
  kSigmaBox,     // ints = sorted coordinate ids, kids = one kDyInterval per id
};

struct Open {
  OpenKind kind = OpenKind::kWhole;
  std::vector<std::int64_t> ints;
  std::vector<Point> points;
  std::vector<Open> kids;

  std::strong_ordering operator<=>(const Open& o) const;
  bool operator==(const Open& o) const { return (*this <=> o) == 0; }

  static Open whole();
  static Open singleton(Point p);
  static Open minus(Open u, PointList removed);
  static Open complement(Open u);
  static Open xi_nbhd(std::int64_t k);
  static Open psi_gen(std::int64_t g);
  static Open psi_off_gen();
  static Open dy_interval(std::int64_t p, std::int64_t k);  // [p/2^k, (p+1)/2^k)
  static Open dy_prefix(std::vector<std::int64_t> prefix);
  static Open ord_interval(std::optional<Point> lo, Point hi);
  static Open sigma_box(const std::map<std::int64_t, std::vector<std::int64_t>>& prefixes);
  static Open hat(Open u);
  static Open sum_side(int side, Open u);

  std::string to_string() const;
};

using OpenList = std::vector<Open>;

}  // namespace seqhyper
