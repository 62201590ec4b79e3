#include "point.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"
#include "ordinal.hpp"

namespace seqhyper {

Point Point::nat(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative natural");
  return Point{PointKind::kNat, {n}, {}};
}

Point Point::filter_point() { return Point{PointKind::kFilter, {}, {}}; }

Point Point::gen(std::int64_t g) { return Point{PointKind::kGen, {g}, {}}; }

Point Point::dyadic(std::int64_t num, std::int64_t exp) {
  if (exp < 0 || exp > 62 || num < 0 || num >= (std::int64_t{1} << exp)) {
    throw Error(ErrorCode::kInvalidArgument, "dyadic out of range");
  }
  std::vector<std::int64_t> bits(static_cast<std::size_t>(exp));
  for (std::int64_t j = 0; j < exp; ++j) bits[j] = (num >> (exp - 1 - j)) & 1;
  return dyadic_bits(std::move(bits));
}

Point Point::dyadic_bits(std::vector<std::int64_t> bits) {
  for (auto b : bits) {
    if (b != 0 && b != 1) throw Error(ErrorCode::kInvalidArgument, "dyadic digit must be 0 or 1");
  }
  while (!bits.empty() && bits.back() == 0) bits.pop_back();
  return Point{PointKind::kDyadic, std::move(bits), {}};
}

Point Point::dup(Point base, int bit) {
  return Point{PointKind::kDup, {bit}, {std::move(base)}};
}

Point Point::sum(int side, Point inner) {
  return Point{PointKind::kSum, {side}, {std::move(inner)}};
}

std::int64_t Point::nat_value() const {
  if (kind != PointKind::kNat) throw Error(ErrorCode::kInvalidArgument, "not a natural");
  return ints[0];
}

std::string Point::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case PointKind::kNat: os << ints[0]; break;
    case PointKind::kFilter: os << "F"; break;
    case PointKind::kGen: os << "A" << ints[0]; break;
    case PointKind::kOrdinal: os << Ordinal::from_point(*this).to_string(); break;
    case PointKind::kDyadic:
      os << "0.";
      for (auto b : ints) os << b;
      if (ints.empty()) os << "0";
      os << "b";
      break;
    case PointKind::kDup: os << "(" << kids[0].to_string() << "," << ints[0] << ")"; break;
    case PointKind::kSum: os << (ints[0] == 0 ? "L:" : "R:") << kids[0].to_string(); break;
    case PointKind::kSigma: {
      os << "{";
      for (std::size_t i = 0; i < ints.size(); ++i) {
        if (i) os << ",";
        os << ints[i] << "->" << kids[i].to_string();
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

bool contains_point(const PointList& list, const Point& p) {
  return std::find(list.begin(), list.end(), p) != list.end();
}

std::strong_ordering Point::operator<=>(const Point& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(ints.begin(), ints.end(), o.ints.begin(), o.ints.end());
      c != 0) {
    return c;
  }
  if (auto c = std::lexicographical_compare_three_way(kids.begin(), kids.end(), o.kids.begin(), o.kids.end());
      c != 0) {
    return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace seqhyper
