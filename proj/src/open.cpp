#include "open.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace seqhyper {

Open Open::whole() { return Open{}; }

Open Open::singleton(Point p) { return Open{OpenKind::kSingleton, {}, {std::move(p)}, {}}; }

Open Open::minus(Open u, PointList removed) {
  if (u.kind == OpenKind::kMinus) {
    removed.insert(removed.end(), u.points.begin(), u.points.end());
    Open inner = u.kids[0];
    return minus(std::move(inner), std::move(removed));
  }
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
  if (removed.empty()) return u;
  return Open{OpenKind::kMinus, {}, std::move(removed), {std::move(u)}};
}

Open Open::complement(Open u) { return Open{OpenKind::kComplement, {}, {}, {std::move(u)}}; }

Open Open::xi_nbhd(std::int64_t k) { return Open{OpenKind::kXiNbhd, {k}, {}, {}}; }

Open Open::psi_gen(std::int64_t g) { return Open{OpenKind::kPsiGen, {g}, {}, {}}; }

Open Open::psi_off_gen() { return Open{OpenKind::kPsiOffGen, {}, {}, {}}; }

Open Open::dy_interval(std::int64_t p, std::int64_t k) {
  if (k < 0 || k > 62 || p < 0 || p >= (std::int64_t{1} << k)) {
    throw Error(ErrorCode::kInvalidArgument, "dyadic interval out of range");
  }
  std::vector<std::int64_t> bits(static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j) bits[j] = (p >> (k - 1 - j)) & 1;
  return dy_prefix(std::move(bits));
}

Open Open::dy_prefix(std::vector<std::int64_t> prefix) {
  for (auto b : prefix) {
    if (b != 0 && b != 1) throw Error(ErrorCode::kInvalidArgument, "prefix digit must be 0 or 1");
  }
  return Open{OpenKind::kDyInterval, std::move(prefix), {}, {}};
}

Open Open::ord_interval(std::optional<Point> lo, Point hi) {
  Open o{OpenKind::kOrdInterval, {lo ? 1 : 0}, {}, {}};
  if (lo) o.points.push_back(std::move(*lo));
  o.points.push_back(std::move(hi));
  return o;
}

Open Open::sigma_box(const std::map<std::int64_t, std::vector<std::int64_t>>& prefixes) {
  Open o{OpenKind::kSigmaBox, {}, {}, {}};
  for (const auto& [id, bits] : prefixes) {
    if (bits.empty()) continue;
    o.ints.push_back(id);
    o.kids.push_back(dy_prefix(bits));
  }
  return o;
}

Open Open::hat(Open u) { return Open{OpenKind::kHat, {}, {}, {std::move(u)}}; }

Open Open::sum_side(int side, Open u) { return Open{OpenKind::kSumSide, {side}, {}, {std::move(u)}}; }

namespace {

std::string bits_string(const std::vector<std::int64_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace

std::string Open::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case OpenKind::kWhole: os << "X"; break;
    case OpenKind::kSingleton: os << "{" << points[0].to_string() << "}"; break;
    case OpenKind::kMinus: {
      os << kids[0].to_string() << "\\{";
      for (std::size_t i = 0; i < points.size(); ++i) os << (i ? "," : "") << points[i].to_string();
      os << "}";
      break;
    }
    case OpenKind::kComplement: os << "X\\(" << kids[0].to_string() << ")"; break;
    case OpenKind::kXiNbhd: os << "F+B" << ints[0]; break;
    case OpenKind::kPsiGen: os << "A" << ints[0] << "+pt"; break;
    case OpenKind::kPsiOffGen: os << "N\\UA"; break;
    case OpenKind::kOrdInterval:
      if (ints[0]) os << "(" << points[0].to_string() << "," << points[1].to_string() << "]";
      else os << "[0," << points[0].to_string() << "]";
      break;
    case OpenKind::kDyInterval: os << "[" << bits_string(ints) << "*)"; break;
    case OpenKind::kHat: os << "hat(" << kids[0].to_string() << ")"; break;
    case OpenKind::kSumSide: os << (ints[0] == 0 ? "L:" : "R:") << kids[0].to_string(); break;
    case OpenKind::kSigmaBox: {
      os << "box{";
      for (std::size_t i = 0; i < ints.size(); ++i) {
        os << (i ? "," : "") << ints[i] << ":" << bits_string(kids[i].ints);
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

std::strong_ordering Open::operator<=>(const Open& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(ints.begin(), ints.end(), o.ints.begin(), o.ints.end());
      c != 0) {
    return c;
  }
  if (auto c = std::lexicographical_compare_three_way(points.begin(), points.end(), o.points.begin(), o.points.end());
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
