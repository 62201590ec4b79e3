#include "codec.hpp"

#include <cctype>
#include <map>

#include "filters.hpp"
#include "spaces.hpp"

namespace seqhyper {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::kSchema, what); }

std::string bits_to_string(const std::vector<std::int64_t>& bits) {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::int64_t> bits_from_string(const std::string& s) {
  std::vector<std::int64_t> out;
  for (char c : s) {
    if (c != '0' && c != '1') schema("bit strings use only 0 and 1: \"" + s + "\"");
    out.push_back(c - '0');
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\" in " + j.dump());
  return *it;
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

class OrdinalParser {
 public:
  explicit OrdinalParser(const std::string& s) : s_(s) {}

  Ordinal parse() {
    Ordinal out = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  Ordinal sum() {
    Ordinal out = term();
    while (peek('+')) {
      ++pos_;
      out = out + term();
    }
    return out;
  }

  Ordinal term() {
    Ordinal a = atom();
    if (peek('*')) {
      ++pos_;
      std::uint64_t c = number();
      if (c == 0) return Ordinal();
      Ordinal out;
      for (std::uint64_t i = 0; i < c; ++i) out = out + a;
      return out;
    }
    return a;
  }

  Ordinal atom() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return Ordinal::finite(number());
    if (peek('(')) {
      ++pos_;
      Ordinal inner = sum();
      if (!peek(')')) fail("missing )");
      ++pos_;
      return inner;
    }
    if (peek('w')) {
      ++pos_;
      if (!peek('^')) return Ordinal::omega();
      ++pos_;
      return Ordinal::omega_pow(atom());
    }
    fail("expected a number, w or (");
  }

  std::uint64_t number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoull(s_.substr(start, pos_ - start));
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    schema("ordinal \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Partition partition_named(const std::string& name) {
  if (name == "valuation") return Partition::valuation();
  if (name == "cantor-rows") return Partition::cantor_rows();
  schema("unknown partition \"" + name + "\"");
}

}  // namespace

Ordinal parse_ordinal(const std::string& text) { return OrdinalParser(text).parse(); }

Json point_to_json(const Point& p) {
  switch (p.kind) {
    case PointKind::kNat: return p.ints[0];
    case PointKind::kFilter: return "F";
    case PointKind::kGen: return Json{{"gen", p.ints[0]}};
    case PointKind::kOrdinal: return Json{{"ordinal", Ordinal::from_point(p).to_string()}};
    case PointKind::kDyadic: return "0." + bits_to_string(p.ints) + "b";
    case PointKind::kDup: return Json{{"dup", point_to_json(p.kids[0])}, {"level", p.ints[0]}};
    case PointKind::kSum: return Json{{"side", p.ints[0]}, {"point", point_to_json(p.kids[0])}};
    case PointKind::kSigma: {
      Json m = Json::object();
      for (std::size_t i = 0; i < p.ints.size(); ++i) m[std::to_string(p.ints[i])] = bits_to_string(p.kids[i].ints);
      return Json{{"sigma", m}};
    }
  }
  return nullptr;
}

Point point_from_json(const Json& j) {
  if (j.is_number_integer()) {
    auto n = j.get<std::int64_t>();
    if (n < 0) schema("natural numbers are nonnegative, got " + j.dump());
    return Point::nat(n);
  }
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "F") return Point::filter_point();
    if (s.size() >= 3 && s.rfind("0.", 0) == 0 && s.back() == 'b') {
      std::string body = s.substr(2, s.size() - 3);
      if (body == "0") body.clear();
      return Point::dyadic_bits(bits_from_string(body));
    }
    schema("unrecognised point \"" + s + "\"");
  }
  if (!j.is_object()) schema("unrecognised point " + j.dump());
  if (j.contains("gen")) return Point::gen(as_int(j["gen"], "gen"));
  if (j.contains("ordinal")) return parse_ordinal(field(j, "ordinal").get<std::string>()).to_point();
  if (j.contains("dup")) return Point::dup(point_from_json(j["dup"]), static_cast<int>(as_int(field(j, "level"), "level")));
  if (j.contains("side")) return Point::sum(static_cast<int>(as_int(j["side"], "side")), point_from_json(field(j, "point")));
  if (j.contains("sigma")) {
    std::map<std::int64_t, Bits> m;
    for (auto& [k, v] : j["sigma"].items()) m[std::stoll(k)] = bits_from_string(v.get<std::string>());
    return sigma_point(m);
  }
  schema("unrecognised point " + j.dump());
}

Json open_to_json(const Open& u) {
  switch (u.kind) {
    case OpenKind::kWhole: return "X";
    case OpenKind::kSingleton: return Json{{"singleton", point_to_json(u.points[0])}};
    case OpenKind::kMinus: {
      Json pts = Json::array();
      for (auto& p : u.points) pts.push_back(point_to_json(p));
      return Json{{"minus", open_to_json(u.kids[0])}, {"points", pts}};
    }
    case OpenKind::kComplement: return Json{{"complement", open_to_json(u.kids[0])}};
    case OpenKind::kXiNbhd: return Json{{"xi", u.ints[0]}};
    case OpenKind::kPsiGen: return Json{{"psi", u.ints[0]}};
    case OpenKind::kPsiOffGen: return "offgen";
    case OpenKind::kOrdInterval:
      if (u.ints[0]) return Json{{"ord", Json::array({point_to_json(u.points[0]), point_to_json(u.points[1])})}};
      return Json{{"ord", Json::array({nullptr, point_to_json(u.points[0])})}};
    case OpenKind::kDyInterval: return Json{{"dy", bits_to_string(u.ints)}};
    case OpenKind::kHat: return Json{{"hat", open_to_json(u.kids[0])}};
    case OpenKind::kSumSide: return Json{{"side", u.ints[0]}, {"open", open_to_json(u.kids[0])}};
    case OpenKind::kSigmaBox: {
      Json m = Json::object();
      for (std::size_t i = 0; i < u.ints.size(); ++i) m[std::to_string(u.ints[i])] = bits_to_string(u.kids[i].ints);
      return Json{{"box", m}};
    }
  }
  return nullptr;
}

Open open_from_json(const Json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "X") return Open::whole();
    if (s == "offgen") return Open::psi_off_gen();
    schema("unrecognised open \"" + s + "\"");
  }
  if (!j.is_object()) schema("unrecognised open " + j.dump());
  if (j.contains("singleton")) return Open::singleton(point_from_json(j["singleton"]));
  if (j.contains("minus")) {
    PointList pts;
    for (auto& p : field(j, "points")) pts.push_back(point_from_json(p));
    return Open::minus(open_from_json(j["minus"]), std::move(pts));
  }
  if (j.contains("complement")) return Open::complement(open_from_json(j["complement"]));
  if (j.contains("xi")) return Open::xi_nbhd(as_int(j["xi"], "xi"));
  if (j.contains("psi")) return Open::psi_gen(as_int(j["psi"], "psi"));
  if (j.contains("ord")) {
    const Json& a = j["ord"];
    if (!a.is_array() || a.size() != 2) schema("\"ord\" takes [lo or null, hi], got " + a.dump());
    std::optional<Point> lo;
    if (!a[0].is_null()) lo = point_from_json(a[0]);
    return Open::ord_interval(lo, point_from_json(a[1]));
  }
  if (j.contains("dy")) return Open::dy_prefix(bits_from_string(j["dy"].get<std::string>()));
  if (j.contains("hat")) return Open::hat(open_from_json(j["hat"]));
  if (j.contains("side")) return Open::sum_side(as_int(j["side"], "side"), open_from_json(field(j, "open")));
  if (j.contains("box")) {
    std::map<std::int64_t, std::vector<std::int64_t>> m;
    for (auto& [k, v] : j["box"].items()) m[std::stoll(k)] = bits_from_string(v.get<std::string>());
    return Open::sigma_box(m);
  }
  schema("unrecognised open " + j.dump());
}

Json canonical_to_json(const CanonicalOpen& o) {
  Json arr = Json::array();
  for (auto& u : o.pieces) arr.push_back(open_to_json(u));
  return arr;
}

CanonicalOpen canonical_from_json(const Space& x, const Json& j) {
  if (!j.is_array()) schema("a canonical open is an array of pieces, got " + j.dump());
  OpenList pieces;
  for (auto& u : j) pieces.push_back(open_from_json(u));
  return canonical(x, std::move(pieces));
}

SpacePtr build_space(const Json& d) {
  if (!d.is_object()) schema("a space descriptor is an object, got " + d.dump());
  auto kind = field(d, "kind").get<std::string>();
  if (kind == "xi") {
    auto filter = d.value("filter", std::string("frechet"));
    auto part = partition_named(d.value("partition", std::string("valuation")));
    if (filter == "frechet") return xi_space(frechet_filter());
    if (filter == "partition") return xi_space(partition_filter(part));
    if (filter == "fan") return xi_space(fan_filter(part));
    schema("unknown filter \"" + filter + "\"");
  }
  if (kind == "psi") {
    auto family = d.value("family", std::string("branches"));
    if (family == "branches") return psi_space(AdFamily::branches(static_cast<int>(d.value("depth", 3))));
    if (family == "residues") return psi_space(AdFamily::residues(static_cast<int>(d.value("modulus", 4))));
    schema("unknown family \"" + family + "\"");
  }
  if (kind == "ordinal") return ordinal_segment(parse_ordinal(d.value("alpha", std::string("w^3"))));
  if (kind == "ordinal-blocks") return ordinal_block_subspace(parse_ordinal(d.value("alpha", std::string("w^3"))));
  if (kind == "dyadic") return dyadic_interval_space();
  if (kind == "cantor") return cantor_space();
  if (kind == "sigma") return sigma_product();
  if (kind == "duplicate") return alexandroff_duplicate(build_space(field(d, "base")));
  if (kind == "sum") return disjoint_sum(build_space(field(d, "left")), build_space(field(d, "right")));
  schema("unknown space kind \"" + kind + "\"");
}

}  // namespace seqhyper
