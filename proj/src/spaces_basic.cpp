#include <algorithm>

#include "spaces.hpp"

namespace seqhyper {

namespace {

constexpr int kMaxDyadicDepth = 10;
constexpr int kMaxDyadicBasisDepth = 8;

void enumerate_bits(Bits& cur, int remaining, std::vector<Bits>& out) {
  out.push_back(cur);
  if (remaining == 0) return;
  for (std::int64_t b : {0, 1}) {
    cur.push_back(b);
    enumerate_bits(cur, remaining - 1, out);
    cur.pop_back();
  }
}

}  // namespace

Bits dyadic_digits(const Point& p) {
  if (p.kind != PointKind::kDyadic) throw Error(ErrorCode::kInvalidArgument, "not a dyadic point: " + p.to_string());
  return p.ints;
}

Bits padded_prefix(const Point& p, std::size_t len) {
  Bits out(len, 0);
  for (std::size_t i = 0; i < len && i < p.ints.size(); ++i) out[i] = p.ints[i];
  return out;
}

bool has_prefix(const Bits& bits, const Bits& prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    std::int64_t b = i < bits.size() ? bits[i] : 0;
    if (b != prefix[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- xi(F)

bool XiSpace::is_point(const Point& p) const {
  return p.kind == PointKind::kFilter || (p.kind == PointKind::kNat && p.ints.size() == 1 && p.ints[0] >= 0);
}

PointList XiSpace::points(int depth) const {
  PointList out{Point::filter_point()};
  for (int n = 0; n < depth; ++n) out.push_back(Point::nat(n));
  return out;
}

OpenList XiSpace::basis(int depth) const {
  OpenList out;
  for (int k = 0; k < depth; ++k) out.push_back(Open::xi_nbhd(k));
  for (int n = 0; n < depth; ++n) out.push_back(Open::singleton(Point::nat(n)));
  return out;
}

Open XiSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a point of xi(F): " + p.to_string());
  if (p.kind == PointKind::kNat) return Open::singleton(p);
  return Open::xi_nbhd(k);
}

TermFn XiSpace::canonical_sequence(const Point& p) const {
  if (p.kind != PointKind::kFilter) throw Error(ErrorCode::kPrecondition, "only the filter point is non-isolated");
  FilterPresentation f = filter_;
  return [f](std::size_t i) { return Point::nat(f.diagonal_term(i)); };
}

std::int64_t XiSpace::nbhd_index(const Open& u) const {
  if (u.kind == OpenKind::kWhole) return 0;
  if (u.kind != OpenKind::kXiNbhd) foreign_open(u);
  return u.ints[0];
}

bool XiSpace::member_impl(const Open& u, const Point& p) const {
  std::int64_t k = nbhd_index(u);
  if (p.kind == PointKind::kFilter) return true;
  return filter_.in_base(k, p.nat_value());
}

PointList XiSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  std::int64_t k = nbhd_index(u);
  PointList out{Point::filter_point()};
  std::int64_t m = -1;
  for (int i = 0; i < depth; ++i) {
    m = filter_.next_in_base(k, m + 1);
    out.push_back(Point::nat(m));
  }
  return out;
}

bool XiSpace::subset_impl(const Open& c, const Open& p) const {
  std::int64_t kc = nbhd_index(c);
  std::int64_t kp = nbhd_index(p);
  if (c.kind == OpenKind::kWhole) {
    auto out = filter_.outside_base(kp);
    return out && out->empty();
  }
  if (kc >= kp) return true;
  auto gap = difference_impl(c, p);
  return gap && gap->empty();
}

bool XiSpace::disjoint_impl(const Open& a, const Open& b) const {
  nbhd_index(a);
  nbhd_index(b);
  return false;
}

std::optional<PointList> XiSpace::difference_impl(const Open& a, const Open& b) const {
  std::int64_t ka = nbhd_index(a);
  std::int64_t kb = nbhd_index(b);
  if (a.kind != OpenKind::kWhole && ka >= kb) return PointList{};
  auto outside_b = filter_.outside_base(kb);
  if (!outside_b) return std::nullopt;
  PointList out;
  for (auto m : *outside_b) {
    if (a.kind == OpenKind::kWhole || filter_.in_base(ka, m)) out.push_back(Point::nat(m));
  }
  return out;
}

// ---------------------------------------------------------------- Psi(A)

bool PsiSpace::is_point(const Point& p) const {
  if (p.kind == PointKind::kNat) return p.ints.size() == 1 && p.ints[0] >= 0;
  return p.kind == PointKind::kGen && p.ints.size() == 1 && family_.has_generator(p.ints[0]);
}

std::int64_t PsiSpace::generator_count(int depth) const {
  auto n = family_.size();
  return n ? std::min<std::int64_t>(*n, depth) : depth;
}

PointList PsiSpace::points(int depth) const {
  PointList out;
  for (std::int64_t g = 0; g < generator_count(depth); ++g) out.push_back(Point::gen(g));
  for (int n = 0; n < depth; ++n) out.push_back(Point::nat(n));
  return out;
}

OpenList PsiSpace::basis(int depth) const {
  OpenList out;
  for (std::int64_t g = 0; g < generator_count(depth); ++g) out.push_back(Open::psi_gen(g));
  if (family_.size() && !family_.covers_all()) out.push_back(Open::psi_off_gen());
  for (int n = 0; n < depth; ++n) out.push_back(Open::singleton(Point::nat(n)));
  return out;
}

Open PsiSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a point of Psi(A): " + p.to_string());
  if (p.kind == PointKind::kNat) return Open::singleton(p);
  std::int64_t g = p.ints[0];
  PointList removed;
  for (int i = 0; i < k; ++i) removed.push_back(Point::nat(family_.element(g, i)));
  for (std::int64_t h = 0; h < g; ++h) {
    for (auto x : family_.intersection(g, h)) removed.push_back(Point::nat(x));
  }
  return Open::minus(Open::psi_gen(g), std::move(removed));
}

TermFn PsiSpace::canonical_sequence(const Point& p) const {
  if (p.kind != PointKind::kGen) throw Error(ErrorCode::kPrecondition, "only generator points are non-isolated");
  AdFamily a = family_;
  std::int64_t g = p.ints[0];
  return [a, g](std::size_t i) { return Point::nat(a.element(g, static_cast<std::int64_t>(i))); };
}

bool PsiSpace::member_impl(const Open& u, const Point& p) const {
  switch (u.kind) {
    case OpenKind::kPsiGen:
      if (p.kind == PointKind::kGen) return p.ints[0] == u.ints[0];
      return family_.contains(u.ints[0], p.nat_value());
    case OpenKind::kPsiOffGen: return p.kind == PointKind::kNat && family_.containing(p.nat_value()).empty();
    default: foreign_open(u);
  }
}

PointList PsiSpace::enumerate_impl(const Open& u, int depth) const {
  switch (u.kind) {
    case OpenKind::kWhole: return points(depth);
    case OpenKind::kPsiGen: {
      PointList out{Point::gen(u.ints[0])};
      for (int i = 0; i < depth; ++i) out.push_back(Point::nat(family_.element(u.ints[0], i)));
      return out;
    }
    case OpenKind::kPsiOffGen: {
      PointList out;
      for (std::int64_t x = 0; static_cast<int>(out.size()) < depth && x < (std::int64_t{1} << 20); ++x) {
        if (family_.containing(x).empty()) out.push_back(Point::nat(x));
      }
      return out;
    }
    default: foreign_open(u);
  }
}

bool PsiSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (c.kind == OpenKind::kWhole) return false;
  return c == p;
}

bool PsiSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  if (a.kind == OpenKind::kPsiGen && b.kind == OpenKind::kPsiGen) {
    return a.ints[0] != b.ints[0] && family_.intersection(a.ints[0], b.ints[0]).empty();
  }
  return a.kind != b.kind;
}

std::optional<PointList> PsiSpace::intersection_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kPsiGen && b.kind == OpenKind::kPsiGen && a.ints[0] != b.ints[0]) {
    PointList out;
    for (auto x : family_.intersection(a.ints[0], b.ints[0])) out.push_back(Point::nat(x));
    return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- dyadic

bool DyadicSpace::is_point(const Point& p) const {
  if (p.kind != PointKind::kDyadic) return false;
  if (!p.ints.empty() && p.ints.back() != 1) return false;
  return std::all_of(p.ints.begin(), p.ints.end(), [](std::int64_t b) { return b == 0 || b == 1; });
}

PointList DyadicSpace::points(int depth) const {
  std::vector<Bits> all;
  Bits cur;
  enumerate_bits(cur, std::min(depth, kMaxDyadicDepth), all);
  PointList out;
  for (auto& b : all) {
    if (b.empty() || b.back() == 1) out.push_back(Point::dyadic_bits(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

OpenList DyadicSpace::basis(int depth) const {
  std::vector<Bits> all;
  Bits cur;
  enumerate_bits(cur, std::min(depth, kMaxDyadicBasisDepth), all);
  std::stable_sort(all.begin(), all.end(), [](const Bits& a, const Bits& b) { return a.size() < b.size(); });
  OpenList out;
  for (auto& b : all) out.push_back(Open::dy_prefix(b));
  return out;
}

Open DyadicSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a dyadic point: " + p.to_string());
  return Open::dy_prefix(padded_prefix(p, static_cast<std::size_t>(k)));
}

TermFn DyadicSpace::canonical_sequence(const Point& p) const {
  Bits base = dyadic_digits(p);
  return [base](std::size_t i) {
    Bits b = base;
    b.resize(base.size() + i, 0);
    b.push_back(1);
    return Point::dyadic_bits(std::move(b));
  };
}

OpenList DyadicSpace::split(const Open& u, int count, int depth) const {
  if (u.kind != OpenKind::kDyInterval && u.kind != OpenKind::kWhole) return Space::split(u, count, depth);
  Bits s = u.kind == OpenKind::kWhole ? Bits{} : u.ints;
  if (count <= 0) return {};
  if (count == 1) return {Open::dy_prefix(s)};
  // Left-to-right bisection tree with exactly `count` leaves.
  std::vector<Bits> leaves{s};
  while (static_cast<int>(leaves.size()) < count) {
    std::vector<Bits> next;
    int need = count - static_cast<int>(leaves.size());
    for (auto& l : leaves) {
      if (need > 0) {
        Bits a = l;
        a.push_back(0);
        Bits b = l;
        b.push_back(1);
        next.push_back(a);
        next.push_back(b);
        --need;
      } else {
        next.push_back(l);
      }
    }
    leaves = std::move(next);
  }
  OpenList out;
  for (auto& l : leaves) out.push_back(Open::dy_prefix(l));
  return out;
}

bool DyadicSpace::member_impl(const Open& u, const Point& p) const {
  if (u.kind != OpenKind::kDyInterval) foreign_open(u);
  return has_prefix(p.ints, u.ints);
}

PointList DyadicSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  if (u.kind != OpenKind::kDyInterval) foreign_open(u);
  std::vector<Bits> ext;
  Bits cur;
  enumerate_bits(cur, std::min(depth, kMaxDyadicDepth), ext);
  PointList out;
  for (auto& e : ext) {
    Bits b = u.ints;
    b.insert(b.end(), e.begin(), e.end());
    while (!b.empty() && b.back() == 0) b.pop_back();
    out.push_back(Point::dyadic_bits(b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool DyadicSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (p.kind != OpenKind::kDyInterval) foreign_open(p);
  if (c.kind == OpenKind::kWhole) return p.ints.empty();
  if (c.kind != OpenKind::kDyInterval) foreign_open(c);
  return c.ints.size() >= p.ints.size() && std::equal(p.ints.begin(), p.ints.end(), c.ints.begin());
}

bool DyadicSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  if (a.kind != OpenKind::kDyInterval) foreign_open(a);
  if (b.kind != OpenKind::kDyInterval) foreign_open(b);
  std::size_t n = std::min(a.ints.size(), b.ints.size());
  return !std::equal(a.ints.begin(), a.ints.begin() + static_cast<std::ptrdiff_t>(n), b.ints.begin());
}

// ---------------------------------------------------------------- reports

Report isolated_dense_check(const Space& x, int depth) {
  Report r;
  r.title = "isolated-dense";
  for (const auto& u : x.basis(depth)) {
    auto found = x.crowded() ? std::nullopt : x.find_isolated(u, depth);
    Json w;
    w["open"] = u.to_string();
    if (found) {
      w["isolated"] = found->to_string();
      r.add("cell", Tri::kTrue, w);
    } else if (x.crowded()) {
      w["reason"] = "crowded space has no isolated points";
      r.add("cell", Tri::kFalse, w);
    } else {
      w["reason"] = "no isolated point enumerated at depth " + std::to_string(depth);
      r.add("cell", Tri::kUnknown, w);
    }
  }
  return r;
}

SpacePtr xi_space(FilterPresentation f) { return std::make_shared<XiSpace>(std::move(f)); }

SpacePtr psi_space(AdFamily a) {
  if (auto bad = a.find_violation(16)) {
    throw Error(ErrorCode::kInvalidArgument, "generators " + std::to_string(bad->first) + " and " +
                                                 std::to_string(bad->second) + " exceed the declared intersection bound " +
                                                 std::to_string(a.declared_bound()));
  }
  return std::make_shared<PsiSpace>(std::move(a));
}

SpacePtr dyadic_interval_space() { return std::make_shared<DyadicSpace>("dyadic"); }

SpacePtr cantor_space() { return std::make_shared<DyadicSpace>("cantor"); }

}  // namespace seqhyper
