#include <algorithm>
#include <set>

#include "spaces.hpp"

namespace seqhyper {

namespace {

constexpr int kMaxCoefficient = 5;
constexpr int kMaxTerms = 3;
constexpr int kMaxFiniteRun = 256;

std::optional<Ordinal> lower_of(const Open& u) {
  if (u.ints[0] == 0) return std::nullopt;
  return Ordinal::from_point(u.points[0]);
}

Ordinal upper_of(const Open& u) { return Ordinal::from_point(u.points.back()); }

void sums(const std::vector<Ordinal>& exps, std::size_t from, int terms_left, const Ordinal& acc, int c,
          std::vector<Ordinal>& out) {
  out.push_back(acc);
  if (terms_left == 0) return;
  for (std::size_t i = from; i < exps.size(); ++i) {
    for (int k = 1; k <= c; ++k) {
      sums(exps, i + 1, terms_left - 1, acc + Ordinal::omega_pow(exps[i], static_cast<std::uint64_t>(k)), c, out);
    }
  }
}

// A finite sample of the ordinals below `bound`, growing with c.
std::vector<Ordinal> ordinals_below(const Ordinal& bound, int c) {
  std::vector<Ordinal> out;
  if (bound.is_zero()) return out;
  if (bound.is_finite()) {
    auto n = std::min<std::uint64_t>(bound.finite_value(), static_cast<std::uint64_t>(c) + 1);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(Ordinal::finite(i));
    return out;
  }
  auto exps = ordinals_below(bound.exponent(0).plus(1), c);
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return a > b; });
  std::vector<Ordinal> all;
  sums(exps, 0, kMaxTerms, Ordinal{}, c, all);
  std::set<Point> seen;
  for (auto& o : all) {
    if (o < bound && seen.insert(o.to_point()).second) out.push_back(o);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Points of (lo, hi] when that interval is finite; hi absent means "below alpha".
std::optional<std::vector<Ordinal>> finite_run(const std::optional<Ordinal>& lo, const std::optional<Ordinal>& hi,
                                               const Ordinal& alpha) {
  Ordinal top = hi ? hi->plus(1) : alpha;
  if (top > alpha) top = alpha;
  Ordinal start = lo ? lo->plus(1) : Ordinal{};
  std::vector<Ordinal> out;
  if (start >= top) return out;
  if (top >= start + Ordinal::omega()) return std::nullopt;
  for (Ordinal x = start; x < top; x = x.plus(1)) {
    if (static_cast<int>(out.size()) >= kMaxFiniteRun) return std::nullopt;
    out.push_back(x);
  }
  return out;
}

PointList to_points(const std::vector<Ordinal>& v) {
  PointList out;
  for (auto& o : v) out.push_back(o.to_point());
  return out;
}

}  // namespace

bool OrdinalSpace::is_point(const Point& p) const {
  if (p.kind != PointKind::kOrdinal) return false;
  try {
    return Ordinal::from_point(p) < alpha_;
  } catch (const Error&) {
    return false;
  }
}

bool OrdinalSpace::isolated(const Point& p) const {
  Ordinal o = Ordinal::from_point(p);
  return o.is_zero() || o.is_successor();
}

const std::vector<Ordinal>& OrdinalSpace::below(int c) const {
  std::lock_guard lock(below_mu_);
  auto& slot = below_[c];
  if (!slot) slot = std::make_unique<const std::vector<Ordinal>>(ordinals_below(alpha_, c));
  return *slot;
}

PointList OrdinalSpace::sample(int depth) const { return to_points(below(std::clamp(depth, 1, kMaxCoefficient))); }

PointList OrdinalSpace::points(int depth) const { return sample(depth); }

OpenList OrdinalSpace::basis(int depth) const {
  OpenList out{Open::whole()};
  for (auto& p : sample(std::min(depth, 2))) {
    for (int k = 0; k < std::min(depth, 3); ++k) {
      Open b = local_base(p, k);
      if (!std::count(out.begin(), out.end(), b)) out.push_back(b);
    }
  }
  return out;
}

Open OrdinalSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not an ordinal below " + alpha_.to_string());
  Ordinal o = Ordinal::from_point(p);
  if (o.is_zero() || o.is_successor()) return Open::singleton(p);
  return Open::ord_interval(o.fundamental(static_cast<std::uint64_t>(k)).to_point(), p);
}

TermFn OrdinalSpace::canonical_sequence(const Point& p) const {
  Ordinal o = Ordinal::from_point(p);
  if (!o.is_limit()) throw Error(ErrorCode::kPrecondition, "only limit ordinals are non-isolated");
  return [o](std::size_t i) { return o.fundamental(i + 1).plus(1).to_point(); };
}

bool OrdinalSpace::member_impl(const Open& u, const Point& p) const {
  if (u.kind != OpenKind::kOrdInterval) foreign_open(u);
  Ordinal o = Ordinal::from_point(p);
  auto lo = lower_of(u);
  return (!lo || *lo < o) && o <= upper_of(u);
}

PointList OrdinalSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  if (u.kind != OpenKind::kOrdInterval) foreign_open(u);
  auto lo = lower_of(u);
  Ordinal hi = upper_of(u);
  std::vector<Ordinal> got;
  Ordinal x = lo ? lo->plus(1) : Ordinal{};
  for (int i = 0; i < depth && x <= hi && x < alpha_; ++i, x = x.plus(1)) got.push_back(x);
  for (auto& o : below(std::clamp(depth, 1, kMaxCoefficient))) {
    if ((!lo || *lo < o) && o <= hi) got.push_back(o);
  }
  if (hi < alpha_) got.push_back(hi);
  std::sort(got.begin(), got.end());
  got.erase(std::unique(got.begin(), got.end()), got.end());
  return to_points(got);
}

bool OrdinalSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (p.kind != OpenKind::kOrdInterval) foreign_open(p);
  auto plo = lower_of(p);
  Ordinal phi = upper_of(p);
  if (c.kind == OpenKind::kWhole) return !plo && alpha_ <= phi.plus(1);
  if (c.kind != OpenKind::kOrdInterval) foreign_open(c);
  auto clo = lower_of(c);
  Ordinal chi = upper_of(c);
  if (clo && chi <= *clo) return true;
  bool low_ok = !plo || (clo && *plo <= *clo);
  return low_ok && chi <= phi;
}

bool OrdinalSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  if (a.kind != OpenKind::kOrdInterval) foreign_open(a);
  if (b.kind != OpenKind::kOrdInterval) foreign_open(b);
  auto alo = lower_of(a);
  auto blo = lower_of(b);
  Ordinal ahi = upper_of(a);
  Ordinal bhi = upper_of(b);
  if ((alo && ahi <= *alo) || (blo && bhi <= *blo)) return true;
  return (blo && ahi <= *blo) || (alo && bhi <= *alo);
}

std::optional<PointList> OrdinalSpace::intersection_impl(const Open& a, const Open& b) const {
  if (a.kind != OpenKind::kOrdInterval || b.kind != OpenKind::kOrdInterval) return std::nullopt;
  auto alo = lower_of(a);
  auto blo = lower_of(b);
  std::optional<Ordinal> lo = !alo ? blo : (!blo ? alo : std::max(*alo, *blo));
  Ordinal hi = std::min(upper_of(a), upper_of(b));
  auto run = finite_run(lo, hi, alpha_);
  if (!run) return std::nullopt;
  return to_points(*run);
}

std::optional<PointList> OrdinalSpace::difference_impl(const Open& a, const Open& b) const {
  if (a.kind != OpenKind::kOrdInterval || b.kind != OpenKind::kOrdInterval) return std::nullopt;
  auto alo = lower_of(a);
  Ordinal ahi = upper_of(a);
  auto blo = lower_of(b);
  Ordinal bhi = upper_of(b);
  std::vector<Ordinal> out;
  if (blo) {
    auto left = finite_run(alo, std::min(ahi, *blo), alpha_);
    if (!left) return std::nullopt;
    out = *left;
  }
  std::optional<Ordinal> rlo = !alo ? bhi : std::max(*alo, bhi);
  auto right = finite_run(rlo, ahi, alpha_);
  if (!right) return std::nullopt;
  out.insert(out.end(), right->begin(), right->end());
  return to_points(out);
}

bool OrdinalSpace::is_singleton_impl(const Open& u) const {
  if (u.kind != OpenKind::kOrdInterval) return false;
  auto run = finite_run(lower_of(u), upper_of(u), alpha_);
  return run && run->size() == 1;
}

SpacePtr ordinal_segment(Ordinal alpha) {
  if (alpha.is_zero()) throw Error(ErrorCode::kInvalidArgument, "ordinal segment needs alpha > 0");
  return std::make_shared<OrdinalSpace>(std::move(alpha));
}

Ordinal omega_block_start(const Ordinal& alpha) {
  std::size_t n = alpha.term_count();
  if (n == 0 || !(alpha.exponent(n - 1) == Ordinal::finite(1))) {
    throw Error(ErrorCode::kPrecondition, alpha.to_string() + " is not of the form zeta + omega");
  }
  Ordinal out;
  for (std::size_t i = 0; i + 1 < n; ++i) out = out + Ordinal::omega_pow(alpha.exponent(i), alpha.coefficient(i));
  if (alpha.coefficient(n - 1) > 1) out = out + Ordinal::omega_pow(Ordinal::finite(1), alpha.coefficient(n - 1) - 1);
  return out;
}

SpacePtr ordinal_block_subspace(Ordinal alpha) {
  auto seg = ordinal_segment(std::move(alpha));
  auto keep = [](const Point& p) {
    Ordinal o = Ordinal::from_point(p);
    if (o.is_zero() || o.is_successor()) return true;
    return o.exponent(o.term_count() - 1) == Ordinal::finite(1);
  };
  return open_subspace(std::move(seg), keep, "ordinal-blocks");
}

}  // namespace seqhyper
