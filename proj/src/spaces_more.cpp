#include <algorithm>
#include <mutex>

#include "spaces.hpp"

namespace seqhyper {

namespace {

const Open& hat_inner(const Open& u, const Space& owner) {
  if (u.kind != OpenKind::kHat) {
    throw Error(ErrorCode::kInvalidArgument, "open " + u.to_string() + " does not belong to a " + owner.kind() + " space");
  }
  return u.kids[0];
}

PointList lift_dup(const PointList& pts, std::initializer_list<int> bits) {
  PointList out;
  for (auto& p : pts) {
    for (int b : bits) out.push_back(Point::dup(p, b));
  }
  return out;
}

PointList lift_sum(int side, const PointList& pts) {
  PointList out;
  for (auto& p : pts) out.push_back(Point::sum(side, p));
  return out;
}

Bits strip(Bits b) {
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

std::map<std::int64_t, Bits> box_map(const Open& u) {
  std::map<std::int64_t, Bits> out;
  if (u.kind == OpenKind::kWhole) return out;
  for (std::size_t i = 0; i < u.ints.size(); ++i) out[u.ints[i]] = u.kids[i].ints;
  return out;
}

bool compatible(const Bits& a, const Bits& b) {
  std::size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
}

}  // namespace

// ---------------------------------------------------------------- duplicate

bool DuplicateSpace::is_point(const Point& p) const {
  return p.kind == PointKind::kDup && p.ints.size() == 1 && (p.ints[0] == 0 || p.ints[0] == 1) && p.kids.size() == 1 &&
         base_->is_point(p.kids[0]);
}

bool DuplicateSpace::isolated(const Point& p) const { return p.ints[0] == 1 || base_->isolated(p.kids[0]); }

PointList DuplicateSpace::points(int depth) const { return lift_dup(base_->points(depth), {0, 1}); }

OpenList DuplicateSpace::basis(int depth) const {
  OpenList out;
  for (auto& u : base_->basis(depth)) out.push_back(Open::hat(u));
  for (auto& p : base_->points(depth)) out.push_back(Open::singleton(Point::dup(p, 1)));
  return out;
}

Open DuplicateSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a point of the duplicate: " + p.to_string());
  if (isolated(p)) return Open::singleton(p);
  return Open::minus(Open::hat(base_->local_base(p.kids[0], k)), {Point::dup(p.kids[0], 1)});
}

TermFn DuplicateSpace::canonical_sequence(const Point& p) const {
  if (!is_point(p) || isolated(p)) throw Error(ErrorCode::kPrecondition, "point is isolated in the duplicate");
  TermFn inner = base_->canonical_sequence(p.kids[0]);
  return [inner](std::size_t i) { return Point::dup(inner(i), 1); };
}

bool DuplicateSpace::member_impl(const Open& u, const Point& p) const {
  return base_->member(hat_inner(u, *this), p.kids[0]);
}

PointList DuplicateSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  return lift_dup(base_->enumerate(hat_inner(u, *this), depth), {0, 1});
}

bool DuplicateSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  const Open& pv = hat_inner(p, *this);
  if (c.kind == OpenKind::kWhole) return base_->subset(Open::whole(), pv);
  return base_->subset(hat_inner(c, *this), pv);
}

bool DuplicateSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  return base_->disjoint(hat_inner(a, *this), hat_inner(b, *this));
}

std::optional<PointList> DuplicateSpace::intersection_impl(const Open& a, const Open& b) const {
  auto i = base_->intersection(hat_inner(a, *this), hat_inner(b, *this));
  if (!i) return std::nullopt;
  return lift_dup(*i, {0, 1});
}

std::optional<PointList> DuplicateSpace::difference_impl(const Open& a, const Open& b) const {
  auto d = base_->difference(hat_inner(a, *this), hat_inner(b, *this));
  if (!d) return std::nullopt;
  return lift_dup(*d, {0, 1});
}

// ---------------------------------------------------------------- sum

bool SumSpace::is_point(const Point& p) const {
  return p.kind == PointKind::kSum && p.ints.size() == 1 && (p.ints[0] == 0 || p.ints[0] == 1) && p.kids.size() == 1 &&
         sides_[p.ints[0]]->is_point(p.kids[0]);
}

bool SumSpace::isolated(const Point& p) const { return sides_[p.ints[0]]->isolated(p.kids[0]); }

PointList SumSpace::points(int depth) const {
  auto a = sides_[0]->points(depth);
  auto b = sides_[1]->points(depth);
  PointList out;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (i < a.size()) out.push_back(Point::sum(0, a[i]));
    if (i < b.size()) out.push_back(Point::sum(1, b[i]));
  }
  return out;
}

OpenList SumSpace::basis(int depth) const {
  OpenList out;
  for (int s = 0; s < 2; ++s) {
    for (auto& u : sides_[s]->basis(depth)) out.push_back(Open::sum_side(s, u));
  }
  return out;
}

Open SumSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a point of the sum: " + p.to_string());
  int s = static_cast<int>(p.ints[0]);
  return Open::sum_side(s, sides_[s]->local_base(p.kids[0], k));
}

TermFn SumSpace::canonical_sequence(const Point& p) const {
  int s = static_cast<int>(p.ints[0]);
  TermFn inner = sides_[s]->canonical_sequence(p.kids[0]);
  return [inner, s](std::size_t i) { return Point::sum(s, inner(i)); };
}

bool SumSpace::member_impl(const Open& u, const Point& p) const {
  if (u.kind != OpenKind::kSumSide) foreign_open(u);
  return u.ints[0] == p.ints[0] && sides_[u.ints[0]]->member(u.kids[0], p.kids[0]);
}

PointList SumSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  if (u.kind != OpenKind::kSumSide) foreign_open(u);
  int s = static_cast<int>(u.ints[0]);
  return lift_sum(s, sides_[s]->enumerate(u.kids[0], depth));
}

bool SumSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (p.kind != OpenKind::kSumSide) foreign_open(p);
  if (c.kind == OpenKind::kWhole) return false;
  if (c.kind != OpenKind::kSumSide) foreign_open(c);
  return c.ints[0] == p.ints[0] && sides_[c.ints[0]]->subset(c.kids[0], p.kids[0]);
}

bool SumSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  if (a.kind != OpenKind::kSumSide) foreign_open(a);
  if (b.kind != OpenKind::kSumSide) foreign_open(b);
  return a.ints[0] != b.ints[0] || sides_[a.ints[0]]->disjoint(a.kids[0], b.kids[0]);
}

std::optional<PointList> SumSpace::intersection_impl(const Open& a, const Open& b) const {
  if (a.kind != OpenKind::kSumSide || b.kind != OpenKind::kSumSide) return std::nullopt;
  if (a.ints[0] != b.ints[0]) return PointList{};
  int s = static_cast<int>(a.ints[0]);
  auto i = sides_[s]->intersection(a.kids[0], b.kids[0]);
  if (!i) return std::nullopt;
  return lift_sum(s, *i);
}

std::optional<PointList> SumSpace::difference_impl(const Open& a, const Open& b) const {
  if (a.kind != OpenKind::kSumSide || b.kind != OpenKind::kSumSide || a.ints[0] != b.ints[0]) return std::nullopt;
  int s = static_cast<int>(a.ints[0]);
  auto d = sides_[s]->difference(a.kids[0], b.kids[0]);
  if (!d) return std::nullopt;
  return lift_sum(s, *d);
}

bool SumSpace::is_singleton_impl(const Open& u) const {
  return u.kind == OpenKind::kSumSide && sides_[u.ints[0]]->is_singleton(u.kids[0]);
}

// ---------------------------------------------------------------- subspace

PointList SubSpace::filtered(PointList pts) const {
  std::erase_if(pts, [&](const Point& p) { return !keep_(p); });
  return pts;
}

PointList SubSpace::points(int depth) const { return filtered(inner_->points(depth)); }

OpenList SubSpace::basis(int depth) const {
  OpenList out;
  for (auto& u : inner_->basis(depth)) {
    if (!filtered(inner_->enumerate(u, depth)).empty()) out.push_back(u);
  }
  return out;
}

TermFn SubSpace::canonical_sequence(const Point& p) const {
  struct Cache {
    std::mutex mu;
    std::vector<std::size_t> kept;
    std::size_t next = 0;
  };
  auto cache = std::make_shared<Cache>();
  TermFn inner = inner_->canonical_sequence(p);
  auto keep = keep_;
  return [cache, inner, keep](std::size_t i) {
    std::lock_guard lock(cache->mu);
    while (cache->kept.size() <= i) {
      if (keep(inner(cache->next))) cache->kept.push_back(cache->next);
      ++cache->next;
    }
    return inner(cache->kept[i]);
  };
}

bool SubSpace::member_impl(const Open& u, const Point& p) const { return inner_->member(u, p); }

PointList SubSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  return filtered(inner_->enumerate(u, depth));
}

bool SubSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (c.kind == OpenKind::kWhole) return inner_->subset(region_.value_or(Open::whole()), p);
  return inner_->subset(c, p);
}

bool SubSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole) return region_ && inner_->disjoint(*region_, b);
  if (b.kind == OpenKind::kWhole) return region_ && inner_->disjoint(a, *region_);
  return inner_->disjoint(a, b);
}

std::optional<PointList> SubSpace::intersection_impl(const Open& a, const Open& b) const {
  auto i = inner_->intersection(a, b);
  if (!i) return std::nullopt;
  return filtered(std::move(*i));
}

std::optional<PointList> SubSpace::difference_impl(const Open& a, const Open& b) const {
  auto d = inner_->difference(a, b);
  if (!d) return std::nullopt;
  return filtered(std::move(*d));
}

SpacePtr alexandroff_duplicate(SpacePtr x) { return std::make_shared<DuplicateSpace>(std::move(x)); }

SpacePtr disjoint_sum(SpacePtr x, SpacePtr y) { return std::make_shared<SumSpace>(std::move(x), std::move(y)); }

SpacePtr open_subspace(SpacePtr x, std::function<bool(const Point&)> keep, std::string name) {
  return std::make_shared<SubSpace>(std::move(x), std::move(keep), std::nullopt, std::move(name));
}

SpacePtr clopen_subspace(SpacePtr x, Open region, std::string name) {
  auto inner = x;
  auto keep = [inner, region](const Point& p) { return inner->member(region, p); };
  return std::make_shared<SubSpace>(std::move(x), keep, std::move(region), std::move(name));
}

// ---------------------------------------------------------------- sigma

Point sigma_point(const std::map<std::int64_t, Bits>& coords) {
  Point p{PointKind::kSigma, {}, {}};
  for (const auto& [id, bits] : coords) {
    if (id < 0) throw Error(ErrorCode::kInvalidArgument, "coordinate ids are natural numbers");
    Bits b = strip(bits);
    if (b.empty()) continue;
    p.ints.push_back(id);
    p.kids.push_back(Point::dyadic_bits(std::move(b)));
  }
  return p;
}

Bits sigma_coord(const Point& z, std::int64_t id) {
  auto it = std::lower_bound(z.ints.begin(), z.ints.end(), id);
  if (it == z.ints.end() || *it != id) return {};
  return z.kids[static_cast<std::size_t>(it - z.ints.begin())].ints;
}

std::vector<std::int64_t> sigma_support(const Point& z) { return z.ints; }

bool SigmaSpace::is_point(const Point& p) const {
  if (p.kind != PointKind::kSigma || p.ints.size() != p.kids.size()) return false;
  for (std::size_t i = 0; i < p.ints.size(); ++i) {
    if (p.ints[i] < 0 || (i > 0 && p.ints[i] <= p.ints[i - 1])) return false;
    const Point& c = p.kids[i];
    if (c.kind != PointKind::kDyadic || c.ints.empty() || c.ints.back() != 1) return false;
  }
  return true;
}

PointList SigmaSpace::points(int depth) const {
  const std::vector<Bits> values{{}, {1}, {0, 1}, {1, 1}};
  int ids = std::clamp(depth, 1, 3);
  PointList out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(ids), 0);
  while (true) {
    std::map<std::int64_t, Bits> m;
    for (int i = 0; i < ids; ++i) m[i] = values[idx[static_cast<std::size_t>(i)]];
    out.push_back(sigma_point(m));
    int j = 0;
    while (j < ids && ++idx[static_cast<std::size_t>(j)] == values.size()) idx[static_cast<std::size_t>(j++)] = 0;
    if (j == ids) break;
  }
  return out;
}

OpenList SigmaSpace::basis(int depth) const {
  OpenList out{Open::whole()};
  int ids = std::clamp(depth, 1, 3);
  for (int id = 0; id < ids; ++id) {
    for (Bits b : {Bits{0}, Bits{1}, Bits{0, 0}, Bits{0, 1}, Bits{1, 0}, Bits{1, 1}}) {
      if (static_cast<int>(b.size()) > depth) continue;
      out.push_back(Open::sigma_box({{id, b}}));
    }
  }
  return out;
}

Open SigmaSpace::local_base(const Point& p, int k) const {
  if (!is_point(p)) throw Error(ErrorCode::kInvalidArgument, "not a sigma point: " + p.to_string());
  std::map<std::int64_t, Bits> m;
  auto len = static_cast<std::size_t>(k + 1);
  for (std::size_t i = 0; i < p.ints.size(); ++i) m[p.ints[i]] = padded_prefix(p.kids[i], len);
  for (std::int64_t id = 0; id < k; ++id) m[id] = padded_prefix(Point::dyadic_bits(sigma_coord(p, id)), len);
  return Open::sigma_box(m);
}

TermFn SigmaSpace::canonical_sequence(const Point& p) const {
  Point z = p;
  return [z](std::size_t i) {
    Bits c = sigma_coord(z, 0);
    std::size_t len = c.size();
    c.resize(len + i, 0);
    c.push_back(1);
    std::map<std::int64_t, Bits> m;
    for (std::size_t j = 0; j < z.ints.size(); ++j) m[z.ints[j]] = z.kids[j].ints;
    m[0] = c;
    return sigma_point(m);
  };
}

OpenList SigmaSpace::split(const Open& u, int count, int depth) const {
  if (u.kind != OpenKind::kSigmaBox && u.kind != OpenKind::kWhole) return Space::split(u, count, depth);
  if (count <= 0) return {};
  auto m = box_map(u);
  std::int64_t id = m.empty() ? 0 : m.begin()->first;
  std::vector<Bits> leaves{m[id]};
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
  for (auto& l : leaves) {
    auto mm = m;
    mm[id] = l;
    out.push_back(Open::sigma_box(mm));
  }
  return out;
}

bool SigmaSpace::member_impl(const Open& u, const Point& p) const {
  if (u.kind != OpenKind::kSigmaBox) foreign_open(u);
  for (std::size_t i = 0; i < u.ints.size(); ++i) {
    if (!has_prefix(sigma_coord(p, u.ints[i]), u.kids[i].ints)) return false;
  }
  return true;
}

PointList SigmaSpace::enumerate_impl(const Open& u, int depth) const {
  if (u.kind == OpenKind::kWhole) return points(depth);
  if (u.kind != OpenKind::kSigmaBox) foreign_open(u);
  auto m = box_map(u);
  PointList out{sigma_point(m)};
  std::int64_t first = m.empty() ? 0 : m.begin()->first;
  std::int64_t fresh = m.empty() ? 1 : m.rbegin()->first + 1;
  for (int j = 0; j < depth; ++j) {
    auto a = m;
    Bits c = a[first];
    c.resize(c.size() + static_cast<std::size_t>(j), 0);
    c.push_back(1);
    a[first] = c;
    Point pa = sigma_point(a);
    if (!contains_point(out, pa)) out.push_back(pa);
    auto b = m;
    b[fresh + j % 3] = Bits(static_cast<std::size_t>(j / 3), 0);
    b[fresh + j % 3].push_back(1);
    Point pb = sigma_point(b);
    if (!contains_point(out, pb)) out.push_back(pb);
  }
  return out;
}

bool SigmaSpace::subset_impl(const Open& c, const Open& p) const {
  if (p.kind == OpenKind::kWhole) return true;
  if (p.kind != OpenKind::kSigmaBox) foreign_open(p);
  auto cm = box_map(c);
  for (std::size_t i = 0; i < p.ints.size(); ++i) {
    auto it = cm.find(p.ints[i]);
    if (it == cm.end() || !has_prefix(it->second, p.kids[i].ints) || it->second.size() < p.kids[i].ints.size()) {
      return false;
    }
  }
  return true;
}

bool SigmaSpace::disjoint_impl(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  auto am = box_map(a);
  for (std::size_t i = 0; i < b.ints.size(); ++i) {
    auto it = am.find(b.ints[i]);
    if (it != am.end() && !compatible(it->second, b.kids[i].ints)) return true;
  }
  return false;
}

SpacePtr sigma_product() { return std::make_shared<SigmaSpace>(); }

}  // namespace seqhyper
