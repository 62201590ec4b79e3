#include "space.hpp"

#include <algorithm>

namespace seqhyper {

namespace {

PointList without(PointList pts, const PointList& removed) {
  std::erase_if(pts, [&](const Point& p) { return contains_point(removed, p); });
  return pts;
}

}  // namespace

void Space::foreign_open(const Open& u) const {
  throw Error(ErrorCode::kInvalidArgument, "open " + u.to_string() + " does not belong to a " + kind() + " space");
}

bool Space::member(const Open& u, const Point& p) const {
  if (!is_point(p)) return false;
  switch (u.kind) {
    case OpenKind::kWhole: return true;
    case OpenKind::kSingleton: return u.points[0] == p;
    case OpenKind::kMinus: return !contains_point(u.points, p) && member(u.kids[0], p);
    case OpenKind::kComplement: return !member(u.kids[0], p);
    default: return member_impl(u, p);
  }
}

PointList Space::enumerate(const Open& u, int depth) const {
  switch (u.kind) {
    case OpenKind::kSingleton: return {u.points[0]};
    case OpenKind::kMinus: return without(enumerate(u.kids[0], depth), u.points);
    case OpenKind::kComplement: {
      PointList out;
      for (auto& p : points(depth)) {
        if (!member(u.kids[0], p)) out.push_back(p);
      }
      return out;
    }
    default: return enumerate_impl(u, depth);
  }
}

bool Space::is_singleton(const Open& u) const {
  if (u.kind == OpenKind::kSingleton) return true;
  if (u.kind == OpenKind::kMinus || u.kind == OpenKind::kComplement || u.kind == OpenKind::kWhole) return false;
  return is_singleton_impl(u);
}

bool Space::subset(const Open& c, const Open& p) const {
  if (c == p || p.kind == OpenKind::kWhole) return true;
  if (c.kind == OpenKind::kSingleton) return member(p, c.points[0]);
  if (c.kind == OpenKind::kMinus) {
    if (subset(c.kids[0], p)) return true;
    auto d = difference(c.kids[0], p);
    return d && std::all_of(d->begin(), d->end(), [&](const Point& q) { return contains_point(c.points, q); });
  }
  if (p.kind == OpenKind::kMinus) {
    if (!subset(c, p.kids[0])) return false;
    return std::none_of(p.points.begin(), p.points.end(), [&](const Point& q) { return member(c, q); });
  }
  if (p.kind == OpenKind::kComplement) return disjoint(c, p.kids[0]);
  if (p.kind == OpenKind::kSingleton) return is_singleton(c) && member(c, p.points[0]);
  if (c.kind == OpenKind::kComplement) return subset(Open::whole(), p);
  return subset_impl(c, p);
}

std::optional<PointList> Space::difference(const Open& a, const Open& b) const {
  if (subset(a, b)) return PointList{};
  if (a.kind == OpenKind::kSingleton) {
    return member(b, a.points[0]) ? PointList{} : PointList{a.points[0]};
  }
  if (a.kind == OpenKind::kMinus) {
    auto d = difference(a.kids[0], b);
    if (!d) return std::nullopt;
    return without(std::move(*d), a.points);
  }
  if (b.kind == OpenKind::kMinus) {
    auto d = difference(a, b.kids[0]);
    if (!d) return std::nullopt;
    for (auto& g : b.points) {
      if (member(a, g) && !contains_point(*d, g)) d->push_back(g);
    }
    return d;
  }
  if (b.kind == OpenKind::kComplement) return intersection(a, b.kids[0]);
  if (a.kind == OpenKind::kComplement || a.kind == OpenKind::kWhole) return std::nullopt;
  if (b.kind == OpenKind::kSingleton) return std::nullopt;
  return difference_impl(a, b);
}

std::optional<PointList> Space::intersection(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kSingleton) return member(b, a.points[0]) ? PointList{a.points[0]} : PointList{};
  if (b.kind == OpenKind::kSingleton) return intersection(b, a);
  if (a.kind == OpenKind::kMinus) {
    auto i = intersection(a.kids[0], b);
    if (!i) return std::nullopt;
    return without(std::move(*i), a.points);
  }
  if (b.kind == OpenKind::kMinus) return intersection(b, a);
  if (a.kind == OpenKind::kComplement) return difference(b, a.kids[0]);
  if (b.kind == OpenKind::kComplement) return difference(a, b.kids[0]);
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return std::nullopt;
  if (disjoint_impl(a, b)) return PointList{};
  return intersection_impl(a, b);
}

bool Space::disjoint(const Open& a, const Open& b) const {
  if (a.kind == OpenKind::kSingleton) return !member(b, a.points[0]);
  if (b.kind == OpenKind::kSingleton) return !member(a, b.points[0]);
  if (a.kind == OpenKind::kMinus) {
    if (disjoint(a.kids[0], b)) return true;
    auto i = intersection(a.kids[0], b);
    return i && std::all_of(i->begin(), i->end(), [&](const Point& q) { return contains_point(a.points, q); });
  }
  if (b.kind == OpenKind::kMinus) return disjoint(b, a);
  if (a.kind == OpenKind::kComplement) return subset(b, a.kids[0]);
  if (b.kind == OpenKind::kComplement) return subset(a, b.kids[0]);
  if (a.kind == OpenKind::kWhole || b.kind == OpenKind::kWhole) return false;
  return disjoint_impl(a, b);
}

std::optional<Point> Space::find_nonisolated(const Open& u, int depth) const {
  for (auto& p : enumerate(u, depth)) {
    if (!isolated(p)) return p;
  }
  return std::nullopt;
}

std::optional<Point> Space::find_isolated(const Open& u, int depth) const {
  for (auto& p : enumerate(u, depth)) {
    if (isolated(p)) return p;
  }
  return std::nullopt;
}

std::optional<int> Space::local_index_inside(const Point& p, const Open& u, int max_k) const {
  if (!member(u, p)) return std::nullopt;
  for (int k = 0; k <= max_k; ++k) {
    if (subset(local_base(p, k), u)) return k;
  }
  return std::nullopt;
}

OpenList Space::split(const Open& u, int count, int depth) const {
  OpenList chosen;
  for (auto& q : enumerate(u, depth)) {
    if (static_cast<int>(chosen.size()) >= count) break;
    auto k0 = local_index_inside(q, u);
    if (!k0) continue;
    for (int k = *k0; k <= *k0 + 64; ++k) {
      Open cand = local_base(q, k);
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const Open& o) { return disjoint(o, cand); });
      if (ok) {
        chosen.push_back(cand);
        break;
      }
    }
  }
  return chosen;
}

}  // namespace seqhyper
