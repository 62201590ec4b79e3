#include "codec.hpp"
#include "games.hpp"
#include "spaces.hpp"

namespace seqhyper {

namespace {

// An infinite clopen set of isolated points, searched among basic opens and
// complements of local bases.
std::optional<Open> discrete_clopen(const Space& x, int depth) {
  OpenList candidates = x.basis(depth);
  PointList limits;
  for (auto& p : x.points(depth)) {
    if (!x.isolated(p)) limits.push_back(p);
  }
  for (auto& p : limits) {
    for (int k = 1; k <= depth; ++k) candidates.push_back(Open::complement(x.local_base(p, k)));
  }
  for (const auto& n : candidates) {
    PointList pts = x.enumerate(n, 2 * depth);
    if (static_cast<int>(pts.size()) <= depth) continue;
    if (!std::all_of(pts.begin(), pts.end(), [&](const Point& q) { return x.isolated(q); })) continue;
    bool closed = std::all_of(limits.begin(), limits.end(), [&](const Point& p) {
      for (int k = 0; k <= depth; ++k) {
        if (x.disjoint(x.local_base(p, k), n)) return true;
      }
      return false;
    });
    if (closed) return n;
  }
  return std::nullopt;
}

Check countable_compactness_probe(const Space& x, int depth) {
  if (x.crowded()) return Check{"pseudocompactness counter-witness", Tri::kFalse, Json{{"reason", "crowded space"}}};
  auto n = discrete_clopen(x, depth);
  if (!n) {
    return Check{"pseudocompactness counter-witness", Tri::kUnknown,
                 Json{{"reason", "no infinite clopen discrete set located at depth " + std::to_string(depth)}}};
  }
  Open rest = n->kind == OpenKind::kComplement ? n->kids[0] : Open::complement(*n);
  PointList pts = x.enumerate(*n, 2 * depth);
  Json family = Json::array();
  bool ok = true;
  for (int m = 1; m <= depth; ++m) {
    OpenList pieces{rest};
    for (int i = 0; i < m; ++i) pieces.push_back(Open::singleton(pts[i]));
    try {
      family.push_back(canonical(x, std::move(pieces)).to_json());
    } catch (const Error&) {
      ok = false;
      break;
    }
  }
  return Check{"pseudocompactness counter-witness", tri(ok),
               Json{{"N", n->to_string()}, {"family", family}}};
}

Check gdelta_probe(const Space& x, const Point& p, int depth) {
  std::string name = "G-delta point " + p.to_string();
  PointList others = x.points(depth);
  Json chain = Json::array();
  bool nested = true;
  std::vector<bool> excluded(others.size(), false);
  std::size_t left = 0;
  for (auto& q : others) left += q != p;
  int n = 0;
  std::optional<Open> prev;
  for (; n <= kMaxLocalIndex; ++n) {
    Open u = x.local_base(p, n);
    if (prev) nested = nested && x.subset(u, *prev);
    chain.push_back(u.to_string());
    prev = u;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (!excluded[i] && others[i] != p && !x.member(u, others[i])) {
        excluded[i] = true;
        --left;
      }
    }
    if (n >= depth && left == 0) break;
  }
  if (!nested) return Check{name, Tri::kFalse, Json{{"chain", chain}, {"reason", "local bases do not nest"}}};
  if (left > 0) {
    return Check{name, Tri::kUnknown, Json{{"chain", chain}, {"reason", "points survive every local base"}}};
  }
  return Check{name, Tri::kTrue,
               Json{{"chain", chain}, {"points-excluded", others.size() - 1}, {"length", n + 1}}};
}

}  // namespace

Report diagnose(const SpacePtr& x, int depth) {
  Report r;
  r.title = "diagnose(" + x->kind() + ")";
  auto iso = isolated_dense_check(*x, depth);
  std::size_t cells = iso.checks.size();
  r.add("dense isolated points", iso.overall(), Json{{"cells", cells}, {"report", iso.to_json()}});
  auto cc = countable_compactness_probe(*x, depth);
  r.checks.push_back(cc);
  int probed = 0;
  for (auto& p : x->points(depth)) {
    if (x->isolated(p)) continue;
    r.checks.push_back(gdelta_probe(*x, p, depth));
    if (++probed == 3) break;
  }
  if (probed == 0) r.add("G-delta point", Tri::kUnknown, Json{{"reason", "no non-isolated point enumerated"}});
  return r;
}

}  // namespace seqhyper
