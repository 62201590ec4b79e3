#include "oracles.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using namespace seqhyper;
using boost::multiprecision::cpp_int;

std::int64_t valuation(std::int64_t y) {
  std::int64_t v = 0;
  while (y > 0 && y % 2 == 0) {
    y /= 2;
    ++v;
  }
  return v;
}

namespace {

std::int64_t decode_finite(const Point& p) {
  if (p.ints.empty()) return 0;
  if (p.ints.size() != 1 || !p.kids[0].ints.empty()) throw std::runtime_error("exponent is not finite");
  return p.ints[0];
}

struct ExactDyadic {
  cpp_int num;
  unsigned exp;
};

ExactDyadic exact(const std::vector<std::int64_t>& bits) {
  cpp_int num = 0;
  for (auto b : bits) num = num * 2 + b;
  return {num, static_cast<unsigned>(bits.size())};
}

// a/2^ea < b/2^eb
bool less(const ExactDyadic& a, const ExactDyadic& b) {
  return (a.num << b.exp) < (b.num << a.exp);
}

bool in_dyadic_interval(const Point& p, const std::vector<std::int64_t>& prefix) {
  ExactDyadic x = exact(p.ints);
  ExactDyadic lo = exact(prefix);
  ExactDyadic hi{lo.num + 1, lo.exp};
  return !less(x, lo) && less(x, hi);
}

constexpr int kBranchDepth = 3;

bool on_branch(std::int64_t g, std::int64_t x) {
  std::int64_t width = 1 << kBranchDepth;
  std::int64_t first_deep = (std::int64_t{2} << kBranchDepth) - 1;
  if (x >= first_deep) return (x - first_deep) % (width + 1) == g;
  std::vector<int> path;
  for (int i = 0; i <= kBranchDepth; ++i) {
    if (heap_code(path) == x) return true;
    if (i < kBranchDepth) path.push_back(static_cast<int>((g >> (kBranchDepth - 1 - i)) & 1));
  }
  return false;
}

std::vector<std::int64_t> pick_distinct(std::mt19937_64& rng, int count, std::int64_t bound) {
  std::set<std::int64_t> out;
  std::uniform_int_distribution<std::int64_t> d(0, bound - 1);
  while (static_cast<int>(out.size()) < count) out.insert(d(rng));
  return {out.begin(), out.end()};
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

SmallOrdinal small_ordinal(const Point& p) {
  SmallOrdinal out;
  for (std::size_t i = 0; i < p.ints.size(); ++i) out[decode_finite(p.kids[i])] = p.ints[i];
  return out;
}

int compare(const SmallOrdinal& a, const SmallOrdinal& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  while (ia != a.rend() && ib != b.rend()) {
    if (ia->first != ib->first) return ia->first > ib->first ? 1 : -1;
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  if (ia == a.rend() && ib == b.rend()) return 0;
  return ia == a.rend() ? -1 : 1;
}

Rational2 dyadic_value(const Point& p) {
  Rational2 r{0, static_cast<int>(p.ints.size())};
  for (auto b : p.ints) r.num = r.num * 2 + b;
  return r;
}

std::int64_t heap_code(const std::vector<int>& path) {
  std::int64_t value = 0;
  for (int b : path) value = 2 * value + b;
  return (std::int64_t{1} << path.size()) - 1 + value;
}

bool member(const std::string& kind, const Open& u, const Point& p, const SpacePtr& space) {
  switch (u.kind) {
    case OpenKind::kWhole: return true;
    case OpenKind::kSingleton: return u.points[0] == p;
    case OpenKind::kMinus:
      return std::find(u.points.begin(), u.points.end(), p) == u.points.end() && member(kind, u.kids[0], p, space);
    case OpenKind::kComplement: return !member(kind, u.kids[0], p, space);
    default: break;
  }
  if (kind == "xi-frechet" || kind == "xi-partition") {
    if (p.kind == PointKind::kFilter) return true;
    std::int64_t m = p.ints[0];
    std::int64_t k = u.ints[0];
    return kind == "xi-frechet" ? m >= k : valuation(m + 1) >= k;
  }
  if (kind == "psi-branch") {
    if (u.kind == OpenKind::kPsiOffGen) {
      if (p.kind != PointKind::kNat) return false;
      for (std::int64_t g = 0; g < (1 << kBranchDepth); ++g) {
        if (on_branch(g, p.ints[0])) return false;
      }
      return true;
    }
    std::int64_t g = u.ints[0];
    if (p.kind == PointKind::kGen) return p.ints[0] == g;
    return on_branch(g, p.ints[0]);
  }
  if (kind == "ordinal") {
    auto o = small_ordinal(p);
    auto hi = small_ordinal(u.points.back());
    bool low_ok = u.ints[0] == 0 || compare(small_ordinal(u.points[0]), o) < 0;
    return low_ok && compare(o, hi) <= 0;
  }
  if (kind == "dyadic") return in_dyadic_interval(p, u.ints);
  throw std::runtime_error("oracle has no space kind " + kind);
}

std::optional<bool> vietoris_member(const std::string& kind, const ConvSeq& s, const CanonicalOpen& o,
                                    std::size_t m, std::size_t extra) {
  const auto& space = s.space();
  auto piece_of = [&](const Point& p) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < o.pieces.size(); ++j) {
      if (member(kind, o.pieces[j], p, space)) return j;
    }
    return std::nullopt;
  };
  auto home = piece_of(s.limit());
  if (!home) return false;
  auto terms = s.terms(m + extra);
  for (std::size_t i = m; i < m + extra; ++i) {
    if (!member(kind, o.pieces[*home], terms[i], space)) return std::nullopt;
  }
  std::vector<bool> hit(o.pieces.size(), false);
  hit[*home] = true;
  PointList pts = s.attachments();
  pts.insert(pts.end(), terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(m));
  for (auto& p : pts) {
    auto j = piece_of(p);
    if (!j) return false;
    hit[*j] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

namespace {

PointList fresh_attachments(const ConvSeq& s, const PointList& candidates, int count) {
  PointList out;
  for (auto& c : candidates) {
    if (static_cast<int>(out.size()) >= count) break;
    if (contains_point(out, c)) continue;
    auto in = s.contains(c);
    if (in && !*in) out.push_back(c);
  }
  return out;
}

// Points of S among the first n terms and attachments, used to bias pieces
// towards sets that S actually hits.
PointList early_points(const ConvSeq& s, std::size_t n) {
  PointList out = s.attachments();
  auto t = s.terms(n);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

Instance xi_instance(const std::string& kind, const SpacePtr& space, std::mt19937_64& rng) {
  const auto& xs = dynamic_cast<const XiSpace&>(*space);
  const auto& f = xs.filter();
  TermFn fn;
  int type = uniform(rng, 0, 2);
  if (type == 0) {
    fn = space->canonical_sequence(Point::filter_point());
  } else if (kind == "xi-frechet") {
    std::int64_t a = uniform(rng, 0, 5);
    std::int64_t b = uniform(rng, 1, 3);
    if (type == 1) {
      fn = [a, b](std::size_t i) { return Point::nat(a + b * static_cast<std::int64_t>(i)); };
    } else {
      fn = [a](std::size_t i) {
        auto n = static_cast<std::int64_t>(i);
        return Point::nat(a + n + (n % 2 == 0 ? 1 : 0) * 1000);
      };
    }
  } else {
    std::int64_t s = uniform(rng, 2, 4);
    std::int64_t o = uniform(rng, 0, 4);
    std::int64_t a = uniform(rng, 0, 3);
    auto part = *f.partition();
    fn = [part, s, o, a](std::size_t i) {
      auto n = static_cast<std::int64_t>(i);
      return Point::nat(part.element(n / s + o, n % s + a));
    };
  }
  auto seq = make_seq(space, Point::filter_point(), fn, 6).value();
  PointList cands;
  for (auto x : pick_distinct(rng, 6, 40)) cands.push_back(Point::nat(x));
  seq = seq.with_attachments(fresh_attachments(seq, cands, uniform(rng, 0, 3)));

  OpenList singles;
  PointList early = early_points(seq, 12);
  int nsingles = uniform(rng, 0, 3);
  for (int i = 0; i < nsingles; ++i) {
    Point p = coin(rng, 0.6) && !early.empty() ? early[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(early.size()) - 1))]
                                               : Point::nat(uniform(rng, 0, 40));
    Open sp = Open::singleton(p);
    if (std::find(singles.begin(), singles.end(), sp) == singles.end()) singles.push_back(sp);
  }
  OpenList pieces;
  if (coin(rng, 0.9)) {
    PointList removed;
    for (auto& sp : singles) removed.push_back(sp.points[0]);
    if (coin(rng, 0.3)) removed.push_back(Point::nat(uniform(rng, 0, 40)));
    pieces.push_back(Open::minus(Open::xi_nbhd(uniform(rng, 0, 6)), removed));
  }
  pieces.insert(pieces.end(), singles.begin(), singles.end());
  if (pieces.empty()) pieces.push_back(Open::singleton(Point::nat(0)));
  return Instance{seq, canonical(*space, pieces)};
}

Instance psi_instance(const SpacePtr& space, std::mt19937_64& rng) {
  const auto& ps = dynamic_cast<const PsiSpace&>(*space);
  const auto& fam = ps.family();
  std::int64_t g = uniform(rng, 0, static_cast<int>(*fam.size()) - 1);
  std::int64_t off = uniform(rng, 0, 5);
  std::int64_t step = uniform(rng, 1, 2);
  TermFn fn = [fam, g, off, step](std::size_t i) {
    return Point::nat(fam.element(g, off + step * static_cast<std::int64_t>(i)));
  };
  auto seq = make_seq(space, Point::gen(g), fn, 6).value();
  PointList cands;
  for (auto x : pick_distinct(rng, 6, 60)) cands.push_back(Point::nat(x));
  seq = seq.with_attachments(fresh_attachments(seq, cands, uniform(rng, 0, 3)));

  std::vector<std::int64_t> gens;
  if (coin(rng, 0.9)) gens.push_back(g);
  for (int i = uniform(rng, 0, 2); i > 0; --i) {
    std::int64_t h = uniform(rng, 0, static_cast<int>(*fam.size()) - 1);
    if (std::find(gens.begin(), gens.end(), h) == gens.end()) gens.push_back(h);
  }
  OpenList singles;
  PointList early = early_points(seq, 10);
  for (int i = uniform(rng, 0, 3); i > 0; --i) {
    Point p = coin(rng, 0.6) && !early.empty() ? early[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(early.size()) - 1))]
                                               : Point::nat(uniform(rng, 0, 60));
    if (p.kind != PointKind::kNat) continue;
    Open sp = Open::singleton(p);
    if (std::find(singles.begin(), singles.end(), sp) == singles.end()) singles.push_back(sp);
  }
  OpenList pieces;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    PointList removed;
    for (std::size_t j = 0; j < i; ++j) {
      for (auto x : fam.intersection(gens[i], gens[j])) removed.push_back(Point::nat(x));
    }
    for (auto& sp : singles) removed.push_back(sp.points[0]);
    for (int r = uniform(rng, 0, 2); r > 0; --r) removed.push_back(Point::nat(fam.element(gens[i], uniform(rng, 0, 4))));
    pieces.push_back(Open::minus(Open::psi_gen(gens[i]), removed));
  }
  pieces.insert(pieces.end(), singles.begin(), singles.end());
  if (pieces.empty()) pieces.push_back(Open::singleton(Point::nat(1)));
  return Instance{seq, canonical(*space, pieces)};
}

Ordinal random_limit(std::mt19937_64& rng) {
  std::uint64_t a = uniform(rng, 0, 3);
  std::uint64_t b = uniform(rng, a == 0 ? 1 : 0, 3);
  Ordinal out;
  if (a) out = out + Ordinal::omega_pow(Ordinal::finite(2), a);
  if (b) out = out + Ordinal::omega_pow(Ordinal::finite(1), b);
  return out;
}

Instance ordinal_instance(const SpacePtr& space, std::mt19937_64& rng) {
  Ordinal lam = random_limit(rng);
  std::uint64_t off = uniform(rng, 0, 3);
  std::uint64_t r = uniform(rng, 1, 3);
  TermFn fn = [lam, off, r](std::size_t i) { return lam.fundamental(i + 1 + off).plus(r).to_point(); };
  auto seq = make_seq(space, lam.to_point(), fn, 6).value();
  PointList cands;
  for (int i = 0; i < 6; ++i) {
    Ordinal c = Ordinal::omega_pow(Ordinal::finite(1), uniform(rng, 0, 4)).plus(uniform(rng, 0, 6));
    if (coin(rng)) c = random_limit(rng).plus(uniform(rng, 0, 3));
    cands.push_back(c.to_point());
  }
  seq = seq.with_attachments(fresh_attachments(seq, cands, uniform(rng, 0, 3)));

  OpenList pieces;
  PointList early = early_points(seq, 8);
  OpenList singles;
  for (int i = uniform(rng, 0, 3); i > 0; --i) {
    Point p = coin(rng, 0.6) && !early.empty() ? early[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(early.size()) - 1))]
                                               : cands[static_cast<std::size_t>(uniform(rng, 0, 5))];
    Ordinal o = Ordinal::from_point(p);
    Open sp = o.is_limit() ? Open::ord_interval(o.fundamental(uniform(rng, 0, 3)).to_point(), p) : Open::singleton(p);
    bool clash = std::any_of(singles.begin(), singles.end(), [&](const Open& q) { return !space->disjoint(q, sp); });
    if (!clash) singles.push_back(sp);
  }
  if (coin(rng, 0.9)) {
    Open home = Open::ord_interval(lam.fundamental(uniform(rng, 0, 5)).to_point(), lam.to_point());
    PointList removed;
    OpenList kept;
    for (auto& sp : singles) {
      if (sp.kind == OpenKind::kSingleton) {
        removed.push_back(sp.points[0]);
        kept.push_back(sp);
      } else if (space->disjoint(sp, home)) {
        kept.push_back(sp);
      }
    }
    singles = kept;
    pieces.push_back(Open::minus(home, removed));
  }
  pieces.insert(pieces.end(), singles.begin(), singles.end());
  if (pieces.empty()) pieces.push_back(Open::singleton(Ordinal::finite(1).to_point()));
  return Instance{seq, canonical(*space, pieces)};
}

std::vector<std::int64_t> random_bits(std::mt19937_64& rng, int max_len) {
  std::vector<std::int64_t> b(static_cast<std::size_t>(uniform(rng, 0, max_len)));
  for (auto& x : b) x = uniform(rng, 0, 1);
  return b;
}

Instance dyadic_instance(const SpacePtr& space, std::mt19937_64& rng) {
  auto xb = random_bits(rng, 4);
  while (!xb.empty() && xb.back() == 0) xb.pop_back();
  Point x = Point::dyadic_bits(xb);
  TermFn fn;
  if (coin(rng)) {
    fn = space->canonical_sequence(x);
  } else {
    fn = [xb](std::size_t i) {
      auto b = xb;
      b.resize(xb.size() + 2 * i + 1, 0);
      b.push_back(1);
      b.push_back(1);
      return Point::dyadic_bits(b);
    };
  }
  auto seq = make_seq(space, x, fn, 6).value();
  PointList cands;
  for (int i = 0; i < 6; ++i) {
    auto b = random_bits(rng, 5);
    while (!b.empty() && b.back() == 0) b.pop_back();
    cands.push_back(Point::dyadic_bits(b));
  }
  seq = seq.with_attachments(fresh_attachments(seq, cands, uniform(rng, 0, 3)));

  OpenList pieces;
  if (coin(rng, 0.9)) {
    auto k = static_cast<std::size_t>(uniform(rng, 0, 6));
    pieces.push_back(Open::dy_prefix(padded_prefix(x, k)));
  }
  PointList early = early_points(seq, 8);
  for (int i = uniform(rng, 0, 3); i > 0; --i) {
    std::vector<std::int64_t> pre;
    if (coin(rng, 0.6) && !early.empty()) {
      Point p = early[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(early.size()) - 1))];
      pre = padded_prefix(p, static_cast<std::size_t>(uniform(rng, 1, 8)));
    } else {
      pre = random_bits(rng, 6);
    }
    Open cand = Open::dy_prefix(pre);
    bool clash = std::any_of(pieces.begin(), pieces.end(), [&](const Open& q) { return !space->disjoint(q, cand); });
    if (!clash) pieces.push_back(cand);
  }
  if (pieces.empty()) pieces.push_back(Open::dy_prefix({1, 1, 1}));
  return Instance{seq, canonical(*space, pieces)};
}

}  // namespace

Instance random_instance(const std::string& kind, const SpacePtr& space, std::mt19937_64& rng) {
  if (kind == "xi-frechet" || kind == "xi-partition") return xi_instance(kind, space, rng);
  if (kind == "psi-branch") return psi_instance(space, rng);
  if (kind == "ordinal") return ordinal_instance(space, rng);
  if (kind == "dyadic") return dyadic_instance(space, rng);
  throw std::runtime_error("no instance generator for " + kind);
}

std::int64_t xi_level(bool frechet, std::int64_t m) { return frechet ? m : valuation(m + 1); }

seqhyper::Rational xi_f(bool frechet, const Point& p) {
  if (p.kind == seqhyper::PointKind::kFilter) return 0;
  return seqhyper::pow2_neg(xi_level(frechet, p.nat_value()));
}

seqhyper::Rational xi_distance(bool frechet, const Point& p, const Point& q) {
  if (p == q) return 0;
  if (p.kind == seqhyper::PointKind::kNat && q.kind == seqhyper::PointKind::kNat &&
      xi_level(frechet, p.nat_value()) == xi_level(frechet, q.nat_value())) {
    return seqhyper::pow2_neg(xi_level(frechet, p.nat_value()));
  }
  seqhyper::Rational a = xi_f(frechet, p);
  seqhyper::Rational b = xi_f(frechet, q);
  return a > b ? a - b : b - a;
}

}  // namespace oracle
