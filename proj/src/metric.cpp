#include "metric.hpp"

#include <algorithm>
#include <set>

namespace seqhyper {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? a - b : b - a; }

// Exact points of a set at a precision and the resolution of the rest.
struct Truncation {
  PointList exact;
  bool has_tail = false;
  Rational eps = 0;
};

Truncation truncate(const MetricSet& s, int precision) {
  Truncation t;
  t.exact = s.points;
  if (s.seq) {
    int k = precision + 1;
    auto n = s.seq->modulus(k);
    if (!n) throw Error(ErrorCode::kPrecondition, "no modulus for base " + std::to_string(k));
    t.exact.push_back(s.seq->limit());
    for (auto& a : s.seq->attachments()) t.exact.push_back(a);
    for (auto& p : s.seq->terms(*n)) t.exact.push_back(p);
    t.has_tail = true;
    t.eps = pow2_neg(k);
  }
  if (s.tail_level) {
    t.exact.push_back(Point::filter_point());
    Rational e = pow2_neg(*s.tail_level);
    t.eps = t.has_tail ? std::max(t.eps, e) : e;
    t.has_tail = true;
  }
  std::sort(t.exact.begin(), t.exact.end());
  t.exact.erase(std::unique(t.exact.begin(), t.exact.end()), t.exact.end());
  return t;
}

bool known_member(const MetricSet& s, const Truncation& t, const Point& q) {
  if (std::binary_search(t.exact.begin(), t.exact.end(), q)) return true;
  if (s.seq) {
    auto in = s.seq->contains(q);
    return in && *in;
  }
  return false;
}

// Enclosure of sup over a in A of d(a, B).
Interval directed(const XiMetric& m, const MetricSet& a, const Truncation& ta, const MetricSet& b,
                  const Truncation& tb) {
  Interval out{0, 0};
  for (auto& p : ta.exact) {
    if (known_member(b, tb, p)) continue;
    std::optional<Rational> best;
    for (auto& q : tb.exact) {
      Rational d = m.d(p, q);
      if (!best || d < *best) best = d;
    }
    Rational lo = best ? *best : Rational(1);
    Rational hi = lo;
    if (tb.has_tail) {
      Rational fp = m.f(p);
      Rational tail_lo = fp > tb.eps ? fp - tb.eps : Rational(0);
      lo = std::min(lo, tail_lo);
      hi = std::min(hi, fp);
    }
    out.lo = std::max(out.lo, lo);
    out.hi = std::max(out.hi, hi);
  }
  if (ta.has_tail) {
    bool shared = a.seq && b.seq && a.seq->stream() == b.seq->stream() && !a.tail_level;
    if (!shared) {
      Rational hi = ta.eps;
      if (!tb.has_tail) {
        std::optional<Rational> best;
        for (auto& q : tb.exact) {
          Rational v = std::max(m.f(q), ta.eps);
          if (!best || v < *best) best = v;
        }
        hi = best.value_or(Rational(1));
      }
      out.hi = std::max(out.hi, hi);
    }
  }
  return out;
}

}  // namespace

Rational pow2_neg(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative exponent");
  boost::multiprecision::cpp_int den = 1;
  den <<= static_cast<unsigned>(n);
  return Rational(1, den);
}

std::string to_string(const Rational& r) { return r.str(); }

XiMetric::XiMetric(SpacePtr xi) : space_(std::move(xi)), xi_(dynamic_cast<const XiSpace*>(space_.get())) {
  if (!xi_) throw Error(ErrorCode::kInvalidArgument, "the metric is defined on xi spaces only");
  if (!xi_->filter().countable_base()) {
    throw Error(ErrorCode::kPrecondition, "filter " + xi_->filter().name() + " declares no countable base");
  }
  auto out = xi_->filter().outside_base(0);
  rebased_ = !out || !out->empty();
}

std::int64_t XiMetric::level(std::int64_t m) const {
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "not a natural number");
  if (!xi_->filter().in_base(0, m)) return 0;
  return xi_->filter().level(m);
}

Rational XiMetric::f(const Point& p) const {
  if (p.kind == PointKind::kFilter) return 0;
  return pow2_neg(level(p.nat_value()));
}

Rational XiMetric::d(const Point& p, const Point& q) const {
  if (p == q) return 0;
  if (p.kind == PointKind::kNat && q.kind == PointKind::kNat) {
    std::int64_t a = level(p.nat_value());
    if (a == level(q.nat_value())) return pow2_neg(a);
  }
  return abs_diff(f(p), f(q));
}

std::optional<Open> XiMetric::ball_open(const Point& p, int k) const {
  if (p.kind == PointKind::kFilter) return Open::xi_nbhd(k + 1);
  if (k > level(p.nat_value())) return Open::singleton(p);
  return std::nullopt;
}

MetricSet MetricSet::of_seq(ConvSeq s, PointList extra) {
  MetricSet m;
  m.seq = std::move(s);
  m.points = std::move(extra);
  return m;
}

MetricSet MetricSet::finite(PointList pts) {
  MetricSet m;
  m.points = std::move(pts);
  return m;
}

Json Interval::to_json() const { return Json{{"lo", to_string(lo)}, {"hi", to_string(hi)}}; }

Interval hausdorff(const XiMetric& m, const MetricSet& a, const MetricSet& b, int precision) {
  if (a.seq && b.seq && a.seq->stream() == b.seq->stream() && a.seq->attachments() == b.seq->attachments() &&
      a.points == b.points && !a.tail_level && !b.tail_level) {
    return Interval{0, 0};
  }
  auto ta = truncate(a, precision);
  auto tb = truncate(b, precision);
  if (ta.exact.empty() != tb.exact.empty()) return Interval{1, 1};
  Interval ab = directed(m, a, ta, b, tb);
  Interval ba = directed(m, b, tb, a, ta);
  return Interval{std::max(ab.lo, ba.lo), std::max(ab.hi, ba.hi)};
}

MetricSet CauchyLimit::as_set() const {
  MetricSet s;
  s.points = points;
  if (filter_point) s.tail_level = depth;
  return s;
}

CauchyLimit cauchy_limit(const XiMetric& m, const SetStream& stream, int depth) {
  CauchyLimit out;
  out.depth = depth;
  for (int i = 0; i < depth + 3; ++i) {
    auto ui = static_cast<std::size_t>(i);
    Interval h = hausdorff(m, stream(ui), stream(ui + 1), i + 2);
    if (h.lo > pow2_neg(i)) {
      out.violation = ui;
      return out;
    }
  }
  // A point of level n is alone in its 2^-(n+1)-ball, and H(S_j, L) <=
  // 2^-(j-1), so it lies in L iff it lies in S_(n+3).
  std::set<Point> pts;
  for (int n = 0; n < depth; ++n) {
    MetricSet s = stream(static_cast<std::size_t>(n + 3));
    auto t = truncate(s, n);
    for (auto& p : t.exact) {
      if (p.kind == PointKind::kNat && m.level(p.nat_value()) == n) pts.insert(p);
    }
  }
  out.points.assign(pts.begin(), pts.end());
  MetricSet last = stream(static_cast<std::size_t>(depth));
  MetricSet fp = MetricSet::finite({Point::filter_point()});
  Interval h = directed(m, fp, truncate(fp, depth), last, truncate(last, depth));
  out.filter_point = h.hi <= pow2_neg(depth - 2 < 0 ? 0 : depth - 2);
  return out;
}

OBLayer o_b_layer(const ConvSeq& s, int k) {
  OBLayer out;
  auto esc = s.outside(s.space()->local_base(s.limit(), k));
  if (!esc) return out;
  out.member = true;
  out.escapes = *esc;
  return out;
}

OBLayer o_b_layer(const SpacePtr& xi, const PointList& finite, int k) {
  OBLayer out;
  out.member = true;
  Open b = xi->local_base(Point::filter_point(), k);
  for (auto& p : finite) {
    if (!xi->member(b, p)) out.escapes.push_back(p);
  }
  return out;
}

namespace {

std::vector<ConvSeq> sample_sequences(const SpacePtr& xi, int depth) {
  std::vector<ConvSeq> out;
  ConvSeq c = canonical_seq(xi, Point::filter_point(), depth);
  out.push_back(c);
  out.push_back(c.drop_terms(3));
  for (std::int64_t n : {0, 1, 2, 5}) {
    auto in = c.contains(Point::nat(n));
    if (in && !*in) out.push_back(amalgam(c, FiniteSet::of({Point::nat(n)})));
  }
  const auto& f = dynamic_cast<const XiSpace&>(*xi).filter();
  if (f.kind() == FilterKind::kFrechet) {
    TermFn evens = [](std::size_t i) { return Point::nat(2 * static_cast<std::int64_t>(i)); };
    out.push_back(make_seq(xi, Point::filter_point(), evens, depth).value());
  }
  return out;
}

PointList metric_sample_points(const XiMetric& m, int depth) {
  const auto& f = dynamic_cast<const XiSpace&>(*m.space()).filter();
  PointList out{Point::filter_point()};
  std::set<std::int64_t> seen;
  for (std::int64_t n = 0; n < 3 * depth + 3; ++n) seen.insert(n);
  for (std::int64_t k = 0; k < depth + 3; ++k) {
    std::int64_t x = f.next_in_base(k, 0);
    seen.insert(x);
    seen.insert(f.next_in_base(k, x + 1));
  }
  for (auto x : seen) out.push_back(Point::nat(x));
  return out;
}

}  // namespace

Report gdelta_profile(const SpacePtr& xi, int depth) {
  XiMetric m(xi);
  Report r;
  r.title = "gdelta-profile";
  r.add("rebase", Tri::kTrue, Json{{"rebased", m.rebased()}});
  auto seqs = sample_sequences(xi, depth);
  Json layers = Json::array();
  bool all_in = true;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& s = seqs[i];
    for (int n = 0; n <= depth; ++n) {
      auto layer = o_b_layer(s, n);
      auto bound = s.modulus(n);
      bool ok = layer.member && bound && layer.escapes.size() <= *bound + s.attachments().size();
      all_in = all_in && ok;
      layers.push_back(Json{{"sequence", i}, {"base", n}, {"escapes", layer.escapes.size()}});
    }
  }
  r.add("sequences-in-every-O_B", tri(all_in), Json{{"layers", layers}});

  PointList finite{Point::nat(0), Point::nat(3), Point::filter_point()};
  bool finite_ok = true;
  for (int n = 0; n <= depth; ++n) finite_ok = finite_ok && o_b_layer(xi, finite, n).member;
  r.add("finite-sets-in-every-O_B", tri(finite_ok));

  bool trivial_rejected = false;
  try {
    TermFn t = [](std::size_t i) { return Point::nat(static_cast<std::int64_t>(i) + 10); };
    make_seq(xi, Point::nat(3), t, depth);
  } catch (const Error&) {
    trivial_rejected = true;
  }
  r.add("trivial-sequence-excluded", tri(trivial_rejected),
        Json{{"reason", "a natural number is isolated, so it cannot be the non-isolated point"}});

  bool decomposed = all_in;
  for (auto& s : seqs) decomposed = decomposed && s.terms(8).size() == 8 && recertify(s, depth).ok();
  r.add("S_c = intersection of O_B minus finite sets", tri(decomposed),
        Json{{"sampled", seqs.size()}, {"depth", depth}});
  return r;
}

bool certified_disjoint(const Space& x, const CanonicalOpen& a, const CanonicalOpen& b) {
  auto one_way = [&](const CanonicalOpen& p, const CanonicalOpen& q) {
    for (auto& u : p.pieces) {
      if (std::all_of(q.pieces.begin(), q.pieces.end(), [&](const Open& v) { return x.disjoint(u, v); })) return true;
    }
    return false;
  };
  return one_way(a, b) || one_way(b, a);
}

std::optional<CanonicalOpen> vietoris_separate(const ConvSeq& t, const CanonicalOpen& o, int depth) {
  const SpacePtr& x = t.space();
  for (int k = 0; k <= depth + 8; ++k) {
    Open lb = x->local_base(t.limit(), k);
    auto escaped = t.outside(lb);
    if (!escaped) return std::nullopt;
    OpenList pieces{lb};
    bool ok = true;
    for (auto& p : *escaped) {
      if (x->isolated(p)) {
        pieces.push_back(Open::singleton(p));
        continue;
      }
      auto iso = isolating_open(t, p, Open::whole(), pieces);
      if (!iso) {
        ok = false;
        break;
      }
      pieces.push_back(*iso);
    }
    if (!ok) continue;
    CanonicalOpen c = canonical(*x, pieces);
    if (member(t, c) == Tri::kTrue && certified_disjoint(*x, c, o)) return c;
  }
  return std::nullopt;
}

Report polish_profile(const SpacePtr& xi, int depth) {
  XiMetric m(xi);
  Report r;
  r.title = "polish-profile";
  auto opens = enumerate_canonical(*xi, depth, 3);
  auto seqs = sample_sequences(xi, depth);

  // Separability: D(a, F) = canonical tail from a plus the finite set F.
  {
    ConvSeq c = canonical_seq(xi, Point::filter_point(), depth);
    std::vector<std::pair<std::string, ConvSeq>> dense;
    for (int a = 0; a <= 4 * depth + 8; ++a) {
      ConvSeq tail = c.drop_terms(static_cast<std::size_t>(a));
      for (int mask = 0; mask < (1 << depth); ++mask) {
        PointList f;
        for (int n = 0; n < depth; ++n) {
          if (mask >> n & 1) f.push_back(Point::nat(n));
        }
        bool clash = false;
        for (auto& p : f) {
          auto in = tail.contains(p);
          clash = clash || !in || *in;
        }
        if (clash) continue;
        dense.emplace_back("D(" + std::to_string(a) + "," + std::to_string(mask) + ")", tail.with_attachments(f));
      }
    }
    std::size_t hit = 0;
    Json misses = Json::array();
    for (auto& o : opens) {
      bool found = false;
      for (auto& [code, d] : dense) {
        if (member(d, o) == Tri::kTrue) {
          found = true;
          break;
        }
      }
      if (found) {
        ++hit;
      } else {
        misses.push_back(o.to_string());
      }
    }
    r.add("separable", tri(hit == opens.size()),
          Json{{"opens", opens.size()}, {"hit", hit}, {"family", dense.size()}, {"misses", misses}});
  }

  // Zero-dimensionality: every sampled sequence outside O has a canonical
  // neighbourhood certified disjoint from O.
  {
    std::size_t outside = 0;
    std::size_t separated = 0;
    Json fails = Json::array();
    for (std::size_t i = 0; i < opens.size() && i < 60; ++i) {
      for (auto& t : seqs) {
        if (member(t, opens[i]) != Tri::kFalse) continue;
        ++outside;
        if (vietoris_separate(t, opens[i], depth)) {
          ++separated;
        } else {
          fails.push_back(opens[i].to_string());
        }
      }
    }
    r.add("zero-dimensional", tri(outside > 0 && separated == outside),
          Json{{"outside-pairs", outside}, {"separated", separated}, {"fails", fails}});
  }

  // Nowhere local compactness.
  {
    std::size_t tried = 0;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < opens.size() && tried < 12; ++i) {
      auto s = sample_member(xi, opens[i], depth);
      if (!s) continue;
      ++tried;
      try {
        auto w = noncompact_witness(*s, opens[i], depth);
        bool nested = true;
        for (std::size_t st = 1; st < w.stages.size(); ++st) nested = nested && include(*xi, w.stages[st], w.stages[st - 1]).ok();
        ok += nested && w.excluding_stage(*s).has_value();
      } catch (const Error&) {
      }
    }
    r.add("nowhere-locally-compact", tri(tried > 0 && ok == tried), Json{{"sampled", tried}, {"witnessed", ok}});
  }

  // Complete metrizability: exact metric axioms and Cauchy round trips.
  {
    auto pts = metric_sample_points(m, depth);
    std::size_t triples = 0;
    bool axioms = true;
    for (auto& a : pts) {
      for (auto& b : pts) {
        Rational ab = m.d(a, b);
        axioms = axioms && ab == m.d(b, a) && ((ab == 0) == (a == b));
        for (auto& c : pts) {
          ++triples;
          axioms = axioms && m.d(a, c) <= ab + m.d(b, c);
        }
      }
    }
    bool round_trips = true;
    for (auto& s : seqs) {
      MetricSet target = MetricSet::of_seq(s);
      auto constant = cauchy_limit(m, [&](std::size_t) { return target; }, depth);
      const auto& f = dynamic_cast<const XiSpace&>(*xi).filter();
      SetStream drift = [&](std::size_t i) {
        std::int64_t x = f.next_in_base(static_cast<std::int64_t>(i) + 1, 0);
        for (int tries = 0; tries < 64; ++tries) {
          auto in = s.contains(Point::nat(x));
          if (in && !*in) break;
          x = f.next_in_base(static_cast<std::int64_t>(i) + 1, x + 1);
        }
        return MetricSet::of_seq(s, {Point::nat(x)});
      };
      auto moving = cauchy_limit(m, drift, depth);
      for (auto* lim : {&constant, &moving}) {
        if (lim->violation) {
          round_trips = false;
          continue;
        }
        Interval h = hausdorff(m, lim->as_set(), target, depth);
        round_trips = round_trips && lim->filter_point && h.hi <= pow2_neg(depth - 1);
      }
    }
    r.add("completely-metrizable", tri(axioms && round_trips),
          Json{{"triples", triples}, {"axioms", axioms}, {"cauchy-round-trips", round_trips}});
  }
  return r;
}

}  // namespace seqhyper
