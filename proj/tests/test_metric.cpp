#include <doctest.h>

#include <random>

#include "metric.hpp"
#include "oracles.hpp"

using namespace seqhyper;

namespace {

TermFn evens_from(std::int64_t start) {
  return [start](std::size_t i) { return Point::nat(start + 2 * static_cast<std::int64_t>(i)); };
}

ConvSeq evens(const SpacePtr& x, std::int64_t start = 0) {
  return make_seq(x, Point::filter_point(), evens_from(start), 8).value();
}

std::int64_t level_oracle(bool frechet, std::int64_t m) { return oracle::xi_level(frechet, m); }
Rational f_oracle(bool frechet, const Point& p) { return oracle::xi_f(frechet, p); }
Rational d_oracle(bool frechet, const Point& p, const Point& q) { return oracle::xi_distance(frechet, p, q); }

// Exact Hausdorff distance between two finite sets.
Rational brute_hausdorff(bool frechet, const PointList& a, const PointList& b) {
  auto directed = [&](const PointList& x, const PointList& y) {
    Rational out = 0;
    for (auto& p : x) {
      Rational best = -1;
      for (auto& q : y) {
        Rational d = d_oracle(frechet, p, q);
        if (best < 0 || d < best) best = d;
      }
      out = std::max(out, best);
    }
    return out;
  };
  return std::max(directed(a, b), directed(b, a));
}

PointList closure_prefix(const ConvSeq& s, std::size_t n, PointList extra = {}) {
  PointList out = s.terms(n);
  out.push_back(s.limit());
  for (auto& a : s.attachments()) out.push_back(a);
  for (auto& p : extra) out.push_back(p);
  return out;
}

Point random_point(bool frechet, std::mt19937_64& rng) {
  if (rng() % 10 == 0) return Point::filter_point();
  if (frechet) return Point::nat(static_cast<std::int64_t>(rng() % 200));
  // Spread over levels 0..18 of the valuation partition.
  std::int64_t n = static_cast<std::int64_t>(rng() % 19);
  std::int64_t odd = 2 * static_cast<std::int64_t>(rng() % 500) + 1;
  return Point::nat((odd << n) - 1);
}

}  // namespace

TEST_CASE("metric examples") {
  auto fr = xi_space(frechet_filter());
  XiMetric m(fr);
  CHECK(m.d(Point::nat(2), Point::nat(3)) == Rational(1, 8));
  CHECK(m.f(Point::filter_point()) == 0);
  CHECK_FALSE(m.rebased());

  auto p = xi_space(partition_filter());
  XiMetric mp(p);
  CHECK(mp.d(Point::nat(0), Point::nat(2)) == 1);
  CHECK(mp.d(Point::nat(1), Point::nat(5)) == Rational(1, 2));
  CHECK(mp.d(Point::nat(3), Point::nat(11)) == Rational(1, 4));
  for (std::int64_t n = 0; n < 12; ++n) {
    std::int64_t x = (std::int64_t{1} << n) - 1;
    std::int64_t y = (std::int64_t{3} << n) - 1;
    CHECK(mp.level(x) == n);
    CHECK(mp.d(Point::nat(x), Point::nat(y)) == pow2_neg(n));
  }
  for (std::int64_t x = 0; x < 300; ++x) {
    CHECK(m.d(Point::nat(x), Point::nat(x)) == 0);
    CHECK(mp.d(Point::nat(x), Point::nat(x)) == 0);
  }
  CHECK(m.d(Point::filter_point(), Point::filter_point()) == 0);
}

TEST_CASE("metric rejects filters without a countable base") {
  CHECK_THROWS_AS(XiMetric(xi_space(fan_filter())), Error);
  CHECK_THROWS_AS(polish_profile(xi_space(fan_filter()), 5), Error);
  CHECK_THROWS_AS(XiMetric(psi_space(AdFamily::branches(3))), Error);
}

TEST_CASE("metric agrees with the definitional oracle") {
  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    XiMetric m(x);
    for (std::int64_t a = 0; a < 200; ++a) {
      CHECK(m.level(a) == level_oracle(frechet, a));
      for (std::int64_t b = 0; b < 40; ++b) {
        CHECK(m.d(Point::nat(a), Point::nat(b)) == d_oracle(frechet, Point::nat(a), Point::nat(b)));
      }
    }
  }
}

TEST_CASE("metric axioms hold exactly on random triples") {
  std::mt19937_64 rng(11);
  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    XiMetric m(x);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
      Point a = random_point(frechet, rng);
      Point b = random_point(frechet, rng);
      Point c = random_point(frechet, rng);
      Rational ab = m.d(a, b);
      bad += ab != m.d(b, a);
      bad += (ab == 0) != (a == b);
      bad += ab < 0;
      bad += m.d(a, c) > ab + m.d(b, c);
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("metric balls are basic opens") {
  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    XiMetric m(x);
    PointList centres{Point::filter_point()};
    for (std::int64_t c = 0; c < 40; ++c) centres.push_back(Point::nat(c));
    for (auto& p : centres) {
      for (int k = 0; k < 10; ++k) {
        auto ball = m.ball_open(p, k);
        if (p.kind == PointKind::kFilter || k > m.level(p.nat_value())) REQUIRE(ball);
        if (!ball) continue;
        PointList probe{Point::filter_point()};
        for (std::int64_t q = 0; q < 1200; ++q) probe.push_back(Point::nat(q));
        for (auto& q : probe) {
          bool in_ball = d_oracle(frechet, p, q) < pow2_neg(k);
          CHECK(in_ball == x->member(*ball, q));
        }
      }
    }
  }
}

TEST_CASE("hausdorff examples") {
  auto fr = xi_space(frechet_filter());
  XiMetric m(fr);
  ConvSeq s = evens(fr);
  auto self = hausdorff(m, MetricSet::of_seq(s), MetricSet::of_seq(s), 12);
  CHECK(self.lo == 0);
  CHECK(self.hi == 0);

  auto plus_one = hausdorff(m, MetricSet::of_seq(s), MetricSet::of_seq(s, {Point::nat(1)}), 12);
  Rational brute = brute_hausdorff(true, closure_prefix(s, 50), closure_prefix(s, 50, {Point::nat(1)}));
  CHECK(brute == Rational(1, 4));
  CHECK(plus_one.lo <= Rational(1, 4));
  CHECK(plus_one.hi >= Rational(1, 4));
  CHECK(plus_one.hi - plus_one.lo <= pow2_neg(12));

  // Dropping 0: its nearest surviving point is 2, at |1 - 1/4|.
  auto dropped = hausdorff(m, MetricSet::of_seq(s), MetricSet::of_seq(s.drop_terms(1)), 12);
  Rational brute_drop = brute_hausdorff(true, closure_prefix(s, 50), closure_prefix(s.drop_terms(1), 49));
  CHECK(brute_drop == Rational(3, 4));
  CHECK(dropped.lo <= brute_drop);
  CHECK(dropped.hi >= brute_drop);
  CHECK(dropped.hi - dropped.lo <= pow2_neg(12));

  auto finite = hausdorff(m, MetricSet::finite({Point::nat(2)}), MetricSet::finite({Point::nat(3)}), 4);
  CHECK(finite.lo == Rational(1, 8));
  CHECK(finite.hi == Rational(1, 8));
}

TEST_CASE("hausdorff intervals bracket truncated brute force") {
  std::mt19937_64 rng(5);
  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    XiMetric m(x);
    ConvSeq c = canonical_seq(x, Point::filter_point(), 8);
    const std::size_t horizon = frechet ? 70 : 40;
    for (int t = 0; t < 40; ++t) {
      std::size_t da = rng() % 6;
      std::size_t db = rng() % 6;
      PointList ea;
      PointList eb;
      for (std::int64_t n = 0; n < 6; ++n) {
        Point q = Point::nat(static_cast<std::int64_t>(rng() % 40));
        auto in = c.drop_terms(da).contains(q);
        if (rng() % 3 == 0 && in && !*in) ea.push_back(q);
        in = c.drop_terms(db).contains(q);
        if (rng() % 3 == 0 && in && !*in) eb.push_back(q);
      }
      ConvSeq a = c.drop_terms(da);
      ConvSeq b = c.drop_terms(db);
      int precision = 3 + static_cast<int>(rng() % 8);
      auto h = hausdorff(m, MetricSet::of_seq(a, ea), MetricSet::of_seq(b, eb), precision);
      Rational brute = brute_hausdorff(frechet, closure_prefix(a, horizon, ea), closure_prefix(b, horizon, eb));
      // Omitted terms of either set lie within f of the filter point.
      Rational slack = std::max(f_oracle(frechet, a.term(horizon)), f_oracle(frechet, b.term(horizon)));
      CHECK(h.lo <= h.hi);
      CHECK(h.hi - h.lo <= pow2_neg(precision));
      CHECK(h.lo <= brute + slack);
      CHECK(h.hi + slack >= brute);
    }
  }
}

TEST_CASE("cauchy limits") {
  auto fr = xi_space(frechet_filter());
  XiMetric m(fr);
  ConvSeq s = evens(fr);

  SUBCASE("constant stream") {
    MetricSet target = MetricSet::of_seq(s);
    auto lim = cauchy_limit(m, [&](std::size_t) { return target; }, 10);
    REQUIRE_FALSE(lim.violation);
    CHECK(lim.filter_point);
    CHECK(lim.points == PointList{Point::nat(0), Point::nat(2), Point::nat(4), Point::nat(6), Point::nat(8)});
    CHECK(hausdorff(m, lim.as_set(), target, 10).hi <= pow2_neg(9));
  }

  SUBCASE("shrinking tails collapse to the filter point") {
    SetStream tails = [&](std::size_t i) { return MetricSet::of_seq(evens(fr, 2 * static_cast<std::int64_t>(i))); };
    auto lim = cauchy_limit(m, tails, 10);
    REQUIRE_FALSE(lim.violation);
    CHECK(lim.filter_point);
    CHECK(lim.points.empty());
  }

  SUBCASE("a drifting odd point disappears") {
    SetStream drift = [&](std::size_t i) {
      return MetricSet::of_seq(s, {Point::nat(2 * static_cast<std::int64_t>(i) + 1)});
    };
    for (std::size_t i = 0; i < 12; ++i) {
      Rational brute = brute_hausdorff(true, closure_prefix(s, 60, {Point::nat(2 * static_cast<std::int64_t>(i) + 1)}),
                                       closure_prefix(s, 60, {Point::nat(2 * static_cast<std::int64_t>(i) + 3)}));
      CHECK(brute <= pow2_neg(static_cast<std::int64_t>(i)));
    }
    auto lim = cauchy_limit(m, drift, 10);
    REQUIRE_FALSE(lim.violation);
    CHECK(lim.filter_point);
    CHECK(lim.points == PointList{Point::nat(0), Point::nat(2), Point::nat(4), Point::nat(6), Point::nat(8)});
  }

  SUBCASE("modulus violations are reported") {
    SetStream jumpy = [&](std::size_t i) {
      return i % 2 ? MetricSet::finite({Point::nat(0)}) : MetricSet::finite({Point::nat(1)});
    };
    // d(0, 1) = 1/2 first exceeds 2^-i at i = 2.
    auto lim = cauchy_limit(m, jumpy, 6);
    REQUIRE(lim.violation);
    CHECK(*lim.violation == 2);
  }
}

TEST_CASE("cauchy completeness on generated streams") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    XiMetric m(x);
    const auto& f = dynamic_cast<const XiSpace&>(*x).filter();
    ConvSeq c = canonical_seq(x, Point::filter_point(), 8);
    for (int t = 0; t < 50; ++t) {
      ConvSeq base = c.drop_terms(rng() % 5);
      std::int64_t jitter = static_cast<std::int64_t>(rng() % 4);
      bool shrink = rng() % 2;
      const int depth = 8;
      // S_i keeps one extra point of level > i, or loses its terms outside base(i).
      SetStream stream = [=](std::size_t i) {
        auto k = static_cast<std::int64_t>(i);
        if (shrink) return MetricSet::of_seq(base.drop_terms(*base.modulus(static_cast<int>(k))));
        std::int64_t y = f.next_in_base(k + 1, jitter);
        for (int tries = 0; tries < 64; ++tries) {
          auto in = base.contains(Point::nat(y));
          if (in && !*in) break;
          y = f.next_in_base(k + 1, y + 1);
        }
        return MetricSet::of_seq(base, {Point::nat(y)});
      };
      auto lim = cauchy_limit(m, stream, depth);
      REQUIRE_FALSE(lim.violation);
      for (int i = 0; i <= depth - 2; ++i) {
        auto h = hausdorff(m, lim.as_set(), stream(static_cast<std::size_t>(i)), depth);
        CHECK(h.lo <= pow2_neg(i - 1 < 0 ? 0 : i - 1));
      }
      ++checked;
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("O_B layers") {
  auto fr = xi_space(frechet_filter());
  ConvSeq s = evens(fr);
  auto layer = o_b_layer(s, 7);
  CHECK(layer.member);
  CHECK(layer.escapes == PointList{Point::nat(0), Point::nat(2), Point::nat(4), Point::nat(6)});
  CHECK(layer.escapes.size() == *s.modulus(7));

  for (bool frechet : {true, false}) {
    auto x = xi_space(frechet ? frechet_filter() : partition_filter());
    ConvSeq c = canonical_seq(x, Point::filter_point(), 8);
    for (int k = 0; k < 10; ++k) {
      auto l = o_b_layer(c, k);
      CHECK(l.member);
      std::size_t brute = 0;
      for (auto& p : c.terms(200)) brute += level_oracle(frechet, p.nat_value()) < k;
      CHECK(l.escapes.size() == brute);
      CHECK(o_b_layer(x, {Point::nat(0), Point::nat(9), Point::filter_point()}, k).member);
    }
  }
}

TEST_CASE("G-delta profile") {
  for (bool frechet : {true, false}) {
    auto r = gdelta_profile(xi_space(frechet ? frechet_filter() : partition_filter()), 6);
    CHECK(r.overall() == Tri::kTrue);
    REQUIRE(r.find("trivial-sequence-excluded"));
  }
}

TEST_CASE("polish profile at depth 5") {
  for (bool frechet : {true, false}) {
    auto r = polish_profile(xi_space(frechet ? frechet_filter() : partition_filter()), 5);
    INFO(r.to_json().dump(2));
    CHECK(r.checks.size() == 4);
    CHECK(r.overall() == Tri::kTrue);
  }
}
