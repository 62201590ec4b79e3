#include <doctest.h>

#include "diagonal.hpp"
#include "filters.hpp"
#include "oracles.hpp"
#include "spaces.hpp"

using namespace seqhyper;

namespace {

ConvSeq nat_seq(const SpacePtr& x, std::function<std::int64_t(std::int64_t)> f) {
  return make_seq(x, Point::filter_point(), [f](std::size_t i) { return Point::nat(f(static_cast<std::int64_t>(i))); }, 6)
      .value();
}

}  // namespace

TEST_CASE("frechet base") {
  auto f = frechet_filter();
  for (std::int64_t m = 0; m < 50; ++m) CHECK(f.in_base(0, m));
  CHECK(f.in_base(5, 7));
  CHECK_FALSE(f.in_base(5, 3));
  for (std::int64_t n = 0; n <= 100; ++n) {
    for (std::int64_t m = 0; m < 300; ++m) {
      if (f.in_base(n + 1, m)) CHECK(f.in_base(n, m));
    }
  }
  auto out = f.outside_base(3);
  REQUIRE(out);
  CHECK(*out == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("valuation partition against the halving oracle") {
  auto q = Partition::valuation();
  CHECK(q.piece(0) == 0);
  CHECK(q.piece(1) == 1);
  std::map<std::int64_t, std::int64_t> seen;
  for (std::int64_t x = 0; x < 5000; ++x) {
    std::int64_t n = oracle::valuation(x + 1);
    CHECK(q.piece(x) == n);
    CHECK(q.index_in_piece(x) == seen[n]);
    CHECK(q.element(n, seen[n]) == x);
    ++seen[n];
  }
  for (std::int64_t n = 0; n < 8; ++n) {
    for (std::int64_t from = 0; from < 300; from += 7) {
      std::int64_t m = from;
      while (oracle::valuation(m + 1) < n) ++m;
      CHECK(q.next_with_piece_at_least(n, from) == m);
    }
  }
  CHECK_THROWS_AS(q.element(70, 1), Error);
}

TEST_CASE("cantor rows partition by brute force") {
  auto q = Partition::cantor_rows();
  std::map<std::int64_t, std::int64_t> seen;
  std::int64_t x = 0;
  for (std::int64_t d = 0; d < 60; ++d) {
    for (std::int64_t b = 0; b <= d; ++b, ++x) {
      std::int64_t a = d - b;
      CHECK(cantor_pair(a, b) == x);
      CHECK(cantor_unpair(x) == std::pair{a, b});
      CHECK(q.piece(x) == a);
      CHECK(q.index_in_piece(x) == seen[a]++);
    }
  }
  for (std::int64_t n = 0; n < 10; ++n) {
    for (std::int64_t from = 0; from < 200; from += 3) {
      std::int64_t m = from;
      while (cantor_unpair(m).first < n) ++m;
      CHECK(q.next_with_piece_at_least(n, from) == m);
    }
  }
}

TEST_CASE("partition filter") {
  auto f = partition_filter();
  for (std::int64_t m = 0; m < 200; ++m) {
    CHECK(f.in_base(0, m));
    if (oracle::valuation(m + 1) <= 1) CHECK_FALSE(f.in_base(2, m));
    CHECK(f.level(m) == oracle::valuation(m + 1));
  }
  for (std::int64_t n = 0; n <= 200; ++n) {
    for (std::int64_t m = 0; m < 300; ++m) {
      if (f.in_base(n + 1, m)) CHECK(f.in_base(n, m));
    }
  }
  CHECK(f.outside_base(0)->empty());
  CHECK_FALSE(f.outside_base(1));
}

TEST_CASE("piece functions with a finite fiber are rejected") {
  auto finite_zero = [](std::int64_t x) { return x == 0 ? std::int64_t{0} : 1 + oracle::valuation(x); };
  CHECK_THROWS_AS(Partition::from_function(finite_zero, "finite"), Error);
  auto lonely_two = [](std::int64_t x) {
    if (x == 5) return std::int64_t{2};
    std::int64_t v = oracle::valuation(x + 1);
    return v >= 2 ? v + 1 : v;
  };
  CHECK_THROWS_AS(Partition::from_function(lonely_two, "lonely"), Error);
  auto ok = [](std::int64_t x) { return oracle::valuation(x + 1); };
  auto q = Partition::from_function(ok, "valuation-scan");
  for (std::int64_t x = 0; x < 100; ++x) CHECK(q.index_in_piece(x) == Partition::valuation().index_in_piece(x));
}

TEST_CASE("fan filter semidecisions") {
  auto f = fan_filter();
  auto q = Partition::valuation();
  CHECK_FALSE(f.countable_base());
  auto drop_first = [&](std::int64_t m) { return q.index_in_piece(m) != 0; };
  CHECK(f.semidecide_member(drop_first, 20) == Tri::kTrue);
  auto p0 = [&](std::int64_t m) { return q.piece(m) == 0; };
  CHECK(f.semidecide_member(p0, 20) == Tri::kFalse);
  CHECK_THROWS_AS(f.level(3), Error);
}

TEST_CASE("branch family is almost disjoint") {
  for (int d = 0; d <= 4; ++d) {
    auto a = AdFamily::branches(d);
    REQUIRE(a.size());
    CHECK(*a.size() == (1 << d));
    CHECK_FALSE(a.find_violation(16));
    for (std::int64_t g = 0; g < *a.size(); ++g) {
      for (std::int64_t h = g + 1; h < *a.size(); ++h) {
        CHECK(static_cast<std::int64_t>(a.intersection(g, h).size()) <= a.declared_bound());
      }
    }
  }
  auto a = AdFamily::branches(3);
  for (std::int64_t x = 0; x < 400; ++x) {
    for (std::int64_t g = 0; g < 8; ++g) {
      bool in = a.contains(g, x);
      CHECK(in == oracle::member("psi-branch", Open::psi_gen(g), Point::nat(x), nullptr));
    }
  }
  auto f = ad_filter(a);
  auto cofinite = [](std::int64_t m) { return m > 40; };
  CHECK(f.semidecide_member(cofinite, 10) == Tri::kTrue);
}

TEST_CASE("psi space rejects families that are not almost disjoint") {
  class Bad final : public AdFamily::Impl {
   public:
    std::optional<std::int64_t> size() const override { return 2; }
    std::int64_t element(std::int64_t g, std::int64_t i) const override { return g == 0 ? 2 * i : 4 * i; }
    std::vector<std::int64_t> containing(std::int64_t x) const override {
      std::vector<std::int64_t> out;
      if (x % 2 == 0) out.push_back(0);
      if (x % 4 == 0) out.push_back(1);
      return out;
    }
    std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const override {
      std::int64_t m = g == 0 ? 2 : 4;
      if (x < 0 || x % m) return std::nullopt;
      return x / m;
    }
    std::vector<std::int64_t> intersection(std::int64_t, std::int64_t) const override { return {0}; }
    std::int64_t declared_bound() const override { return 2; }
    bool covers_all() const override { return false; }
    std::string name() const override { return "bad"; }
  };
  auto bad = AdFamily::custom(std::make_shared<Bad>());
  CHECK(bad.find_violation(4));
  CHECK_THROWS_AS(psi_space(bad), Error);
}

TEST_CASE("alpha2 on the frechet filter") {
  auto x = xi_space(frechet_filter());
  auto evens = nat_seq(x, [](std::int64_t i) { return 2 * i; });
  auto odds = nat_seq(x, [](std::int64_t i) { return 2 * i + 1; });
  const int depth = 12;
  auto r = alpha2_diagonalize(x, SeqFamily::of({evens, odds}), depth);
  REQUIRE(r.pass);
  REQUIRE(r.hits.size() == 2);
  CHECK(r.hits[0] >= depth / 2);
  CHECK(r.hits[1] >= depth / 2);
  CHECK(recertify(*r.candidate, depth).ok());

  auto single = alpha2_diagonalize(x, SeqFamily::of({evens}), depth);
  REQUIRE(single.pass);
  auto t = single.candidate->terms(40);
  for (std::int64_t i = 0; i < 40; ++i) CHECK(t[static_cast<std::size_t>(i)] == Point::nat(2 * i));
}

TEST_CASE("alpha2 on partition filters") {
  for (int legs : {1, 3, 5}) {
    auto x = xi_space(partition_filter(Partition::cantor_rows()));
    const int depth = 15;
    auto r = alpha2_diagonalize(x, leg_family(x, legs), depth);
    REQUIRE(r.pass);
    CHECK(recertify(*r.candidate, depth).ok());
    for (auto h : r.hits) CHECK(h >= depth / legs);
  }
}

TEST_CASE("alpha2 fails on the fan filter over all partition legs") {
  auto x = xi_space(fan_filter());
  auto r = alpha2_diagonalize(x, leg_family(x), 12);
  CHECK_FALSE(r.pass);
  CHECK(r.failed_stage > 0);
  CHECK(r.to_json()["verdict"] == "certificate-failure");

  auto rows = xi_space(fan_filter(Partition::cantor_rows()));
  CHECK_FALSE(alpha2_diagonalize(rows, leg_family(rows), 20).pass);

  // Finitely many legs have a convergent union, so they diagonalize.
  auto finite = alpha2_diagonalize(x, leg_family(x, 11), 12);
  CHECK(finite.pass);
}
