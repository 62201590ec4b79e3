// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "codec.hpp"
#include "diagonal.hpp"
#include "games.hpp"
#include "metric.hpp"
#include "oracles.hpp"
#include "spaces.hpp"
#include "vietoris.hpp"

using namespace seqhyper;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

using Clock = std::chrono::steady_clock;

bool criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs > limit_s) {
    o.pass = false;
    o.note("over the " + std::to_string(static_cast<int>(limit_s)) + " s budget");
  }
  std::printf("criterion %d %s  %s  (%s) [%.1f s]\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

std::string frac(long a, long b) { return std::to_string(a) + "/" + std::to_string(b); }

SpacePtr xi_fr() { return xi_space(frechet_filter()); }
SpacePtr xi_p() { return xi_space(partition_filter()); }

// ---------------------------------------------------------------- 1

Point random_xi_point(bool frechet, std::mt19937_64& rng) {
  if (rng() % 10 == 0) return Point::filter_point();
  if (frechet) return Point::nat(static_cast<std::int64_t>(rng() % 200));
  std::int64_t n = static_cast<std::int64_t>(rng() % 19);
  std::int64_t odd = 2 * static_cast<std::int64_t>(rng() % 500) + 1;
  return Point::nat((odd << n) - 1);
}

Outcome metric_suite() {
  Outcome out;
  std::mt19937_64 rng(1);
  for (bool frechet : {true, false}) {
    std::string name = frechet ? "F_r" : "P";
    auto x = frechet ? xi_fr() : xi_p();
    XiMetric m(x);
    const auto& f = dynamic_cast<const XiSpace&>(*x).filter();

    int bad = 0, oracle_bad = 0;
    for (int t = 0; t < 10000; ++t) {
      Point a = random_xi_point(frechet, rng), b = random_xi_point(frechet, rng), c = random_xi_point(frechet, rng);
      Rational ab = m.d(a, b);
      oracle_bad += ab != oracle::xi_distance(frechet, a, b);
      bad += ab != m.d(b, a);
      bad += (ab == 0) != (a == b);
      bad += ab < 0;
      bad += m.d(a, c) > ab + m.d(b, c);
    }
    out.require(bad == 0 && oracle_bad == 0, name + " metric axioms");

    // Balls of radius 2^-k that are basic opens: any k at the filter point,
    // k above the level at a natural.
    int balls = 0, ball_bad = 0;
    PointList probe{Point::filter_point()};
    for (std::int64_t q = 0; q < 1500; ++q) probe.push_back(Point::nat(q));
    while (balls < 200) {
      Point p = random_xi_point(frechet, rng);
      int k = p.kind == PointKind::kFilter ? static_cast<int>(rng() % 12)
                                           : static_cast<int>(oracle::xi_level(frechet, p.nat_value()) + 1 +
                                                              static_cast<std::int64_t>(rng() % 4));
      if (k > 40) continue;
      auto ball = m.ball_open(p, k);
      ++balls;
      if (!ball) {
        ++ball_bad;
        continue;
      }
      for (auto& q : probe) ball_bad += (oracle::xi_distance(frechet, p, q) < pow2_neg(k)) != x->member(*ball, q);
    }
    out.require(ball_bad == 0, name + " ball compatibility");

    // Modulus-Cauchy streams: S_i adds one point of level > i, or drops the
    // terms outside base(i).
    ConvSeq c = canonical_seq(x, Point::filter_point(), 8);
    int streams = 0, complete_bad = 0;
    for (int t = 0; t < 50; ++t) {
      ConvSeq base = c.drop_terms(rng() % 5);
      std::int64_t jitter = static_cast<std::int64_t>(rng() % 4);
      bool shrink = rng() % 2;
      const int depth = 8;
      SetStream stream = [=, &f](std::size_t i) {
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
      ++streams;
      bool ok = !lim.violation;
      for (int i = 0; ok && i <= depth - 2; ++i) {
        ok = hausdorff(m, lim.as_set(), stream(static_cast<std::size_t>(i)), depth).lo <= pow2_neg(std::max(i - 1, 0));
      }
      complete_bad += !ok;
    }
    out.require(complete_bad == 0, name + " completeness");
    out.note(name + ": 10000 triples, " + std::to_string(balls) + " balls, " + std::to_string(streams) + " streams");
  }
  return out;
}

// ---------------------------------------------------------------- 2

Outcome membership_oracle() {
  Outcome out;
  std::mt19937_64 rng(2);
  for (std::string k : {"xi-frechet", "xi-partition", "psi-branch", "ordinal", "dyadic"}) {
    SpacePtr x;
    if (k == "xi-frechet") x = xi_fr();
    if (k == "xi-partition") x = xi_p();
    if (k == "psi-branch") x = psi_space(AdFamily::branches(3));
    if (k == "ordinal") x = ordinal_segment(Ordinal::omega_pow(Ordinal::finite(3)));
    if (k == "dyadic") x = dyadic_interval_space();
    std::size_t m = k == "xi-partition" ? 80 : 300;
    std::size_t extra = k == "xi-partition" ? 20 : 100;
    int decided = 0, agree = 0;
    for (int trial = 0; trial < 500; ++trial) {
      auto inst = oracle::random_instance(k, x, rng);
      auto want = oracle::vietoris_member(k, inst.seq, inst.open, m, extra);
      Tri got = member(inst.seq, inst.open);
      if (!want || got == Tri::kUnknown) continue;
      ++decided;
      agree += got == tri(*want);
    }
    out.require(agree == decided && decided > 0, k + " agreement");
    out.note(k + " " + frac(agree, decided));
  }
  return out;
}

// ---------------------------------------------------------------- 3

std::optional<std::size_t> escape_count(const ConvSeq& s, const Open& u) {
  if (!s.space()->member(u, s.limit())) return std::nullopt;
  auto away = s.outside(u);
  if (!away) throw std::runtime_error("escape set not computable");
  return away->size();
}

Outcome meagerness() {
  Outcome out;
  auto x = dyadic_interval_space();
  std::vector<CanonicalOpen> multi;
  for (auto& o : enumerate_canonical(*x, 3, 3)) {
    if (o.pieces.size() >= 2) multi.push_back(o);
  }
  std::mt19937_64 rng(3);
  int avoid_ok = 0;
  for (int i = 0; i < 200; ++i) {
    const CanonicalOpen& o = multi[rng() % multi.size()];
    Transcript t;
    t.moves.push_back(Move{Player::kNonempty, o, std::nullopt, Json()});
    auto a = random_adversary(rng());
    CanonicalOpen v = a->move(x, t, 6).value_or(o);
    NwdPiece piece{rng() % o.pieces.size(), static_cast<int>(1 + rng() % 3)};
    auto r = nwd_avoid(x, o, v, piece, 8);
    bool nonempty = !r.open.pieces.empty() && member(r.witness, r.open) == Tri::kTrue;
    bool inside = include(*x, r.open, v).ok();
    auto e = escape_count(r.witness, o.pieces[piece.piece]);
    bool escapes = !e || static_cast<int>(*e) >= piece.n + 1;
    avoid_ok += nonempty && inside && escapes;
  }
  out.require(avoid_ok == 200, "nwd_avoid");
  int unique = 0;
  for (int i = 0; i < 100; ++i) {
    const CanonicalOpen& o = multi[rng() % multi.size()];
    Transcript t;
    t.moves.push_back(Move{Player::kNonempty, o, std::nullopt, Json()});
    auto a = random_adversary(rng());
    CanonicalOpen v = a->move(x, t, 6).value_or(o);
    auto s = sample_member(x, v, 8);
    if (!s) continue;
    int hits = 0;
    for (const auto& p : nwd_decompose(*x, o, 20)) {
      auto e = escape_count(*s, o.pieces[p.piece]);
      hits += e && static_cast<int>(*e) == p.n;
    }
    auto c = nwd_classify(*s, o);
    unique += hits == 1 && c && escape_count(*s, o.pieces[c->piece]) == static_cast<std::size_t>(c->n);
  }
  out.require(unique == 100, "unique classification");
  out.note("avoid " + frac(avoid_ok, 200) + ", classified " + frac(unique, 100));
  return out;
}

// ---------------------------------------------------------------- 4 and 6

struct Suite {
  std::string name;
  int passed = 0;
  std::vector<Episode> episodes;
  std::string first_failure;
};

Suite soundness(const std::string& name, const SpacePtr& x, const StrategyFactory& make, int depth,
                RandomOptions opts = {}) {
  Suite s{name};
  std::vector<std::future<Episode>> jobs;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    jobs.push_back(std::async(std::launch::async, [=] {
      auto strategy = make();
      auto adversary = random_adversary(seed, opts);
      return play(x, *strategy, *adversary, 30, depth);
    }));
  }
  for (std::size_t seed = 0; seed < jobs.size(); ++seed) {
    Episode e = jobs[seed].get();
    bool all = std::all_of(e.membership.begin(), e.membership.end(), [](Tri t) { return t == Tri::kTrue; });
    bool ok = e.verdict == Verdict::kPass && e.limit && all && e.membership.size() == 30 &&
              e.ledger.overall() != Tri::kFalse;
    s.passed += ok;
    if (!ok && s.first_failure.empty()) s.first_failure = "seed " + std::to_string(seed) + " " + e.message;
    s.episodes.push_back(std::move(e));
  }
  return s;
}

Suite dup_cantor_suite, sigma_suite;

bool game_suites() {
  struct Sub {
    std::string name;
    std::function<Suite()> run;
  };
  auto fr = xi_fr();
  auto p = xi_p();
  auto psi = psi_space(AdFamily::branches(3));
  auto blocks = ordinal_block_subspace(parse_ordinal("w^3"));
  auto ac = alexandroff_duplicate(cantor_space());
  auto az = alexandroff_duplicate(sigma_product());
  RandomOptions five;
  five.max_fresh_indices = 5;
  std::vector<Sub> subs{
      {"(a) baire on xi(F_r)", [&] { return soundness("xi(F_r)", fr, [&] { return baire_strategy_countable_base(fr); }, 10); }},
      {"(a) baire on xi(P)", [&] { return soundness("xi(P)", p, [&] { return baire_strategy_countable_base(p); }, 10); }},
      {"(b) compose on Psi(branches, 8 generators)",
       [&] { return soundness("Psi", psi, [&] { return psi_compose_strategy(psi); }, 8); }},
      {"(b) compose on the blocks subspace of w^3",
       [&] { return soundness("blocks", blocks, [&] { return ordinal_compose_strategy(blocks); }, 8); }},
      {"(c) duplicate-metric on A(Cantor)",
       [&] { return dup_cantor_suite = soundness("A(Cantor)", ac, [&] { return duplicate_metric_strategy(ac); }, 8); }},
      {"(d) sigma-duplicate, 5 fresh indices",
       [&] { return sigma_suite = soundness("A(Sigma)", az, [&] { return sigma_duplicate_strategy(az); }, 8, five); }},
  };
  return criterion(4, "game suites", 6 * 120, [&] {
    Outcome o;
    for (auto& sub : subs) {
      auto start = Clock::now();
      Suite s = sub.run();
      double secs = std::chrono::duration<double>(Clock::now() - start).count();
      o.require(s.passed == 100, sub.name + " soundness, first failure: " + s.first_failure);
      o.require(secs < 120, sub.name + " within 120 s");
      char buf[64];
      std::snprintf(buf, sizeof buf, " %.1f s", secs);
      o.note(sub.name + " " + frac(s.passed, 100) + buf);
    }
    return o;
  });
}

Bits bits_of(const Json& j) {
  Bits out;
  for (char c : j.get<std::string>()) out.push_back(c - '0');
  return out;
}

std::vector<const Move*> nonempty_moves(const Episode& e) {
  std::vector<const Move*> out;
  for (const auto& m : e.transcript.moves) {
    if (m.player == Player::kNonempty) out.push_back(&m);
  }
  return out;
}

std::set<std::string> committed_set(const Json& state) {
  std::set<std::string> out;
  for (const auto& c : state["committed"]) out.insert(c.dump());
  return out;
}

// Per-round conditions recomputed from the transcript snapshots.
Outcome ledgers() {
  Outcome out;
  if (dup_cantor_suite.episodes.size() != 100 || sigma_suite.episodes.size() != 100) {
    out.require(false, "game suites (c) and (d) did not complete");
    return out;
  }
  int rounds = 0, diam_bad = 0, nest_bad = 0;
  for (const auto& e : dup_cantor_suite.episodes) {
    Bits prev;
    int i = 0;
    for (const Move* m : nonempty_moves(e)) {
      Bits w = bits_of(m->state["W"]);
      // The cylinder of a length L prefix has diameter 2^-(L+1) in the first-difference metric.
      diam_bad += !(pow2_neg(static_cast<std::int64_t>(w.size()) + 1) < pow2_neg(i));
      bool clopen_piece = std::any_of(m->open.pieces.begin(), m->open.pieces.end(),
                                      [&](const Open& u) { return u == Open::hat(Open::dy_prefix(w)); });
      nest_bad += !clopen_piece || (i > 0 && !has_prefix(w, prev));
      prev = w;
      ++i;
      ++rounds;
    }
    nest_bad += e.ledger.overall() != Tri::kTrue;
  }
  out.require(diam_bad == 0, "A(Cantor) diameter bound");
  out.require(nest_bad == 0, "A(Cantor) closure nesting");
  out.note("A(Cantor): " + std::to_string(rounds) + " rounds, " + std::to_string(diam_bad + nest_bad) + " violations");

  int srounds = 0, fresh_bad = 0, cover_bad = 0, snest_bad = 0;
  for (const auto& e : sigma_suite.episodes) {
    Json prev;
    for (const Move* m : nonempty_moves(e)) {
      const Json& st = m->state;
      std::set<std::int64_t> support;
      for (auto& [id, bits] : st["B"].items()) support.insert(std::stoll(id));
      std::size_t fresh = 0;
      auto before = prev.is_null() ? std::set<std::string>{} : committed_set(prev);
      for (const auto& c : st["committed"]) {
        Point q = point_from_json(c);
        if (!before.count(c.dump()) && q.ints[0] == 1) ++fresh;
        for (auto id : sigma_support(q.kids[0])) cover_bad += !support.count(id);
      }
      fresh_bad += fresh < 2;
      if (!prev.is_null()) {
        for (auto& [id, bits] : prev["B"].items()) {
          snest_bad += !st["B"].contains(id) || !has_prefix(bits_of(st["B"][id]), bits_of(bits));
        }
      }
      prev = st;
      ++srounds;
    }
    snest_bad += e.ledger.overall() != Tri::kTrue;
  }
  out.require(fresh_bad == 0, "Sigma two fresh points");
  out.require(cover_bad == 0, "Sigma support coverage");
  out.require(snest_bad == 0, "Sigma box nesting");
  out.note("Sigma: " + std::to_string(srounds) + " rounds, " + std::to_string(fresh_bad + cover_bad + snest_bad) +
           " violations");
  return out;
}

// ---------------------------------------------------------------- 5

ConvSeq nat_seq(const SpacePtr& x, std::function<std::int64_t(std::int64_t)> f) {
  return make_seq(x, Point::filter_point(), [f](std::size_t i) { return Point::nat(f(static_cast<std::int64_t>(i))); }, 8)
      .value();
}

Outcome alpha2() {
  Outcome out;
  const int depth = 16;
  auto check_pass = [&](const std::string& name, const SpacePtr& x, const SeqFamily& fam, std::int64_t size) {
    auto r = alpha2_diagonalize(x, fam, depth);
    bool ok = r.pass && r.candidate && recertify(*r.candidate, depth).ok() &&
              static_cast<std::int64_t>(r.hits.size()) == size;
    for (auto h : r.hits) ok = ok && h >= depth / size;
    out.require(ok, name);
    out.note(name + " pass");
  };
  auto fr = xi_fr();
  check_pass("F_r evens/odds", fr,
             SeqFamily::of({nat_seq(fr, [](std::int64_t i) { return 2 * i; }),
                            nat_seq(fr, [](std::int64_t i) { return 2 * i + 1; })}),
             2);
  // Partition legs under the valuation partition leave 64-bit range within
  // the certificate horizon; the Cantor-row partition keeps them small.
  auto p = xi_space(partition_filter(Partition::cantor_rows()));
  check_pass("P(rows) 4 legs", p, leg_family(p, 4), 4);
  auto fan = xi_space(fan_filter());
  auto r = alpha2_diagonalize(fan, leg_family(fan), depth);
  out.require(!r.pass && r.to_json()["verdict"] == "certificate-failure", "fan_filter certificate failure");
  out.note("fan legs: certificate-failure at stage " + std::to_string(r.failed_stage));
  return out;
}

// ---------------------------------------------------------------- 7

Outcome diagnostics() {
  Outcome out;
  auto fr = xi_fr();
  auto rep = diagnose(fr, 20);
  auto dense = [](const Report& r) { return r.find("dense isolated points") ? r.find("dense isolated points")->status : Tri::kUnknown; };
  out.require(dense(rep) == Tri::kTrue, "xi(F_r) dense isolated");
  out.require(dense(diagnose(psi_space(AdFamily::branches(3)), 8)) == Tri::kTrue, "Psi dense isolated");
  out.require(dense(diagnose(ordinal_segment(parse_ordinal("w^3")), 8)) == Tri::kTrue, "w^3 dense isolated");
  out.require(dense(diagnose(ordinal_segment(parse_ordinal("w^2+1")), 8)) == Tri::kTrue, "w^2+1 dense isolated");
  out.require(dense(diagnose(dyadic_interval_space(), 6)) == Tri::kFalse, "dyadic dense isolated fails");

  // The emitted chain <U_n> at the filter point, rechecked: cl(U_(n+1)) inside
  // U_n on a point window, and every sampled member of S_c leaves some <U_n>.
  const Check* g = rep.find("G-delta point F");
  out.require(g && g->status == Tri::kTrue, "G-delta family emitted");
  if (!g) return out;
  const Json& chain = g->witness["chain"];
  out.require(chain.size() >= 21, "chain reaches depth 20");
  OpenList u;
  for (std::size_t n = 0; n < chain.size(); ++n) {
    u.push_back(fr->local_base(Point::filter_point(), static_cast<int>(n)));
    out.require(u.back().to_string() == chain[n].get<std::string>(), "chain element " + std::to_string(n));
  }
  PointList window{Point::filter_point()};
  for (std::int64_t q = 0; q < 2000; ++q) window.push_back(Point::nat(q));
  int nest_bad = 0;
  for (std::size_t n = 0; n + 1 < u.size(); ++n) {
    nest_bad += !fr->subset(u[n + 1], u[n]);
    for (auto& q : window) {
      // q outside U_n has the neighbourhood {q} missing U_(n+1).
      if (!fr->member(u[n], q)) nest_bad += !(fr->isolated(q) && !fr->member(u[n + 1], q));
    }
  }
  out.require(nest_bad == 0, "closure nesting");
  std::vector<ConvSeq> members;
  auto c = canonical_seq(fr, Point::filter_point(), 8);
  for (std::size_t d = 0; d < 20; ++d) members.push_back(c.drop_terms(d));
  for (auto& o : enumerate_canonical(*fr, 3, 3)) {
    if (auto s = sample_member(fr, o, 8)) members.push_back(*s);
  }
  int excluded = 0;
  for (const auto& s : members) {
    bool out_somewhere = false;
    for (std::size_t n = 0; n < u.size() && !out_somewhere; ++n) {
      out_somewhere = member(s, canonical(*fr, {u[n]})) == Tri::kFalse;
    }
    excluded += out_somewhere;
  }
  out.require(excluded == static_cast<int>(members.size()), "empty intersection");
  out.note("chain of " + std::to_string(u.size()) + ", " + frac(excluded, static_cast<long>(members.size())) +
           " sampled members excluded");
  return out;
}

// ---------------------------------------------------------------- 8

Outcome polish_profiles() {
  Outcome out;
  for (bool frechet : {true, false}) {
    std::string name = frechet ? "xi(F_r)" : "xi(P)";
    auto r = polish_profile(frechet ? xi_fr() : xi_p(), 5);
    int passed = 0;
    for (const auto& c : r.checks) passed += c.status == Tri::kTrue;
    out.require(r.checks.size() == 4 && passed == 4, name + " profile");
    out.note(name + " " + frac(passed, static_cast<long>(r.checks.size())));
  }
  return out;
}

}  // namespace

int main() {
  bool all = true;
  all &= criterion(1, "metric suite", 30, metric_suite);
  all &= criterion(2, "membership oracle equivalence", 60, membership_oracle);
  all &= criterion(3, "meagerness machinery", 30, meagerness);
  all &= game_suites();
  all &= criterion(5, "alpha2 dichotomy", 10, alpha2);
  all &= criterion(6, "per-round duplicate ledgers", 60, ledgers);
  all &= criterion(7, "diagnostics", 10, diagnostics);
  all &= criterion(8, "Polish profile", 60, polish_profiles);
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
