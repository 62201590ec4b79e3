#include <algorithm>
#include <iostream>
#include <random>
#include <set>

#include "codec.hpp"
#include "games.hpp"
#include "spaces.hpp"

namespace seqhyper {

int Transcript::rounds() const {
  return static_cast<int>(std::count_if(moves.begin(), moves.end(),
                                        [](const Move& m) { return m.player == Player::kNonempty; }));
}

Json Transcript::to_json() const {
  Json arr = Json::array();
  for (const auto& m : moves) {
    Json j;
    j["player"] = m.player == Player::kEmpty ? "EMPTY" : "NONEMPTY";
    j["open"] = canonical_to_json(m.open);
    if (m.inclusion) j["inclusion"] = m.inclusion->to_json();
    if (m.player == Player::kNonempty) j["state"] = m.state;
    arr.push_back(std::move(j));
  }
  return arr;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kAdversaryFault: return "adversary-fault";
    case Verdict::kStrategyFault: return "strategy-fault";
  }
  return "fail";
}

Json Episode::to_json() const {
  Json j;
  j["verdict"] = verdict_name(verdict);
  j["message"] = message;
  j["rounds"] = transcript.rounds();
  if (limit) {
    Json l;
    l["limit"] = point_to_json(limit->limit());
    Json att = Json::array();
    for (auto& p : limit->attachments()) att.push_back(point_to_json(p));
    l["attachments"] = att;
    Json pre = Json::array();
    for (auto& p : limit->terms(12)) pre.push_back(point_to_json(p));
    l["prefix"] = pre;
    j["limit"] = l;
  } else {
    j["limit"] = nullptr;
  }
  Json mem = Json::array();
  for (auto t : membership) mem.push_back(tri_name(t));
  j["membership"] = mem;
  j["ledgers"] = ledger.checks.empty() ? Json(nullptr) : ledger.to_json();
  j["transcript"] = transcript.to_json();
  return j;
}

Episode play(const SpacePtr& x, Strategy& s, Adversary& a, int rounds, int depth) {
  if (rounds < 0) throw Error(ErrorCode::kInvalidArgument, "rounds must be nonnegative");
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be positive");
  Episode e;
  Transcript& t = e.transcript;
  auto fault = [&](Verdict v, std::string why) {
    e.verdict = v;
    e.message = std::move(why);
    e.ledger = s.ledger();
    return e;
  };

  for (int r = 0; r < std::max(rounds, 1); ++r) {
    std::optional<CanonicalOpen> m;
    try {
      m = a.move(x, t, depth);
    } catch (const Error& err) {
      return fault(Verdict::kAdversaryFault, std::string("adversary error: ") + err.what());
    }
    if (!m) {
      if (t.moves.empty()) return fault(Verdict::kAdversaryFault, "no opening move");
      break;
    }
    Move em{Player::kEmpty, *m, std::nullopt, Json()};
    if (!t.moves.empty()) {
      auto inc = include(*x, *m, t.last());
      if (!inc.ok()) {
        return fault(Verdict::kAdversaryFault, "round " + std::to_string(r) + ": " + m->to_string() +
                                                   " is not certified inside " + t.last().to_string() + " (" +
                                                   inc.refusal + ")");
      }
      em.inclusion = inc.cert;
    }
    if (!has_nondiscrete_piece(*x, *m, depth)) {
      return fault(Verdict::kAdversaryFault, "round " + std::to_string(r) + ": " + m->to_string() +
                                                 " has no piece with a non-isolated point");
    }
    if (auto why = s.reject(*m)) return fault(Verdict::kAdversaryFault, "round " + std::to_string(r) + ": " + *why);
    t.moves.push_back(std::move(em));
    if (rounds == 0) break;

    CanonicalOpen reply;
    try {
      reply = s.respond(t);
    } catch (const Error& err) {
      return fault(Verdict::kStrategyFault, "round " + std::to_string(r) + ": " + err.what());
    }
    auto inc = include(*x, reply, t.last());
    if (!inc.ok()) {
      return fault(Verdict::kStrategyFault, "round " + std::to_string(r) + ": reply " + reply.to_string() +
                                                " is not certified inside " + t.last().to_string());
    }
    t.moves.push_back(Move{Player::kNonempty, std::move(reply), inc.cert, s.snapshot()});
  }

  try {
    e.limit = s.extract_limit(t, depth);
  } catch (const Error& err) {
    return fault(Verdict::kStrategyFault, std::string("extract_limit: ") + err.what());
  }
  auto cert = recertify(*e.limit, depth);
  if (!cert.ok()) return fault(Verdict::kFail, "limit is not certified: " + cert.message);

  bool all = true;
  for (const auto& m : t.moves) {
    if (m.player != Player::kNonempty && t.rounds() > 0) continue;
    Tri in = member(*e.limit, m.open);
    e.membership.push_back(in);
    all = all && in == Tri::kTrue;
  }
  e.ledger = s.ledger();
  e.verdict = all ? Verdict::kPass : Verdict::kFail;
  e.message = all ? "limit lies in every NONEMPTY move" : "limit misses a NONEMPTY move";
  return e;
}

// ---------------------------------------------------------------- adversaries

namespace {

std::optional<Point> nonisolated_in(const Space& x, const Open& u) {
  for (int d = 1; d <= 4; ++d) {
    for (auto& p : x.enumerate(u, d)) {
      if (!x.isolated(p)) return p;
    }
  }
  return std::nullopt;
}

bool sigma_hat(const Open& u) {
  const Open& b = u.kind == OpenKind::kMinus ? u.kids[0] : u;
  return b.kind == OpenKind::kHat && (b.kids[0].kind == OpenKind::kSigmaBox);
}

std::map<std::int64_t, Bits> box_of(const Open& box) {
  std::map<std::int64_t, Bits> m;
  for (std::size_t i = 0; i < box.ints.size(); ++i) m[box.ints[i]] = box.kids[i].ints;
  return m;
}

Point box_center(const std::map<std::int64_t, Bits>& m) { return sigma_point(m); }

class RandomAdversary final : public Adversary {
 public:
  RandomAdversary(std::uint64_t seed, RandomOptions opts) : rng_(seed), opts_(opts), seed_(seed) {}
  std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }

  std::optional<CanonicalOpen> move(const SpacePtr& x, const Transcript& t, int depth) override {
    if (t.moves.empty()) return opening(x, depth);
    const CanonicalOpen& last = t.last();
    for (const auto& u : last.pieces) note_indices(u);
    for (int attempt = 0; attempt < 6; ++attempt) {
      auto m = refine(*x, last);
      if (!m) continue;
      if (include(*x, *m, last).ok() && has_nondiscrete_piece(*x, *m, depth)) return m;
    }
    return last;
  }

 private:
  bool coin(int num, int den) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(den)) < num; }

  std::optional<CanonicalOpen> opening(const SpacePtr& x, int depth) {
    auto cands = enumerate_canonical(*x, 2, 3);
    if (cands.empty()) return std::nullopt;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const auto& c = cands[rng_() % cands.size()];
      if (sample_member(x, c, depth)) return c;
    }
    for (const auto& c : cands) {
      if (sample_member(x, c, depth)) return c;
    }
    return std::nullopt;
  }

  void note_indices(const Open& u) {
    if (u.kind == OpenKind::kSigmaBox) {
      for (auto id : u.ints) in_play_.insert(id);
    }
    for (const auto& k : u.kids) note_indices(k);
    for (const auto& p : u.points) note_point(p);
  }

  void note_point(const Point& p) {
    if (p.kind == PointKind::kSigma) {
      for (auto id : p.ints) in_play_.insert(id);
    }
    for (const auto& k : p.kids) note_point(k);
  }

  std::optional<CanonicalOpen> refine(const Space& x, const CanonicalOpen& last) {
    OpenList pieces;
    OpenList extra;
    for (const auto& u : last.pieces) {
      if (sigma_hat(u)) {
        pieces.push_back(refine_sigma(u, extra));
        continue;
      }
      auto p = nonisolated_in(x, u);
      if (!p) {
        Open cur = u;
        if (coin(1, 2)) {
          for (auto& q : x.enumerate(u, 2)) {
            if (x.isolated(q) && x.member(u, q)) {
              cur = Open::singleton(q);
              break;
            }
          }
        }
        pieces.push_back(cur);
        continue;
      }
      Open cur = u;
      if (coin(1, 3)) {
        PointList iso;
        for (auto& q : x.enumerate(u, 4)) {
          if (x.isolated(q) && x.member(u, q)) iso.push_back(q);
        }
        if (!iso.empty()) {
          Point q = iso[rng_() % iso.size()];
          cur = Open::minus(cur, {q});
          extra.push_back(Open::singleton(q));
        }
      }
      if (coin(1, 2)) {
        auto k = x.local_index_inside(*p, cur);
        if (k) cur = x.local_base(*p, *k + (coin(1, 3) ? 1 : 0));
      }
      pieces.push_back(cur);
    }
    pieces.insert(pieces.end(), extra.begin(), extra.end());
    try {
      return canonical(x, std::move(pieces));
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Bits random_bits(int n) {
    Bits b;
    for (int i = 0; i < n; ++i) b.push_back(static_cast<std::int64_t>(rng_() % 2));
    return b;
  }

  Open refine_sigma(const Open& u, OpenList& extra) {
    PointList removed = u.kind == OpenKind::kMinus ? u.points : PointList{};
    const Open& hat = u.kind == OpenKind::kMinus ? u.kids[0] : u;
    auto m = box_of(hat.kids[0]);
    if (coin(1, 3)) {
      // Carve a level-1 point out of the piece.
      auto w = m;
      std::int64_t id = pick_index(m, false);
      Bits tail = random_bits(1 + static_cast<int>(rng_() % 3));
      tail.push_back(1);
      w[id].insert(w[id].end(), tail.begin(), tail.end());
      Point q = Point::dup(box_center(w), 1);
      if (!contains_point(removed, q)) {
        removed.push_back(q);
        extra.push_back(Open::singleton(q));
      }
    }
    if (coin(1, 2)) {
      std::int64_t id = pick_index(m, true);
      Bits more = random_bits(1 + static_cast<int>(rng_() % 2));
      m[id].insert(m[id].end(), more.begin(), more.end());
    }
    Open box = Open::sigma_box(m);
    PointList keep;
    for (auto& q : removed) {
      if (q.kind == PointKind::kDup && q.ints[0] == 1 && sigma_inside(m, q.kids[0])) keep.push_back(q);
    }
    return Open::minus(Open::hat(box), keep);
  }

  static bool sigma_inside(const std::map<std::int64_t, Bits>& m, const Point& z) {
    for (const auto& [id, pre] : m) {
      if (!has_prefix(sigma_coord(z, id), pre)) return false;
    }
    return true;
  }

  std::int64_t pick_index(const std::map<std::int64_t, Bits>& m, bool allow_fresh) {
    bool fresh = allow_fresh && static_cast<int>(fresh_.size()) < opts_.max_fresh_indices && coin(1, 4);
    if (m.empty() || fresh) {
      std::int64_t id = in_play_.empty() ? 0 : *in_play_.rbegin() + 1;
      if (!m.empty() && static_cast<int>(fresh_.size()) >= opts_.max_fresh_indices) return m.begin()->first;
      fresh_.insert(id);
      in_play_.insert(id);
      return id;
    }
    auto it = m.begin();
    std::advance(it, static_cast<long>(rng_() % m.size()));
    return it->first;
  }

  std::mt19937_64 rng_;
  RandomOptions opts_;
  std::uint64_t seed_;
  std::set<std::int64_t> in_play_;
  std::set<std::int64_t> fresh_;
};

class ScriptedAdversary final : public Adversary {
 public:
  explicit ScriptedAdversary(std::vector<CanonicalOpen> moves) : moves_(std::move(moves)) {}
  std::string name() const override { return "scripted(" + std::to_string(moves_.size()) + ")"; }
  std::optional<CanonicalOpen> move(const SpacePtr&, const Transcript& t, int) override {
    std::size_t i = static_cast<std::size_t>(t.rounds());
    if (i >= moves_.size()) return std::nullopt;
    return moves_[i];
  }

 private:
  std::vector<CanonicalOpen> moves_;
};

class InteractiveAdversary final : public Adversary {
 public:
  InteractiveAdversary(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string name() const override { return "interactive"; }

  std::optional<CanonicalOpen> move(const SpacePtr& x, const Transcript& t, int depth) override {
    if (!t.moves.empty()) out_ << "reply: " << canonical_to_json(t.last()).dump() << "\n";
    std::string line;
    while (true) {
      out_ << "move " << t.rounds() << "> " << std::flush;
      if (!std::getline(in_, line) || line == "quit") return std::nullopt;
      if (line.empty()) continue;
      try {
        CanonicalOpen m = canonical_from_json(*x, Json::parse(line));
        if (!t.moves.empty()) {
          auto inc = include(*x, m, t.last());
          if (!inc.ok()) {
            out_ << "illegal: " << inc.refusal << "\n";
            continue;
          }
        }
        if (!has_nondiscrete_piece(*x, m, depth)) {
          out_ << "illegal: no piece holds a non-isolated point\n";
          continue;
        }
        out_ << "ok\n";
        return m;
      } catch (const std::exception& err) {
        out_ << "illegal: " << err.what() << "\n";
      }
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

AdversaryPtr random_adversary(std::uint64_t seed, RandomOptions opts) {
  return std::make_unique<RandomAdversary>(seed, opts);
}

AdversaryPtr scripted_adversary(std::vector<CanonicalOpen> moves) {
  return std::make_unique<ScriptedAdversary>(std::move(moves));
}

AdversaryPtr interactive_adversary(std::istream& in, std::ostream& out) {
  return std::make_unique<InteractiveAdversary>(in, out);
}

}  // namespace seqhyper
