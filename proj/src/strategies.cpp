#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "codec.hpp"
#include "filters.hpp"
#include "games.hpp"
#include "metric.hpp"
#include "spaces.hpp"

namespace seqhyper {

namespace {

// A stateful term generator behind a TermStream; terms are requested in order.
struct Generator {
  std::mutex mu;
  std::function<Point()> next;
};

ConvSeq certified(const SpacePtr& x, const Point& limit, PointList head, std::function<Point()> next, int depth,
                  PointList attachments = {}) {
  auto gen = std::make_shared<Generator>();
  auto h = std::make_shared<PointList>(std::move(head));
  gen->next = std::move(next);
  auto stream = std::make_shared<TermStream>([gen, h](std::size_t i) {
    std::lock_guard lock(gen->mu);
    if (i < h->size()) return (*h)[i];
    return gen->next();
  });
  auto cert = make_seq(x, limit, stream, depth, std::move(attachments));
  if (!cert.ok()) throw Error(ErrorCode::kPrecondition, "limit certificate failed: " + cert.message);
  return *cert.seq;
}

std::optional<Point> fresh_isolated(const Space& x, const Open& u, const PointList& avoid) {
  for (int d = 4; d <= 256; d *= 2) {
    for (auto& p : x.enumerate(u, d)) {
      if (x.isolated(p) && x.member(u, p) && !contains_point(avoid, p)) return p;
    }
  }
  return std::nullopt;
}

Json points_json(const PointList& pts) {
  Json a = Json::array();
  for (auto& p : pts) a.push_back(point_to_json(p));
  return a;
}

ConvSeq any_member(const SpacePtr& x, const Transcript& t, int depth) {
  if (t.moves.empty()) throw Error(ErrorCode::kPrecondition, "empty transcript");
  auto s = sample_member(x, t.last(), depth);
  if (!s) throw Error(ErrorCode::kPrecondition, "no member of " + t.last().to_string() + " found");
  return *s;
}

// ---------------------------------------------------------------- commit

class CommitStrategy final : public Strategy {
 public:
  CommitStrategy(SpacePtr x, Point anchor) : x_(std::move(x)), anchor_(std::move(anchor)) {
    if (x_->isolated(anchor_)) throw Error(ErrorCode::kPrecondition, anchor_.to_string() + " is isolated");
  }

  std::string name() const override { return "commit(" + anchor_.to_string() + ")"; }

  CanonicalOpen respond(const Transcript& t) override {
    const CanonicalOpen& v = t.last();
    std::optional<std::size_t> tail;
    for (std::size_t j = 0; j < v.pieces.size(); ++j) {
      if (x_->member(v.pieces[j], anchor_)) tail = j;
    }
    if (!tail) throw Error(ErrorCode::kPrecondition, "no piece of " + v.to_string() + " contains " + anchor_.to_string());
    const Open& piece = v.pieces[*tail];
    const Open& core = piece.kind == OpenKind::kMinus ? piece.kids[0] : piece;
    PointList holes = piece.kind == OpenKind::kMinus ? piece.points : PointList{};
    auto k0 = x_->local_index_inside(anchor_, core);
    if (!k0) throw Error(ErrorCode::kPrecondition, "no local base element inside " + core.to_string());

    std::vector<bool> hit(v.pieces.size(), false);
    for (const auto& c : committed_) {
      bool found = false;
      for (std::size_t j = 0; j < v.pieces.size() && !found; ++j) {
        if (x_->member(v.pieces[j], c)) hit[j] = found = true;
      }
      if (!found) throw Error(ErrorCode::kPrecondition, "committed point " + c.to_string() + " left the play");
    }
    for (std::size_t j = 0; j < v.pieces.size(); ++j) {
      if (j == *tail || hit[j]) continue;
      auto q = fresh_isolated(*x_, v.pieces[j], committed_);
      if (!q) throw Error(ErrorCode::kPrecondition, "no isolated point found in " + v.pieces[j].to_string());
      committed_.push_back(*q);
    }
    int kn = std::max(*k0, round_);
    PointList avoid = committed_;
    avoid.insert(avoid.end(), holes.begin(), holes.end());
    auto y = fresh_isolated(*x_, x_->local_base(anchor_, kn), avoid);
    if (!y) throw Error(ErrorCode::kPrecondition, "no fresh point near " + anchor_.to_string());
    committed_.push_back(*y);
    avoid.push_back(*y);
    Open b = x_->local_base(anchor_, std::max(kn, round_ + 1));
    PointList removed;
    for (const auto& p : avoid) {
      if (x_->member(b, p) && !contains_point(removed, p)) removed.push_back(p);
    }
    tail_ = removed.empty() ? b : Open::minus(b, removed);
    ++round_;
    OpenList pieces{*tail_};
    for (const auto& c : committed_) pieces.push_back(Open::singleton(c));
    return canonical(*x_, std::move(pieces));
  }

  ConvSeq extract_limit(const Transcript& t, int depth) override {
    if (round_ == 0) return any_member(x_, t, depth);
    Open tail = *tail_;
    auto used = std::make_shared<std::set<Point>>(committed_.begin(), committed_.end());
    auto canon = x_->canonical_sequence(anchor_);
    auto i = std::make_shared<std::size_t>(0);
    SpacePtr x = x_;
    return certified(x_, anchor_, committed_, [=]() {
      for (std::size_t tries = 0; tries < 1u << 20; ++tries) {
        Point p = canon((*i)++);
        if (x->member(tail, p) && used->insert(p).second) return p;
      }
      throw Error(ErrorCode::kOverflow, "tail enumeration exhausted");
    }, depth);
  }

  Json snapshot() const override {
    return Json{{"anchor", point_to_json(anchor_)}, {"committed", points_json(committed_)}, {"tail", tail_ ? open_to_json(*tail_) : Json(nullptr)}};
  }

 private:
  SpacePtr x_;
  Point anchor_;
  PointList committed_;
  std::optional<Open> tail_;
  int round_ = 0;
};

// ---------------------------------------------------------------- compose

class Composed final : public ComposedStrategy {
 public:
  Composed(SpacePtr x, std::function<bool(const Point&)> dense, PartLookup parts, std::string name,
           std::optional<Part> passthrough)
      : x_(std::move(x)), dense_(std::move(dense)), parts_(std::move(parts)), name_(std::move(name)),
        passthrough_(std::move(passthrough)) {}

  std::string name() const override { return name_; }
  const Transcript& sub_transcript() const override { return sub_t_; }
  std::optional<Part> chosen_part() const override { return part_; }

  CanonicalOpen respond(const Transcript& t) override {
    if (passthrough_) {
      if (!sub_) {
        part_ = passthrough_;
        sub_ = part_->make();
      }
      sub_t_ = t;
      return sub_->respond(t);
    }
    const CanonicalOpen& v = t.last();
    OpenList sub_pieces;
    OpenList frozen;
    if (!sub_) {
      open_game(v, sub_pieces, frozen);
    } else {
      const CanonicalOpen& mine = t.moves[t.moves.size() - 2].open;
      auto inc = include(*x_, v, mine);
      if (!inc.ok()) throw Error(ErrorCode::kPrecondition, "move is not inside the previous reply: " + inc.refusal);
      for (std::size_t j = 0; j < v.pieces.size(); ++j) {
        if (inc.cert->parent_of[j] < sub_width_) {
          sub_pieces.push_back(v.pieces[j]);
        } else {
          frozen.push_back(v.pieces[j]);
        }
      }
    }
    Move em{Player::kEmpty, CanonicalOpen{sub_pieces}, std::nullopt, Json()};
    if (!sub_t_.moves.empty()) {
      auto inc = include(*x_, em.open, sub_t_.last());
      if (inc.ok()) em.inclusion = inc.cert;
    }
    sub_t_.moves.push_back(std::move(em));
    CanonicalOpen r = sub_->respond(sub_t_);
    auto inc = include(*x_, r, sub_t_.last());
    sub_t_.moves.push_back(Move{Player::kNonempty, r, inc.cert, sub_->snapshot()});
    sub_width_ = r.pieces.size();
    frozen_ = frozen;
    OpenList pieces = r.pieces;
    pieces.insert(pieces.end(), frozen.begin(), frozen.end());
    return canonical(*x_, std::move(pieces));
  }

  ConvSeq extract_limit(const Transcript& t, int depth) override {
    if (!sub_) return any_member(x_, t, depth);
    ConvSeq core = sub_->extract_limit(sub_t_, depth);
    if (passthrough_ || attachments_.empty()) return core;
    return amalgam(core, FiniteSet::of(attachments_));
  }

  Json snapshot() const override {
    Json j;
    j["part"] = part_ ? Json{{"region", open_to_json(part_->region)}, {"anchor", point_to_json(part_->anchor)}}
                      : Json(nullptr);
    j["attachments"] = points_json(attachments_);
    j["delegate"] = sub_ ? sub_->snapshot() : Json(nullptr);
    return j;
  }

  Report ledger() const override { return sub_ ? sub_->ledger() : Report{}; }

 private:
  void open_game(const CanonicalOpen& v, OpenList& sub_pieces, OpenList& frozen) {
    // Condition (i): a piece holding a non-isolated point of some part.
    std::optional<std::size_t> chosen;
    for (std::size_t j = 0; j < v.pieces.size() && !chosen; ++j) {
      for (int d = 1; d <= 8 && !chosen; d *= 2) {
        for (auto& p : x_->enumerate(v.pieces[j], d)) {
          if (x_->isolated(p) || !x_->member(v.pieces[j], p)) continue;
          auto part = parts_(p);
          if (!part || !x_->member(part->region, p)) continue;
          part_ = part;
          chosen = j;
          break;
        }
      }
    }
    if (!chosen) throw Error(ErrorCode::kPrecondition, "no piece of " + v.to_string() + " meets a part at depth 8");
    std::optional<Open> w;
    for (int k = 0; k <= kMaxLocalIndex && !w; ++k) {
      Open b = x_->local_base(part_->anchor, k);
      if (x_->subset(b, v.pieces[*chosen]) && x_->subset(b, part_->region)) w = b;
    }
    if (!w) throw Error(ErrorCode::kPrecondition, "no local base element inside both the piece and the part");
    sub_pieces.push_back(*w);
    for (std::size_t j = 0; j < v.pieces.size(); ++j) {
      if (j == *chosen) continue;
      std::optional<Point> d;
      for (int depth = 2; depth <= 64 && !d; depth *= 2) {
        for (auto& p : x_->enumerate(v.pieces[j], depth)) {
          if (x_->isolated(p) && dense_(p) && x_->member(v.pieces[j], p)) {
            d = p;
            break;
          }
        }
      }
      if (!d) throw Error(ErrorCode::kPrecondition, "no dense isolated point in " + v.pieces[j].to_string());
      attachments_.push_back(*d);
      frozen.push_back(Open::singleton(*d));
    }
    sub_ = part_->make();
  }

  SpacePtr x_;
  std::function<bool(const Point&)> dense_;
  PartLookup parts_;
  std::string name_;
  std::optional<Part> passthrough_;
  std::optional<Part> part_;
  StrategyPtr sub_;
  Transcript sub_t_;
  std::size_t sub_width_ = 0;
  OpenList frozen_;
  PointList attachments_;
};

// ---------------------------------------------------------------- duplicate of a metric space

Bits prefix_of(const Open& hat_piece) {
  const Open& h = hat_piece.kind == OpenKind::kMinus ? hat_piece.kids[0] : hat_piece;
  if (h.kind != OpenKind::kHat) throw Error(ErrorCode::kPrecondition, "expected a hat piece, got " + h.to_string());
  const Open& b = h.kids[0];
  if (b.kind == OpenKind::kWhole) return {};
  if (b.kind != OpenKind::kDyInterval) throw Error(ErrorCode::kPrecondition, "expected a cylinder, got " + b.to_string());
  return b.ints;
}

Json bits_json(const Bits& b) {
  std::string s;
  for (auto v : b) s.push_back(v ? '1' : '0');
  return s;
}

class DuplicateMetric final : public Strategy {
 public:
  explicit DuplicateMetric(SpacePtr ax) : ax_(std::move(ax)) {
    const auto* dup = dynamic_cast<const DuplicateSpace*>(ax_.get());
    if (!dup || (dup->base()->kind() != "cantor" && dup->base()->kind() != "dyadic")) {
      throw Error(ErrorCode::kPrecondition, "duplicate_metric_strategy plays on the duplicate of a Cantor or dyadic space");
    }
  }

  std::string name() const override { return "duplicate-metric"; }

  CanonicalOpen respond(const Transcript& t) override {
    int i = static_cast<int>(history_.size());
    CanonicalOpen pr = pi_refine(ax_, t.last());
    Bits b = prefix_of(pr.pieces[0]);
    Bits w = b;
    w.push_back(0);
    while (static_cast<int>(w.size()) < i + 1) w.push_back(0);
    Bits yb = b;
    yb.push_back(1);
    Point y = Point::dup(Point::dyadic_bits(yb), 1);

    Row row;
    row.round = i;
    row.w = w;
    row.b = b;
    row.nested = history_.empty() || has_prefix(w, history_.back().w);
    row.inside_previous = history_.empty() || has_prefix(yb, history_.back().w);
    std::size_t before = committed_.size();
    for (std::size_t j = 1; j < pr.pieces.size(); ++j) {
      const Point& q = pr.pieces[j].points[0];
      if (!contains_point(committed_, q)) committed_.push_back(q);
    }
    if (!contains_point(committed_, y)) committed_.push_back(y);
    row.fresh = committed_.size() - before;
    row.hat_clear = std::none_of(committed_.begin(), committed_.end(), [&](const Point& c) {
      return has_prefix(dyadic_digits(c.kids[0]), w);
    });
    history_.push_back(row);

    OpenList pieces{Open::hat(Open::dy_prefix(w))};
    for (const auto& c : committed_) pieces.push_back(Open::singleton(c));
    return canonical(*ax_, std::move(pieces));
  }

  ConvSeq extract_limit(const Transcript& t, int depth) override {
    if (history_.empty()) return any_member(ax_, t, depth);
    Bits w = history_.back().w;
    Point x = Point::dup(Point::dyadic_bits(w), 0);
    auto n = std::make_shared<std::size_t>(0);
    return certified(ax_, x, committed_, [w, n]() {
      Bits b = w;
      b.resize(w.size() + (*n)++, 0);
      b.push_back(1);
      return Point::dup(Point::dyadic_bits(b), 1);
    }, depth);
  }

  Json snapshot() const override {
    Json j;
    if (!history_.empty()) j["W"] = bits_json(history_.back().w);
    j["committed"] = points_json(committed_);
    return j;
  }

  Report ledger() const override {
    Report r;
    r.title = "duplicate-metric-ledger";
    Json rows = Json::array();
    int diam_bad = 0, nest_bad = 0, grow_bad = 0, inside_bad = 0, clear_bad = 0;
    for (const auto& row : history_) {
      // Cylinders of length L have diameter 2^-(L+1) in the first-difference metric.
      bool small = pow2_neg(static_cast<std::int64_t>(row.w.size()) + 1) < pow2_neg(row.round);
      diam_bad += !small;
      nest_bad += !row.nested;
      grow_bad += row.fresh < 1;
      inside_bad += !row.inside_previous;
      clear_bad += !row.hat_clear;
      rows.push_back(Json{{"round", row.round},
                          {"W", bits_json(row.w)},
                          {"diameter", cylinder_diameter(row.w.size())},
                          {"bound", to_string(pow2_neg(row.round))},
                          {"nested", row.nested},
                          {"fresh", row.fresh}});
    }
    r.add("(a) closure nesting cl(W_i) inside W_(i-1)", tri(nest_bad == 0), Json{{"violations", nest_bad}});
    r.add("(b) diameter(W_i) < 2^-i", tri(diam_bad == 0), Json{{"violations", diam_bad}});
    r.add("(c)-(d) level-1 commitments grow", tri(grow_bad == 0), Json{{"violations", grow_bad}});
    r.add("(e) new commitments inside W_(i-1)", tri(inside_bad == 0), Json{{"violations", inside_bad}});
    r.add("hat(W_i) avoids the commitments", tri(clear_bad == 0), Json{{"violations", clear_bad}, {"rows", rows}});
    return r;
  }

 private:
  struct Row {
    int round = 0;
    Bits w;
    Bits b;
    bool nested = true;
    bool inside_previous = true;
    bool hat_clear = true;
    std::size_t fresh = 0;
  };
  SpacePtr ax_;
  PointList committed_;
  std::vector<Row> history_;
};

// ---------------------------------------------------------------- duplicate of the sigma-product

using Box = std::map<std::int64_t, Bits>;

bool in_box(const Box& m, const Point& z) {
  for (const auto& [id, pre] : m) {
    if (!has_prefix(sigma_coord(z, id), pre)) return false;
  }
  return true;
}

Json box_json(const Box& m) {
  Json j = Json::object();
  for (const auto& [id, b] : m) j[std::to_string(id)] = bits_json(b);
  return j;
}

class SigmaDuplicate final : public Strategy {
 public:
  explicit SigmaDuplicate(SpacePtr az) : az_(std::move(az)) {
    const auto* dup = dynamic_cast<const DuplicateSpace*>(az_.get());
    if (!dup || dup->base()->kind() != "sigma") {
      throw Error(ErrorCode::kPrecondition, "sigma_duplicate_strategy plays on the duplicate of the sigma-product");
    }
  }

  std::string name() const override { return "sigma-duplicate"; }

  std::optional<std::string> reject(const CanonicalOpen& m) const override {
    for (const auto& u : m.pieces) {
      if (u.kind == OpenKind::kSingleton) {
        const Point& p = u.points[0];
        if (p.kind == PointKind::kDup && p.kids[0].kind == PointKind::kSigma) continue;
      }
      const Open& h = u.kind == OpenKind::kMinus ? u.kids[0] : u;
      if (h.kind == OpenKind::kHat &&
          (h.kids[0].kind == OpenKind::kSigmaBox || h.kids[0].kind == OpenKind::kWhole)) {
        continue;
      }
      return "piece " + u.to_string() + " has undeclared support";
    }
    return std::nullopt;
  }

  CanonicalOpen respond(const Transcript& t) override {
    const CanonicalOpen& v = t.last();
    int n = static_cast<int>(history_.size());
    std::optional<std::size_t> j0;
    for (std::size_t j = 0; j < v.pieces.size() && !j0; ++j) {
      const Open& u = v.pieces[j];
      const Open& h = u.kind == OpenKind::kMinus ? u.kids[0] : u;
      if (h.kind == OpenKind::kHat) j0 = j;
    }
    if (!j0) throw Error(ErrorCode::kPrecondition, "no hat piece in " + v.to_string());
    const Open& u0 = v.pieces[*j0];
    PointList removed = u0.kind == OpenKind::kMinus ? u0.points : PointList{};
    const Open& h0 = u0.kind == OpenKind::kMinus ? u0.kids[0] : u0;
    Box box0;
    if (h0.kids[0].kind == OpenKind::kSigmaBox) {
      for (std::size_t i = 0; i < h0.kids[0].ints.size(); ++i) box0[h0.kids[0].ints[i]] = h0.kids[0].kids[i].ints;
    }

    // Every other piece keeps a committed point or receives one.
    std::size_t before = committed_.size();
    std::vector<bool> hit(v.pieces.size(), false);
    for (const auto& c : committed_) {
      for (std::size_t j = 0; j < v.pieces.size(); ++j) {
        if (az_->member(v.pieces[j], c)) hit[j] = true;
      }
    }
    for (std::size_t j = 0; j < v.pieces.size(); ++j) {
      if (j == *j0 || hit[j]) continue;
      auto q = fresh_isolated(*az_, v.pieces[j], committed_);
      if (!q) throw Error(ErrorCode::kPrecondition, "no level-1 point in " + v.pieces[j].to_string());
      committed_.push_back(*q);
    }

    Box b = history_.empty() ? Box{} : history_.back().box;
    for (const auto& [id, pre] : box0) {
      auto it = b.find(id);
      if (it == b.end() || has_prefix(pre, it->second)) {
        b[id] = pre;
      } else if (!has_prefix(it->second, pre)) {
        throw Error(ErrorCode::kPrecondition, "the move leaves B_" + std::to_string(n - 1) + " at coordinate " +
                                                  std::to_string(id));
      }
    }

    // A_n and the scheduled index from the fiber of the Cantor pairing.
    std::set<std::int64_t> a(indices_.begin(), indices_.end());
    for (const auto& [id, pre] : b) a.insert(id);
    for (const auto& c : committed_) {
      for (auto id : sigma_support(c.kids[0])) a.insert(id);
    }
    lists_.push_back(std::vector<std::int64_t>(a.begin(), a.end()));
    indices_.assign(a.begin(), a.end());
    auto [k, m] = cantor_unpair(n);
    std::optional<std::int64_t> scheduled;
    const auto& list = lists_[static_cast<std::size_t>(k)];
    if (!list.empty()) scheduled = list[std::min<std::size_t>(static_cast<std::size_t>(m), list.size() - 1)];
    if (scheduled) b.emplace(*scheduled, Bits{});
    for (const auto& c : committed_) {
      for (auto id : sigma_support(c.kids[0])) b.emplace(id, Bits{});
    }
    if (b.empty()) b.emplace(0, Bits{});
    for (auto& [id, pre] : b) {
      while (static_cast<int>(pre.size()) < n + 1) pre.push_back(0);
    }

    // Two fresh level-1 points off B_(n+1) but inside the move's hat piece.
    std::int64_t id0 = b.begin()->first;
    Bits p = b[id0];
    Box nb = b;
    nb[id0].push_back(0);
    std::size_t fresh = 0;
    for (std::size_t gap = 0; fresh < 2 && gap < 64; ++gap) {
      Box fb = b;
      fb[id0].push_back(1);
      fb[id0].resize(fb[id0].size() + gap, 0);
      fb[id0].push_back(1);
      Point q = Point::dup(sigma_point(fb), 1);
      if (contains_point(removed, q) || contains_point(committed_, q)) continue;
      committed_.push_back(q);
      ++fresh;
    }
    PointList avoid = removed;
    avoid.insert(avoid.end(), committed_.begin(), committed_.end());
    for (const auto& w : avoid) {
      if (w.kind != PointKind::kDup) continue;
      while (in_box(nb, w.kids[0])) {
        Bits wc = sigma_coord(w.kids[0], id0);
        std::size_t pos = nb[id0].size();
        std::int64_t bit = pos < wc.size() ? wc[pos] : 0;
        nb[id0].push_back(1 - bit);
      }
    }

    Row row;
    row.round = n;
    row.box = nb;
    row.fresh = committed_.size() - before;
    row.new_points = fresh;
    row.scheduled = scheduled;
    if (!history_.empty()) {
      const Box& prev = history_.back().box;
      row.nested = std::all_of(prev.begin(), prev.end(), [&](const auto& e) {
        auto it = nb.find(e.first);
        return it != nb.end() && has_prefix(it->second, e.second);
      });
    }
    row.covered = true;
    for (const auto& c : committed_) {
      for (auto id : sigma_support(c.kids[0])) row.covered = row.covered && nb.count(id);
    }
    std::size_t shortest = SIZE_MAX;
    for (const auto& [id, pre] : nb) shortest = std::min(shortest, pre.size());
    row.shortest = shortest;
    history_.push_back(row);

    OpenList pieces{Open::hat(Open::sigma_box(nb))};
    for (const auto& c : committed_) pieces.push_back(Open::singleton(c));
    return canonical(*az_, std::move(pieces));
  }

  ConvSeq extract_limit(const Transcript& t, int depth) override {
    if (history_.empty()) return any_member(az_, t, depth);
    Box b = history_.back().box;
    Point z = Point::dup(sigma_point(b), 0);
    auto n = std::make_shared<std::size_t>(0);
    return certified(az_, z, committed_, [b, n]() {
      Box y = b;
      auto& c = y.begin()->second;
      c.resize(c.size() + (*n)++, 0);
      c.push_back(1);
      return Point::dup(sigma_point(y), 1);
    }, depth);
  }

  Json snapshot() const override {
    Json j;
    if (!history_.empty()) j["B"] = box_json(history_.back().box);
    j["committed"] = points_json(committed_);
    return j;
  }

  Report ledger() const override {
    Report r;
    r.title = "sigma-duplicate-ledger";
    Json rows = Json::array();
    int nest_bad = 0, fresh_bad = 0, cover_bad = 0, diam_bad = 0;
    for (const auto& row : history_) {
      nest_bad += !row.nested;
      fresh_bad += row.new_points < 2;
      cover_bad += !row.covered;
      diam_bad += static_cast<int>(row.shortest) < row.round;
      rows.push_back(Json{{"round", row.round},
                          {"B", box_json(row.box)},
                          {"fresh", row.new_points},
                          {"scheduled", row.scheduled ? Json(*row.scheduled) : Json(nullptr)}});
    }
    r.add("(2) cl(B_(n+1)) inside B_n", tri(nest_bad == 0), Json{{"violations", nest_bad}});
    r.add("(3) at least two fresh level-1 points per round", tri(fresh_bad == 0), Json{{"violations", fresh_bad}});
    r.add("(4) committed supports inside supp(B_(n+1))", tri(cover_bad == 0), Json{{"violations", cover_bad}});
    r.add("coordinate diameters < 2^-n", tri(diam_bad == 0), Json{{"violations", diam_bad}, {"rows", rows}});
    return r;
  }

  // The support indices seen so far, in increasing order.
  const std::vector<std::int64_t>& indices() const { return indices_; }

 private:
  struct Row {
    int round = 0;
    Box box;
    std::size_t fresh = 0;
    std::size_t new_points = 0;
    std::optional<std::int64_t> scheduled;
    bool nested = true;
    bool covered = true;
    std::size_t shortest = 0;
  };
  SpacePtr az_;
  PointList committed_;
  std::vector<Row> history_;
  std::vector<std::vector<std::int64_t>> lists_;
  std::vector<std::int64_t> indices_;
};

}  // namespace

std::string cylinder_diameter(std::size_t len) { return to_string(pow2_neg(static_cast<std::int64_t>(len) + 1)); }

StrategyPtr commit_strategy(SpacePtr x, Point anchor) {
  return std::make_unique<CommitStrategy>(std::move(x), std::move(anchor));
}

StrategyPtr baire_strategy_countable_base(SpacePtr xi) {
  const auto* xs = dynamic_cast<const XiSpace*>(xi.get());
  if (!xs) throw Error(ErrorCode::kInvalidArgument, "baire_strategy_countable_base plays on xi spaces");
  if (!xs->filter().countable_base()) {
    throw Error(ErrorCode::kPrecondition, "filter " + xs->filter().name() + " declares no countable base");
  }
  return commit_strategy(std::move(xi), Point::filter_point());
}

StrategyPtr compose_strategy(SpacePtr x, std::function<bool(const Point&)> dense, PartLookup parts,
                             std::string name) {
  return std::make_unique<Composed>(std::move(x), std::move(dense), std::move(parts), std::move(name), std::nullopt);
}

StrategyPtr compose_strategy(SpacePtr x, std::function<bool(const Point&)> dense, std::vector<Part> parts,
                             std::string name) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "compose_strategy needs at least one part");
  std::optional<Part> passthrough;
  if (parts.size() == 1 && parts[0].region.kind == OpenKind::kWhole) passthrough = parts[0];
  auto shared = std::make_shared<std::vector<Part>>(std::move(parts));
  SpacePtr xs = x;
  PartLookup lookup = [shared, xs](const Point& p) -> std::optional<Part> {
    for (const auto& part : *shared) {
      if (xs->member(part.region, p)) return part;
    }
    return std::nullopt;
  };
  return std::make_unique<Composed>(std::move(x), std::move(dense), std::move(lookup), std::move(name),
                                    std::move(passthrough));
}

PartLookup psi_parts(SpacePtr psi) {
  if (!dynamic_cast<const PsiSpace*>(psi.get())) throw Error(ErrorCode::kInvalidArgument, "psi_parts needs a Psi space");
  return [psi](const Point& p) -> std::optional<Part> {
    if (p.kind != PointKind::kGen) return std::nullopt;
    return Part{Open::psi_gen(p.ints[0]), p, [psi, p]() { return commit_strategy(psi, p); }};
  };
}

PartLookup ordinal_parts(SpacePtr blocks) {
  return [blocks](const Point& p) -> std::optional<Part> {
    if (p.kind != PointKind::kOrdinal || blocks->isolated(p)) return std::nullopt;
    Ordinal a = Ordinal::from_point(p);
    Ordinal zeta = omega_block_start(a);
    return Part{Open::ord_interval(zeta.to_point(), p), p, [blocks, p]() { return commit_strategy(blocks, p); }};
  };
}

StrategyPtr psi_compose_strategy(SpacePtr psi) {
  auto parts = psi_parts(psi);
  SpacePtr x = psi;
  return compose_strategy(std::move(psi), [x](const Point& p) { return x->isolated(p); }, std::move(parts),
                          "compose(psi)");
}

StrategyPtr ordinal_compose_strategy(SpacePtr blocks) {
  auto parts = ordinal_parts(blocks);
  SpacePtr x = blocks;
  return compose_strategy(std::move(blocks), [x](const Point& p) { return x->isolated(p); }, std::move(parts),
                          "compose(ordinal)");
}

Report compose_hypotheses(const SpacePtr& x, const std::function<bool(const Point&)>& dense, const PartLookup& parts,
                          int depth) {
  Report r;
  r.title = "compose-hypotheses";
  PointList limits;
  for (auto& p : x->points(depth)) {
    if (!x->isolated(p)) limits.push_back(p);
  }
  std::vector<Part> found;
  Json missing = Json::array();
  for (auto& p : limits) {
    auto part = parts(p);
    if (part && x->member(part->region, p)) {
      found.push_back(*part);
    } else {
      missing.push_back(point_to_json(p));
    }
  }
  Tri cover = limits.empty() ? Tri::kUnknown : tri(missing.empty());
  r.add("(i) part limits meet every sampled non-isolated point", cover,
        Json{{"sampled", limits.size()}, {"missing", missing}});

  int bad = 0;
  for (auto& part : found) {
    try {
      auto s = part.make();
      auto k = x->local_index_inside(part.anchor, part.region);
      if (!k) {
        ++bad;
        continue;
      }
      Transcript t;
      t.moves.push_back(Move{Player::kEmpty, CanonicalOpen{{x->local_base(part.anchor, *k)}}, std::nullopt, Json()});
      bad += !include(*x, s->respond(t), t.last()).ok();
    } catch (const Error&) {
      ++bad;
    }
  }
  r.add("(ii) part strategies answer inside their parts", found.empty() ? Tri::kUnknown : tri(bad == 0),
        Json{{"parts", found.size()}, {"failures", bad}});

  int joined = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      if (found[i].anchor == found[j].anchor) continue;
      bool apart = false;
      for (int k = 0; k <= depth && !apart; ++k) {
        apart = x->disjoint(x->local_base(found[i].anchor, k), x->local_base(found[j].anchor, k));
      }
      joined += !apart;
    }
  }
  r.add("(iii) distinct parts have separated limits", found.size() < 2 ? Tri::kUnknown : tri(joined == 0),
        Json{{"unseparated-pairs", joined}});

  auto iso = isolated_dense_check(*x, depth);
  std::size_t dense_ok = 0, iso_n = 0;
  for (auto& p : x->points(depth)) {
    if (!x->isolated(p)) continue;
    ++iso_n;
    dense_ok += dense(p);
  }
  r.add("(iv) the dense set is dense and isolated", iso.overall() == Tri::kTrue ? tri(dense_ok > 0) : iso.overall(),
        Json{{"isolated-sampled", iso_n}, {"in-dense-set", dense_ok}});
  return r;
}

StrategyPtr duplicate_metric_strategy(SpacePtr ax) { return std::make_unique<DuplicateMetric>(std::move(ax)); }

StrategyPtr sigma_duplicate_strategy(SpacePtr az) { return std::make_unique<SigmaDuplicate>(std::move(az)); }

}  // namespace seqhyper
