#include "diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

#include "spaces.hpp"

namespace seqhyper {

namespace {

// Raised inside the candidate stream when a stage finds no admissible term.
struct StageFailure {
  std::int64_t stage;
  std::int64_t leg;
};

struct Diagonal {
  const XiSpace* xi = nullptr;
  SeqFamily seqs;
  std::mutex mu;
  std::map<std::int64_t, ConvSeq> legs;
  std::map<std::int64_t, std::size_t> cursor;
  std::set<Point> used;
  std::vector<std::int64_t> served;

  std::int64_t leg_of_stage(std::int64_t i) const {
    if (seqs.size) return i % *seqs.size;
    return cantor_unpair(i).first;
  }

  const ConvSeq& leg(std::int64_t j) {
    auto it = legs.find(j);
    if (it == legs.end()) it = legs.emplace(j, seqs.at(j)).first;
    return it->second;
  }

  Point stage(std::int64_t i) {
    std::lock_guard lock(mu);
    std::int64_t j = leg_of_stage(i);
    const ConvSeq& s = leg(j);
    std::size_t& c = cursor[j];
    const auto& f = xi->filter();
    for (std::size_t tries = 0; tries < kMaxScan; ++tries, ++c) {
      Point t = s.term(c);
      if (used.count(t) || !t.is_nat()) continue;
      if (f.in_base(i, t.nat_value())) {
        used.insert(t);
        served.push_back(j);
        ++c;
        return t;
      }
    }
    throw StageFailure{i, j};
  }
};

// Least window position past which no candidate term is the first one met
// inside some generator; nullopt when escapes persist up to max_window.
std::optional<std::size_t> diagonal_modulus(const AdFamily& fam, const ConvSeq& t, std::size_t max_window,
                                            std::size_t& last_escape) {
  std::set<std::int64_t> met;
  std::optional<std::size_t> last;
  std::size_t window = kInitialScan;
  std::size_t scanned = 0;
  while (true) {
    for (; scanned < window; ++scanned) {
      std::int64_t x = t.term(scanned).nat_value();
      bool escapes = false;
      for (auto g : fam.containing(x)) escapes |= met.insert(g).second;
      if (escapes) last = scanned;
    }
    std::size_t n = last ? *last + 1 : 0;
    last_escape = last.value_or(0);
    if (2 * n <= window) return n;
    if (window >= max_window) return std::nullopt;
    window = std::min(2 * window, max_window);
  }
}

}  // namespace

SeqFamily SeqFamily::of(std::vector<ConvSeq> seqs) {
  if (seqs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sequence family");
  auto shared = std::make_shared<std::vector<ConvSeq>>(std::move(seqs));
  SeqFamily out;
  out.size = static_cast<std::int64_t>(shared->size());
  out.at = [shared](std::int64_t j) { return shared->at(static_cast<std::size_t>(j)); };
  return out;
}

SeqFamily leg_family(const SpacePtr& xi, std::optional<std::int64_t> count) {
  const auto* xs = dynamic_cast<const XiSpace*>(xi.get());
  if (!xs) throw Error(ErrorCode::kInvalidArgument, "leg families live in xi spaces");
  const auto& f = xs->filter();
  std::function<TermFn(std::int64_t)> make;
  switch (f.kind()) {
    case FilterKind::kFrechet:
      make = [](std::int64_t j) -> TermFn {
        return [j](std::size_t i) { return Point::nat(cantor_pair(j, static_cast<std::int64_t>(i))); };
      };
      break;
    case FilterKind::kPartition: {
      // Row j takes a block of 2s+1 elements from piece s = floor(sqrt i).
      Partition q = *f.partition();
      make = [q](std::int64_t j) -> TermFn {
        return [q, j](std::size_t i) {
          auto n = static_cast<std::int64_t>(i);
          auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
          while (s * s > n) --s;
          while ((s + 1) * (s + 1) <= n) ++s;
          return Point::nat(q.element(s, (2 * s + 1) * j + (n - s * s)));
        };
      };
      break;
    }
    default: {
      AdFamily fam = *f.family();
      if (count && fam.size() && *count > *fam.size()) {
        throw Error(ErrorCode::kInvalidArgument, "family has only " + std::to_string(*fam.size()) + " generators");
      }
      if (!count) count = fam.size();
      make = [fam](std::int64_t g) -> TermFn {
        return [fam, g](std::size_t i) { return Point::nat(fam.element(g, static_cast<std::int64_t>(i))); };
      };
    }
  }
  SeqFamily out;
  out.size = count;
  out.at = [xi, make](std::int64_t j) { return make_seq(xi, Point::filter_point(), make(j), 4).value(); };
  return out;
}

Json Alpha2Result::to_json() const {
  Json j;
  j["verdict"] = pass ? "pass" : "certificate-failure";
  if (!pass) {
    j["stage"] = failed_stage;
    j["base"] = failed_base;
  }
  j["message"] = message;
  j["hits"] = hits;
  if (candidate) {
    Json prefix = Json::array();
    for (auto& p : candidate->terms(16)) prefix.push_back(p.to_string());
    j["prefix"] = prefix;
  }
  return j;
}

Alpha2Result alpha2_diagonalize(const SpacePtr& xi, const SeqFamily& seqs, int depth) {
  const auto* xs = dynamic_cast<const XiSpace*>(xi.get());
  if (!xs) throw Error(ErrorCode::kInvalidArgument, "alpha2_diagonalize needs an xi space");
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be positive");
  if (seqs.size && *seqs.size < 1) throw Error(ErrorCode::kInvalidArgument, "empty sequence family");
  auto diag = std::make_shared<Diagonal>();
  diag->xi = xs;
  diag->seqs = seqs;
  auto stream = std::make_shared<TermStream>([diag](std::size_t i) { return diag->stage(static_cast<std::int64_t>(i)); });

  Alpha2Result r;
  const auto& f = xs->filter();
  auto fail_stage = [&](const StageFailure& e) {
    r.failed_stage = static_cast<int>(e.stage);
    r.failed_base = "base(" + std::to_string(e.stage) + ")";
    r.message = "sequence " + std::to_string(e.leg) + " has no unused term in base(" + std::to_string(e.stage) +
                ") among its next " + std::to_string(kMaxScan) + " terms";
  };
  try {
    for (std::int64_t i = 0; i < depth; ++i) stream->at(static_cast<std::size_t>(i));
    auto cert = make_seq(xi, Point::filter_point(), stream, depth);
    if (!cert.ok()) {
      r.failed_stage = cert.failed_index;
      r.failed_base = cert.failed_base ? cert.failed_base->to_string() : "";
      r.message = cert.message;
      return r;
    }
    r.candidate = cert.seq;
    if (!f.countable_base()) {
      std::size_t max_window = std::min<std::size_t>(kMaxScan, 64 * static_cast<std::size_t>(depth + 1));
      std::size_t last = 0;
      if (!diagonal_modulus(*f.family(), *r.candidate, max_window, last)) {
        r.failed_stage = static_cast<int>(last);
        r.failed_base = "N minus the least candidate term of every generator";
        r.message = "the candidate meets new generators up to stage " + std::to_string(last) + " of " +
                    std::to_string(max_window) + ", so it escapes a filter set infinitely often";
        return r;
      }
    }
  } catch (const StageFailure& e) {
    fail_stage(e);
    return r;
  }
  std::int64_t shown = seqs.size ? std::min<std::int64_t>(*seqs.size, 16) : 16;
  auto prefix = r.candidate->terms(static_cast<std::size_t>(depth));
  for (std::int64_t m = 0; m < shown; ++m) {
    const ConvSeq s = seqs.at(m);
    std::int64_t n = 0;
    for (auto& t : prefix) {
      auto in = s.contains(t);
      n += in && *in;
    }
    r.hits.push_back(n);
  }
  r.pass = true;
  r.message = "candidate certified at depth " + std::to_string(depth);
  return r;
}

}  // namespace seqhyper
