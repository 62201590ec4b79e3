#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "sequences.hpp"
#include "space.hpp"
#include "vietoris.hpp"

namespace seqhyper {

// ---------------------------------------------------------------- engine

enum class Player { kEmpty, kNonempty };

struct Move {
  Player player = Player::kEmpty;
  CanonicalOpen open;
  // Into the previous move; absent for the opening move.
  std::optional<InclusionCertificate> inclusion;
  // The strategy's state after a NONEMPTY move.
  Json state;
};

struct Transcript {
  std::vector<Move> moves;
  int rounds() const;
  const CanonicalOpen& last() const { return moves.back().open; }
  Json to_json() const;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // A reason to refuse the EMPTY player's last move, checked before respond.
  virtual std::optional<std::string> reject(const CanonicalOpen&) const { return std::nullopt; }
  // The NONEMPTY reply to the EMPTY player's last move.
  virtual CanonicalOpen respond(const Transcript& t) = 0;
  // A certified sequence meeting every NONEMPTY move of t.
  virtual ConvSeq extract_limit(const Transcript& t, int depth) = 0;
  virtual Json snapshot() const { return Json::object(); }
  // Per-round conditions the construction promises; empty if none.
  virtual Report ledger() const { return Report{}; }
};
using StrategyPtr = std::unique_ptr<Strategy>;
using StrategyFactory = std::function<StrategyPtr()>;

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  // The EMPTY player's next move; nullopt ends the episode.
  virtual std::optional<CanonicalOpen> move(const SpacePtr& x, const Transcript& t, int depth) = 0;
};
using AdversaryPtr = std::unique_ptr<Adversary>;

struct RandomOptions {
  // Sigma-product coordinates the adversary may add beyond those in play.
  int max_fresh_indices = 5;
};
AdversaryPtr random_adversary(std::uint64_t seed, RandomOptions opts = {});
AdversaryPtr scripted_adversary(std::vector<CanonicalOpen> moves);
// Reads one JSON array of pieces per line and answers every line on `out`.
AdversaryPtr interactive_adversary(std::istream& in, std::ostream& out);

enum class Verdict { kPass, kFail, kAdversaryFault, kStrategyFault };
const char* verdict_name(Verdict v);

struct Episode {
  Transcript transcript;
  std::optional<ConvSeq> limit;
  Verdict verdict = Verdict::kFail;
  std::string message;
  std::vector<Tri> membership;  // limit in each NONEMPTY move
  Report ledger;
  Json to_json() const;
};

// Rounds of (EMPTY move, NONEMPTY reply); with zero rounds only the opening
// move is made and the limit must lie in it.
Episode play(const SpacePtr& x, Strategy& s, Adversary& a, int rounds, int depth);

// ---------------------------------------------------------------- strategies

// Commits isolated points around a fixed non-isolated anchor with a
// countable decreasing local base: at round i one new point inside
// local_base(anchor, i) and a tail piece avoiding everything committed.
StrategyPtr commit_strategy(SpacePtr x, Point anchor);
StrategyPtr baire_strategy_countable_base(SpacePtr xi);

struct Part {
  Open region;   // clopen
  Point anchor;  // the non-isolated point the part's game is about
  StrategyFactory make;
};
using PartLookup = std::function<std::optional<Part>(const Point& nonisolated)>;

class ComposedStrategy : public Strategy {
 public:
  virtual const Transcript& sub_transcript() const = 0;
  virtual std::optional<Part> chosen_part() const = 0;
};

StrategyPtr compose_strategy(SpacePtr x, std::function<bool(const Point&)> dense, PartLookup parts,
                             std::string name = "compose");
StrategyPtr compose_strategy(SpacePtr x, std::function<bool(const Point&)> dense, std::vector<Part> parts,
                             std::string name = "compose");
// Parts {A_g point} + A_g, each played by commit_strategy.
StrategyPtr psi_compose_strategy(SpacePtr psi);
// Parts (zeta, alpha] for alpha = zeta + omega in the subspace.
StrategyPtr ordinal_compose_strategy(SpacePtr blocks);
// Depth-checked hypotheses of the composition.
Report compose_hypotheses(const SpacePtr& x, const std::function<bool(const Point&)>& dense, const PartLookup& parts,
                          int depth);
PartLookup psi_parts(SpacePtr psi);
PartLookup ordinal_parts(SpacePtr blocks);

// On the Alexandroff duplicate of the Cantor space (or the dyadic interval):
// shrinking cylinders W_i with diameter < 2^-i and growing level-1
// commitments outside them.
StrategyPtr duplicate_metric_strategy(SpacePtr ax);
// On the Alexandroff duplicate of the sigma-product.
StrategyPtr sigma_duplicate_strategy(SpacePtr az);

// Cantor-metric diameter of the cylinder of prefixes of length len.
std::string cylinder_diameter(std::size_t len);

// ---------------------------------------------------------------- meagerness

struct NwdPiece {
  std::size_t piece = 0;  // index of U in the ambient open
  int n = 1;
};

// (U, n) pairs of <U_1..U_k> by increasing n; `limit` bounds n.
std::vector<NwdPiece> nwd_decompose(const Space& x, const CanonicalOpen& o, int limit);
// The unique (U, n) with S in N(U, n): U holds the limit and n = |S \ U|.
std::optional<NwdPiece> nwd_classify(const ConvSeq& s, const CanonicalOpen& o);

struct NwdAvoid {
  CanonicalOpen open;
  InclusionCertificate inclusion;  // into V
  ConvSeq witness;
  std::size_t replaced = 0;        // index of V_0 in V
  std::size_t via = 0;             // index of U_0 in O
};
NwdAvoid nwd_avoid(const SpacePtr& x, const CanonicalOpen& o, const CanonicalOpen& v, const NwdPiece& piece,
                   int depth);

struct DenseHit {
  ConvSeq t;
  CanonicalOpen witness;  // <n singletons of T and S, the rest of the space>
};
DenseHit dense_hit(const ConvSeq& s, int n, const CanonicalOpen& o);

// ---------------------------------------------------------------- diagnostics

Report diagnose(const SpacePtr& x, int depth);

}  // namespace seqhyper
