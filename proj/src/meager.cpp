#include "games.hpp"
#include "spaces.hpp"

namespace seqhyper {

std::vector<NwdPiece> nwd_decompose(const Space& x, const CanonicalOpen& o, int limit) {
  if (!x.crowded()) throw Error(ErrorCode::kPrecondition, "nwd_decompose needs a crowded space");
  if (o.pieces.size() < 2) throw Error(ErrorCode::kPrecondition, "nwd_decompose needs at least two pieces");
  std::vector<NwdPiece> out;
  for (int n = 1; n <= limit; ++n) {
    for (std::size_t j = 0; j < o.pieces.size(); ++j) out.push_back(NwdPiece{j, n});
  }
  return out;
}

std::optional<NwdPiece> nwd_classify(const ConvSeq& s, const CanonicalOpen& o) {
  const Space& x = *s.space();
  for (std::size_t j = 0; j < o.pieces.size(); ++j) {
    if (!x.member(o.pieces[j], s.limit())) continue;
    auto out = s.outside(o.pieces[j]);
    if (!out || out->empty()) return std::nullopt;
    return NwdPiece{j, static_cast<int>(out->size())};
  }
  return std::nullopt;
}

NwdAvoid nwd_avoid(const SpacePtr& x, const CanonicalOpen& o, const CanonicalOpen& v, const NwdPiece& piece,
                   int depth) {
  if (!x->crowded()) throw Error(ErrorCode::kPrecondition, "nwd_avoid needs a crowded space");
  if (o.pieces.size() < 2) throw Error(ErrorCode::kPrecondition, "nwd_avoid needs at least two pieces");
  if (piece.n < 1 || piece.piece >= o.pieces.size()) {
    throw Error(ErrorCode::kInvalidArgument, "N(U, n) needs n >= 1 and U a piece of the ambient open");
  }
  auto inc = include(*x, v, o);
  if (!inc.ok()) throw Error(ErrorCode::kPrecondition, "V is not inside O: " + inc.refusal);
  std::optional<std::size_t> v0;
  for (std::size_t j = 0; j < v.pieces.size() && !v0; ++j) {
    if (inc.cert->parent_of[j] != piece.piece) v0 = j;
  }
  if (!v0) throw Error(ErrorCode::kPrecondition, "no piece of V meets a piece of O other than U");
  OpenList w = x->split(v.pieces[*v0], piece.n + 1, depth);
  if (static_cast<int>(w.size()) != piece.n + 1) {
    throw Error(ErrorCode::kPrecondition, "could not split " + v.pieces[*v0].to_string() + " into " +
                                              std::to_string(piece.n + 1) + " pieces at depth " + std::to_string(depth));
  }
  OpenList pieces;
  for (std::size_t j = 0; j < v.pieces.size(); ++j) {
    if (j == *v0) {
      pieces.insert(pieces.end(), w.begin(), w.end());
    } else {
      pieces.push_back(v.pieces[j]);
    }
  }
  CanonicalOpen out = canonical(*x, std::move(pieces));
  auto into = include(*x, out, v);
  if (!into.ok()) throw Error(ErrorCode::kPrecondition, "refinement is not inside V: " + into.refusal);
  auto witness = sample_member(x, out, depth);
  if (!witness) throw Error(ErrorCode::kPrecondition, "no member of " + out.to_string() + " found");
  return NwdAvoid{out, *into.cert, *witness, *v0, inc.cert->parent_of[*v0]};
}

DenseHit dense_hit(const ConvSeq& s, int n, const CanonicalOpen& o) {
  const SpacePtr& x = s.space();
  if (!dynamic_cast<const XiSpace*>(x.get())) throw Error(ErrorCode::kInvalidArgument, "dense_hit works on xi spaces");
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "n must be nonnegative");
  if (s.limit() != Point::filter_point()) throw Error(ErrorCode::kPrecondition, "S must converge to the filter point");
  std::optional<std::size_t> tail;
  PointList singles;
  for (std::size_t j = 0; j < o.pieces.size(); ++j) {
    const Open& u = o.pieces[j];
    if (u.kind == OpenKind::kSingleton) {
      singles.push_back(u.points[0]);
    } else if (x->member(u, Point::filter_point()) && !tail) {
      tail = j;
    } else {
      throw Error(ErrorCode::kPrecondition, "O must be singletons plus one tail piece, got " + o.to_string());
    }
  }
  if (!tail) throw Error(ErrorCode::kPrecondition, "no piece of " + o.to_string() + " holds the filter point");
  auto parts = split(s, o.pieces[*tail]);
  ConvSeq t = amalgam(parts.core, FiniteSet::of(singles));
  if (n == 0) return DenseHit{t, canonical(*x, {Open::whole()})};
  PointList chosen = parts.core.terms(static_cast<std::size_t>(n));
  OpenList pieces;
  for (const auto& p : chosen) pieces.push_back(Open::singleton(p));
  pieces.push_back(Open::minus(Open::whole(), chosen));
  return DenseHit{t, canonical(*x, std::move(pieces))};
}

}  // namespace seqhyper
