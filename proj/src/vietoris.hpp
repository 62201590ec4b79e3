#pragma once

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "sequences.hpp"
#include "space.hpp"

namespace seqhyper {

// A Vietoris basic set <U_1, ..., U_n> over pairwise disjoint basic opens.
struct CanonicalOpen {
  OpenList pieces;

  std::strong_ordering operator<=>(const CanonicalOpen& o) const {
    return std::lexicographical_compare_three_way(pieces.begin(), pieces.end(), o.pieces.begin(), o.pieces.end());
  }
  bool operator==(const CanonicalOpen& o) const { return pieces == o.pieces; }
  std::string to_string() const;
  Json to_json() const;
};

// Validates a nonempty list of pieces with certified pairwise disjointness.
CanonicalOpen canonical(const Space& x, OpenList pieces);
// No enumerated point at `depth` lies in two pieces.
bool brute_disjoint(const Space& x, const CanonicalOpen& o, int depth);
// Some piece contains a non-isolated point found at `depth`.
bool has_nondiscrete_piece(const Space& x, const CanonicalOpen& o, int depth);

// Exact membership of a certified sequence (kUnknown when no certificate is
// available for the piece containing the limit).
Tri member(const ConvSeq& s, const CanonicalOpen& o);

struct InclusionCertificate {
  std::vector<std::size_t> parent_of;  // child piece -> parent piece
  std::vector<std::size_t> witness;    // parent piece -> a child piece inside it
  Json to_json() const;
};

struct Inclusion {
  std::optional<InclusionCertificate> cert;
  std::string refusal;
  bool ok() const { return cert.has_value(); }
};

Inclusion include(const Space& x, const CanonicalOpen& child, const CanonicalOpen& parent);

// A member of O: a tail of a canonical sequence inside a non-discrete piece
// plus one point from each other piece.
std::optional<ConvSeq> sample_member(const SpacePtr& x, const CanonicalOpen& o, int depth);

// Canonical opens with at most max_pieces pieces drawn from basis(depth),
// at least one of them non-discrete.
std::vector<CanonicalOpen> enumerate_canonical(const Space& x, int depth, int max_pieces);

// Pi-base of S_c(A(X)): <{hat B} + U> for basic B of X containing a
// non-isolated point and U a set of level-1 singletons outside hat B.
std::vector<CanonicalOpen> pi_base_enum(const SpacePtr& ax, int depth, int max_singletons = 1);
// The refinement procedure: a pi-base member inside V.
CanonicalOpen pi_refine(const SpacePtr& ax, const CanonicalOpen& v);

struct DiscreteMember {
  ConvSeq seq;
  CanonicalOpen separator;
};
// S minus its first j terms, j < depth, each with a separating canonical open.
std::vector<DiscreteMember> discrete_closed_family(const ConvSeq& s, int depth);

struct NoncompactWitness {
  std::vector<CanonicalOpen> stages;  // stage 0 is the refined neighbourhood
  std::vector<ConvSeq> members;       // one member per stage
  std::vector<Point> anchors;         // x_1, ..., x_{n-1}, then x_S

  // The first stage excluding T, if any stage <= stages.size() - 1 does.
  std::optional<std::size_t> excluding_stage(const ConvSeq& t) const;
};
NoncompactWitness noncompact_witness(const ConvSeq& s, const CanonicalOpen& o, int depth);

// An open around p (a local-base element) meeting S only in p, inside u and
// disjoint from every open in `avoid`.
std::optional<Open> isolating_open(const ConvSeq& s, const Point& p, const Open& u, const OpenList& avoid);

}  // namespace seqhyper
