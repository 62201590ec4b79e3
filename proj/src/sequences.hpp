#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "space.hpp"

namespace seqhyper {

inline constexpr std::size_t kInitialScan = 64;
inline constexpr std::size_t kMaxScan = 4096;

// A finite set of pairwise distinct points.
struct FiniteSet {
  PointList elements;

  static FiniteSet of(PointList pts);
  bool contains(const Point& p) const { return contains_point(elements, p); }
  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
};

// Memoized term stream; concurrent readers observe identical prefixes.
class TermStream {
 public:
  explicit TermStream(TermFn fn) : fn_(std::move(fn)) {}
  Point at(std::size_t i) const;
  PointList prefix(std::size_t n) const;

 private:
  TermFn fn_;
  mutable std::mutex mu_;
  mutable std::vector<Point> cache_;
};

// A nontrivial convergent sequence with finitely many attached points:
// {limit} + {term(i)} + attachments. Moduli are computed lazily per
// local-base index at the limit and cached.
class ConvSeq {
 public:
  ConvSeq(SpacePtr space, Point limit, std::shared_ptr<const TermStream> terms, PointList attachments = {});

  const SpacePtr& space() const { return state_->space; }
  const Point& limit() const { return state_->limit; }
  Point term(std::size_t i) const { return state_->terms->at(i); }
  PointList terms(std::size_t n) const { return state_->terms->prefix(n); }
  const PointList& attachments() const { return state_->attachments; }
  const std::shared_ptr<const TermStream>& stream() const { return state_->terms; }

  // Least N such that every term with index >= N lies in local_base(limit, k),
  // certified by a scan window at least twice as long as N.
  std::optional<std::size_t> modulus(int k) const;

  // Exact point-set membership (nullopt when no certificate is available).
  std::optional<bool> contains(const Point& q) const;
  // The finite set of points of S outside u, for u containing the limit.
  std::optional<PointList> outside(const Open& u) const;
  // limit, attachments, then the first n terms.
  PointList point_prefix(std::size_t n) const;

  ConvSeq with_attachments(PointList extra) const;
  // Terms with index >= j, same limit and attachments.
  ConvSeq drop_terms(std::size_t j) const;

 private:
  struct State {
    SpacePtr space;
    Point limit;
    std::shared_ptr<const TermStream> terms;
    PointList attachments;
    std::mutex mu;
    std::map<int, std::optional<std::size_t>> moduli;
  };
  std::shared_ptr<State> state_;
};

enum class CertStatus { kCertified, kRefused, kRejected };

struct CertResult {
  CertStatus status = CertStatus::kRefused;
  std::optional<ConvSeq> seq;
  std::string message;
  std::optional<Open> failed_base;
  int failed_index = -1;

  bool ok() const { return status == CertStatus::kCertified; }
  const ConvSeq& value() const;
};

// Certifies a sequence: moduli for local-base indices 0..depth, injectivity
// and limit avoidance on the scanned prefix, separation of the first terms.
CertResult make_seq(SpacePtr x, Point limit, TermFn terms, int depth, PointList attachments = {});
CertResult make_seq(SpacePtr x, Point limit, std::shared_ptr<const TermStream> terms, int depth,
                    PointList attachments = {});
// Re-runs the certificate on an existing sequence.
CertResult recertify(const ConvSeq& s, int depth);
// The space's canonical sequence at a non-isolated point.
ConvSeq canonical_seq(const SpacePtr& x, const Point& limit, int depth = 8);

// S + F for a finite set F disjoint from S.
ConvSeq amalgam(const ConvSeq& s, const FiniteSet& f);

struct SplitResult {
  ConvSeq core;
  FiniteSet rest;
};
// Splits S along an open Y containing the limit into S ∩ Y and S \ Y.
SplitResult split(const ConvSeq& s, const Open& y);

// Point-set equality on the first n terms of each plus certificates.
bool same_point_set(const ConvSeq& a, const ConvSeq& b, std::size_t n);

}  // namespace seqhyper
