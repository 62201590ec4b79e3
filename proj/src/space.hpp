#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "error.hpp"
#include "open.hpp"
#include "point.hpp"

namespace seqhyper {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// A term generator: i -> i-th term. Must be a pure function of i.
using TermFn = std::function<Point(std::size_t)>;

// Upper bound on local-base indices tried by containment searches.
inline constexpr int kMaxLocalIndex = 512;

// A countable (or lazily coordinatized) space. All basic opens produced by the
// provided constructors are clopen, so closures of pieces are the pieces.
//
// subset() and disjoint() are sound syntactic certificates: a true answer is
// a proof, a false answer only means "not certified".
class Space : public std::enable_shared_from_this<Space> {
 public:
  virtual ~Space() = default;

  virtual std::string kind() const = 0;
  virtual bool crowded() const = 0;
  virtual bool is_point(const Point& p) const = 0;
  virtual bool isolated(const Point& p) const = 0;

  // Finite prefix of the point enumeration; monotone in depth.
  virtual PointList points(int depth) const = 0;
  // Finite prefix of the basis enumeration; monotone in depth.
  virtual OpenList basis(int depth) const = 0;

  // k-th element of a decreasing local base at p; for isolated p every
  // element is {p}.
  virtual Open local_base(const Point& p, int k) const = 0;

  // A canonical injective sequence converging to the non-isolated point p.
  virtual TermFn canonical_sequence(const Point& p) const = 0;

  // Up to `count` pairwise disjoint basic opens inside U.
  virtual OpenList split(const Open& u, int count, int depth) const;

  bool member(const Open& u, const Point& p) const;
  PointList enumerate(const Open& u, int depth) const;
  bool is_singleton(const Open& u) const;
  bool subset(const Open& child, const Open& parent) const;
  bool disjoint(const Open& a, const Open& b) const;
  // Exact finite listing of a ∩ b when one is available.
  std::optional<PointList> intersection(const Open& a, const Open& b) const;
  // Exact finite listing of a \ b when one is available.
  std::optional<PointList> difference(const Open& a, const Open& b) const;

  std::optional<Point> find_nonisolated(const Open& u, int depth) const;
  std::optional<Point> find_isolated(const Open& u, int depth) const;
  // Least k with local_base(p, k) certified inside u.
  std::optional<int> local_index_inside(const Point& p, const Open& u,
                                        int max_k = kMaxLocalIndex) const;

  SpacePtr self() const { return shared_from_this(); }

 protected:
  virtual bool member_impl(const Open& u, const Point& p) const = 0;
  // Handles kWhole and the space's own kinds.
  virtual PointList enumerate_impl(const Open& u, int depth) const = 0;
  // Both arguments are kWhole or space-specific kinds.
  virtual bool subset_impl(const Open& child, const Open& parent) const = 0;
  virtual bool disjoint_impl(const Open& a, const Open& b) const = 0;
  virtual std::optional<PointList> intersection_impl(const Open&, const Open&) const {
    return std::nullopt;
  }
  virtual std::optional<PointList> difference_impl(const Open&, const Open&) const {
    return std::nullopt;
  }
  virtual bool is_singleton_impl(const Open&) const { return false; }

  [[noreturn]] void foreign_open(const Open& u) const;
};

}  // namespace seqhyper
