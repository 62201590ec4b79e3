#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "report.hpp"
#include "sequences.hpp"
#include "spaces.hpp"
#include "vietoris.hpp"

namespace seqhyper {

using Rational = boost::multiprecision::cpp_rational;

// 2^-n as an exact rational.
Rational pow2_neg(std::int64_t n);
std::string to_string(const Rational& r);

// The complete metric on xi(F) for a countably based F:
//   E_n = B_n \ B_{n+1},  f(m) = 2^-n on E_n,  f(filter point) = 0,
//   d(x, y) = 2^-n for distinct x, y in one E_n, |f(x) - f(y)| otherwise.
class XiMetric {
 public:
  explicit XiMetric(SpacePtr xi);

  const SpacePtr& space() const { return space_; }
  // The n with m in E_n. Naturals outside B_0 are placed in E_0.
  std::int64_t level(std::int64_t m) const;
  bool in_e(std::int64_t n, std::int64_t m) const { return level(m) == n; }
  Rational f(const Point& p) const;
  Rational d(const Point& p, const Point& q) const;
  // Whether B_0 had to be extended to all of N.
  bool rebased() const { return rebased_; }

  // The open d-ball of radius 2^-k around p as a basic open, when it is one:
  // always at the filter point, and at m in E_n for k > n.
  std::optional<Open> ball_open(const Point& p, int k) const;

 private:
  SpacePtr space_;
  const XiSpace* xi_;
  bool rebased_ = false;
};

// A closed set of xi(F): a certified sequence (to the filter point) or a
// finite set, plus finitely many extra points. A tail_level set by
// cauchy_limit stands for unknown further points of level >= tail_level
// together with the filter point.
struct MetricSet {
  std::optional<ConvSeq> seq;
  PointList points;
  std::optional<std::int64_t> tail_level;

  static MetricSet of_seq(ConvSeq s, PointList extra = {});
  static MetricSet finite(PointList pts);
};

struct Interval {
  Rational lo;
  Rational hi;
  Json to_json() const;
};

// Encloses the Hausdorff distance in an interval of width <= 2^-precision
// (or the resolution of a tail_level, if coarser).
Interval hausdorff(const XiMetric& m, const MetricSet& a, const MetricSet& b, int precision);

struct CauchyLimit {
  PointList points;              // members of level < depth
  bool filter_point = false;     // decided at depth
  std::optional<std::size_t> violation;  // index i with H(S_i, S_i+1) > 2^-i
  int depth = 0;
  MetricSet as_set() const;
};

using SetStream = std::function<MetricSet(std::size_t)>;
CauchyLimit cauchy_limit(const XiMetric& m, const SetStream& stream, int depth);

// S \ B_k for the k-th base element.
struct OBLayer {
  bool member = false;
  PointList escapes;
};
OBLayer o_b_layer(const ConvSeq& s, int k);
OBLayer o_b_layer(const SpacePtr& xi, const PointList& finite, int k);

Report gdelta_profile(const SpacePtr& xi, int depth);

// A canonical open containing t whose intersection with o is certified
// empty, when t is outside o.
std::optional<CanonicalOpen> vietoris_separate(const ConvSeq& t, const CanonicalOpen& o, int depth);
// Some piece of one open is disjoint from every piece of the other.
bool certified_disjoint(const Space& x, const CanonicalOpen& a, const CanonicalOpen& b);

Report polish_profile(const SpacePtr& xi, int depth);

}  // namespace seqhyper
