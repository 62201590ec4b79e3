#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "filters.hpp"
#include "ordinal.hpp"
#include "report.hpp"
#include "space.hpp"

namespace seqhyper {

// xi(F): N plus one non-isolated point whose neighbourhoods are filter sets.
class XiSpace final : public Space {
 public:
  explicit XiSpace(FilterPresentation f) : filter_(std::move(f)) {}
  const FilterPresentation& filter() const { return filter_; }

  std::string kind() const override { return "xi"; }
  bool crowded() const override { return false; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point& p) const override { return p.kind == PointKind::kNat; }
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> difference_impl(const Open& a, const Open& b) const override;

 private:
  std::int64_t nbhd_index(const Open& u) const;
  FilterPresentation filter_;
};

// Psi(A): N discrete plus one point per generator with tail neighbourhoods.
class PsiSpace final : public Space {
 public:
  explicit PsiSpace(AdFamily a) : family_(std::move(a)) {}
  const AdFamily& family() const { return family_; }

  std::string kind() const override { return "psi"; }
  bool crowded() const override { return false; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point& p) const override { return p.kind == PointKind::kNat; }
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> intersection_impl(const Open& a, const Open& b) const override;

 private:
  std::int64_t generator_count(int depth) const;
  AdFamily family_;
};

// The ordinals below alpha with the order topology.
class OrdinalSpace final : public Space {
 public:
  explicit OrdinalSpace(Ordinal alpha) : alpha_(std::move(alpha)) {}
  const Ordinal& bound() const { return alpha_; }

  std::string kind() const override { return "ordinal"; }
  bool crowded() const override { return false; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point& p) const override;
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> intersection_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> difference_impl(const Open& a, const Open& b) const override;
  bool is_singleton_impl(const Open& u) const override;

 private:
  PointList sample(int depth) const;
  const std::vector<Ordinal>& below(int c) const;
  Ordinal alpha_;
  mutable std::mutex below_mu_;
  mutable std::map<int, std::unique_ptr<const std::vector<Ordinal>>> below_;
};

// Dyadic rationals in [0,1) with the topology generated by the dyadic
// intervals [p/2^k, (p+1)/2^k); as "cantor" the same presentation stands for
// the eventually-zero points of the Cantor space.
class DyadicSpace final : public Space {
 public:
  explicit DyadicSpace(std::string name) : name_(std::move(name)) {}

  std::string kind() const override { return name_; }
  bool crowded() const override { return true; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point&) const override { return false; }
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;
  OpenList split(const Open& u, int count, int depth) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;

 private:
  std::string name_;
};

// The Alexandroff duplicate X x {0,1} with X x {1} discrete.
class DuplicateSpace final : public Space {
 public:
  explicit DuplicateSpace(SpacePtr base) : base_(std::move(base)) {}
  const SpacePtr& base() const { return base_; }

  std::string kind() const override { return "duplicate"; }
  bool crowded() const override { return false; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point& p) const override;
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> intersection_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> difference_impl(const Open& a, const Open& b) const override;

 private:
  SpacePtr base_;
};

// Tagged union X (side 0) + Y (side 1); each summand is clopen.
class SumSpace final : public Space {
 public:
  SumSpace(SpacePtr x, SpacePtr y) : sides_{std::move(x), std::move(y)} {}
  const SpacePtr& side(int s) const { return sides_[s]; }

  std::string kind() const override { return "sum"; }
  bool crowded() const override { return sides_[0]->crowded() && sides_[1]->crowded(); }
  bool is_point(const Point& p) const override;
  bool isolated(const Point& p) const override;
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> intersection_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> difference_impl(const Open& a, const Open& b) const override;
  bool is_singleton_impl(const Open& u) const override;

 private:
  SpacePtr sides_[2];
};

// An open subspace of X given by a decidable predicate, optionally described
// by an open set of X. Opens are those of X traced on the subspace.
class SubSpace final : public Space {
 public:
  SubSpace(SpacePtr inner, std::function<bool(const Point&)> keep, std::optional<Open> region, std::string name)
      : inner_(std::move(inner)), keep_(std::move(keep)), region_(std::move(region)), name_(std::move(name)) {}
  const SpacePtr& inner() const { return inner_; }
  const std::optional<Open>& region() const { return region_; }

  std::string kind() const override { return name_; }
  bool crowded() const override { return inner_->crowded(); }
  bool is_point(const Point& p) const override { return inner_->is_point(p) && keep_(p); }
  bool isolated(const Point& p) const override { return inner_->isolated(p); }
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override { return inner_->local_base(p, k); }
  TermFn canonical_sequence(const Point& p) const override;
  OpenList split(const Open& u, int count, int depth) const override { return inner_->split(u, count, depth); }

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> intersection_impl(const Open& a, const Open& b) const override;
  std::optional<PointList> difference_impl(const Open& a, const Open& b) const override;
  bool is_singleton_impl(const Open& u) const override { return inner_->is_singleton(u); }

 private:
  PointList filtered(PointList pts) const;
  SpacePtr inner_;
  std::function<bool(const Point&)> keep_;
  std::optional<Open> region_;
  std::string name_;
};

// Sigma-product of countably many Cantor-space coordinates (ids 0, 1, ...)
// at the base point a = 0: points are finitely supported maps id -> dyadic.
class SigmaSpace final : public Space {
 public:
  std::string kind() const override { return "sigma"; }
  bool crowded() const override { return true; }
  bool is_point(const Point& p) const override;
  bool isolated(const Point&) const override { return false; }
  PointList points(int depth) const override;
  OpenList basis(int depth) const override;
  Open local_base(const Point& p, int k) const override;
  TermFn canonical_sequence(const Point& p) const override;
  OpenList split(const Open& u, int count, int depth) const override;

 protected:
  bool member_impl(const Open& u, const Point& p) const override;
  PointList enumerate_impl(const Open& u, int depth) const override;
  bool subset_impl(const Open& c, const Open& p) const override;
  bool disjoint_impl(const Open& a, const Open& b) const override;
};

SpacePtr xi_space(FilterPresentation f);
SpacePtr psi_space(AdFamily a);
SpacePtr ordinal_segment(Ordinal alpha);
SpacePtr dyadic_interval_space();
SpacePtr cantor_space();
SpacePtr alexandroff_duplicate(SpacePtr x);
SpacePtr disjoint_sum(SpacePtr x, SpacePtr y);
SpacePtr open_subspace(SpacePtr x, std::function<bool(const Point&)> keep, std::string name);
SpacePtr clopen_subspace(SpacePtr x, Open region, std::string name);
SpacePtr sigma_product();

// Ordinals below alpha whose Cantor normal form ends in omega^0 or omega^1
// (the open dense set of successors plus limits of cofinality omega built
// from the omega-blocks).
SpacePtr ordinal_block_subspace(Ordinal alpha);
// For a limit alpha = zeta + omega: the start zeta of its omega-block, so that
// (zeta, alpha) consists of successors.
Ordinal omega_block_start(const Ordinal& alpha);

Report isolated_dense_check(const Space& x, int depth);

// Dyadic helpers shared by the dyadic, Cantor and sigma presentations.
using Bits = std::vector<std::int64_t>;
Bits dyadic_digits(const Point& p);
Bits padded_prefix(const Point& p, std::size_t len);
bool has_prefix(const Bits& bits, const Bits& prefix);
Point sigma_point(const std::map<std::int64_t, Bits>& coords);
Bits sigma_coord(const Point& z, std::int64_t id);
std::vector<std::int64_t> sigma_support(const Point& z);

}  // namespace seqhyper
