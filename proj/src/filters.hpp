#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace seqhyper {

// (a + b)(a + b + 1) / 2 + b and its inverse.
std::int64_t cantor_pair(std::int64_t a, std::int64_t b);
std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t z);

// A partition of N into infinitely many infinite pieces P_0, P_1, ...
class Partition {
 public:
  using PieceFn = std::function<std::int64_t(std::int64_t)>;

  // piece(x) = exponent of 2 in x + 1.
  static Partition valuation();
  // piece(x) = a for x = cantor_pair(a, b); pieces grow quadratically.
  static Partition cantor_rows();
  // Rejects piece functions with a finite (or missing) fiber among the first
  // pieces, detected by brute force below check_bound.
  static Partition from_function(PieceFn piece, std::string name, std::int64_t check_bound = 4096);

  std::int64_t piece(std::int64_t x) const;
  // i-th element of P_n in increasing order.
  std::int64_t element(std::int64_t n, std::int64_t i) const;
  std::int64_t index_in_piece(std::int64_t x) const;
  // Least m >= from with piece(m) >= n.
  std::int64_t next_with_piece_at_least(std::int64_t n, std::int64_t from) const;
  const std::string& name() const { return name_; }

 private:
  Partition() = default;
  PieceFn piece_;
  std::string name_;
  enum class Form { kScan, kValuation, kCantor };
  Form form_ = Form::kScan;
};

// An almost disjoint family of infinite subsets of N with decidable
// membership, finite containment lists and exact pairwise intersections.
class AdFamily {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual std::optional<std::int64_t> size() const = 0;
    virtual std::int64_t element(std::int64_t g, std::int64_t i) const = 0;
    virtual std::vector<std::int64_t> containing(std::int64_t x) const = 0;
    virtual std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const = 0;
    virtual std::vector<std::int64_t> intersection(std::int64_t g, std::int64_t h) const = 0;
    virtual std::int64_t declared_bound() const = 0;
    virtual bool covers_all() const = 0;
    virtual std::string name() const = 0;
  };

  // 2^depth branches of the binary tree (a fixed prefix, then always left).
  static AdFamily branches(int depth);
  // {x : x = r mod m} for r < m.
  static AdFamily residues(int modulus);
  static AdFamily partition_legs(Partition q);
  static AdFamily custom(std::shared_ptr<const Impl> impl);

  std::optional<std::int64_t> size() const { return impl_->size(); }
  bool has_generator(std::int64_t g) const { return g >= 0 && (!size() || g < *size()); }
  bool contains(std::int64_t g, std::int64_t x) const { return index_of(g, x).has_value(); }
  std::int64_t element(std::int64_t g, std::int64_t i) const { return impl_->element(g, i); }
  std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const { return impl_->index_of(g, x); }
  std::vector<std::int64_t> containing(std::int64_t x) const { return impl_->containing(x); }
  std::vector<std::int64_t> intersection(std::int64_t g, std::int64_t h) const { return impl_->intersection(g, h); }
  std::int64_t declared_bound() const { return impl_->declared_bound(); }
  bool covers_all() const { return impl_->covers_all(); }
  std::string name() const { return impl_->name(); }

  // Brute-force almost-disjointness check on sampled pairs: |A_g ∩ A_h|
  // below 10 * (bound + 1) elements never exceeds the declared bound and
  // agrees with intersection(). Returns the offending pair on failure.
  std::optional<std::pair<std::int64_t, std::int64_t>> find_violation(int sample) const;

 private:
  explicit AdFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class FilterKind { kFrechet, kPartition, kFan, kAd };

// A free filter on N. Countably based kinds expose a decreasing base B_k;
// the others expose the decreasing sample family
//   B_k = union over generators g of (A_g minus its first k elements),
// which is not a base.
class FilterPresentation {
 public:
  FilterKind kind() const { return kind_; }
  std::string name() const;
  bool countable_base() const { return kind_ == FilterKind::kFrechet || kind_ == FilterKind::kPartition; }

  bool in_base(std::int64_t k, std::int64_t m) const;
  std::int64_t next_in_base(std::int64_t k, std::int64_t from) const;
  // N \ B_k when finite.
  std::optional<std::vector<std::int64_t>> outside_base(std::int64_t k) const;
  // The n with m in B_n \ B_{n+1}; countable base only.
  std::int64_t level(std::int64_t m) const;
  // Canonical injective sequence converging to the filter point.
  std::int64_t diagonal_term(std::size_t i) const;

  // Semidecision of F ∈ filter for a decidable F: sampled legs (generators,
  // or base sets) must be almost contained in F within a scan window.
  Tri semidecide_member(const std::function<bool(std::int64_t)>& f, int depth) const;

  const Partition* partition() const { return partition_ ? &*partition_ : nullptr; }
  const AdFamily* family() const { return family_ ? &*family_ : nullptr; }

  friend FilterPresentation frechet_filter();
  friend FilterPresentation partition_filter(Partition q);
  friend FilterPresentation fan_filter(Partition q);
  friend FilterPresentation ad_filter(AdFamily a);

 private:
  FilterKind kind_ = FilterKind::kFrechet;
  std::optional<Partition> partition_;
  std::optional<AdFamily> family_;
};

FilterPresentation frechet_filter();
FilterPresentation partition_filter(Partition q = Partition::valuation());
FilterPresentation fan_filter(Partition q = Partition::valuation());
FilterPresentation ad_filter(AdFamily a);

}  // namespace seqhyper
