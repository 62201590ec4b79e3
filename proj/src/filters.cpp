#include "filters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

namespace seqhyper {

namespace {

constexpr std::int64_t kScanLimit = std::int64_t{1} << 22;

std::int64_t two_adic(std::int64_t y) { return std::countr_zero(static_cast<std::uint64_t>(y)); }

std::int64_t checked_shift(std::int64_t v, std::int64_t n) {
  if (n >= 62 || v > (std::numeric_limits<std::int64_t>::max() >> n)) {
    throw Error(ErrorCode::kOverflow, "partition element exceeds 64-bit range");
  }
  return v << n;
}

void require_nat(std::int64_t x, const char* what) {
  if (x < 0) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be a natural number");
}

class BranchFamily final : public AdFamily::Impl {
 public:
  explicit BranchFamily(int depth) : depth_(depth), width_(std::int64_t{1} << depth) {}

  std::optional<std::int64_t> size() const override { return width_; }

  // Nodes of depth <= depth_ use heap codes (children 2v+1, 2v+2); the
  // j-th node below depth_ on branch g is coded deep_base + j*(width+1) + g,
  // which leaves the residue g = width free for naturals off every branch.
  std::int64_t element(std::int64_t g, std::int64_t i) const override {
    check(g);
    require_nat(i, "element index");
    if (i <= depth_) return prefix_node(g, i);
    std::int64_t j = i - depth_ - 1;
    return deep_base() + j * (width_ + 1) + g;
  }

  std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const override {
    check(g);
    if (x < 0) return std::nullopt;
    if (x < deep_base()) {
      for (int i = 0; i <= depth_; ++i) {
        if (prefix_node(g, i) == x) return i;
      }
      return std::nullopt;
    }
    std::int64_t off = x - deep_base();
    if (off % (width_ + 1) != g) return std::nullopt;
    return depth_ + 1 + off / (width_ + 1);
  }

  std::vector<std::int64_t> containing(std::int64_t x) const override {
    std::vector<std::int64_t> out;
    if (x < 0) return out;
    if (x >= deep_base()) {
      std::int64_t r = (x - deep_base()) % (width_ + 1);
      if (r < width_) out.push_back(r);
      return out;
    }
    for (std::int64_t g = 0; g < width_; ++g) {
      if (index_of(g, x)) out.push_back(g);
    }
    return out;
  }

  std::vector<std::int64_t> intersection(std::int64_t g, std::int64_t h) const override {
    check(g);
    check(h);
    std::vector<std::int64_t> out;
    if (g == h) throw Error(ErrorCode::kInvalidArgument, "intersection of a generator with itself is infinite");
    for (int i = 0; i <= depth_ && prefix_node(g, i) == prefix_node(h, i); ++i) out.push_back(prefix_node(g, i));
    return out;
  }

  std::int64_t declared_bound() const override { return depth_; }
  bool covers_all() const override { return false; }
  std::string name() const override { return "branch(" + std::to_string(depth_) + ")"; }

 private:
  std::int64_t deep_base() const { return 2 * width_ - 1; }

  std::int64_t prefix_node(std::int64_t g, std::int64_t i) const {
    std::int64_t v = 0;
    for (int j = 0; j < i; ++j) {
      std::int64_t bit = (g >> (depth_ - 1 - j)) & 1;
      v = 2 * v + 1 + bit;
    }
    return v;
  }

  void check(std::int64_t g) const {
    if (g < 0 || g >= width_) throw Error(ErrorCode::kInvalidArgument, "unknown branch " + std::to_string(g));
  }

  int depth_;
  std::int64_t width_;
};

class ResidueFamily final : public AdFamily::Impl {
 public:
  explicit ResidueFamily(int modulus) : m_(modulus) {}
  std::optional<std::int64_t> size() const override { return m_; }
  std::int64_t element(std::int64_t g, std::int64_t i) const override {
    check(g);
    require_nat(i, "element index");
    return g + m_ * i;
  }
  std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const override {
    check(g);
    if (x < 0 || x % m_ != g) return std::nullopt;
    return x / m_;
  }
  std::vector<std::int64_t> containing(std::int64_t x) const override {
    if (x < 0) return {};
    return {x % m_};
  }
  std::vector<std::int64_t> intersection(std::int64_t g, std::int64_t h) const override {
    check(g);
    check(h);
    if (g == h) throw Error(ErrorCode::kInvalidArgument, "intersection of a generator with itself is infinite");
    return {};
  }
  std::int64_t declared_bound() const override { return 0; }
  bool covers_all() const override { return true; }
  std::string name() const override { return "residues(" + std::to_string(m_) + ")"; }

 private:
  void check(std::int64_t g) const {
    if (g < 0 || g >= m_) throw Error(ErrorCode::kInvalidArgument, "unknown residue class " + std::to_string(g));
  }
  std::int64_t m_;
};

class LegFamily final : public AdFamily::Impl {
 public:
  explicit LegFamily(Partition q) : q_(std::move(q)) {}
  std::optional<std::int64_t> size() const override { return std::nullopt; }
  std::int64_t element(std::int64_t g, std::int64_t i) const override { return q_.element(g, i); }
  std::optional<std::int64_t> index_of(std::int64_t g, std::int64_t x) const override {
    if (x < 0 || g < 0 || q_.piece(x) != g) return std::nullopt;
    return q_.index_in_piece(x);
  }
  std::vector<std::int64_t> containing(std::int64_t x) const override {
    if (x < 0) return {};
    return {q_.piece(x)};
  }
  std::vector<std::int64_t> intersection(std::int64_t g, std::int64_t h) const override {
    if (g == h) throw Error(ErrorCode::kInvalidArgument, "intersection of a generator with itself is infinite");
    return {};
  }
  std::int64_t declared_bound() const override { return 0; }
  bool covers_all() const override { return true; }
  std::string name() const override { return "legs(" + q_.name() + ")"; }

 private:
  Partition q_;
};

}  // namespace

std::int64_t cantor_pair(std::int64_t a, std::int64_t b) {
  require_nat(a, "pair coordinate");
  require_nat(b, "pair coordinate");
  std::int64_t d = a + b;
  if (d > 3000000000) throw Error(ErrorCode::kOverflow, "pair exceeds 64-bit range");
  return d * (d + 1) / 2 + b;
}

std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t z) {
  require_nat(z, "pair code");
  auto d = static_cast<std::int64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1) - 1) / 2);
  while (d * (d + 1) / 2 > z) --d;
  while ((d + 1) * (d + 2) / 2 <= z) ++d;
  std::int64_t b = z - d * (d + 1) / 2;
  return {d - b, b};
}

Partition Partition::valuation() {
  Partition p;
  p.piece_ = [](std::int64_t x) { return two_adic(x + 1); };
  p.name_ = "valuation";
  p.form_ = Form::kValuation;
  return p;
}

Partition Partition::cantor_rows() {
  Partition p;
  p.piece_ = [](std::int64_t x) { return cantor_unpair(x).first; };
  p.name_ = "cantor-rows";
  p.form_ = Form::kCantor;
  return p;
}

Partition Partition::from_function(PieceFn piece, std::string name, std::int64_t check_bound) {
  if (!piece) throw Error(ErrorCode::kInvalidArgument, "partition needs a piece function");
  Partition p;
  p.piece_ = std::move(piece);
  p.name_ = std::move(name);
  constexpr int kCheckedPieces = 4;
  std::int64_t half = check_bound / 2;
  for (int n = 0; n < kCheckedPieces; ++n) {
    std::int64_t low = 0;
    std::int64_t high = 0;
    for (std::int64_t x = 0; x < check_bound; ++x) {
      std::int64_t v = p.piece_(x);
      if (v < 0) throw Error(ErrorCode::kInvalidArgument, "piece index of " + std::to_string(x) + " is negative");
      if (v != n) continue;
      (x < half ? low : high) += 1;
    }
    if (low + high == 0) {
      throw Error(ErrorCode::kInvalidArgument, "piece " + std::to_string(n) + " is empty below " + std::to_string(check_bound));
    }
    if (high == 0) {
      throw Error(ErrorCode::kInvalidArgument, "piece " + std::to_string(n) + " looks finite: no element in [" +
                                                   std::to_string(half) + ", " + std::to_string(check_bound) + ")");
    }
  }
  return p;
}

std::int64_t Partition::piece(std::int64_t x) const {
  require_nat(x, "point");
  return piece_(x);
}

std::int64_t Partition::element(std::int64_t n, std::int64_t i) const {
  require_nat(n, "piece");
  require_nat(i, "element index");
  if (form_ == Form::kCantor) return cantor_pair(n, i);
  if (form_ == Form::kValuation) {
    if (i > (std::numeric_limits<std::int64_t>::max() - 1) / 2) throw Error(ErrorCode::kOverflow, "element index too large");
    return checked_shift(2 * i + 1, n) - 1;
  }
  std::int64_t seen = 0;
  for (std::int64_t x = 0; x < kScanLimit; ++x) {
    if (piece_(x) == n && seen++ == i) return x;
  }
  throw Error(ErrorCode::kOverflow, "element " + std::to_string(i) + " of piece " + std::to_string(n) + " not found below scan limit");
}

std::int64_t Partition::index_in_piece(std::int64_t x) const {
  require_nat(x, "point");
  if (form_ == Form::kValuation) return ((x + 1) >> two_adic(x + 1)) / 2;
  if (form_ == Form::kCantor) return cantor_unpair(x).second;
  std::int64_t n = piece_(x);
  std::int64_t count = 0;
  for (std::int64_t y = 0; y < x; ++y) count += piece_(y) == n;
  return count;
}

std::int64_t Partition::next_with_piece_at_least(std::int64_t n, std::int64_t from) const {
  require_nat(from, "start");
  if (n <= 0) return from;
  if (form_ == Form::kCantor) {
    // Along diagonal d the piece index falls from d to 0.
    auto [a, b] = cantor_unpair(from);
    std::int64_t d = a + b;
    if (d < n) return cantor_pair(n, 0);
    if (a >= n) return from;
    return cantor_pair(d + 1, 0);
  }
  if (form_ == Form::kValuation) {
    std::int64_t step = checked_shift(1, n);
    std::int64_t k = (from + 1 + step - 1) / step;
    return k * step - 1;
  }
  for (std::int64_t x = from; x < from + kScanLimit; ++x) {
    if (piece_(x) >= n) return x;
  }
  throw Error(ErrorCode::kOverflow, "no element of piece >= " + std::to_string(n) + " found below scan limit");
}

AdFamily AdFamily::branches(int depth) {
  if (depth < 0 || depth > 20) throw Error(ErrorCode::kInvalidArgument, "branch depth must be in [0, 20]");
  return AdFamily(std::make_shared<BranchFamily>(depth));
}

AdFamily AdFamily::residues(int modulus) {
  if (modulus < 1) throw Error(ErrorCode::kInvalidArgument, "modulus must be positive");
  return AdFamily(std::make_shared<ResidueFamily>(modulus));
}

AdFamily AdFamily::partition_legs(Partition q) { return AdFamily(std::make_shared<LegFamily>(std::move(q))); }

AdFamily AdFamily::custom(std::shared_ptr<const Impl> impl) {
  if (!impl) throw Error(ErrorCode::kInvalidArgument, "null AD family");
  return AdFamily(std::move(impl));
}

std::optional<std::pair<std::int64_t, std::int64_t>> AdFamily::find_violation(int sample) const {
  std::int64_t n = size() ? std::min<std::int64_t>(*size(), sample) : sample;
  std::int64_t bound = 10 * (declared_bound() + 1);
  for (std::int64_t g = 0; g < n; ++g) {
    for (std::int64_t h = g + 1; h < n; ++h) {
      std::set<std::int64_t> exact;
      for (auto x : intersection(g, h)) exact.insert(x);
      std::int64_t count = 0;
      bool agree = true;
      for (std::int64_t i = 0; i < bound; ++i) {
        std::int64_t x = element(g, i);
        if (contains(h, x)) {
          ++count;
          agree = agree && exact.count(x) > 0;
        }
      }
      if (count > declared_bound() || static_cast<std::int64_t>(exact.size()) > declared_bound() || !agree) {
        return std::make_pair(g, h);
      }
    }
  }
  return std::nullopt;
}

std::string FilterPresentation::name() const {
  switch (kind_) {
    case FilterKind::kFrechet: return "frechet";
    case FilterKind::kPartition: return "partition(" + partition_->name() + ")";
    case FilterKind::kFan: return "fan(" + partition_->name() + ")";
    case FilterKind::kAd: return "ad(" + family_->name() + ")";
  }
  return "?";
}

bool FilterPresentation::in_base(std::int64_t k, std::int64_t m) const {
  if (m < 0) return false;
  switch (kind_) {
    case FilterKind::kFrechet: return m >= k;
    case FilterKind::kPartition: return partition_->piece(m) >= k;
    case FilterKind::kFan:
    case FilterKind::kAd:
      for (auto g : family_->containing(m)) {
        if (*family_->index_of(g, m) >= k) return true;
      }
      return false;
  }
  return false;
}

std::int64_t FilterPresentation::next_in_base(std::int64_t k, std::int64_t from) const {
  switch (kind_) {
    case FilterKind::kFrechet: return std::max(k, from);
    case FilterKind::kPartition: return partition_->next_with_piece_at_least(k, from);
    default:
      for (std::int64_t m = from; m < from + kScanLimit; ++m) {
        if (in_base(k, m)) return m;
      }
      throw Error(ErrorCode::kOverflow, "no element of sample set " + std::to_string(k) + " found below scan limit");
  }
}

std::optional<std::vector<std::int64_t>> FilterPresentation::outside_base(std::int64_t k) const {
  if (kind_ == FilterKind::kFrechet) {
    std::vector<std::int64_t> out;
    for (std::int64_t m = 0; m < k; ++m) out.push_back(m);
    return out;
  }
  if (k > 0) return std::nullopt;
  if (kind_ == FilterKind::kPartition || family_->covers_all()) return std::vector<std::int64_t>{};
  return std::nullopt;
}

std::int64_t FilterPresentation::level(std::int64_t m) const {
  require_nat(m, "point");
  switch (kind_) {
    case FilterKind::kFrechet: return m;
    case FilterKind::kPartition: return partition_->piece(m);
    default: throw Error(ErrorCode::kPrecondition, "filter " + name() + " has no countable base");
  }
}

std::int64_t FilterPresentation::diagonal_term(std::size_t i) const {
  auto n = static_cast<std::int64_t>(i);
  switch (kind_) {
    case FilterKind::kFrechet: return n;
    case FilterKind::kPartition: {
      std::int64_t s = 0;
      while ((s + 1) * (s + 1) <= n) ++s;
      return partition_->element(s, n - s * s);
    }
    default: return family_->element(0, n);
  }
}

Tri FilterPresentation::semidecide_member(const std::function<bool(std::int64_t)>& f, int depth) const {
  int window = 64 * (std::max(depth, 1) + 1);
  // Each leg is an infinite set listed in increasing order.
  auto leg_element = [&](std::int64_t leg, std::int64_t i) -> std::int64_t {
    if (countable_base()) {
      std::int64_t m = next_in_base(leg, 0);
      for (std::int64_t j = 0; j < i; ++j) m = next_in_base(leg, m + 1);
      return m;
    }
    return family_->element(leg, i);
  };
  std::int64_t legs = depth;
  if (!countable_base() && family_->size()) legs = std::min<std::int64_t>(legs, *family_->size());
  if (countable_base()) {
    // F is in the filter iff some base set is almost inside F.
    Tri out = Tri::kFalse;
    for (std::int64_t k = 0; k < legs; ++k) {
      int last_escape = -1;
      int escapes = 0;
      for (int i = 0; i < window; ++i) {
        if (!f(leg_element(k, i))) {
          last_escape = i;
          ++escapes;
        }
      }
      if (last_escape < window / 2) return Tri::kTrue;
      if (escapes <= window / 2) out = Tri::kUnknown;
    }
    return out;
  }
  Tri out = Tri::kTrue;
  for (std::int64_t g = 0; g < legs; ++g) {
    int last_escape = -1;
    int escapes = 0;
    for (int i = 0; i < window; ++i) {
      if (!f(leg_element(g, i))) {
        last_escape = i;
        ++escapes;
      }
    }
    if (escapes > window / 2) return Tri::kFalse;
    if (last_escape >= window / 2) out = Tri::kUnknown;
  }
  return out;
}

FilterPresentation frechet_filter() { return FilterPresentation{}; }

FilterPresentation partition_filter(Partition q) {
  FilterPresentation f;
  f.kind_ = FilterKind::kPartition;
  f.partition_ = std::move(q);
  return f;
}

FilterPresentation fan_filter(Partition q) {
  FilterPresentation f;
  f.kind_ = FilterKind::kFan;
  f.family_ = AdFamily::partition_legs(q);
  f.partition_ = std::move(q);
  return f;
}

FilterPresentation ad_filter(AdFamily a) {
  FilterPresentation f;
  f.kind_ = FilterKind::kAd;
  f.family_ = std::move(a);
  return f;
}

}  // namespace seqhyper
