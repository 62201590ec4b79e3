#include "sequences.hpp"

#include <algorithm>
#include <set>

namespace seqhyper {

namespace {

constexpr int kSeparationChecks = 16;
constexpr int kSeparationSearch = 64;
constexpr int kExclusionSearch = 1 << 16;

std::optional<std::size_t> scan_modulus(const Space& x, const Open& b, const TermStream& terms) {
  std::size_t window = kInitialScan;
  std::size_t scanned = 0;
  std::optional<std::size_t> last_escape;
  while (true) {
    for (; scanned < window; ++scanned) {
      if (!x.member(b, terms.at(scanned))) last_escape = scanned;
    }
    std::size_t n = last_escape ? *last_escape + 1 : 0;
    if (2 * n <= window) return n;
    if (window >= kMaxScan) return std::nullopt;
    window *= 2;
  }
}

// Least k with q outside local_base(limit, k), by doubling then bisection.
std::optional<int> excluding_index(const Space& x, const Point& limit, const Point& q) {
  int hi = 1;
  while (x.member(x.local_base(limit, hi), q)) {
    if (hi >= kExclusionSearch) return std::nullopt;
    hi *= 2;
  }
  int lo = 0;
  if (!x.member(x.local_base(limit, 0), q)) return 0;
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (x.member(x.local_base(limit, mid), q)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

FiniteSet FiniteSet::of(PointList pts) {
  std::set<Point> seen;
  for (auto& p : pts) {
    if (!seen.insert(p).second) throw Error(ErrorCode::kInvalidArgument, "finite set repeats " + p.to_string());
  }
  return FiniteSet{std::move(pts)};
}

Point TermStream::at(std::size_t i) const {
  std::lock_guard lock(mu_);
  while (cache_.size() <= i) cache_.push_back(fn_(cache_.size()));
  return cache_[i];
}

PointList TermStream::prefix(std::size_t n) const {
  if (n == 0) return {};
  at(n - 1);
  std::lock_guard lock(mu_);
  return PointList(cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(n));
}

ConvSeq::ConvSeq(SpacePtr space, Point limit, std::shared_ptr<const TermStream> terms, PointList attachments)
    : state_(std::make_shared<State>()) {
  state_->space = std::move(space);
  state_->limit = std::move(limit);
  state_->terms = std::move(terms);
  state_->attachments = std::move(attachments);
}

std::optional<std::size_t> ConvSeq::modulus(int k) const {
  {
    std::lock_guard lock(state_->mu);
    auto it = state_->moduli.find(k);
    if (it != state_->moduli.end()) return it->second;
  }
  auto n = scan_modulus(*space(), space()->local_base(limit(), k), *state_->terms);
  std::lock_guard lock(state_->mu);
  state_->moduli.emplace(k, n);
  return n;
}

std::optional<bool> ConvSeq::contains(const Point& q) const {
  if (q == limit() || contains_point(attachments(), q)) return true;
  if (!space()->is_point(q)) return false;
  auto k = excluding_index(*space(), limit(), q);
  if (!k) return std::nullopt;
  auto n = modulus(*k);
  if (!n) return std::nullopt;
  for (std::size_t i = 0; i < *n; ++i) {
    if (term(i) == q) return true;
  }
  return false;
}

std::optional<PointList> ConvSeq::outside(const Open& u) const {
  if (!space()->member(u, limit())) return std::nullopt;
  auto k = space()->local_index_inside(limit(), u);
  if (!k) return std::nullopt;
  auto n = modulus(*k);
  if (!n) return std::nullopt;
  PointList out;
  for (auto& a : attachments()) {
    if (!space()->member(u, a)) out.push_back(a);
  }
  for (std::size_t i = 0; i < *n; ++i) {
    Point t = term(i);
    if (!space()->member(u, t)) out.push_back(t);
  }
  return out;
}

PointList ConvSeq::point_prefix(std::size_t n) const {
  PointList out{limit()};
  out.insert(out.end(), attachments().begin(), attachments().end());
  auto t = terms(n);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

ConvSeq ConvSeq::with_attachments(PointList extra) const {
  PointList all = attachments();
  all.insert(all.end(), extra.begin(), extra.end());
  ConvSeq out(space(), limit(), stream(), std::move(all));
  std::lock_guard lock(state_->mu);
  out.state_->moduli = state_->moduli;
  return out;
}

ConvSeq ConvSeq::drop_terms(std::size_t j) const {
  if (j == 0) return *this;
  auto src = stream();
  auto shifted = std::make_shared<TermStream>([src, j](std::size_t i) { return src->at(i + j); });
  return ConvSeq(space(), limit(), std::move(shifted), attachments());
}

const ConvSeq& CertResult::value() const {
  if (!seq) throw Error(ErrorCode::kPrecondition, "sequence not certified: " + message);
  return *seq;
}

CertResult make_seq(SpacePtr x, Point limit, TermFn terms, int depth, PointList attachments) {
  return make_seq(std::move(x), std::move(limit), std::make_shared<TermStream>(std::move(terms)), depth,
                  std::move(attachments));
}

CertResult make_seq(SpacePtr x, Point limit, std::shared_ptr<const TermStream> terms, int depth,
                    PointList attachments) {
  if (!x->is_point(limit)) throw Error(ErrorCode::kInvalidArgument, "limit " + limit.to_string() + " is not a point");
  if (x->isolated(limit)) throw Error(ErrorCode::kPrecondition, "limit " + limit.to_string() + " is isolated");
  CertResult r;
  ConvSeq s(x, limit, terms, attachments);
  std::size_t horizon = kInitialScan;
  for (int k = 0; k <= depth; ++k) {
    auto n = s.modulus(k);
    if (!n) {
      r.status = CertStatus::kRefused;
      r.failed_base = x->local_base(limit, k);
      r.failed_index = k;
      r.message = "no tail inside " + r.failed_base->to_string() + " below " + std::to_string(kMaxScan) + " terms";
      return r;
    }
    horizon = std::max(horizon, 2 * *n);
  }
  std::set<Point> seen;
  for (auto& a : attachments) {
    if (a == limit || !seen.insert(a).second || !x->is_point(a)) {
      r.status = CertStatus::kRejected;
      r.message = "attachment " + a.to_string() + " repeats, hits the limit or is not a point";
      return r;
    }
  }
  for (std::size_t i = 0; i < horizon; ++i) {
    Point t = s.term(i);
    if (!x->is_point(t)) {
      r.status = CertStatus::kRejected;
      r.failed_index = static_cast<int>(i);
      r.message = "term " + std::to_string(i) + " = " + t.to_string() + " is not a point";
      return r;
    }
    if (t == limit || !seen.insert(t).second) {
      r.status = CertStatus::kRejected;
      r.failed_index = static_cast<int>(i);
      r.message = "term " + std::to_string(i) + " = " + t.to_string() + " repeats or hits the limit";
      return r;
    }
  }
  int checks = std::min(depth + 1, kSeparationChecks);
  for (int i = 0; i < checks; ++i) {
    Point t = s.term(static_cast<std::size_t>(i));
    if (x->isolated(t)) continue;
    bool separated = false;
    for (int k = 0; k <= kSeparationSearch && !separated; ++k) {
      Open around = x->local_base(t, k);
      if (x->member(around, limit)) continue;
      for (int j = 0; j <= kSeparationSearch && !separated; ++j) {
        separated = x->disjoint(x->local_base(limit, j), around);
      }
      break;
    }
    if (!separated) {
      r.status = CertStatus::kRejected;
      r.failed_index = i;
      r.message = "term " + std::to_string(i) + " is not separated from the limit";
      return r;
    }
  }
  r.status = CertStatus::kCertified;
  r.seq = std::move(s);
  return r;
}

CertResult recertify(const ConvSeq& s, int depth) {
  return make_seq(s.space(), s.limit(), s.stream(), depth, s.attachments());
}

ConvSeq canonical_seq(const SpacePtr& x, const Point& limit, int depth) {
  auto r = make_seq(x, limit, x->canonical_sequence(limit), depth);
  if (!r.ok()) throw Error(ErrorCode::kPrecondition, "canonical sequence failed to certify: " + r.message);
  return *r.seq;
}

ConvSeq amalgam(const ConvSeq& s, const FiniteSet& f) {
  if (f.empty()) return s;
  for (auto& p : f.elements) {
    if (!s.space()->is_point(p)) throw Error(ErrorCode::kInvalidArgument, p.to_string() + " is not a point");
    auto in = s.contains(p);
    if (!in) throw Error(ErrorCode::kPrecondition, "cannot decide whether " + p.to_string() + " lies in S");
    if (*in) throw Error(ErrorCode::kInvalidArgument, "amalgam overlap at " + p.to_string());
  }
  return s.with_attachments(f.elements);
}

SplitResult split(const ConvSeq& s, const Open& y) {
  const Space& x = *s.space();
  if (!x.member(y, s.limit())) throw Error(ErrorCode::kPrecondition, "the limit does not lie in Y");
  auto k = x.local_index_inside(s.limit(), y);
  if (!k) throw Error(ErrorCode::kPrecondition, "no local-base element at the limit inside Y");
  auto n = s.modulus(*k);
  if (!n) throw Error(ErrorCode::kPrecondition, "infinitely many terms escape Y below the scan bound");
  PointList rest;
  PointList kept_attachments;
  for (auto& a : s.attachments()) (x.member(y, a) ? kept_attachments : rest).push_back(a);
  PointList early_in;
  bool early_escape = false;
  for (std::size_t i = 0; i < *n; ++i) {
    Point t = s.term(i);
    if (x.member(y, t)) {
      early_in.push_back(t);
    } else {
      rest.push_back(t);
      early_escape = true;
    }
  }
  if (!early_escape) {
    return SplitResult{ConvSeq(s.space(), s.limit(), s.stream(), kept_attachments), FiniteSet::of(rest)};
  }
  ConvSeq tail = ConvSeq(s.space(), s.limit(), s.stream(), {}).drop_terms(*n);
  kept_attachments.insert(kept_attachments.end(), early_in.begin(), early_in.end());
  return SplitResult{tail.with_attachments(kept_attachments), FiniteSet::of(rest)};
}

bool same_point_set(const ConvSeq& a, const ConvSeq& b, std::size_t n) {
  if (!(a.limit() == b.limit())) return false;
  for (auto& p : a.point_prefix(n)) {
    auto in = b.contains(p);
    if (!in || !*in) return false;
  }
  for (auto& p : b.point_prefix(n)) {
    auto in = a.contains(p);
    if (!in || !*in) return false;
  }
  return true;
}

}  // namespace seqhyper
