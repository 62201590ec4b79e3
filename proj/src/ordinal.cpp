#include "ordinal.hpp"

#include <sstream>

#include "error.hpp"

namespace seqhyper {

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.push_term(Ordinal{}, n);
  return o;
}

Ordinal Ordinal::omega() { return omega_pow(finite(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, std::uint64_t coeff) {
  Ordinal o;
  if (coeff > 0) o.push_term(e, coeff);
  return o;
}

void Ordinal::push_term(const Ordinal& e, std::uint64_t c) {
  exps_.push_back(e);
  coeffs_.push_back(c);
}

bool Ordinal::is_successor() const { return !is_zero() && exps_.back().is_zero(); }

bool Ordinal::is_finite() const {
  return is_zero() || (coeffs_.size() == 1 && exps_[0].is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidArgument, "ordinal is infinite");
  return is_zero() ? 0 : coeffs_[0];
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.exps_[0];
  Ordinal out;
  std::size_t i = 0;
  for (; i < a.coeffs_.size() && (a.exps_[i] <=> lead) == std::strong_ordering::greater; ++i) {
    out.push_term(a.exps_[i], a.coeffs_[i]);
  }
  std::uint64_t carry = 0;
  if (i < a.coeffs_.size() && a.exps_[i] == lead) carry = a.coeffs_[i];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
    out.push_term(b.exps_[j], b.coeffs_[j] + (j == 0 ? carry : 0));
  }
  return out;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw Error(ErrorCode::kInvalidArgument, "not a successor ordinal");
  Ordinal o = *this;
  if (--o.coeffs_.back() == 0) {
    o.coeffs_.pop_back();
    o.exps_.pop_back();
  }
  return o;
}

Ordinal Ordinal::fundamental(std::uint64_t k) const {
  if (!is_limit()) throw Error(ErrorCode::kInvalidArgument, "fundamental sequence of non-limit");
  Ordinal prefix = *this;
  Ordinal e = prefix.exps_.back();
  if (--prefix.coeffs_.back() == 0) {
    prefix.coeffs_.pop_back();
    prefix.exps_.pop_back();
  }
  if (e.is_successor()) return prefix + omega_pow(e.predecessor(), k);
  return prefix + omega_pow(e.fundamental(k));
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = a.exps_[i] <=> b.exps_[i];
    if (c != std::strong_ordering::equal) return c;
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] <=> b.coeffs_[i];
  }
  return a.coeffs_.size() <=> b.coeffs_.size();
}

Point Ordinal::to_point() const {
  Point p{PointKind::kOrdinal, {}, {}};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    p.ints.push_back(static_cast<std::int64_t>(coeffs_[i]));
    p.kids.push_back(exps_[i].to_point());
  }
  return p;
}

Ordinal Ordinal::from_point(const Point& p) {
  if (p.kind != PointKind::kOrdinal || p.ints.size() != p.kids.size()) {
    throw Error(ErrorCode::kInvalidArgument, "not an ordinal point");
  }
  Ordinal o;
  for (std::size_t i = 0; i < p.ints.size(); ++i) {
    Ordinal e = from_point(p.kids[i]);
    if (p.ints[i] <= 0 || (i > 0 && !(e < o.exps_.back()))) {
      throw Error(ErrorCode::kInvalidArgument, "ordinal point not in normal form");
    }
    o.push_term(e, static_cast<std::uint64_t>(p.ints[i]));
  }
  return o;
}

std::string Ordinal::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << "+";
    const Ordinal& e = exps_[i];
    if (e.is_zero()) {
      os << coeffs_[i];
      continue;
    }
    os << "w";
    if (!(e == finite(1))) {
      if (e.term_count() == 1 && (e.is_finite() || e.coefficient(0) == 1)) os << "^" << e.to_string();
      else os << "^(" << e.to_string() << ")";
    }
    if (coeffs_[i] != 1) os << "*" << coeffs_[i];
  }
  return os.str();
}

}  // namespace seqhyper
