#include "vietoris.hpp"

#include <algorithm>
#include <set>

#include "spaces.hpp"

namespace seqhyper {

namespace {

constexpr int kIsolationSearch = 64;

const DuplicateSpace& as_duplicate(const SpacePtr& ax) {
  auto d = dynamic_cast<const DuplicateSpace*>(ax.get());
  if (!d) throw Error(ErrorCode::kPrecondition, "space is not an Alexandroff duplicate");
  return *d;
}

void choose_pieces(const Space& x, const OpenList& basis, std::size_t from, int left, OpenList& cur,
                   std::vector<CanonicalOpen>& out) {
  if (!cur.empty()) out.push_back(CanonicalOpen{cur});
  if (left == 0) return;
  for (std::size_t i = from; i < basis.size(); ++i) {
    bool ok = std::all_of(cur.begin(), cur.end(), [&](const Open& o) { return x.disjoint(o, basis[i]); });
    if (!ok) continue;
    cur.push_back(basis[i]);
    choose_pieces(x, basis, i + 1, left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string CanonicalOpen::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) s += ", ";
    s += pieces[i].to_string();
  }
  return s + ">";
}

Json CanonicalOpen::to_json() const {
  Json arr = Json::array();
  for (auto& p : pieces) arr.push_back(p.to_string());
  return arr;
}

Json InclusionCertificate::to_json() const {
  Json j;
  j["parent_of"] = parent_of;
  j["witness"] = witness;
  return j;
}

CanonicalOpen canonical(const Space& x, OpenList pieces) {
  if (pieces.empty()) throw Error(ErrorCode::kInvalidArgument, "a canonical open needs at least one piece");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (!x.disjoint(pieces[i], pieces[j])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "pieces " + pieces[i].to_string() + " and " + pieces[j].to_string() + " are not certified disjoint");
      }
    }
  }
  return CanonicalOpen{std::move(pieces)};
}

bool brute_disjoint(const Space& x, const CanonicalOpen& o, int depth) {
  for (std::size_t i = 0; i < o.pieces.size(); ++i) {
    for (auto& p : x.enumerate(o.pieces[i], depth)) {
      for (std::size_t j = 0; j < o.pieces.size(); ++j) {
        if (j != i && x.member(o.pieces[j], p)) return false;
      }
    }
  }
  return true;
}

bool has_nondiscrete_piece(const Space& x, const CanonicalOpen& o, int depth) {
  return std::any_of(o.pieces.begin(), o.pieces.end(),
                     [&](const Open& u) { return x.find_nonisolated(u, depth).has_value(); });
}

Tri member(const ConvSeq& s, const CanonicalOpen& o) {
  const Space& x = *s.space();
  std::optional<std::size_t> home;
  for (std::size_t j = 0; j < o.pieces.size(); ++j) {
    if (x.member(o.pieces[j], s.limit())) {
      home = j;
      break;
    }
  }
  if (!home) return Tri::kFalse;
  auto k = x.local_index_inside(s.limit(), o.pieces[*home]);
  if (!k) return Tri::kUnknown;
  auto n = s.modulus(*k);
  if (!n) return Tri::kUnknown;
  std::vector<bool> hit(o.pieces.size(), false);
  hit[*home] = true;
  auto place = [&](const Point& p) {
    for (std::size_t j = 0; j < o.pieces.size(); ++j) {
      if (x.member(o.pieces[j], p)) {
        hit[j] = true;
        return true;
      }
    }
    return false;
  };
  for (auto& a : s.attachments()) {
    if (!place(a)) return Tri::kFalse;
  }
  for (std::size_t i = 0; i < *n; ++i) {
    if (!place(s.term(i))) return Tri::kFalse;
  }
  return tri(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

Inclusion include(const Space& x, const CanonicalOpen& child, const CanonicalOpen& parent) {
  Inclusion out;
  InclusionCertificate cert;
  cert.witness.assign(parent.pieces.size(), child.pieces.size());
  for (std::size_t i = 0; i < child.pieces.size(); ++i) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < parent.pieces.size() && !found; ++j) {
      if (x.subset(child.pieces[i], parent.pieces[j])) found = j;
    }
    if (!found) {
      out.refusal = "child piece " + std::to_string(i) + " " + child.pieces[i].to_string() + " lies in no parent piece";
      return out;
    }
    cert.parent_of.push_back(*found);
    if (cert.witness[*found] == child.pieces.size()) cert.witness[*found] = i;
  }
  for (std::size_t j = 0; j < parent.pieces.size(); ++j) {
    if (cert.witness[j] == child.pieces.size()) {
      out.refusal = "parent piece " + std::to_string(j) + " " + parent.pieces[j].to_string() + " contains no child piece";
      return out;
    }
  }
  out.cert = std::move(cert);
  return out;
}

std::optional<ConvSeq> sample_member(const SpacePtr& x, const CanonicalOpen& o, int depth) {
  for (std::size_t j = 0; j < o.pieces.size(); ++j) {
    auto p = x->find_nonisolated(o.pieces[j], depth);
    if (!p) continue;
    auto k = x->local_index_inside(*p, o.pieces[j]);
    if (!k) continue;
    ConvSeq base = canonical_seq(x, *p, *k);
    auto n = base.modulus(*k);
    if (!n) continue;
    PointList extra;
    bool ok = true;
    for (std::size_t i = 0; i < o.pieces.size() && ok; ++i) {
      if (i == j) continue;
      auto pts = x->enumerate(o.pieces[i], depth);
      ok = !pts.empty();
      if (ok) extra.push_back(pts.front());
    }
    if (!ok) continue;
    return base.drop_terms(*n).with_attachments(std::move(extra));
  }
  return std::nullopt;
}

std::vector<CanonicalOpen> enumerate_canonical(const Space& x, int depth, int max_pieces) {
  OpenList basis = x.basis(depth);
  std::vector<CanonicalOpen> all;
  OpenList cur;
  choose_pieces(x, basis, 0, max_pieces, cur, all);
  std::vector<CanonicalOpen> out;
  for (auto& c : all) {
    if (has_nondiscrete_piece(x, c, depth)) out.push_back(std::move(c));
  }
  return out;
}

std::vector<CanonicalOpen> pi_base_enum(const SpacePtr& ax, int depth, int max_singletons) {
  const DuplicateSpace& dup = as_duplicate(ax);
  const Space& x = *dup.base();
  std::vector<CanonicalOpen> out;
  PointList singles;
  for (auto& y : x.points(depth)) singles.push_back(Point::dup(y, 1));
  for (auto& b : x.basis(depth + 1)) {
    if (!x.find_nonisolated(b, depth + 1)) continue;
    Open hb = Open::hat(b);
    OpenList outside;
    for (auto& s : singles) {
      if (!ax->member(hb, s)) outside.push_back(Open::singleton(s));
    }
    out.push_back(CanonicalOpen{{hb}});
    std::vector<CanonicalOpen> extra;
    OpenList picked;
    choose_pieces(*ax, outside, 0, max_singletons, picked, extra);
    for (auto& e : extra) {
      OpenList pieces{hb};
      pieces.insert(pieces.end(), e.pieces.begin(), e.pieces.end());
      out.push_back(CanonicalOpen{std::move(pieces)});
    }
  }
  return out;
}

CanonicalOpen pi_refine(const SpacePtr& ax, const CanonicalOpen& v) {
  const DuplicateSpace& dup = as_duplicate(ax);
  const Space& x = *dup.base();
  std::optional<std::size_t> v0;
  Open hat_b;
  for (std::size_t j = 0; j < v.pieces.size() && !v0; ++j) {
    for (auto& p : ax->enumerate(v.pieces[j], 2)) {
      if (ax->isolated(p)) continue;
      for (int kk = 0; kk < kMaxLocalIndex; ++kk) {
        if (ax->subset(Open::hat(x.local_base(p.kids[0], kk)), v.pieces[j])) {
          v0 = j;
          hat_b = Open::hat(x.local_base(p.kids[0], kk + 1));
          break;
        }
      }
      if (v0) break;
    }
  }
  if (!v0) throw Error(ErrorCode::kPrecondition, "no non-discrete piece found in " + v.to_string());
  OpenList pieces{hat_b};
  for (std::size_t j = 0; j < v.pieces.size(); ++j) {
    if (j == *v0) continue;
    std::optional<Point> pick;
    for (int d = 1; d <= 8 && !pick; ++d) {
      for (auto& p : ax->enumerate(v.pieces[j], d)) {
        if (p.ints[0] == 1) {
          pick = p;
          break;
        }
        Point lifted = Point::dup(p.kids[0], 1);
        if (ax->member(v.pieces[j], lifted)) {
          pick = lifted;
          break;
        }
      }
    }
    if (!pick) throw Error(ErrorCode::kPrecondition, "piece " + v.pieces[j].to_string() + " has no level-1 point");
    pieces.push_back(Open::singleton(*pick));
  }
  return canonical(*ax, std::move(pieces));
}

std::optional<Open> isolating_open(const ConvSeq& s, const Point& p, const Open& u, const OpenList& avoid) {
  const Space& x = *s.space();
  for (int k = 0; k <= kMaxLocalIndex; ++k) {
    Open b = x.local_base(p, k);
    if (x.member(b, s.limit()) || !x.subset(b, u)) continue;
    if (!std::all_of(avoid.begin(), avoid.end(), [&](const Open& a) { return x.disjoint(a, b); })) continue;
    std::optional<int> far;
    for (int m = 0; m <= kIsolationSearch && !far; ++m) {
      if (x.disjoint(x.local_base(s.limit(), m), b)) far = m;
    }
    if (!far) continue;
    auto n = s.modulus(*far);
    if (!n) return std::nullopt;
    bool alone = true;
    for (auto& a : s.attachments()) alone = alone && (a == p || !x.member(b, a));
    for (std::size_t i = 0; i < *n && alone; ++i) {
      Point t = s.term(i);
      alone = t == p || !x.member(b, t);
    }
    if (alone) return b;
  }
  return std::nullopt;
}

std::vector<DiscreteMember> discrete_closed_family(const ConvSeq& s, int depth) {
  const Space& x = *s.space();
  std::vector<DiscreteMember> out;
  for (int j = 0; j < depth; ++j) {
    auto uj = static_cast<std::size_t>(j);
    Point tj = s.term(uj);
    auto around = isolating_open(s, tj, Open::whole(), {});
    if (!around) throw Error(ErrorCode::kPrecondition, "term " + std::to_string(j) + " cannot be isolated");
    PointList removed = s.terms(uj);
    Open rest = Open::minus(Open::complement(*around), removed);
    ConvSeq member_j = s.drop_terms(uj);
    auto cert = recertify(member_j, 4);
    if (!cert.ok()) throw Error(ErrorCode::kPrecondition, "member " + std::to_string(j) + " failed to certify: " + cert.message);
    out.push_back(DiscreteMember{*cert.seq, canonical(x, {*around, rest})});
  }
  return out;
}

std::optional<std::size_t> NoncompactWitness::excluding_stage(const ConvSeq& t) const {
  for (std::size_t s = 0; s < stages.size(); ++s) {
    if (member(t, stages[s]) == Tri::kFalse) return s;
  }
  return std::nullopt;
}

NoncompactWitness noncompact_witness(const ConvSeq& s, const CanonicalOpen& o, int depth) {
  const SpacePtr& x = s.space();
  if (member(s, o) != Tri::kTrue) throw Error(ErrorCode::kPrecondition, "S is not certified inside O");
  std::size_t home = 0;
  while (!x->member(o.pieces[home], s.limit())) ++home;
  int kn = *x->local_index_inside(s.limit(), o.pieces[home]);
  Open un = x->local_base(s.limit(), kn);
  auto escaped = s.outside(un);
  if (!escaped) throw Error(ErrorCode::kPrecondition, "no certificate for the limit piece");
  NoncompactWitness w;
  std::vector<int> idx;
  OpenList taken{un};
  for (auto& p : *escaped) {
    std::size_t j = 0;
    while (!x->member(o.pieces[j], p)) ++j;
    auto iso = isolating_open(s, p, o.pieces[j], taken);
    if (!iso) throw Error(ErrorCode::kPrecondition, "cannot isolate " + p.to_string());
    int k = 0;
    while (!(x->local_base(p, k) == *iso)) ++k;
    w.anchors.push_back(p);
    idx.push_back(k);
    taken.push_back(*iso);
  }
  w.anchors.push_back(s.limit());
  idx.push_back(kn);
  for (int stage = 0; stage <= depth; ++stage) {
    OpenList pieces;
    for (std::size_t i = 0; i < w.anchors.size(); ++i) pieces.push_back(x->local_base(w.anchors[i], idx[i] + stage));
    CanonicalOpen c = canonical(*x, pieces);
    int k = idx.back() + stage;
    ConvSeq base = canonical_seq(x, s.limit(), k);
    auto n = base.modulus(k);
    if (!n) throw Error(ErrorCode::kPrecondition, "stage " + std::to_string(stage) + " member has no certificate");
    PointList anchors(w.anchors.begin(), w.anchors.end() - 1);
    ConvSeq m = base.drop_terms(*n).with_attachments(anchors);
    if (member(m, c) != Tri::kTrue) {
      throw Error(ErrorCode::kPrecondition, "stage " + std::to_string(stage) + " member failed verification");
    }
    w.stages.push_back(std::move(c));
    w.members.push_back(std::move(m));
  }
  return w;
}

}  // namespace seqhyper
