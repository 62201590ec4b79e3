#include <seqhyper/seqhyper.h>

#include <cstring>
#include <iostream>
#include <sstream>

#include "codec.hpp"
#include "games.hpp"
#include "metric.hpp"
#include "runner.hpp"
#include "sequences.hpp"
#include "vietoris.hpp"

using namespace seqhyper;

struct sh_space {
  SpacePtr x;
};
struct sh_open {
  SpacePtr x;
  CanonicalOpen o;
};
struct sh_seq {
  ConvSeq s;
};

namespace {

thread_local std::string last_error;

sh_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return SH_ERR_INVALID_ARGUMENT;
    case ErrorCode::kPrecondition: return SH_ERR_PRECONDITION;
    case ErrorCode::kSchema: return SH_ERR_SCHEMA;
    case ErrorCode::kUnsupported: return SH_ERR_UNSUPPORTED;
    case ErrorCode::kOverflow: return SH_ERR_OVERFLOW;
  }
  return SH_ERR_INTERNAL;
}

template <typename Fn>
sh_status guard(Fn fn) {
  try {
    last_error.clear();
    fn();
    return SH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const Json::exception& e) {
    last_error = e.what();
    return SH_ERR_SCHEMA;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SH_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

Json parse(const char* text, const char* what) {
  need(text, what);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string(what) + ": " + e.what());
  }
}

}  // namespace

extern "C" {

const char* sh_version(void) { return "1.0.0"; }

const char* sh_last_error(void) { return last_error.c_str(); }

const char* sh_status_name(sh_status s) {
  switch (s) {
    case SH_OK: return "ok";
    case SH_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SH_ERR_PRECONDITION: return "precondition";
    case SH_ERR_SCHEMA: return "schema";
    case SH_ERR_UNSUPPORTED: return "unsupported";
    case SH_ERR_OVERFLOW: return "overflow";
    case SH_ERR_NULL: return "null";
    case SH_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void sh_string_free(char* s) { std::free(s); }

sh_status sh_space_new(const char* descriptor_json, sh_space** out) {
  if (!out) return SH_ERR_NULL;
  *out = nullptr;
  return guard([&] { *out = new sh_space{build_space(parse(descriptor_json, "descriptor"))}; });
}

void sh_space_free(sh_space* x) { delete x; }

sh_status sh_space_kind(const sh_space* x, char** out) {
  if (!x || !out) return SH_ERR_NULL;
  return guard([&] { *out = dup_string(x->x->kind()); });
}

sh_status sh_space_points(const sh_space* x, int depth, char** out_json) {
  if (!x || !out_json) return SH_ERR_NULL;
  return guard([&] {
    Json a = Json::array();
    for (auto& p : x->x->points(depth)) a.push_back(point_to_json(p));
    *out_json = dup_string(a.dump());
  });
}

sh_status sh_open_new(const sh_space* x, const char* pieces_json, sh_open** out) {
  if (!x || !out) return SH_ERR_NULL;
  *out = nullptr;
  return guard([&] { *out = new sh_open{x->x, canonical_from_json(*x->x, parse(pieces_json, "pieces"))}; });
}

void sh_open_free(sh_open* o) { delete o; }

sh_status sh_open_json(const sh_open* o, char** out_json) {
  if (!o || !out_json) return SH_ERR_NULL;
  return guard([&] { *out_json = dup_string(canonical_to_json(o->o).dump()); });
}

sh_status sh_open_include(const sh_open* child, const sh_open* parent, int* out) {
  if (!child || !parent || !out) return SH_ERR_NULL;
  return guard([&] {
    if (child->x != parent->x) throw Error(ErrorCode::kInvalidArgument, "opens belong to different spaces");
    *out = include(*child->x, child->o, parent->o).ok() ? 1 : 0;
  });
}

sh_status sh_seq_canonical(const sh_space* x, const char* limit_json, int depth, sh_seq** out) {
  if (!x || !out) return SH_ERR_NULL;
  *out = nullptr;
  return guard([&] { *out = new sh_seq{canonical_seq(x->x, point_from_json(parse(limit_json, "limit")), depth)}; });
}

sh_status sh_seq_from_terms(const sh_space* x, const char* limit_json, sh_term_fn fn, void* user, int depth,
                            sh_seq** out) {
  if (!x || !out || !fn) return SH_ERR_NULL;
  *out = nullptr;
  return guard([&] {
    Point limit = point_from_json(parse(limit_json, "limit"));
    TermFn terms = [fn, user](std::size_t i) {
      std::string buf(4096, '\0');
      if (fn(user, i, buf.data(), buf.size()) != 0) {
        throw Error(ErrorCode::kPrecondition, "term callback failed at index " + std::to_string(i));
      }
      buf.resize(std::strlen(buf.c_str()));
      return point_from_json(Json::parse(buf));
    };
    auto r = make_seq(x->x, limit, terms, depth);
    if (!r.ok()) throw Error(ErrorCode::kPrecondition, "certificate refused: " + r.message);
    *out = new sh_seq{*r.seq};
  });
}

void sh_seq_free(sh_seq* s) { delete s; }

sh_status sh_seq_prefix(const sh_seq* s, size_t n, char** out_json) {
  if (!s || !out_json) return SH_ERR_NULL;
  return guard([&] {
    Json a = Json::array();
    for (auto& p : s->s.point_prefix(n)) a.push_back(point_to_json(p));
    *out_json = dup_string(a.dump());
  });
}

sh_status sh_seq_member(const sh_seq* s, const sh_open* o, sh_tri* out) {
  if (!s || !o || !out) return SH_ERR_NULL;
  return guard([&] {
    if (s->s.space() != o->x) throw Error(ErrorCode::kInvalidArgument, "sequence and open belong to different spaces");
    *out = static_cast<sh_tri>(member(s->s, o->o));
  });
}

sh_status sh_diagnose(const sh_space* x, int depth, char** out_json) {
  if (!x || !out_json) return SH_ERR_NULL;
  return guard([&] { *out_json = dup_string(diagnose(x->x, depth).to_json().dump()); });
}

sh_status sh_polish_profile(const sh_space* x, int depth, char** out_json) {
  if (!x || !out_json) return SH_ERR_NULL;
  return guard([&] { *out_json = dup_string(polish_profile(x->x, depth).to_json().dump()); });
}

sh_status sh_metric_distance(const sh_space* x, const char* p_json, const char* q_json, char** out) {
  if (!x || !out) return SH_ERR_NULL;
  return guard([&] {
    XiMetric m(x->x);
    *out = dup_string(to_string(m.d(point_from_json(parse(p_json, "p")), point_from_json(parse(q_json, "q")))));
  });
}

sh_status sh_play(const sh_space* x, const char* strategy, uint64_t seed, int rounds, int depth, char** out_json) {
  if (!x || !out_json) return SH_ERR_NULL;
  return guard([&] {
    Json desc{{"kind", x->x->kind()}};
    if (const auto* d = dynamic_cast<const DuplicateSpace*>(x->x.get())) desc["base"] = Json{{"kind", d->base()->kind()}};
    auto s = strategy_for(x->x, desc, strategy ? strategy : "")();
    auto a = random_adversary(seed);
    Episode e = play(x->x, *s, *a, rounds, depth);
    *out_json = dup_string(e.to_json().dump());
  });
}

sh_status sh_config_parse(const char* config_json, char** out_json) {
  if (!config_json || !out_json) return SH_ERR_NULL;
  return guard([&] { *out_json = dup_string(parse_config(config_json).to_json().dump(2)); });
}

sh_status sh_scenario(const char* name, char** out_json) {
  if (!name || !out_json) return SH_ERR_NULL;
  return guard([&] { *out_json = dup_string(scenario(name).to_json().dump(2)); });
}

sh_status sh_run(const char* config_json, int use_stdio, char** report_json, char** table_tsv, int* exit_code) {
  if (!config_json || !report_json) return SH_ERR_NULL;
  return guard([&] {
    RunConfig c = parse_config(config_json);
    RunResult r = use_stdio ? run(c, &std::cin, &std::cout) : run(c);
    write_outputs(c, r);
    *report_json = dup_string(r.report.dump(2));
    if (table_tsv) {
      std::ostringstream t;
      for (const auto& row : r.table) {
        for (std::size_t i = 0; i < row.size(); ++i) t << (i ? "\t" : "") << row[i];
        t << "\n";
      }
      *table_tsv = dup_string(t.str());
    }
    if (exit_code) *exit_code = r.exit_code;
  });
}

}  // extern "C"
