#ifndef SEQHYPER_SEQHYPER_H
#define SEQHYPER_SEQHYPER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SH_API __declspec(dllexport)
#else
#define SH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning sh_status leaves a message for
   sh_last_error() on failure; the message is per thread. */
typedef enum sh_status {
  SH_OK = 0,
  SH_ERR_INVALID_ARGUMENT = 1,
  SH_ERR_PRECONDITION = 2,
  SH_ERR_SCHEMA = 3,
  SH_ERR_UNSUPPORTED = 4,
  SH_ERR_OVERFLOW = 5,
  SH_ERR_NULL = 6,
  SH_ERR_INTERNAL = 7
} sh_status;

typedef enum sh_tri { SH_FALSE = 0, SH_TRUE = 1, SH_UNKNOWN = 2 } sh_tri;

typedef struct sh_space sh_space;
typedef struct sh_open sh_open;
typedef struct sh_seq sh_seq;

SH_API const char* sh_version(void);
SH_API const char* sh_last_error(void);
SH_API const char* sh_status_name(sh_status s);

/* Strings returned through char** are owned by the caller. */
SH_API void sh_string_free(char* s);

/* Spaces from JSON descriptors such as {"kind": "xi", "filter": "frechet"}. */
SH_API sh_status sh_space_new(const char* descriptor_json, sh_space** out);
SH_API void sh_space_free(sh_space* x);
SH_API sh_status sh_space_kind(const sh_space* x, char** out);
/* A JSON array of enumerated points at the given depth. */
SH_API sh_status sh_space_points(const sh_space* x, int depth, char** out_json);

/* Canonical opens from a JSON array of pieces, e.g. [{"singleton": 0}, {"xi": 1}]. */
SH_API sh_status sh_open_new(const sh_space* x, const char* pieces_json, sh_open** out);
SH_API void sh_open_free(sh_open* o);
SH_API sh_status sh_open_json(const sh_open* o, char** out_json);
/* *out is 1 when child is certified inside parent, else 0. */
SH_API sh_status sh_open_include(const sh_open* child, const sh_open* parent, int* out);

/* The space's canonical sequence at a non-isolated point, certified to depth. */
SH_API sh_status sh_seq_canonical(const sh_space* x, const char* limit_json, int depth, sh_seq** out);
/* A sequence whose i-th term is written by fn as JSON into buf (capacity cap);
   fn returns 0 on success. The callback must stay valid while the sequence lives. */
typedef int (*sh_term_fn)(void* user, size_t i, char* buf, size_t cap);
SH_API sh_status sh_seq_from_terms(const sh_space* x, const char* limit_json, sh_term_fn fn, void* user, int depth,
                                   sh_seq** out);
SH_API void sh_seq_free(sh_seq* s);
/* JSON array: the limit, attachments, then the first n terms. */
SH_API sh_status sh_seq_prefix(const sh_seq* s, size_t n, char** out_json);
SH_API sh_status sh_seq_member(const sh_seq* s, const sh_open* o, sh_tri* out);

/* Reports and episodes as JSON documents. */
SH_API sh_status sh_diagnose(const sh_space* x, int depth, char** out_json);
SH_API sh_status sh_polish_profile(const sh_space* x, int depth, char** out_json);
/* Exact metric distance on a countably based xi space as a rational "p/q". */
SH_API sh_status sh_metric_distance(const sh_space* x, const char* p_json, const char* q_json, char** out);
/* One episode against the seeded random adversary; strategy may be NULL to
   pick one from the space kind. */
SH_API sh_status sh_play(const sh_space* x, const char* strategy, uint64_t seed, int rounds, int depth,
                         char** out_json);

/* Batch runs. sh_config_parse validates a config document and returns it
   normalized; schema errors name line and column. */
SH_API sh_status sh_config_parse(const char* config_json, char** out_json);
SH_API sh_status sh_scenario(const char* name, char** out_json);
/* Runs a normalized config, writing report.json and table.tsv when the
   config names an output directory. Interactive play uses stdin and stdout
   when use_stdio is nonzero. exit_code is nonzero iff a check failed. */
SH_API sh_status sh_run(const char* config_json, int use_stdio, char** report_json, char** table_tsv, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
