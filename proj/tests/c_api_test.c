#include <seqhyper/seqhyper.h>

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static int evens(void* user, size_t i, char* buf, size_t cap) {
  (void)user;
  return snprintf(buf, cap, "%zu", 2 * i) < (int)cap ? 0 : 1;
}

static int contains(const char* haystack, const char* needle) { return haystack && strstr(haystack, needle) != NULL; }

int main(void) {
  sh_space *x = NULL, *y = NULL;
  sh_open *o = NULL, *wide = NULL, *bad = NULL;
  sh_seq *s = NULL, *c = NULL;
  char* text = NULL;
  sh_tri t = SH_UNKNOWN;
  int inside = -1;

  EXPECT(strlen(sh_version()) > 0);
  EXPECT(sh_space_new("{\"kind\": \"xi\", \"filter\": \"frechet\"}", &x) == SH_OK);
  EXPECT(sh_space_kind(x, &text) == SH_OK && strcmp(text, "xi") == 0);
  sh_string_free(text);

  EXPECT(sh_open_new(x, "[{\"singleton\": 0}, {\"xi\": 1}]", &o) == SH_OK);
  EXPECT(sh_open_new(x, "[\"X\"]", &wide) == SH_OK);
  EXPECT(sh_open_include(o, wide, &inside) == SH_OK && inside == 1);
  EXPECT(sh_open_include(wide, o, &inside) == SH_OK && inside == 0);

  EXPECT(sh_seq_from_terms(x, "\"F\"", evens, NULL, 8, &s) == SH_OK);
  EXPECT(sh_seq_member(s, o, &t) == SH_OK && t == SH_TRUE);
  EXPECT(sh_seq_prefix(s, 3, &text) == SH_OK && contains(text, "4"));
  sh_string_free(text);

  EXPECT(sh_seq_canonical(x, "\"F\"", 8, &c) == SH_OK);
  EXPECT(sh_seq_member(c, wide, &t) == SH_OK && t == SH_TRUE);

  EXPECT(sh_metric_distance(x, "2", "3", &text) == SH_OK && strcmp(text, "1/8") == 0);
  sh_string_free(text);

  /* Errors come back as codes with a message. */
  EXPECT(sh_open_new(x, "[{\"singleton\": 3}, {\"xi\": 1}]", &bad) == SH_ERR_PRECONDITION || bad == NULL);
  EXPECT(bad == NULL);
  EXPECT(sh_space_new("{\"kind\": ", &y) == SH_ERR_SCHEMA && y == NULL);
  EXPECT(sh_space_new("{\"kind\": \"nope\"}", &y) != SH_OK && y == NULL);
  EXPECT(strlen(sh_last_error()) > 0);
  EXPECT(sh_space_kind(NULL, &text) == SH_ERR_NULL);
  EXPECT(strcmp(sh_status_name(SH_ERR_SCHEMA), "schema") == 0);

  EXPECT(sh_play(x, NULL, 7, 10, 8, &text) == SH_OK && contains(text, "\"verdict\":\"pass\""));
  sh_string_free(text);
  EXPECT(sh_diagnose(x, 8, &text) == SH_OK && contains(text, "dense isolated points"));
  sh_string_free(text);
  EXPECT(sh_polish_profile(x, 5, &text) == SH_OK && contains(text, "\"status\":\"pass\""));
  sh_string_free(text);

  {
    char *cfg = NULL, *report = NULL, *table = NULL;
    int code = -1;
    EXPECT(sh_scenario("psi", &cfg) == SH_OK && contains(cfg, "\"rounds\": 20"));
    sh_string_free(cfg);
    cfg = NULL;
    EXPECT(sh_config_parse("{\"schema\": \"seqhyper.config/1\", \"space\": {\"kind\": \"dyadic\"},\n"
                           " \"task\": \"meager\", \"rounds\": 3, \"seeds\": \"0-3\"}",
                           &cfg) == SH_OK);
    EXPECT(sh_run(cfg, 0, &report, &table, &code) == SH_OK && code == 0);
    EXPECT(contains(report, "\"status\": \"pass\""));
    EXPECT(contains(table, "space\tseed\tsteps"));
    sh_string_free(cfg);
    sh_string_free(report);
    sh_string_free(table);
    cfg = NULL;
    EXPECT(sh_config_parse("{\"schema\": \"seqhyper.config/1\",\n \"depth\": 0}", &cfg) == SH_ERR_SCHEMA);
    EXPECT(contains(sh_last_error(), "line"));
  }

  sh_seq_free(s);
  sh_seq_free(c);
  sh_open_free(o);
  sh_open_free(wide);
  sh_space_free(x);
  if (failures) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API: all expectations hold\n");
  return 0;
}
