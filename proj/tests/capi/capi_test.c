/* Exercises the C API from C. */
#include "elminer/elminer.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void count_result(const char* record_json, void* user) {
  EXPECT(strstr(record_json, "\"axiom\"") != NULL);
  ++*(int*)user;
}

static char* job_json(const char* extra) {
  static char buf[1024];
  snprintf(buf, sizeof buf,
           "{\"fixtureFile\": \"%s/books.ttl\", \"classIri\": \"dbo:Book\", \"minSupport\": \"4/5\", "
           "\"maxDepth\": 2%s}",
           ELM_TEST_DATA, extra);
  return buf;
}

static void test_errors(void) {
  elm_job* job = (elm_job*)1;
  EXPECT(elm_job_create("{not json", &job) == ELM_ERR_PARSE);
  EXPECT(job == NULL);
  EXPECT(elm_job_create(job_json(", \"minSupport\": 1.5"), &job) != ELM_OK);
  EXPECT(elm_job_create("{\"fixtureFile\": \"x.ttl\", \"classIri\": \"http://a.org/C\", \"minSupport\": 1.5}", &job) ==
         ELM_ERR_INVALID_ARGUMENT);
  EXPECT(strstr(elm_last_error(), "min-support must be in (0,1]") != NULL);
  EXPECT(elm_job_create(NULL, &job) == ELM_ERR_INVALID_ARGUMENT);
  EXPECT(elm_job_create("{\"colour\": 1}", &job) == ELM_ERR_INVALID_ARGUMENT);
}

static void test_run(void) {
  elm_job* job = NULL;
  int streamed = 0;
  char* out = NULL;
  EXPECT(elm_job_create(job_json(""), &job) == ELM_OK);
  EXPECT(elm_job_outcome(job, &out) == ELM_ERR_STATE);
  EXPECT(elm_job_run(job, count_result, &streamed) == ELM_OK);
  EXPECT(streamed == 4);
  EXPECT(elm_job_run(job, NULL, NULL) == ELM_ERR_STATE);

  EXPECT(elm_job_outcome(job, &out) == ELM_OK);
  EXPECT(strstr(out, "\"partial\":false") != NULL);
  elm_string_free(out);

  EXPECT(elm_job_export(job, "manchester", &out) == ELM_OK);
  EXPECT(strcmp(out,
                "dbo:Book SubClassOf: dbo:Book and dbo:CreativeWork and dbp:language value \"English\" and "
                "dct:subject some skos:Concept\n") == 0);
  elm_string_free(out);

  EXPECT(elm_job_export(job, "shacl-turtle", &out) == ELM_OK);
  EXPECT(strstr(out, "sh:qualifiedMinCount 1") != NULL);
  elm_string_free(out);

  EXPECT(elm_job_export(job, "rdf/xml", &out) == ELM_ERR_INVALID_ARGUMENT);
  elm_job_free(job);
}

static void test_cancel_before_run(void) {
  elm_job* job = NULL;
  char* out = NULL;
  EXPECT(elm_job_create(job_json(""), &job) == ELM_OK);
  elm_job_cancel(job);
  EXPECT(elm_job_run(job, NULL, NULL) == ELM_OK);
  EXPECT(elm_job_outcome(job, &out) == ELM_OK);
  EXPECT(strstr(out, "\"partial\":true") != NULL);
  EXPECT(strstr(out, "\"stopReason\":\"cancelled\"") != NULL);
  elm_string_free(out);
  elm_job_free(job);
}

static void test_fetch_failure(void) {
  elm_job* job = NULL;
  EXPECT(elm_job_create("{\"endpointUrl\": \"http://127.0.0.1:1/sparql\", \"classIri\": \"http://a.org/C\", "
                        "\"maxRetries\": 0, \"timeout\": 1}",
                        &job) == ELM_OK);
  EXPECT(elm_job_run(job, NULL, NULL) == ELM_ERR_FETCH);
  EXPECT(strstr(elm_last_error(), "fetch failed") != NULL);
  elm_job_free(job);
}

static void test_patterns(void) {
  char* out = NULL;
  EXPECT(elm_pattern_canonicalize("ex:B and ex:A", "{\"ex\": \"http://example.org/\"}", &out) == ELM_OK);
  EXPECT(strcmp(out, "ex:A and ex:B") == 0);
  elm_string_free(out);
  EXPECT(elm_pattern_canonicalize("ex:A and", "{\"ex\": \"http://example.org/\"}", &out) == ELM_ERR_PARSE);
  EXPECT(elm_pattern_to_shacl("ex:p some ex:C", "{\"ex\": \"http://example.org/\"}", &out) == ELM_OK);
  EXPECT(strstr(out, "sh:qualifiedValueShape") != NULL);
  elm_string_free(out);
}

static void test_fixture_and_service(void) {
  elm_fixture* fx = NULL;
  elm_service* svc = NULL;
  char path[512];
  snprintf(path, sizeof path, "%s/books.ttl", ELM_TEST_DATA);
  EXPECT(elm_fixture_start(path, &fx) == ELM_OK);
  EXPECT(strncmp(elm_fixture_url(fx), "http://127.0.0.1:", 17) == 0);
  EXPECT(elm_fixture_query_count(fx) == 0);
  elm_fixture_stop(fx);
  EXPECT(elm_fixture_start("/nonexistent.ttl", &fx) != ELM_OK);

  EXPECT(elm_service_start("{\"port\": 0, \"dataDir\": \"capi-test-data\"}", &svc) == ELM_OK);
  EXPECT(elm_service_port(svc) > 0);
  elm_service_stop(svc);
  EXPECT(elm_service_start("{\"port\": -4}", &svc) == ELM_ERR_INVALID_ARGUMENT);
}

int main(void) {
  EXPECT(strcmp(elm_version(), "0.1.0") == 0);
  test_errors();
  test_run();
  test_cancel_before_run();
  test_fetch_failure();
  test_patterns();
  test_fixture_and_service();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
