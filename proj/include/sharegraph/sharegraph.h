/* C interface to the sharegraph library.
 *
 * Objects are opaque handles released with the matching *_free call.
 * Functions return an sg_status; on failure sg_last_error() describes the
 * problem (per thread, valid until the next call on that thread). Strings
 * returned through char** out-parameters are owned by the caller and
 * released with sg_string_free. Structured results are JSON documents. */
#ifndef SHAREGRAPH_H
#define SHAREGRAPH_H

#include <stddef.h>

#if defined(_WIN32)
#define SG_API __declspec(dllexport)
#else
#define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_ARGUMENT = 1,     /* null pointer or bad option value */
  SG_ERR_PARSE = 2,        /* syntax error in TRS, term or JSON text */
  SG_ERR_INVALID = 3,      /* well-formed input violating a rule of the format */
  SG_ERR_PRECONDITION = 4, /* operation not applicable to its arguments */
  SG_ERR_CAPACITY = 5,     /* an enumeration or size cap was exceeded */
  SG_ERR_IO = 6,
  SG_ERR_INTERNAL = 7
} sg_status;

typedef struct sg_trs sg_trs;
typedef struct sg_graph sg_graph;

typedef enum sg_strategy {
  SG_LEFTMOST_INNERMOST = 0,
  SG_LEFTMOST_OUTERMOST = 1,
  SG_FIRST_FOUND = 2,
  SG_EXHAUSTIVE = 3
} sg_strategy;

typedef struct sg_normalize_options {
  sg_strategy strategy;
  size_t fuel;
  size_t max_states; /* breadth cap for SG_EXHAUSTIVE */
  int keep_snapshots;
  int fold;   /* 0 disables folding below the redex */
  int unfold; /* 0 disables unfolding above the redex */
} sg_normalize_options;

typedef struct sg_explore_options {
  size_t fuel;
  size_t max_states;
  int innermost; /* follow only the leftmost innermost redex position */
  size_t jobs;
  int fold;
  int unfold;
} sg_explore_options;

typedef struct sg_adequacy_options {
  size_t depth;
  size_t max_states;
  int fold;
  int unfold;
} sg_adequacy_options;

SG_API const char* sg_version(void);
SG_API const char* sg_last_error(void);
SG_API const char* sg_status_name(sg_status status);
SG_API void sg_string_free(char* s);

SG_API void sg_normalize_options_init(sg_normalize_options* options);
SG_API void sg_explore_options_init(sg_explore_options* options);
SG_API void sg_adequacy_options_init(sg_adequacy_options* options);
/* "li", "lo", "ff", "ex" or the long names. */
SG_API sg_status sg_strategy_parse(const char* name, sg_strategy* out);

/* Rewrite systems. */
SG_API sg_status sg_trs_parse(const char* text, sg_trs** out);
SG_API sg_status sg_trs_load(const char* path, sg_trs** out);
/* The shipped satisfiability system. */
SG_API sg_status sg_trs_rsat(sg_trs** out);
SG_API void sg_trs_free(sg_trs* trs);
SG_API sg_status sg_trs_print(const sg_trs* trs, char** out);
/* {rules:[...], defined:[{name,arity}], constructors:[...], delta} */
SG_API sg_status sg_trs_info(const sg_trs* trs, char** out);

/* Term graphs. */
SG_API sg_status sg_graph_from_term(const sg_trs* trs, const char* term, int shared, sg_graph** out);
SG_API sg_status sg_graph_from_json(const char* json, sg_graph** out);
SG_API void sg_graph_free(sg_graph* graph);
SG_API sg_status sg_graph_term(const sg_graph* graph, char** out);
SG_API sg_status sg_graph_json(const sg_graph* graph, char** out);
SG_API sg_status sg_graph_dot(const sg_graph* graph, char** out);
SG_API sg_status sg_graph_dump(const sg_graph* graph, char** out);
SG_API sg_status sg_graph_size(const sg_graph* graph, size_t* out);
/* Positions are arrays of 1-based argument indices. */
SG_API sg_status sg_graph_unfold_above(const sg_graph* graph, const size_t* pos, size_t len, sg_graph** out,
                                       size_t* steps);
SG_API sg_status sg_graph_fold_below(const sg_graph* graph, const size_t* pos, size_t len, sg_graph** out,
                                     size_t* steps);
SG_API sg_status sg_graph_isomorphic(const sg_graph* a, const sg_graph* b, int* out);

/* Rewriting. */
/* Trace JSON; a run out of fuel still succeeds, with fuel_exhausted set. */
SG_API sg_status sg_normalize(const sg_trs* trs, const sg_graph* start, const sg_normalize_options* options,
                              char** trace);
/* Verdict list JSON for a trace; *ok is 1 iff every check holds. */
SG_API sg_status sg_audit_trace(const char* trace, size_t delta, char** verdicts, int* ok);
/* {normal_forms:[...], complete, states, max_depth} */
SG_API sg_status sg_normal_forms(const sg_trs* trs, const sg_graph* start, const sg_explore_options* options,
                                 char** out);
/* {passed, truncated, graphs_checked, positions_checked, steps_audited,
 *  bound_violations, counterexample} */
SG_API sg_status sg_adequacy(const sg_trs* trs, const char* term, const sg_adequacy_options* options, char** out);
/* {accepted:[...], rejected:[...], stuck:[...], complete, states}
 * NULL options explore every redex (full mode); the satisfiability system
 * needs innermost = 1, see the README. */
SG_API sg_status sg_compute(const sg_trs* trs, const char* entry, const char* const* na, size_t na_count,
                            const char* value, const sg_explore_options* options, char** out);
/* [{size, basic_terms, max_length|null}] */
SG_API sg_status sg_runtime_complexity(const sg_trs* trs, size_t n, size_t fuel, size_t max_terms, char** out);

/* Satisfiability encoding. num_vars 0 means the largest variable used. */
SG_API sg_status sg_encode_cnf(const char* dimacs, size_t num_vars, char** term);
/* JSON array of signed variable indices, or an error if `term` is not a
 * literal list. */
SG_API sg_status sg_decode_literals(const char* term, size_t num_vars, char** out);

#ifdef __cplusplus
}
#endif

#endif
