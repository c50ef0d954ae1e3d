#include "sharegraph/sharegraph.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sharegraph/computation.hpp"
#include "sharegraph/errors.hpp"

struct sg_trs {
  sharegraph::Trs trs;
  sharegraph::Grs grs;
};

struct sg_graph {
  sharegraph::TermGraph graph;
};

namespace {

using namespace sharegraph;
using nlohmann::json;

thread_local std::string last_error;

struct ArgumentError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

template <typename F>
sg_status api(F&& body) {
  try {
    body();
    last_error.clear();
    return SG_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return SG_ERR_ARGUMENT;
  } catch (const IoError& e) {
    last_error = e.what();
    return SG_ERR_IO;
  } catch (const ParseError& e) {
    last_error = e.what();
    return SG_ERR_PARSE;
  } catch (const ValidationError& e) {
    last_error = e.what();
    return SG_ERR_INVALID;
  } catch (const PreconditionError& e) {
    last_error = e.what();
    return SG_ERR_PRECONDITION;
  } catch (const CapacityError& e) {
    last_error = e.what();
    return SG_ERR_CAPACITY;
  } catch (const json::exception& e) {
    last_error = e.what();
    return SG_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SG_ERR_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SG_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw ArgumentError(std::string(name) + " is null");
}

void emit(char** out, const std::string& s) {
  char* copy = static_cast<char*>(std::malloc(s.size() + 1));
  if (!copy) throw std::bad_alloc();
  std::memcpy(copy, s.c_str(), s.size() + 1);
  *out = copy;
}

Position position_of(const std::size_t* pos, std::size_t len) {
  if (len > 0) require(pos, "pos");
  return Position(std::vector<std::size_t>(pos, pos + len));
}

StepOptions step_options(int fold, int unfold) {
  StepOptions o;
  o.fold = fold != 0;
  o.unfold = unfold != 0;
  return o;
}

ExploreOptions explore_options(const sg_explore_options* o) {
  sg_explore_options d;
  sg_explore_options_init(&d);
  if (!o) o = &d;
  ExploreOptions out;
  out.fuel = o->fuel;
  out.max_states = o->max_states;
  out.mode = o->innermost ? Exploration::innermost : Exploration::full;
  out.jobs = o->jobs == 0 ? 1 : o->jobs;
  out.step = step_options(o->fold, o->unfold);
  return out;
}

json fun_syms(const std::vector<FunSym>& syms) {
  json out = json::array();
  for (const auto& f : syms) out.push_back({{"name", f.name()}, {"arity", f.arity}});
  return out;
}

json term_list(const std::vector<Term>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(to_string(t));
  return out;
}

sg_trs* make_trs(Trs trs) {
  Grs grs = compile_trs(trs);
  return new sg_trs{std::move(trs), std::move(grs)};
}

}  // namespace

extern "C" {

const char* sg_version(void) { return "0.1.0"; }
const char* sg_last_error(void) { return last_error.c_str(); }

const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "ok";
    case SG_ERR_ARGUMENT: return "argument error";
    case SG_ERR_PARSE: return "parse error";
    case SG_ERR_INVALID: return "invalid input";
    case SG_ERR_PRECONDITION: return "precondition violated";
    case SG_ERR_CAPACITY: return "capacity exceeded";
    case SG_ERR_IO: return "i/o error";
    case SG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sg_string_free(char* s) { std::free(s); }

void sg_normalize_options_init(sg_normalize_options* o) {
  if (o) *o = {SG_LEFTMOST_INNERMOST, 10'000, 200'000, 0, 1, 1};
}

void sg_explore_options_init(sg_explore_options* o) {
  if (o) *o = {10'000, 200'000, 0, 1, 1, 1};
}

void sg_adequacy_options_init(sg_adequacy_options* o) {
  if (o) *o = {3, 5'000, 1, 1};
}

sg_status sg_strategy_parse(const char* name, sg_strategy* out) {
  return api([&] {
    require(name, "name");
    require(out, "out");
    auto s = parse_strategy(name);
    if (!s) throw ArgumentError(std::string("unknown strategy: ") + name);
    *out = static_cast<sg_strategy>(*s);
  });
}

sg_status sg_trs_parse(const char* text, sg_trs** out) {
  return api([&] {
    require(text, "text");
    require(out, "out");
    *out = make_trs(parse_trs(text));
  });
}

sg_status sg_trs_load(const char* path, sg_trs** out) {
  return api([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    *out = make_trs(parse_trs(text.str()));
  });
}

sg_status sg_trs_rsat(sg_trs** out) {
  return api([&] {
    require(out, "out");
    *out = make_trs(load_rsat().trs);
  });
}

void sg_trs_free(sg_trs* trs) { delete trs; }

sg_status sg_trs_print(const sg_trs* trs, char** out) {
  return api([&] {
    require(trs, "trs");
    require(out, "out");
    emit(out, print_trs(trs->trs));
  });
}

sg_status sg_trs_info(const sg_trs* trs, char** out) {
  return api([&] {
    require(trs, "trs");
    require(out, "out");
    json rules = json::array();
    for (const auto& r : trs->trs.rules()) rules.push_back(to_string(r));
    json j = {{"rules", rules},
              {"defined", fun_syms(trs->trs.defined_symbols())},
              {"constructors", fun_syms(trs->trs.constructors())},
              {"delta", trs->grs.delta()}};
    emit(out, j.dump());
  });
}

sg_status sg_graph_from_term(const sg_trs* trs, const char* term, int shared, sg_graph** out) {
  return api([&] {
    require(trs, "trs");
    require(term, "term");
    require(out, "out");
    const Term t = parse_term(term, trs->trs);
    *out = new sg_graph{shared ? mk_shared(t) : mk_tree(t)};
  });
}

sg_status sg_graph_from_json(const char* text, sg_graph** out) {
  return api([&] {
    require(text, "json");
    require(out, "out");
    *out = new sg_graph{graph_from_json(text)};
  });
}

void sg_graph_free(sg_graph* graph) { delete graph; }

sg_status sg_graph_term(const sg_graph* graph, char** out) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    emit(out, to_string(read_term(graph->graph)));
  });
}

sg_status sg_graph_json(const sg_graph* graph, char** out) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    emit(out, graph_to_json(graph->graph));
  });
}

sg_status sg_graph_dot(const sg_graph* graph, char** out) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    emit(out, to_dot(graph->graph));
  });
}

sg_status sg_graph_dump(const sg_graph* graph, char** out) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    emit(out, dump_text(graph->graph));
  });
}

sg_status sg_graph_size(const sg_graph* graph, size_t* out) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    *out = graph->graph.size();
  });
}

sg_status sg_graph_unfold_above(const sg_graph* graph, const size_t* pos, size_t len, sg_graph** out,
                                size_t* steps) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    auto r = unfold_above(graph->graph, position_of(pos, len));
    if (steps) *steps = r.steps.size();
    *out = new sg_graph{std::move(r.graph)};
  });
}

sg_status sg_graph_fold_below(const sg_graph* graph, const size_t* pos, size_t len, sg_graph** out,
                              size_t* steps) {
  return api([&] {
    require(graph, "graph");
    require(out, "out");
    auto r = fold_below(graph->graph, position_of(pos, len));
    if (steps) *steps = r.steps.size();
    *out = new sg_graph{std::move(r.graph)};
  });
}

sg_status sg_graph_isomorphic(const sg_graph* a, const sg_graph* b, int* out) {
  return api([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = is_isomorphic(a->graph, b->graph) ? 1 : 0;
  });
}

sg_status sg_normalize(const sg_trs* trs, const sg_graph* start, const sg_normalize_options* options, char** trace) {
  return api([&] {
    require(trs, "trs");
    require(start, "start");
    require(trace, "trace");
    sg_normalize_options d;
    sg_normalize_options_init(&d);
    if (!options) options = &d;
    if (options->strategy < SG_LEFTMOST_INNERMOST || options->strategy > SG_EXHAUSTIVE)
      throw ArgumentError("unknown strategy");
    NormalizeOptions o;
    o.strategy = static_cast<Strategy>(options->strategy);
    o.fuel = options->fuel;
    o.max_states = options->max_states;
    o.keep_snapshots = options->keep_snapshots != 0;
    o.step = step_options(options->fold, options->unfold);
    emit(trace, trace_to_json(normalize(trs->grs, start->graph, o)));
  });
}

sg_status sg_audit_trace(const char* trace, size_t delta, char** verdicts, int* ok) {
  return api([&] {
    require(trace, "trace");
    const auto v = audit_bounds(trace_from_json(trace), delta);
    if (ok) *ok = all_ok(v) ? 1 : 0;
    if (verdicts) {
      json out = json::array();
      for (const auto& x : v)
        out.push_back({{"step", x.step}, {"check", x.check}, {"value", x.value}, {"bound", x.bound}, {"ok", x.ok}});
      emit(verdicts, out.dump());
    }
  });
}

sg_status sg_normal_forms(const sg_trs* trs, const sg_graph* start, const sg_explore_options* options, char** out) {
  return api([&] {
    require(trs, "trs");
    require(start, "start");
    require(out, "out");
    const auto r = all_normal_forms(trs->grs, start->graph, explore_options(options));
    json forms = json::array();
    for (const auto& [t, g] : r.forms) forms.push_back(to_string(t));
    json j = {{"normal_forms", forms}, {"complete", r.complete}, {"states", r.states}, {"max_depth", r.max_depth}};
    emit(out, j.dump());
  });
}

sg_status sg_adequacy(const sg_trs* trs, const char* term, const sg_adequacy_options* options, char** out) {
  return api([&] {
    require(trs, "trs");
    require(term, "term");
    require(out, "out");
    sg_adequacy_options d;
    sg_adequacy_options_init(&d);
    if (!options) options = &d;
    AdequacyOptions o;
    o.depth = options->depth;
    o.max_states = options->max_states;
    o.step = step_options(options->fold, options->unfold);
    const auto r = adequacy_check(trs->trs, parse_term(term, trs->trs), o);
    json j = {{"passed", r.passed},
              {"truncated", r.truncated},
              {"graphs_checked", r.graphs_checked},
              {"positions_checked", r.positions_checked},
              {"steps_audited", r.steps_audited},
              {"bound_violations", r.bound_violations},
              {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}};
    emit(out, j.dump());
  });
}

sg_status sg_compute(const sg_trs* trs, const char* entry, const char* const* na, size_t na_count, const char* value,
                     const sg_explore_options* options, char** out) {
  return api([&] {
    require(trs, "trs");
    require(entry, "entry");
    require(value, "value");
    require(out, "out");
    if (na_count > 0) require(na, "na");
    std::vector<std::string> patterns;
    for (std::size_t i = 0; i < na_count; ++i) {
      require(na[i], "na pattern");
      patterns.emplace_back(na[i]);
    }
    ComputationSpec spec = make_spec(trs->trs, entry, patterns);
    spec.explore = explore_options(options);
    const auto r = compute(spec, parse_term(value, trs->trs));
    json j = {{"accepted", term_list(r.accepted)},
              {"rejected", term_list(r.rejected)},
              {"stuck", term_list(r.stuck)},
              {"complete", r.complete},
              {"states", r.states}};
    emit(out, j.dump());
  });
}

sg_status sg_runtime_complexity(const sg_trs* trs, size_t n, size_t fuel, size_t max_terms, char** out) {
  return api([&] {
    require(trs, "trs");
    require(out, "out");
    SearchLimits limits;
    limits.fuel = fuel;
    json rows = json::array();
    for (const auto& row : runtime_complexity(trs->trs, n, limits, max_terms))
      rows.push_back({{"size", row.size},
                      {"basic_terms", row.basic_terms},
                      {"max_length", row.max_length ? json(*row.max_length) : json(nullptr)}});
    emit(out, rows.dump());
  });
}

sg_status sg_encode_cnf(const char* dimacs, size_t num_vars, char** term) {
  return api([&] {
    require(dimacs, "dimacs");
    require(term, "term");
    emit(term, to_string(encode_cnf(parse_dimacs(dimacs), num_vars)));
  });
}

sg_status sg_decode_literals(const char* term, size_t num_vars, char** out) {
  return api([&] {
    require(term, "term");
    require(out, "out");
    auto lits = decode_literals(parse_term(term, std::set<Symbol>{}), num_vars);
    if (!lits) throw ValidationError(std::string(term) + " is not a list of literals");
    emit(out, json(*lits).dump());
  });
}

}  // extern "C"
