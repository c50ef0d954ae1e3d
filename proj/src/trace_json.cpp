#include <json.hpp>

#include "sharegraph/engine.hpp"
#include "sharegraph/errors.hpp"

namespace sharegraph {
namespace {

using nlohmann::json;

json graph_json(const TermGraph& g) {
  json nodes = json::array();
  for (const auto& spec : g.specs()) {
    json succ = json::array();
    for (NodeId v : spec.succ) succ.push_back(v.value);
    nodes.push_back({{"id", spec.id.value}, {"label", spec.label.name()}, {"var", spec.label.is_var}, {"succ", succ}});
  }
  return {{"term", to_string(read_term(g))}, {"root", g.root().value}, {"nodes", nodes}};
}

TermGraph graph_of(const json& j) {
  std::vector<NodeSpec> specs;
  for (const auto& n : j.at("nodes")) {
    NodeSpec spec;
    spec.id = NodeId{n.at("id").get<std::uint32_t>()};
    const auto name = n.at("label").get<std::string>();
    spec.label = n.value("var", false) ? Label::var(name) : Label::fun(name);
    for (const auto& v : n.at("succ")) spec.succ.push_back(NodeId{v.get<std::uint32_t>()});
    specs.push_back(std::move(spec));
  }
  return TermGraph::from_specs(NodeId{j.at("root").get<std::uint32_t>()}, specs);
}

json step_json(const StepRecord& r) {
  const StepAudit& a = r.audit;
  return {{"pos", std::vector<std::size_t>(r.position.indices().begin(), r.position.indices().end())},
          {"rule", r.rule + 1},
          {"copies", a.copies},
          {"collapses", a.collapses},
          {"size_before", a.size_before},
          {"size_after", a.size_after},
          {"depth_before", a.depth_before},
          {"depth_after", a.depth_after},
          {"size_unfolded", a.size_unfolded},
          {"size_folded", a.size_folded},
          {"redex_subgraph", a.redex_subgraph},
          {"rsize_before", r.rsize_before},
          {"rsize_after", r.rsize_after},
          {"bounds_ok", r.bounds_ok}};
}

StepRecord step_of(const json& j) {
  StepRecord r;
  r.position = Position(j.at("pos").get<std::vector<std::size_t>>());
  const auto rule = j.at("rule").get<std::size_t>();
  if (rule == 0) throw ValidationError("trace: rule numbers start at 1");
  r.rule = rule - 1;
  StepAudit& a = r.audit;
  a.copies = j.at("copies").get<std::size_t>();
  a.collapses = j.at("collapses").get<std::size_t>();
  a.size_before = j.at("size_before").get<std::size_t>();
  a.size_after = j.at("size_after").get<std::size_t>();
  a.depth_after = j.at("depth_after").get<std::size_t>();
  a.depth_before = j.value("depth_before", std::size_t{0});
  a.size_unfolded = j.value("size_unfolded", std::size_t{0});
  a.size_folded = j.value("size_folded", std::size_t{0});
  a.redex_subgraph = j.value("redex_subgraph", std::size_t{0});
  r.rsize_before = j.value("rsize_before", representation_size(a.size_before));
  r.rsize_after = j.at("rsize_after").get<std::size_t>();
  r.bounds_ok = j.at("bounds_ok").get<bool>();
  return r;
}

}  // namespace

std::string graph_to_json(const TermGraph& g, int indent) { return graph_json(g).dump(indent); }

TermGraph graph_from_json(std::string_view text) {
  try {
    return graph_of(json::parse(text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph json: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ValidationError(std::string("graph json: ") + e.what());
  }
}

std::string trace_to_json(const DerivationTrace& trace, int indent) {
  json steps = json::array();
  for (const auto& r : trace.steps) steps.push_back(step_json(r));
  json j = {{"initial", graph_json(trace.initial)},
            {"steps", steps},
            {"final", graph_json(trace.final)},
            {"normal_form", trace.normal_form},
            {"fuel_exhausted", trace.fuel_exhausted}};
  if (!trace.snapshots.empty()) {
    json snaps = json::array();
    for (const auto& g : trace.snapshots) snaps.push_back(graph_json(g));
    j["snapshots"] = snaps;
  }
  return j.dump(indent);
}

DerivationTrace trace_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    DerivationTrace trace;
    trace.initial = graph_of(j.at("initial"));
    for (const auto& s : j.at("steps")) trace.steps.push_back(step_of(s));
    trace.final = graph_of(j.at("final"));
    trace.normal_form = j.at("normal_form").get<bool>();
    trace.fuel_exhausted = j.value("fuel_exhausted", false);
    if (j.contains("snapshots"))
      for (const auto& g : j.at("snapshots")) trace.snapshots.push_back(graph_of(g));
    return trace;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("trace json: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ValidationError(std::string("trace json: ") + e.what());
  }
}

}  // namespace sharegraph
