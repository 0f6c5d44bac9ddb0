#include "sandlab/trace_io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "sandlab/literal.hpp"

namespace sandlab {
namespace {

using nlohmann::json;

template <class State>
TraceDocument make_doc(const OrbitTrace<State>& trace) {
  TraceDocument doc;
  doc.kind = std::string(rule_kind_name(trace.rule.kind()));
  doc.neighborhood = trace.rule.neighborhood();
  doc.distribution = trace.rule.weights();
  doc.theta = trace.rule.threshold();
  for (std::size_t t = 0; t < trace.states.size(); ++t) {
    const State& s = trace.states[t];
    doc.steps.push_back(
        {t, s.offset(), std::vector<Count>(s.values().begin(), s.values().end()), trace.totals[t]});
  }
  doc.equilibrium = trace.reached_equilibrium;
  doc.transient_time = trace.transient_time;
  doc.step_cap_reached = trace.step_cap_reached();
  return doc;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + '"';
}

}  // namespace

TraceDocument make_trace_document(const OrbitTrace<Configuration>& trace) { return make_doc(trace); }
TraceDocument make_trace_document(const OrbitTrace<HeightProfile>& trace) { return make_doc(trace); }

std::string trace_to_json(const TraceDocument& doc, int indent) {
  json steps = json::array();
  for (const StepRecord& s : doc.steps) {
    steps.push_back({{"t", s.t}, {"offset", s.offset}, {"values", s.values}, {"total", s.total}});
  }
  json j;
  j["rule"] = {{"kind", doc.kind},
               {"neighborhood", doc.neighborhood},
               {"distribution", doc.distribution},
               {"theta", doc.theta}};
  j["steps"] = std::move(steps);
  j["equilibrium"] = doc.equilibrium;
  j["transient_time"] = doc.transient_time ? json(*doc.transient_time) : json(nullptr);
  j["step_cap_reached"] = doc.step_cap_reached;
  return j.dump(indent);
}

TraceDocument trace_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    TraceDocument doc;
    const json& rule = j.at("rule");
    doc.kind = rule.at("kind").get<std::string>();
    doc.neighborhood = rule.at("neighborhood").get<std::vector<Cell>>();
    doc.distribution = rule.at("distribution").get<std::vector<Count>>();
    doc.theta = rule.at("theta").get<Count>();
    for (const json& s : j.at("steps")) {
      doc.steps.push_back({s.at("t").get<std::size_t>(), s.at("offset").get<Cell>(),
                           s.at("values").get<std::vector<Count>>(), s.at("total").get<Count>()});
    }
    doc.equilibrium = j.at("equilibrium").get<bool>();
    const json& tt = j.at("transient_time");
    if (!tt.is_null()) doc.transient_time = tt.get<std::size_t>();
    doc.step_cap_reached = j.at("step_cap_reached").get<bool>();
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("trace json: ") + e.what());
  }
}

std::string trace_to_table(const TraceDocument& doc) {
  const bool signed_entries = doc.kind == rule_kind_name(RuleKind::kHeightDiff);
  LatticeWindow w;
  for (const StepRecord& s : doc.steps) {
    if (s.values.empty()) continue;
    w = w.merged({s.offset, s.offset + static_cast<Cell>(s.values.size()) - 1});
  }
  // One empty cell of margin on each side, as in hand-written tables.
  w = w.widened(1);

  std::ostringstream os;
  const std::size_t t_width = std::to_string(doc.steps.empty() ? 0 : doc.steps.size() - 1).size();
  for (const StepRecord& s : doc.steps) {
    std::string row;
    if (signed_entries) {
      row = to_literal(HeightProfile::normalize(s.values, s.offset), w);
    } else {
      row = to_literal(Configuration::normalize(s.values, s.offset), w);
    }
    std::string t = std::to_string(s.t);
    t.insert(0, t_width - t.size(), ' ');
    os << "t=" << t << "  " << row << "  " << (signed_entries ? "sum=" : "N=") << s.total << '\n';
  }
  return os.str();
}

std::string digraph_to_dot(const TransitionDigraph& d) {
  std::vector<bool> eq(d.nodes.size(), false);
  for (std::size_t e : d.equilibria) eq[e] = true;

  std::ostringstream os;
  os << "digraph sandlab {\n  rankdir=TB;\n  node [shape=circle];\n";
  if (d.node_cap_reached || d.depth_cap_reached) os << "  // truncated by node or depth cap\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const std::string lit = to_literal(d.nodes[i]);
    os << "  " << quoted(lit);
    if (eq[i]) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const DigraphEdge& e : d.edges) {
    os << "  " << quoted(to_literal(d.nodes[e.from])) << " -> " << quoted(to_literal(d.nodes[e.to]))
       << " [label=" << quoted(to_string(e.move)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string digraph_to_json(const TransitionDigraph& d, int indent) {
  json nodes = json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    nodes.push_back({{"id", i},
                     {"literal", to_literal(d.nodes[i])},
                     {"offset", d.nodes[i].offset()},
                     {"values", std::vector<Count>(d.nodes[i].values().begin(), d.nodes[i].values().end())},
                     {"level", d.levels[i]}});
  }
  json edges = json::array();
  for (const DigraphEdge& e : d.edges) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"rule", std::string(to_string(e.move.rule))},
                     {"site", e.move.site}});
  }
  json j;
  j["root"] = to_literal(d.root);
  j["rules"] = to_string(d.policy.enabled);
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  j["equilibria"] = d.equilibria;
  j["node_cap_reached"] = d.node_cap_reached;
  j["depth_cap_reached"] = d.depth_cap_reached;
  return j.dump(indent);
}

}  // namespace sandlab
