#pragma once

// Serialization for the command line: JSON orbit traces, aligned text
// tables, and DOT / JSON digraph exports.

#include <optional>
#include <string>
#include <vector>

#include "sandlab/parallel.hpp"
#include "sandlab/sequential.hpp"

namespace sandlab {

struct StepRecord {
  std::size_t t = 0;
  Cell offset = 0;
  std::vector<Count> values;
  Count total = 0;
  bool operator==(const StepRecord&) const = default;
};

/// Format-level view of an orbit trace. Schema:
///   {"rule":{"kind","neighborhood","distribution","theta"},
///    "steps":[{"t","offset","values","total"}],
///    "equilibrium","transient_time" (int or null),"step_cap_reached"}
struct TraceDocument {
  std::string kind;
  std::vector<Cell> neighborhood;
  std::vector<Count> distribution;
  Count theta = 0;
  std::vector<StepRecord> steps;
  bool equilibrium = false;
  std::optional<std::size_t> transient_time;
  bool step_cap_reached = false;

  bool operator==(const TraceDocument&) const = default;
};

TraceDocument make_trace_document(const OrbitTrace<Configuration>& trace);
TraceDocument make_trace_document(const OrbitTrace<HeightProfile>& trace);

std::string trace_to_json(const TraceDocument& doc, int indent = 2);
/// Throws Error(kParseError) on malformed or schema-violating input.
TraceDocument trace_from_json(const std::string& text);

/// One row per step over the union window, e.g. "t=1  0,0|7,2,4,1,0  N=14".
std::string trace_to_table(const TraceDocument& doc);

std::string digraph_to_dot(const TransitionDigraph& d);
std::string digraph_to_json(const TransitionDigraph& d, int indent = 2);

}  // namespace sandlab
