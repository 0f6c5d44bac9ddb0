// extern "C" wrappers. Exceptions never cross this boundary: each entry point
// catches, records the message in a thread-local slot and returns a status.

#include "sandlab/sandlab.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "sandlab/literal.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/sequential.hpp"
#include "sandlab/trace_io.hpp"
#include "sandlab/verify.hpp"

struct sandlab_config {
  sandlab::Configuration value;
};

struct sandlab_rule {
  sandlab::RuleSpec value;
};

struct sandlab_trace {
  sandlab::TraceDocument doc;
};

struct sandlab_digraph {
  sandlab::TransitionDigraph value;
};

struct sandlab_decomposition {
  sandlab::DecompositionResult value;
};

namespace {

thread_local std::string g_error;
thread_local std::int64_t g_error_offset = -1;

sandlab_status status_of(sandlab::ErrorCode code) {
  using sandlab::ErrorCode;
  switch (code) {
    case ErrorCode::kNegativeValue: return SANDLAB_ERR_NEGATIVE_VALUE;
    case ErrorCode::kParseError: return SANDLAB_ERR_PARSE;
    case ErrorCode::kMultipleOrigins: return SANDLAB_ERR_MULTIPLE_ORIGINS;
    case ErrorCode::kUnrepresentable: return SANDLAB_ERR_UNREPRESENTABLE;
    case ErrorCode::kInapplicableMove: return SANDLAB_ERR_INAPPLICABLE_MOVE;
    case ErrorCode::kNegativityWitness: return SANDLAB_ERR_NEGATIVITY_WITNESS;
    case ErrorCode::kNotOrderedPartition: return SANDLAB_ERR_NOT_ORDERED_PARTITION;
    case ErrorCode::kBoundExceeded: return SANDLAB_ERR_BOUND_EXCEEDED;
    case ErrorCode::kInvalidRule: return SANDLAB_ERR_INVALID_RULE;
    case ErrorCode::kInvalidArgument: return SANDLAB_ERR_INVALID_ARGUMENT;
  }
  return SANDLAB_ERR_INTERNAL;
}

sandlab_status fail(sandlab_status s, std::string msg, std::int64_t offset = -1) {
  g_error = std::move(msg);
  g_error_offset = offset;
  return s;
}

template <class F>
sandlab_status guarded(F&& body) {
  g_error.clear();
  g_error_offset = -1;
  try {
    body();
    return SANDLAB_OK;
  } catch (const sandlab::Error& e) {
    return fail(status_of(e.code()), e.what(), e.byte_offset());
  } catch (const std::bad_alloc&) {
    return fail(SANDLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SANDLAB_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

#define SANDLAB_REQUIRE(...)                                          \
  do {                                                                \
    if (!(__VA_ARGS__)) return fail(SANDLAB_ERR_NULL_ARGUMENT, "null argument"); \
  } while (0)

sandlab::RulesetPolicy to_policy(const sandlab_policy* p) {
  sandlab::RulesetPolicy out;
  if (!p) return out;
  out.enabled = sandlab::RuleMask(p->rules);
  switch (p->hr_convention) {
    case SANDLAB_HR_SUMMARY_STRICT: out.hr_convention = sandlab::HrConvention::kSummaryStrict; break;
    case SANDLAB_HR_OFF: out.hr_convention = sandlab::HrConvention::kOff; break;
    default: out.hr_convention = sandlab::HrConvention::kNoHeightOne; break;
  }
  out.bt_height_floor = p->bt_height_floor;
  out.quotient_translations = p->quotient_translations != 0;
  return out;
}

std::string path_text(const sandlab::MovePath& path) {
  std::string out;
  for (const auto& m : path) {
    if (!out.empty()) out += ' ';
    out += sandlab::to_string(m);
  }
  return out;
}

std::string state_literal(const sandlab::TraceDocument& doc, std::size_t step) {
  const auto& s = doc.steps.at(step);
  if (doc.kind == sandlab::rule_kind_name(sandlab::RuleKind::kHeightDiff)) {
    return sandlab::to_literal(sandlab::HeightProfile::normalize(s.values, s.offset));
  }
  return sandlab::to_literal(sandlab::Configuration::normalize(s.values, s.offset));
}

}  // namespace

extern "C" {

const char* sandlab_version(void) { return "0.1.0"; }

const char* sandlab_status_name(sandlab_status status) {
  switch (status) {
    case SANDLAB_OK: return "OK";
    case SANDLAB_ERR_NEGATIVE_VALUE: return "NegativeValue";
    case SANDLAB_ERR_PARSE: return "ParseError";
    case SANDLAB_ERR_MULTIPLE_ORIGINS: return "MultipleOrigins";
    case SANDLAB_ERR_UNREPRESENTABLE: return "Unrepresentable";
    case SANDLAB_ERR_INAPPLICABLE_MOVE: return "InapplicableMove";
    case SANDLAB_ERR_NEGATIVITY_WITNESS: return "NegativityWitness";
    case SANDLAB_ERR_NOT_ORDERED_PARTITION: return "NotOrderedPartition";
    case SANDLAB_ERR_BOUND_EXCEEDED: return "BoundExceeded";
    case SANDLAB_ERR_INVALID_RULE: return "InvalidRule";
    case SANDLAB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SANDLAB_ERR_NULL_ARGUMENT: return "NullArgument";
    case SANDLAB_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* sandlab_last_error(void) { return g_error.c_str(); }
int64_t sandlab_last_error_offset(void) { return g_error_offset; }
void sandlab_string_free(char* s) { std::free(s); }

// ---- configurations

sandlab_status sandlab_config_parse(const char* literal, sandlab_config** out) {
  SANDLAB_REQUIRE(literal && out);
  *out = nullptr;
  return guarded([&] { *out = new sandlab_config{sandlab::parse_config_literal(literal)}; });
}

sandlab_status sandlab_config_from_values(const int64_t* values, size_t len, int64_t offset,
                                          sandlab_config** out) {
  SANDLAB_REQUIRE(out && (values || len == 0));
  *out = nullptr;
  return guarded([&] {
    std::vector<sandlab::Count> v(values, values + len);
    *out = new sandlab_config{sandlab::Configuration::normalize(std::move(v), offset)};
  });
}

void sandlab_config_free(sandlab_config* c) { delete c; }

sandlab_status sandlab_config_literal(const sandlab_config* c, char** out) {
  SANDLAB_REQUIRE(c && out);
  return guarded([&] { *out = dup(sandlab::to_literal(c->value)); });
}

int64_t sandlab_config_total(const sandlab_config* c) { return c ? c->value.sum() : 0; }
int64_t sandlab_config_offset(const sandlab_config* c) { return c ? c->value.offset() : 0; }
size_t sandlab_config_length(const sandlab_config* c) { return c ? c->value.values().size() : 0; }

size_t sandlab_config_values(const sandlab_config* c, int64_t* buf, size_t cap) {
  if (!c || !buf) return 0;
  const auto v = c->value.values();
  const size_t n = std::min(cap, v.size());
  std::copy_n(v.begin(), n, buf);
  return n;
}

int sandlab_config_equal(const sandlab_config* a, const sandlab_config* b) {
  return a && b && a->value == b->value;
}

int sandlab_config_is_gk_stable(const sandlab_config* c) { return c && sandlab::is_gk_stable(c->value); }
int sandlab_config_is_fp_stable(const sandlab_config* c) { return c && sandlab::is_fp_stable(c->value); }

// ---- parallel rules

sandlab_status sandlab_rule_create(const char* kind, const int64_t* neighborhood,
                                   size_t neighborhood_len, const int64_t* distribution,
                                   size_t distribution_len, sandlab_rule** out) {
  SANDLAB_REQUIRE(kind && out && (neighborhood || neighborhood_len == 0) &&
                  (distribution || distribution_len == 0));
  *out = nullptr;
  const auto k = sandlab::rule_kind_from_name(kind);
  if (!k) return fail(SANDLAB_ERR_INVALID_RULE, std::string("unknown rule kind '") + kind + "'");
  return guarded([&] {
    std::vector<sandlab::Cell> n(neighborhood, neighborhood + neighborhood_len);
    std::vector<sandlab::Count> d(distribution, distribution + distribution_len);
    *out = new sandlab_rule{sandlab::RuleSpec::make(*k, std::move(n), std::move(d))};
  });
}

void sandlab_rule_free(sandlab_rule* r) { delete r; }
int64_t sandlab_rule_threshold(const sandlab_rule* r) { return r ? r->value.threshold() : 0; }

sandlab_status sandlab_step(const sandlab_rule* r, const sandlab_config* c, sandlab_config** out) {
  SANDLAB_REQUIRE(r && c && out);
  *out = nullptr;
  return guarded([&] { *out = new sandlab_config{sandlab::step(c->value, r->value)}; });
}

sandlab_status sandlab_orbit_run(const sandlab_rule* r, const char* init_literal, size_t max_steps,
                                 sandlab_trace** out) {
  SANDLAB_REQUIRE(r && init_literal && out);
  *out = nullptr;
  return guarded([&] {
    if (r->value.kind() == sandlab::RuleKind::kHeightDiff) {
      const auto h0 = sandlab::parse_height_literal(init_literal);
      *out = new sandlab_trace{sandlab::make_trace_document(sandlab::orbit(h0, r->value, max_steps))};
    } else {
      const auto c0 = sandlab::parse_config_literal(init_literal);
      *out = new sandlab_trace{sandlab::make_trace_document(sandlab::orbit(c0, r->value, max_steps))};
    }
  });
}

void sandlab_trace_free(sandlab_trace* t) { delete t; }
size_t sandlab_trace_length(const sandlab_trace* t) { return t ? t->doc.steps.size() : 0; }
int sandlab_trace_reached_equilibrium(const sandlab_trace* t) { return t && t->doc.equilibrium; }

int64_t sandlab_trace_transient_time(const sandlab_trace* t) {
  if (!t || !t->doc.transient_time) return -1;
  return static_cast<int64_t>(*t->doc.transient_time);
}

int64_t sandlab_trace_total(const sandlab_trace* t, size_t step) {
  if (!t || step >= t->doc.steps.size()) return 0;
  return t->doc.steps[step].total;
}

sandlab_status sandlab_trace_state_literal(const sandlab_trace* t, size_t step, char** out) {
  SANDLAB_REQUIRE(t && out);
  if (step >= t->doc.steps.size()) return fail(SANDLAB_ERR_INVALID_ARGUMENT, "step out of range");
  return guarded([&] { *out = dup(state_literal(t->doc, step)); });
}

sandlab_status sandlab_trace_to_json(const sandlab_trace* t, char** out) {
  SANDLAB_REQUIRE(t && out);
  return guarded([&] { *out = dup(sandlab::trace_to_json(t->doc)); });
}

sandlab_status sandlab_trace_to_table(const sandlab_trace* t, char** out) {
  SANDLAB_REQUIRE(t && out);
  return guarded([&] { *out = dup(sandlab::trace_to_table(t->doc)); });
}

sandlab_status sandlab_trace_from_json(const char* json, sandlab_trace** out) {
  SANDLAB_REQUIRE(json && out);
  *out = nullptr;
  return guarded([&] { *out = new sandlab_trace{sandlab::trace_from_json(json)}; });
}

int sandlab_trace_equal(const sandlab_trace* a, const sandlab_trace* b) {
  return a && b && a->doc == b->doc;
}

// ---- sequential rules

sandlab_policy sandlab_policy_default(void) {
  return sandlab_policy{SANDLAB_ALL_RULES, SANDLAB_HR_NO_HEIGHT_ONE, 1, 0};
}

sandlab_status sandlab_rules_parse(const char* text, uint8_t* out) {
  SANDLAB_REQUIRE(text && out);
  return guarded([&] { *out = sandlab::parse_rule_mask(text).bits(); });
}

sandlab_status sandlab_digraph_explore(const sandlab_config* root, const sandlab_policy* policy,
                                       size_t node_cap, sandlab_digraph** out) {
  SANDLAB_REQUIRE(root && out);
  *out = nullptr;
  return guarded([&] {
    const size_t cap = node_cap == 0 ? sandlab::kDefaultNodeCap : node_cap;
    *out = new sandlab_digraph{sandlab::explore_digraph(root->value, to_policy(policy), cap)};
  });
}

void sandlab_digraph_free(sandlab_digraph* d) { delete d; }
size_t sandlab_digraph_node_count(const sandlab_digraph* d) { return d ? d->value.nodes.size() : 0; }
size_t sandlab_digraph_edge_count(const sandlab_digraph* d) { return d ? d->value.edges.size() : 0; }

size_t sandlab_digraph_equilibrium_count(const sandlab_digraph* d) {
  return d ? d->value.equilibria.size() : 0;
}

int sandlab_digraph_truncated(const sandlab_digraph* d) {
  return d && (d->value.node_cap_reached || d->value.depth_cap_reached);
}

sandlab_status sandlab_digraph_equilibrium_literal(const sandlab_digraph* d, size_t i, char** out) {
  SANDLAB_REQUIRE(d && out);
  if (i >= d->value.equilibria.size()) return fail(SANDLAB_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] { *out = dup(sandlab::to_literal(d->value.nodes[d->value.equilibria[i]])); });
}

sandlab_status sandlab_digraph_maximal_paths(const sandlab_digraph* d, uint64_t* path_count,
                                             size_t* lengths, size_t cap, size_t* n_lengths) {
  SANDLAB_REQUIRE(d && path_count && n_lengths && (lengths || cap == 0));
  return guarded([&] {
    const auto s = sandlab::maximal_paths(d->value);
    *path_count = s.path_count;
    *n_lengths = s.lengths.size();
    size_t i = 0;
    for (size_t len : s.lengths) {
      if (i == cap) break;
      lengths[i++] = len;
    }
  });
}

sandlab_status sandlab_digraph_paths(const sandlab_digraph* d, const sandlab_config* target,
                                     size_t max_paths, char** out) {
  SANDLAB_REQUIRE(d && target && out);
  return guarded([&] {
    std::string text;
    for (const auto& p : sandlab::enumerate_paths(d->value, target->value, max_paths)) {
      text += path_text(p) + '\n';
    }
    *out = dup(text);
  });
}

sandlab_status sandlab_digraph_to_dot(const sandlab_digraph* d, char** out) {
  SANDLAB_REQUIRE(d && out);
  return guarded([&] { *out = dup(sandlab::digraph_to_dot(d->value)); });
}

sandlab_status sandlab_digraph_to_json(const sandlab_digraph* d, char** out) {
  SANDLAB_REQUIRE(d && out);
  return guarded([&] { *out = dup(sandlab::digraph_to_json(d->value)); });
}

sandlab_status sandlab_decompose(const sandlab_config* source, const sandlab_config* target,
                                 const sandlab_policy* policy, size_t depth_cap, size_t max_paths,
                                 sandlab_decomposition** out) {
  SANDLAB_REQUIRE(source && target && out);
  *out = nullptr;
  return guarded([&] {
    const size_t depth = depth_cap ? depth_cap : sandlab::default_depth_cap(source->value.sum());
    *out = new sandlab_decomposition{sandlab::decompose_parallel_transition(
        source->value, target->value, to_policy(policy), depth, max_paths ? max_paths : 16)};
  });
}

void sandlab_decomposition_free(sandlab_decomposition* r) { delete r; }
int sandlab_decomposition_reachable(const sandlab_decomposition* r) { return r && r->value.reachable; }

int sandlab_decomposition_budget_exceeded(const sandlab_decomposition* r) {
  return r && r->value.budget_exceeded;
}

size_t sandlab_decomposition_explored(const sandlab_decomposition* r) {
  return r ? r->value.explored_nodes : 0;
}

size_t sandlab_decomposition_path_count(const sandlab_decomposition* r) {
  return r ? r->value.paths.size() : 0;
}

sandlab_status sandlab_decomposition_path(const sandlab_decomposition* r, size_t i, char** out) {
  SANDLAB_REQUIRE(r && out);
  if (i >= r->value.paths.size()) return fail(SANDLAB_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] { *out = dup(path_text(r->value.paths[i])); });
}

sandlab_status sandlab_necessity(const sandlab_config* source, const sandlab_config* target,
                                 size_t depth_cap, int reachable[3], int budget_exceeded[3],
                                 char** report) {
  SANDLAB_REQUIRE(source && target && reachable && budget_exceeded && report);
  return guarded([&] {
    const size_t depth = depth_cap ? depth_cap : sandlab::default_depth_cap(source->value.sum());
    const auto r = sandlab::necessity_analysis(source->value, target->value, depth);
    std::ostringstream os;
    for (size_t i = 0; i < r.families.size() && i < 3; ++i) {
      const auto& f = r.families[i];
      reachable[i] = f.result.reachable;
      budget_exceeded[i] = f.result.budget_exceeded;
      os << f.family << ": ";
      if (f.result.budget_exceeded) {
        os << "inconclusive";
      } else {
        os << (f.result.reachable ? "true" : "false");
      }
      os << "  (" << f.result.explored_nodes << " nodes";
      if (f.result.reachable && !f.result.paths.empty()) {
        os << ", shortest " << f.result.paths.front().size() << ": " << path_text(f.result.paths.front());
      }
      os << ")\n";
    }
    os << "minimal family: " << (r.minimal_family ? r.families[*r.minimal_family].family : "none")
       << '\n';
    *report = dup(os.str());
  });
}

// ---- verification

sandlab_status sandlab_verify(const char* suite, int64_t n_max, uint64_t seed, int* passed,
                              char** report) {
  SANDLAB_REQUIRE(suite && passed && report);
  return guarded([&] {
    std::optional<std::int64_t> n;
    if (n_max >= 0) n = n_max;
    const auto r = sandlab::run_suite(suite, n, seed);
    *passed = r.passed();
    *report = dup(r.render());
  });
}

}  // extern "C"
