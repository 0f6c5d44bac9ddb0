// sandlab: command-line front end. Talks to the engines only through the C
// interface in sandlab/sandlab.h.
//
// Exit codes
//   0  success / reachable / all checks passed
//   1  bad arguments or input
//   2  decompose: target not reachable
//   3  run: step cap reached without equilibrium
//   4  digraph: node cap reached (graph still printed)
//   5  decompose: search budget exceeded, no verdict
//   6  verify: at least one check failed
//   7  run: a generalized rule produced a negative cell

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sandlab/sandlab.h"

namespace {

enum Exit : int {
  kOk = 0,
  kBadInput = 1,
  kNotReachable = 2,
  kStepCap = 3,
  kNodeCap = 4,
  kBudget = 5,
  kCheckFailed = 6,
  kNegative = 7,
};

// Owning wrappers over the C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Config = Handle<sandlab_config, sandlab_config_free>;
using Rule = Handle<sandlab_rule, sandlab_rule_free>;
using Trace = Handle<sandlab_trace, sandlab_trace_free>;
using Digraph = Handle<sandlab_digraph, sandlab_digraph_free>;
using Decomposition = Handle<sandlab_decomposition, sandlab_decomposition_free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sandlab_string_free(s);
  return out;
}

int report(sandlab_status s, const std::string& what) {
  std::cerr << "sandlab: " << what << ": " << sandlab_status_name(s) << ": " << sandlab_last_error()
            << '\n';
  return s == SANDLAB_ERR_NEGATIVITY_WITNESS ? kNegative : kBadInput;
}

bool parse_config(const std::string& text, Config& c, const char* what, int& code) {
  const sandlab_status s = sandlab_config_parse(text.c_str(), c.out());
  if (s == SANDLAB_OK) return true;
  code = report(s, std::string(what) + " \"" + text + "\"");
  return false;
}

struct RunArgs {
  std::string rule = "gk";
  std::string init;
  std::vector<std::int64_t> neighborhood;
  std::vector<std::int64_t> distribution;
  std::size_t max_steps = 0;
  std::string format = "json";
};

int cmd_run(const RunArgs& a) {
  Rule rule;
  sandlab_status s = sandlab_rule_create(a.rule.c_str(), a.neighborhood.data(), a.neighborhood.size(),
                                         a.distribution.data(), a.distribution.size(), rule.out());
  if (s != SANDLAB_OK) return report(s, "rule");

  Trace trace;
  s = sandlab_orbit_run(rule.get(), a.init.c_str(), a.max_steps, trace.out());
  if (s != SANDLAB_OK) return report(s, "run");

  char* text = nullptr;
  s = a.format == "table" ? sandlab_trace_to_table(trace.get(), &text)
                          : sandlab_trace_to_json(trace.get(), &text);
  if (s != SANDLAB_OK) return report(s, "render");
  std::cout << take(text);
  if (a.format != "table") std::cout << '\n';

  if (!sandlab_trace_reached_equilibrium(trace.get())) {
    std::cerr << "sandlab: step cap reached after " << sandlab_trace_length(trace.get()) - 1
              << " steps without equilibrium\n";
    return kStepCap;
  }
  return kOk;
}

struct PolicyArgs {
  std::string rules = "all";
  bool no_hr_convention = false;
  bool summary_strict = false;
  std::int64_t bt_floor = 1;
  bool quotient = false;
};

bool make_policy(const PolicyArgs& a, sandlab_policy& p, int& code) {
  p = sandlab_policy_default();
  const sandlab_status s = sandlab_rules_parse(a.rules.c_str(), &p.rules);
  if (s != SANDLAB_OK) {
    code = report(s, "--rules");
    return false;
  }
  if (a.no_hr_convention) {
    p.hr_convention = SANDLAB_HR_OFF;
  } else if (a.summary_strict) {
    p.hr_convention = SANDLAB_HR_SUMMARY_STRICT;
  }
  p.bt_height_floor = a.bt_floor;
  p.quotient_translations = a.quotient ? 1 : 0;
  return true;
}

struct DigraphArgs {
  std::string init;
  PolicyArgs policy;
  std::size_t node_cap = 1'000'000;
  std::string out = "dot";
};

int cmd_digraph(const DigraphArgs& a) {
  int code = kOk;
  Config root;
  if (!parse_config(a.init, root, "--init", code)) return code;
  sandlab_policy p;
  if (!make_policy(a.policy, p, code)) return code;

  Digraph d;
  sandlab_status s = sandlab_digraph_explore(root.get(), &p, a.node_cap, d.out());
  if (s != SANDLAB_OK) return report(s, "digraph");

  char* text = nullptr;
  s = a.out == "json" ? sandlab_digraph_to_json(d.get(), &text) : sandlab_digraph_to_dot(d.get(), &text);
  if (s != SANDLAB_OK) return report(s, "render");
  std::cout << take(text);
  if (a.out == "json") std::cout << '\n';

  if (sandlab_digraph_truncated(d.get())) {
    std::cerr << "sandlab: node cap " << a.node_cap << " reached; graph is partial\n";
    return kNodeCap;
  }
  return kOk;
}

struct DecomposeArgs {
  std::string source;
  std::string target;
  PolicyArgs policy;
  bool necessity = false;
  std::size_t depth_cap = 0;
  std::size_t max_paths = 16;
};

int cmd_decompose(const DecomposeArgs& a) {
  int code = kOk;
  Config source, target;
  if (!parse_config(a.source, source, "--source", code)) return code;
  if (!parse_config(a.target, target, "--target", code)) return code;

  if (a.necessity) {
    int reachable[3] = {0, 0, 0};
    int budget[3] = {0, 0, 0};
    char* text = nullptr;
    const sandlab_status s =
        sandlab_necessity(source.get(), target.get(), a.depth_cap, reachable, budget, &text);
    if (s != SANDLAB_OK) return report(s, "necessity");
    std::cout << take(text);
    for (int i = 0; i < 3; ++i) {
      if (reachable[i]) return kOk;
    }
    for (int i = 0; i < 3; ++i) {
      if (budget[i]) return kBudget;
    }
    return kNotReachable;
  }

  sandlab_policy p;
  if (!make_policy(a.policy, p, code)) return code;
  Decomposition r;
  const sandlab_status s =
      sandlab_decompose(source.get(), target.get(), &p, a.depth_cap, a.max_paths, r.out());
  if (s != SANDLAB_OK) return report(s, "decompose");

  if (sandlab_decomposition_reachable(r.get())) {
    const std::size_t n = sandlab_decomposition_path_count(r.get());
    std::cout << "REACHABLE: " << n << (n == 1 ? " shortest path" : " shortest paths") << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      char* text = nullptr;
      if (sandlab_decomposition_path(r.get(), i, &text) != SANDLAB_OK) continue;
      std::string path = take(text);
      std::cout << "  " << (path.empty() ? "(empty path)" : path) << '\n';
    }
    return kOk;
  }
  if (sandlab_decomposition_budget_exceeded(r.get())) {
    std::cout << "INCONCLUSIVE: search budget exceeded after "
              << sandlab_decomposition_explored(r.get()) << " nodes\n";
    return kBudget;
  }
  std::cout << "NOT REACHABLE (" << sandlab_decomposition_explored(r.get()) << " nodes explored)\n";
  return kNotReachable;
}

struct VerifyArgs {
  std::string suite;
  std::int64_t n_max = -1;
  std::uint64_t seed = 20240517;
};

int cmd_verify(VerifyArgs a) {
  if (const char* env = std::getenv("SANDLAB_SEED"); env && *env) {
    try {
      a.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "sandlab: SANDLAB_SEED is not an unsigned integer: " << env << '\n';
      return kBadInput;
    }
  }
  int passed = 0;
  char* text = nullptr;
  const sandlab_status s = sandlab_verify(a.suite.c_str(), a.n_max, a.seed, &passed, &text);
  if (s != SANDLAB_OK) return report(s, "verify");
  std::cout << take(text);
  return passed ? kOk : kCheckFailed;
}

void add_policy_flags(CLI::App* cmd, PolicyArgs& p) {
  cmd->add_option("--rules", p.rules, "move rules: vr_d,vr_s,hr_d,hr_s,bt_d,bt_s, vr, hr, bt or all")
      ->capture_default_str();
  cmd->add_flag("--no-hr-convention", p.no_hr_convention,
                "allow horizontal moves from single-granule cells");
  cmd->add_flag("--hr-summary-strict", p.summary_strict,
                "freeze only isolated single granules (0,1,0)");
  cmd->add_option("--bt-floor", p.bt_floor, "minimum plateau height for bottom-up jumps")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  cmd->add_flag("--quotient-translations", p.quotient, "merge translation-equivalent states");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D sandpile, icepile and chip-firing engines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sandlab_version()));

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "iterate a parallel rule to its fixed point");
  run_cmd->add_option("--rule", run.rule, "gk, fp, height, sm1, gen1g, gen1g-prime, const-g1")
      ->check(CLI::IsMember({"gk", "fp", "height", "sm1", "gen1g", "gen1g-prime", "const-g1"}))
      ->capture_default_str();
  run_cmd->add_option("--init", run.init, "initial literal, e.g. 8,1,5 or 0,4|0,4,0")->required();
  run_cmd->add_option("--neighborhood", run.neighborhood, "neighbor offsets y1,y2,...")->delimiter(',');
  run_cmd->add_option("--distribution", run.distribution, "weights per neighbor")->delimiter(',');
  run_cmd->add_option("--max-steps", run.max_steps, "step cap (0: 10 N^2 + 100)")->capture_default_str();
  run_cmd->add_option("--format", run.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  DigraphArgs dg;
  auto* dg_cmd = app.add_subcommand("digraph", "explore the sequential transition digraph");
  dg_cmd->add_option("--init", dg.init, "root literal")->required();
  add_policy_flags(dg_cmd, dg.policy);
  dg_cmd->add_option("--node-cap", dg.node_cap, "maximum number of states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  dg_cmd->add_option("--out", dg.out, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();

  DecomposeArgs dc;
  auto* dc_cmd = app.add_subcommand("decompose", "search sequential moves from source to target");
  dc_cmd->add_option("--source", dc.source, "source literal")->required();
  dc_cmd->add_option("--target", dc.target, "target literal")->required();
  add_policy_flags(dc_cmd, dc.policy);
  dc_cmd->add_flag("--necessity", dc.necessity, "test the nested families VR, VR+HR, VR+HR+BT");
  dc_cmd->add_option("--depth-cap", dc.depth_cap, "maximum path length (0: 2 N^2)");
  dc_cmd->add_option("--max-paths", dc.max_paths, "paths to print")->capture_default_str();

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "run a verification suite");
  vf_cmd->add_option("--suite", vf.suite, "conservation, nn, shapes, commutation or partitions")
      ->check(CLI::IsMember({"conservation", "nn", "shapes", "commutation", "partitions"}))
      ->required();
  vf_cmd->add_option("--n-max", vf.n_max, "sweep bound (suite default if omitted)");
  vf_cmd->add_option("--seed", vf.seed, "random seed (SANDLAB_SEED overrides)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (*run_cmd) return cmd_run(run);
  if (*dg_cmd) return cmd_digraph(dg);
  if (*dc_cmd) return cmd_decompose(dc);
  return cmd_verify(vf);
}
