// Copyright 2026 The convbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convbench/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "convbench/bench/static_bench.hpp"
#include "convbench/client/cache.hpp"
#include "convbench/client/http_client.hpp"
#include "convbench/client/scripted_stub.hpp"
#include "convbench/engine/live.hpp"
#include "convbench/engine/suite.hpp"
#include "convbench/errors.hpp"
#include "convbench/feedback/simulate.hpp"
#include "convbench/io/dataset.hpp"
#include "convbench/io/hash.hpp"
#include "convbench/io/journal.hpp"
#include "convbench/metrics/metrics.hpp"
#include "convbench/metrics/table.hpp"
#include "convbench/sandbox/process_sandbox.hpp"
#include "convbench/sandbox/scripted_sandbox.hpp"
#include "convbench/sandbox/subprocess.hpp"

namespace convbench::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Flags shared by every command that talks to a sandbox.
struct SandboxFlags {
  std::string runner = "python3 -m convbench_runner";
  std::string script;
  double timeout_s = 10.0;
  std::size_t traceback_limit = 2000;

  void add(CLI::App* app) {
    app->add_option("--runner", runner, "Runner command speaking the JSON protocol")->capture_default_str();
    app->add_option("--sandbox-script", script, "Scripted sandbox table (offline runs)");
    app->add_option("--timeout", timeout_s, "Per-case timeout in seconds")->capture_default_str();
    app->add_option("--traceback-limit", traceback_limit, "Characters of traceback kept per case")
        ->capture_default_str();
  }
  sandbox::RunLimits limits() const {
    sandbox::RunLimits l{timeout_s, traceback_limit};
    if (!l.valid()) throw UsageError("--timeout and --traceback-limit must be positive");
    return l;
  }
  std::unique_ptr<sandbox::Sandbox> make() const {
    if (!script.empty()) {
      return std::make_unique<sandbox::ScriptedSandbox>(sandbox::ScriptedSandbox::load(script));
    }
    sandbox::ProcessSandboxOptions options;
    options.command = sandbox::split_command(runner);
    if (options.command.empty()) throw UsageError("--runner is empty");
    return std::make_unique<sandbox::ProcessSandbox>(std::move(options));
  }
};

// Flags shared by every command that talks to a model.
struct ClientFlags {
  std::string mode = "live";
  std::string base_url = "https://api.openai.com";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string cache_dir;
  std::string stub_script;
  int max_in_flight = 4;

  void add(CLI::App* app) {
    app->add_option("--client", mode, "live | record | replay | stub")
        ->check(CLI::IsMember({"live", "record", "replay", "stub"}))
        ->capture_default_str();
    app->add_option("--base-url", base_url, "Chat-completions endpoint")->capture_default_str();
    app->add_option("--api-key-env", api_key_env, "Environment variable holding the API key")
        ->capture_default_str();
    app->add_option("--cache-dir", cache_dir, "Record/replay cache directory");
    app->add_option("--stub-script", stub_script, "Scripted stub rules (JSON)");
    app->add_option("--max-in-flight", max_in_flight, "Concurrent HTTP requests")->capture_default_str();
  }
};

class Clients {
 public:
  explicit Clients(const ClientFlags& flags) {
    if (flags.mode == "stub") {
      if (flags.stub_script.empty()) throw UsageError("--client stub needs --stub-script");
      inner_ = std::make_unique<client::ScriptedStub>(client::ScriptedStub::load_rules(flags.stub_script));
      client_ = inner_.get();
      return;
    }
    if (flags.mode != "replay") {
      client::HttpClientOptions options;
      options.base_url = flags.base_url;
      options.api_key_env = flags.api_key_env;
      options.max_in_flight = flags.max_in_flight;
      inner_ = std::make_unique<client::HttpChatClient>(std::move(options));
      client_ = inner_.get();
    }
    if (flags.mode == "record" || flags.mode == "replay") {
      if (flags.cache_dir.empty()) throw UsageError("--client " + flags.mode + " needs --cache-dir");
      cache_ = std::make_unique<client::CachingClient>(
          inner_.get(), flags.cache_dir,
          flags.mode == "record" ? client::CacheMode::kRecord : client::CacheMode::kReplay);
      client_ = cache_.get();
    }
  }
  client::ChatClient& get() { return *client_; }

 private:
  std::unique_ptr<client::ChatClient> inner_;
  std::unique_ptr<client::ChatClient> cache_;
  client::ChatClient* client_ = nullptr;
};

std::vector<FeedbackCombination> parse_omegas(const std::vector<std::string>& texts) {
  std::vector<FeedbackCombination> out;
  for (const auto& t : texts) {
    if (t == "all") {
      for (const auto& o : enumerate_combinations()) {
        if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
      }
      continue;
    }
    try {
      const auto o = parse_combination(t);
      if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
    } catch (const std::invalid_argument& e) {
      throw UsageError("bad --omega '" + t + "': " + e.what());
    }
  }
  return out;
}

FeedbackCombination parse_omega(const std::string& text) {
  const auto list = parse_omegas({text});
  if (list.size() != 1) throw UsageError("--omega must name a single combination here");
  return list.front();
}

Dataset load_checked(const std::string& path, const sandbox::Sandbox* oracle,
                     const sandbox::RunLimits& limits, std::ostream& err) {
  Dataset ds = load_dataset(path, oracle, limits);
  for (const auto& r : ds.rejects) {
    err << "rejected line " << r.line << (r.task_id.empty() ? "" : " (" + r.task_id + ")") << ": "
        << r.reason << '\n';
  }
  if (ds.problems.empty()) throw ValidationError("dataset " + path + " has no usable problems");
  return ds;
}

struct ScoreLine {
  std::string model;
  FeedbackCombination omega;
  double mrr = 0.0;
  double recall = 0.0;
};

Json to_json(const ScoreLine& s) {
  Json j;
  j["model"] = s.model;
  j["omega"] = to_string(s.omega);
  j["mrr"] = s.mrr;
  j["recall"] = s.recall;
  return j;
}

std::vector<ScoreLine> read_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open score file " + path);
  std::vector<ScoreLine> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      out.push_back({j.at("model").get<std::string>(), parse_combination(j.at("omega").get<std::string>()),
                     j.at("mrr").get<double>(), j.at("recall").get<double>()});
    } catch (const std::exception& e) {
      throw ParseError(path + ": " + e.what(), line_no);
    }
  }
  return out;
}

void append_scores(const std::string& path, const std::vector<ScoreLine>& scores) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::app | std::ios::binary);
  for (const auto& s : scores) out << dump_line(to_json(s)) << '\n';
  if (!out) throw FormatError("cannot write " + path);
}

// Journals under `root`, grouped as the report and audit commands see them.
std::vector<Trajectory> load_logs(const std::string& root) {
  if (!std::filesystem::exists(root)) throw FormatError("no such log directory " + root);
  return load_trajectories(root);
}

std::string render(const metrics::ScoreTable& t, const std::string& format) {
  if (format == "csv") return t.to_csv();
  if (format == "markdown") return t.to_markdown();
  return t.to_text();
}

Json engine_manifest(const engine::EngineConfig& cfg, const std::string& dataset_hash) {
  Json m;
  m["dataset_hash"] = dataset_hash;
  m["prompts"] = "v1";
  m["code_params"] = {{"temperature", cfg.code_params.temperature}, {"max_tokens", cfg.code_params.max_tokens}};
  m["feedback_params"] = {{"model_id", cfg.feedback_params.model_id},
                          {"temperature", cfg.feedback_params.temperature},
                          {"max_tokens", cfg.feedback_params.max_tokens}};
  m["limits"] = {{"timeout_s", cfg.limits.timeout_s}, {"traceback_limit", cfg.limits.traceback_limit}};
  m["context_budget_tokens"] = cfg.context_budget_tokens;
  return m;
}

// ---- commands -------------------------------------------------------------

struct LiveRunFlags {
  std::string dataset;
  std::vector<std::string> models;
  std::vector<std::string> omegas{"all"};
  int max_turns = kDefaultMaxTurns;
  std::size_t parallelism = 1;
  std::string out;
  std::string feedback_model = "gpt-4o";
  std::size_t context_budget = engine::kDefaultContextBudget;
  bool skip_oracle = false;
  bool fresh = false;
  SandboxFlags sandbox;
  ClientFlags client;
};

int live_run(const LiveRunFlags& f, std::ostream& out, std::ostream& err) {
  if (f.max_turns < 0) throw UsageError("--max-turns must be >= 0");
  const auto omegas = parse_omegas(f.omegas);
  const auto limits = f.sandbox.limits();
  const auto sandbox = f.sandbox.make();
  const Dataset ds = load_checked(f.dataset, f.skip_oracle ? nullptr : sandbox.get(), limits, err);
  Clients clients(f.client);

  engine::EngineConfig cfg;
  cfg.max_turns = f.max_turns;
  cfg.feedback_params = client::ChatParams::for_feedback(f.feedback_model);
  cfg.limits = limits;
  cfg.context_budget_tokens = f.context_budget;
  engine::LiveEngine engine(clients.get(), &clients.get(), *sandbox, cfg);

  engine::SuiteOptions options;
  options.out_dir = f.out;
  options.parallelism = std::max<std::size_t>(1, f.parallelism);
  options.manifest = engine_manifest(cfg, ds.sha256);
  options.resume = !f.fresh;
  options.log = [&err](const std::string& m) { err << m << '\n'; };

  std::filesystem::create_directories(f.out);
  Json run_manifest;
  run_manifest["schema_version"] = kSchemaVersion;
  run_manifest["dataset"] = {{"path", f.dataset}, {"sha256", ds.sha256}};
  run_manifest["models"] = f.models;
  Json omega_list = Json::array();
  for (const auto& o : omegas) omega_list.push_back(to_string(o));
  run_manifest["omegas"] = omega_list;
  run_manifest["max_turns"] = f.max_turns;
  run_manifest["client"] = f.client.mode;
  run_manifest["out"] = f.out;
  run_manifest["engine"] = options.manifest;
  {
    std::ofstream m(std::filesystem::path(f.out) / "manifest.json", std::ios::trunc);
    m << run_manifest.dump(2) << '\n';
  }

  const auto result = engine::run_suite(engine, ds.problems, f.models, omegas, options);
  out << "episodes: " << result.trajectories.size() << " complete (" << result.executed << " new, "
      << result.resumed << " resumed, " << result.reused << " reused), " << result.quarantined.size()
      << " quarantined\n";
  for (const auto& q : result.quarantined) {
    out << "quarantined " << q.model_id << " ⟨" << to_string(q.omega) << "⟩ " << q.task_id << ": "
        << q.kind << ": " << q.message << '\n';
  }
  return kExitOk;
}

struct StaticBuildFlags {
  std::string logs;
  std::string model;
  std::string omega;
  std::string dataset;
  std::string out;
};

int static_build(const StaticBuildFlags& f, std::ostream& out) {
  const auto omega = parse_omega(f.omega);
  const std::string hash = sha256_file(f.dataset);
  const auto dir = std::filesystem::path(f.logs) / slugify(f.model) / to_slug(omega);
  if (!std::filesystem::is_directory(dir)) throw FormatError("no reference logs at " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".jsonl") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Trajectory> reference;
  for (const auto& p : paths) {
    const auto state = read_journal(p);
    const auto& m = state.header.manifest;
    if (m.contains("dataset_hash") && m["dataset_hash"] != hash) {
      throw DatasetMismatch(p.string() + " was produced from a different dataset");
    }
    if (!state.complete) throw ValidationError(p.string() + " is an unfinished episode");
    reference.push_back(trajectory_from(state));
  }
  const auto bench = bench::build_static(reference, hash);
  bench::save_bench(f.out, bench);
  const auto diag = bench::reference_diagnostics(reference);
  out << "entries: " << bench.entries.size() << " from " << reference.size() << " reference episodes\n"
      << "reference turn-0 pass: " << metrics::format_percent(diag.turn0_pass) << "\n"
      << "reference turn-" << bench.max_turns << " recall: " << metrics::format_percent(diag.turnN_recall)
      << '\n';
  return kExitOk;
}

struct StaticRunFlags {
  std::string bench;
  std::string dataset;
  std::vector<std::string> models;
  std::size_t parallelism = 1;
  std::string out;
  std::string scores;
  std::size_t context_budget = engine::kDefaultContextBudget;
  SandboxFlags sandbox;
  ClientFlags client;
};

int static_run(const StaticRunFlags& f, std::ostream& out, std::ostream& err) {
  const auto bench = bench::load_bench(f.bench);
  const auto limits = f.sandbox.limits();
  const auto sandbox = f.sandbox.make();
  const Dataset ds = load_checked(f.dataset, nullptr, limits, err);
  if (!bench.dataset_hash.empty() && bench.dataset_hash != ds.sha256) {
    throw DatasetMismatch("bench " + f.bench + " was built from dataset " + bench.dataset_hash +
                          ", given " + ds.sha256);
  }
  Clients clients(f.client);
  engine::EngineConfig cfg;
  cfg.limits = limits;
  cfg.context_budget_tokens = f.context_budget;
  engine::LiveEngine engine(clients.get(), nullptr, *sandbox, cfg);

  std::vector<ScoreLine> scores;
  for (const auto& model : f.models) {
    const auto result = bench::replay(bench, ds.problems, engine, model, std::max<std::size_t>(1, f.parallelism));
    bench::write_outcomes(std::filesystem::path(f.out) / slugify(model) / (to_slug(bench.omega) + ".jsonl"),
                          result.outcomes);
    for (const auto& q : result.quarantined) {
      err << "quarantined " << model << " " << q.task_id << ": " << q.kind << ": " << q.message << '\n';
    }
    const auto s = bench::static_metrics(result.outcomes);
    out << model << " ⟨" << to_string(bench.omega) << "⟩ C-MRR " << metrics::format_percent(s.mrr)
        << " C-Recall " << metrics::format_percent(s.recall) << " (" << s.problems << " problems, "
        << result.quarantined.size() << " quarantined)\n";
    scores.push_back({model, bench.omega, s.mrr, s.recall});
  }
  if (!f.scores.empty()) append_scores(f.scores, scores);
  return kExitOk;
}

struct ReportFlags {
  std::string logs;
  std::string format = "text";
  std::string plot_data;
  std::string scores;
};

int report(const ReportFlags& f, std::ostream& out) {
  const auto trajectories = load_logs(f.logs);
  if (trajectories.empty()) throw ValidationError("no finished episodes under " + f.logs);
  std::map<std::pair<std::string, FeedbackCombination>, std::vector<Trajectory>> groups;
  std::vector<std::string> models;
  for (const auto& t : trajectories) {
    if (std::find(models.begin(), models.end(), t.model_id) == models.end()) models.push_back(t.model_id);
    groups[{t.model_id, t.omega}].push_back(t);
  }
  metrics::ScoreTable mrr_table("MRR"), recall_table("Recall");
  std::vector<ScoreLine> scores;
  for (const auto& model : models) {
    for (const auto& omega : enumerate_combinations()) {
      const auto it = groups.find({model, omega});
      if (it == groups.end()) continue;
      const auto a = metrics::aggregate(it->second);
      mrr_table.set(model, omega, a.mrr);
      recall_table.set(model, omega, a.recall);
      scores.push_back({model, omega, a.mrr, a.recall});
    }
  }
  out << render(mrr_table, f.format) << '\n' << render(recall_table, f.format);
  if (!f.scores.empty()) {
    std::ofstream(f.scores, std::ios::trunc).close();
    append_scores(f.scores, scores);
  }
  if (!f.plot_data.empty()) {
    std::ofstream plot(f.plot_data, std::ios::trunc);
    plot << "model,omega,turn,pass_at_1\n";
    for (const auto& [key, list] : groups) {
      const auto curve = metrics::pass_at_1_curve(list);
      for (std::size_t t = 0; t < curve.size(); ++t) {
        plot << key.first << ",\"" << to_string(key.second) << "\"," << t << ','
             << metrics::format_percent(curve[t]) << '\n';
      }
    }
    if (!plot) throw FormatError("cannot write " + f.plot_data);
  }
  return kExitOk;
}

struct CorrelateFlags {
  std::string live;
  std::string stat;
  std::string metric = "both";
};

int correlate(const CorrelateFlags& f, std::ostream& out) {
  const auto live = read_scores(f.live);
  const auto stat = read_scores(f.stat);
  std::map<std::pair<std::string, FeedbackCombination>, const ScoreLine*> live_by;
  for (const auto& s : live) live_by[{s.model, s.omega}] = &s;
  std::map<FeedbackCombination, std::vector<std::pair<const ScoreLine*, const ScoreLine*>>> by_omega;
  for (const auto& s : stat) {
    const auto it = live_by.find({s.model, s.omega});
    if (it != live_by.end()) by_omega[s.omega].push_back({it->second, &s});
  }
  std::vector<std::string> metrics_wanted;
  if (f.metric == "mrr" || f.metric == "both") metrics_wanted.push_back("mrr");
  if (f.metric == "recall" || f.metric == "both") metrics_wanted.push_back("recall");
  std::size_t printed = 0;
  for (const auto& [omega, pairs] : by_omega) {
    if (pairs.size() < 2) continue;
    for (const auto& m : metrics_wanted) {
      std::vector<double> xs, ys;
      for (const auto& [l, s] : pairs) {
        xs.push_back(m == "mrr" ? l->mrr : l->recall);
        ys.push_back(m == "mrr" ? s->mrr : s->recall);
      }
      out << "⟨" << to_string(omega) << "⟩ " << m << " n=" << pairs.size() << " ";
      try {
        out << "ρ=" << fixed(metrics::spearman(xs, ys), 3) << '\n';
      } catch (const DegenerateInput&) {
        out << "ρ=undefined (tied scores)\n";
      }
      ++printed;
    }
  }
  if (printed == 0) throw ValidationError("fewer than two models shared between the score files");
  return kExitOk;
}

int leakage_audit(const std::string& logs, std::ostream& out) {
  const auto rates = feedback::leakage_audit(load_logs(logs));
  out << "expert feedback instances: " << rates.instances << '\n'
      << "mentioning ground_truth_code: " << metrics::format_percent(rates.mention_rate) << "%\n"
      << "including code blocks: " << metrics::format_percent(rates.code_block_rate) << "%\n";
  return kExitOk;
}

struct CostFlags {
  std::optional<double> in_tokens, out_tokens, price_in, price_out;
  std::optional<double> turns, seconds_per_turn, hourly_wage;
};

int cost(const CostFlags& f, std::ostream& out) {
  const bool api = f.in_tokens || f.out_tokens || f.price_in || f.price_out;
  const bool human = f.turns || f.seconds_per_turn || f.hourly_wage;
  if (!api && !human) throw UsageError("give --in-tokens/--out-tokens/--price-in/--price-out or --turns/--seconds-per-turn/--hourly-wage");
  try {
    if (api) {
      if (!(f.in_tokens && f.out_tokens && f.price_in && f.price_out)) {
        throw UsageError("API cost needs --in-tokens, --out-tokens, --price-in and --price-out");
      }
      out << fixed(metrics::cost_estimate(*f.in_tokens, *f.out_tokens, *f.price_in, *f.price_out), 2) << '\n';
    }
    if (human) {
      if (!(f.turns && f.seconds_per_turn && f.hourly_wage)) {
        throw UsageError("human cost needs --turns, --seconds-per-turn and --hourly-wage");
      }
      out << fixed(metrics::human_cost(*f.turns, *f.seconds_per_turn, *f.hourly_wage), 2) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

struct DoctorFlags {
  std::string dataset;
  int repeats = 2;
  SandboxFlags sandbox;
};

int doctor(const DoctorFlags& f, std::ostream& out, std::ostream& err) {
  if (f.repeats < 2) throw UsageError("--repeats must be at least 2");
  const auto limits = f.sandbox.limits();
  const auto sandbox = f.sandbox.make();
  const Dataset ds = load_checked(f.dataset, nullptr, limits, err);
  std::size_t problems_found = 0;
  for (const auto& p : ds.problems) {
    const auto first = sandbox->run_tests(p.ground_truth, p.suite, Coverage::kFull, limits);
    bool stable = true;
    for (int r = 1; r < f.repeats && stable; ++r) {
      stable = sandbox->run_tests(p.ground_truth, p.suite, Coverage::kFull, limits) == first;
    }
    std::string verdict = "ok";
    if (!stable) {
      verdict = "nondeterministic suite";
    } else if (!first.all_passed()) {
      verdict = "oracle failure";
    }
    if (verdict != "ok") ++problems_found;
    out << p.task_id << ": " << verdict << '\n';
  }
  out << ds.problems.size() << " checked, " << problems_found << " with problems\n";
  return problems_found == 0 ? kExitOk : kExitRuntime;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  err << dump_line(j) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interactive code-generation benchmark harness", "convbench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; command-line flags win");

  LiveRunFlags live;
  auto* live_cmd = app.add_subcommand("live-run", "Run live multi-turn episodes");
  live_cmd->add_option("--dataset", live.dataset, "Problem corpus (JSONL)")->required();
  live_cmd->add_option("--model", live.models, "Code model id (repeatable)")->required();
  live_cmd->add_option("--omega", live.omegas, "Feedback combination, e.g. 'fc,fe*,fv' or 'all'")
      ->capture_default_str();
  live_cmd->add_option("--max-turns", live.max_turns, "Refinement turns n")->capture_default_str();
  live_cmd->add_option("--parallelism", live.parallelism, "Concurrent episodes")->capture_default_str();
  live_cmd->add_option("--out", live.out, "Journal directory")->required();
  live_cmd->add_option("--feedback-model", live.feedback_model, "Verbal feedback simulator")
      ->capture_default_str();
  live_cmd->add_option("--context-budget", live.context_budget, "Prompt token budget")->capture_default_str();
  live_cmd->add_flag("--skip-oracle-check", live.skip_oracle, "Do not grade ground truths at ingestion");
  live_cmd->add_flag("--fresh", live.fresh, "Overwrite existing journals instead of resuming");
  live.sandbox.add(live_cmd);
  live.client.add(live_cmd);

  StaticBuildFlags sb;
  auto* sb_cmd = app.add_subcommand("static-build", "Freeze reference logs into a static benchmark");
  sb_cmd->add_option("--logs", sb.logs, "live-run output directory")->required();
  sb_cmd->add_option("--model", sb.model, "Reference model id")->required();
  sb_cmd->add_option("--omega", sb.omega, "Feedback combination")->required();
  sb_cmd->add_option("--dataset", sb.dataset, "Problem corpus the logs were produced from")->required();
  sb_cmd->add_option("--out", sb.out, "Bench directory")->required();

  StaticRunFlags sr;
  auto* sr_cmd = app.add_subcommand("static-run", "Replay a static benchmark against target models");
  sr_cmd->add_option("--bench", sr.bench, "Bench directory")->required();
  sr_cmd->add_option("--dataset", sr.dataset, "Problem corpus")->required();
  sr_cmd->add_option("--model", sr.models, "Target model id (repeatable)")->required();
  sr_cmd->add_option("--parallelism", sr.parallelism, "Concurrent entries")->capture_default_str();
  sr_cmd->add_option("--out", sr.out, "Outcome directory")->required();
  sr_cmd->add_option("--scores", sr.scores, "Append score lines to this JSONL file");
  sr_cmd->add_option("--context-budget", sr.context_budget, "Prompt token budget")->capture_default_str();
  sr.sandbox.add(sr_cmd);
  sr.client.add(sr_cmd);

  ReportFlags rep;
  auto* rep_cmd = app.add_subcommand("report", "MRR and Recall tables over finished episodes");
  rep_cmd->add_option("--logs,--out", rep.logs, "live-run output directory")->required();
  rep_cmd->add_option("--format", rep.format, "text | csv | markdown")
      ->check(CLI::IsMember({"text", "csv", "markdown"}))
      ->capture_default_str();
  rep_cmd->add_option("--plot-data", rep.plot_data, "Write per-turn Pass@1 CSV here");
  rep_cmd->add_option("--scores", rep.scores, "Write score lines (JSONL) here");

  CorrelateFlags cor;
  auto* cor_cmd = app.add_subcommand("correlate", "Spearman correlation of live and static scores");
  cor_cmd->add_option("--live", cor.live, "Live score JSONL")->required();
  cor_cmd->add_option("--static", cor.stat, "Static score JSONL")->required();
  cor_cmd->add_option("--metric", cor.metric, "mrr | recall | both")
      ->check(CLI::IsMember({"mrr", "recall", "both"}))
      ->capture_default_str();

  std::string audit_logs;
  auto* audit_cmd = app.add_subcommand("leakage-audit", "Ground-truth leakage in expert feedback");
  audit_cmd->add_option("--logs,--out", audit_logs, "live-run output directory")->required();

  CostFlags cf;
  auto* cost_cmd = app.add_subcommand("cost", "API and human annotation cost");
  cost_cmd->add_option("--in-tokens", cf.in_tokens, "Input tokens");
  cost_cmd->add_option("--out-tokens", cf.out_tokens, "Output tokens");
  cost_cmd->add_option("--price-in", cf.price_in, "Price per 1M input tokens");
  cost_cmd->add_option("--price-out", cf.price_out, "Price per 1M output tokens");
  cost_cmd->add_option("--turns", cf.turns, "Annotated turns");
  cost_cmd->add_option("--seconds-per-turn", cf.seconds_per_turn, "Annotation seconds per turn");
  cost_cmd->add_option("--hourly-wage", cf.hourly_wage, "Annotator wage per hour");

  DoctorFlags doc;
  auto* doc_cmd = app.add_subcommand("doctor", "Check that ground truths pass and suites are deterministic");
  doc_cmd->add_option("--dataset", doc.dataset, "Problem corpus")->required();
  doc_cmd->add_option("--repeats", doc.repeats, "Runs per ground truth")->capture_default_str();
  doc.sandbox.add(doc_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*live_cmd) return live_run(live, out, err);
    if (*sb_cmd) return static_build(sb, out);
    if (*sr_cmd) return static_run(sr, out, err);
    if (*rep_cmd) return report(rep, out);
    if (*cor_cmd) return correlate(cor, out);
    if (*audit_cmd) return leakage_audit(audit_logs, out);
    if (*cost_cmd) return cost(cf, out);
    if (*doc_cmd) return doctor(doc, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    print_error(err, e.kind(), e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    print_error(err, "InternalError", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace convbench::cli
