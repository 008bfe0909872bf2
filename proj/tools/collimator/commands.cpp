#include "commands.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "collimator/config.hpp"
#include "collimator/errors.hpp"
#include "collimator/frame_service.hpp"
#include "collimator/protocol.hpp"
#include "collimator/report.hpp"
#include "collimator/simulation.hpp"
#include "collimator/trial_csv.hpp"
#include "server.hpp"

namespace collimator::cli {

namespace fs = std::filesystem;

namespace {

/// Usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

struct Common {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
};

void add_common(CLI::App* cmd, Common& c, bool with_seed) {
  cmd->add_option("--config", c.config, "JSON config file (falls back to $COLLIMATOR_CONFIG)");
  if (with_seed) {
    cmd->add_option("--seed", c.seed, "Seed for every random choice");
  }
}

EngineConfig load(const Common& c) {
  std::optional<fs::path> path;
  if (c.config) path = *c.config;
  return resolve_config(path);
}

std::uint64_t require_seed(const Common& c, const EngineConfig& config) {
  if (c.seed) return *c.seed;
  if (config.seed) return *config.seed;
  throw UsageError("--seed is required (or set \"seed\" in the config)");
}

/// Writes to `path`, or to `fallback` when path is "-".
template <typename F>
void with_output(const std::string& path, std::ostream& fallback, F&& write) {
  if (path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write " + path);
  }
  write(file);
  file.flush();
  if (!file) {
    throw std::runtime_error("error writing " + path);
  }
}

int cmd_gen_targets(const Common& c, const std::string& group, std::ostream& out) {
  const EngineConfig config = load(c);
  const std::uint64_t seed = require_seed(c, config);
  if (group != "all" && group != "training" && group != "mandible" && group != "maxilla") {
    throw UsageError("--group must be all, training, mandible or maxilla");
  }
  const TargetSets sets = build_target_sets(config, seed);

  ojson doc;
  doc["seed"] = seed;
  auto add = [&](const char* name, const std::vector<Target>& targets) {
    if (group != "all" && group != name) return;
    doc[name] = ojson::array();
    for (const Target& t : targets) doc[name].push_back(to_json(t));
  };
  add("training", sets.training);
  add("mandible", sets.mandible);
  add("maxilla", sets.maxilla);
  with_output(c.out, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return 0;
}

int cmd_simulate(const Common& c, int participants, const std::optional<std::string>& widget,
                 unsigned threads, bool run_training, std::ostream& out, std::ostream& err) {
  EngineConfig config = load(c);
  SimulationOptions options;
  options.seed = require_seed(c, config);
  options.participants = participants;
  options.threads = threads;
  options.run_training = run_training;
  if (widget) {
    try {
      options.only_widget = widget_from_string(*widget);
    } catch (const ConfigError&) {
      throw UsageError("--widget must be acw or gsw");
    }
  }
  if (participants < 1) {
    throw UsageError("--participants must be at least 1");
  }
  const std::vector<TrialRecord> records = simulate_study(config, options);
  std::size_t timeouts = 0;
  for (const TrialRecord& r : records) timeouts += r.timed_out ? 1 : 0;

  CsvOptions csv;
  csv.simulated_columns = true;
  with_output(c.out, out, [&](std::ostream& os) { write_trial_csv(os, records, csv); });
  err << "simulated " << records.size() << " trials for " << participants << " participant(s)";
  if (timeouts > 0) err << ", " << timeouts << " timed out";
  err << '\n';
  return 0;
}

int cmd_analyze(const std::string& in_path, const std::optional<std::string>& out_dir,
                const std::string& group_by, const std::string& alternative, std::ostream& out,
                std::ostream& err) {
  Grouping grouping = Grouping::None;
  if (group_by == "anatomy") {
    grouping = Grouping::Anatomy;
  } else if (group_by != "none") {
    throw UsageError("--group-by must be none or anatomy");
  }
  stats::Alternative alt = stats::Alternative::Less;
  if (alternative == "greater") {
    alt = stats::Alternative::Greater;
  } else if (alternative != "less") {
    throw UsageError("--alternative must be less or greater");
  }

  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + in_path);
  }
  const std::vector<TrialRecord> all = read_trial_csv(in);
  if (all.empty()) {
    throw InsufficientData(in_path + " has no trial rows");
  }
  const std::vector<TrialRecord> kept = drop_first_trials(all);
  err << "read " << all.size() << " trials, analysing " << kept.size()
      << " after dropping the first trial of each block\n";
  if (kept.empty()) {
    throw InsufficientData("no trials left after dropping first-of-block trials");
  }
  const AnalysisReport report = analyze(kept, grouping, alt);

  write_text_report(out, report);
  if (out_dir) {
    fs::create_directories(*out_dir);
    const fs::path dir(*out_dir);
    with_output((dir / "summary.csv").string(), out,
                [&](std::ostream& os) { write_summary_csv(os, report); });
    with_output((dir / "tests.csv").string(), out,
                [&](std::ostream& os) { write_tests_csv(os, report); });
    with_output((dir / "report.txt").string(), out,
                [&](std::ostream& os) { write_text_report(os, report); });
  }
  return 0;
}

struct ServeArgs {
  std::optional<int> port;
  bool stdio = false;
  std::string participant = "P01";
  std::string set = "A";
};

int cmd_serve(const Common& c, const ServeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.stdio == a.port.has_value()) {
    throw UsageError("serve needs exactly one of --port or --stdio");
  }
  if (a.port && (*a.port < 0 || *a.port > 65535)) {
    throw UsageError("--port must be in 0..65535");
  }
  TreatmentSet set;
  try {
    set = treatment_set_from_string(a.set);
  } catch (const ConfigError&) {
    throw UsageError("--set must be A or B");
  }
  const EngineConfig config = load(c);
  const std::uint64_t seed = require_seed(c, config);
  SessionPlan plan = make_session_plan(a.participant, set, build_target_sets(config, seed), seed);

  std::ofstream csv;
  if (c.out != "-") {
    const bool fresh = !fs::exists(c.out) || fs::file_size(c.out) == 0;
    csv.open(c.out, std::ios::binary | std::ios::app);
    if (!csv) {
      throw std::runtime_error("cannot write " + c.out);
    }
    if (fresh) {
      write_trial_csv_header(csv);
      csv.flush();
    }
  }
  auto sink = [&csv](const TrialRecord& r) {
    if (csv.is_open()) {
      write_trial_csv_row(csv, r);
      csv.flush();
    }
  };

  SteadyClock clock;
  FrameService service(config, std::move(plan), clock, sink);
  if (a.stdio) {
    serve_stream(service, std::cin, out);
    return 0;
  }

  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  TcpServeOptions options;
  options.port = static_cast<std::uint16_t>(*a.port);
  options.on_listening = [&err](std::uint16_t port) {
    err << "listening on 127.0.0.1:" << port << std::endl;
  };
  serve_tcp(service, options, g_stop);
  err << "shutting down after " << service.session().records().size() << " logged trials\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Augmented collimation widget engine: targets, simulation, analysis, frames"};
  app.name("collimator");
  app.require_subcommand(1);

  Common gen_common;
  std::string gen_group = "all";
  auto* gen = app.add_subcommand("gen-targets", "Write training and dental-arch target sets as JSON");
  add_common(gen, gen_common, true);
  gen->add_option("--out", gen_common.out, "Output file ('-' for stdout)");
  gen->add_option("--group", gen_group, "all | training | mandible | maxilla");

  Common sim_common;
  int participants = 30;
  std::optional<std::string> widget;
  unsigned threads = 0;
  bool run_training = false;
  auto* sim = app.add_subcommand("simulate", "Run simulated participants and write the trial CSV");
  add_common(sim, sim_common, true);
  sim->add_option("--out", sim_common.out, "Output CSV ('-' for stdout)");
  sim->add_option("--participants", participants, "Number of simulated participants");
  sim->add_option("--widget", widget, "Only run blocks of this widget (acw | gsw)");
  sim->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  sim->add_flag("--run-training", run_training, "Also run (unlogged) training blocks");

  std::string analyze_in;
  std::optional<std::string> analyze_out;
  std::string group_by = "none";
  std::string alternative = "less";
  auto* ana = app.add_subcommand("analyze", "Descriptive statistics and Mann-Whitney tests");
  ana->add_option("--in", analyze_in, "Trial CSV")->required();
  ana->add_option("--out", analyze_out, "Directory for summary.csv, tests.csv, report.txt");
  ana->add_option("--group-by", group_by, "none | anatomy");
  ana->add_option("--alternative", alternative, "ACW relative to GSW: less | greater");

  Common serve_common;
  ServeArgs serve_args;
  auto* srv = app.add_subcommand("serve", "Serve the frame protocol for an interactive session");
  add_common(srv, serve_common, true);
  srv->add_option("--out", serve_common.out, "Trial CSV to append confirmed trials to");
  srv->add_option("--port", serve_args.port, "TCP port on 127.0.0.1 (0 = ephemeral)");
  srv->add_flag("--stdio", serve_args.stdio, "Use stdin/stdout instead of a socket");
  srv->add_option("--participant", serve_args.participant, "Participant id");
  srv->add_option("--set", serve_args.set, "Treatment order A or B");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen_targets(gen_common, gen_group, out);
    if (sim->parsed()) {
      return cmd_simulate(sim_common, participants, widget, threads, run_training, out, err);
    }
    if (ana->parsed()) return cmd_analyze(analyze_in, analyze_out, group_by, alternative, out, err);
    if (srv->parsed()) return cmd_serve(serve_common, serve_args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace collimator::cli
