#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pi/csv.hpp"
#include "pi/density.hpp"
#include "pi/pause_statistics.hpp"
#include "pi/pi_model.hpp"
#include "pi/simulator.hpp"
#include "pi/subjective.hpp"
#include "pi/trace.hpp"
#include "pi/trace_metrics.hpp"
#include "pi/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using pi::csv::format_number;

namespace {

struct CommonOpts {
  std::string out_dir;
  std::uint64_t seed = 1;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_out_dir = "") {
  opts.out_dir = default_out_dir;
  cmd->add_option("--out-dir", opts.out_dir, "Directory for output artifacts");
  cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--config", opts.config_path,
                  "key=value config file; command-line flags take precedence");
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  return s.substr(from, s.find_last_not_of(" \t\r") - from + 1);
}

// Applies `key=value` lines to the subcommand's options. Values only land on
// options the user did not pass explicitly, so flags override the file.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": unknown option '" + key + "'");
    }
    if (opt->count() > 0) continue;  // given on the command line
    opt->add_result(value);
    opt->run_callback();
  }
}

struct TcpOpts {
  double rtt = 0.128;
  double rto = 0.128;
  double packet = 1500.0;
  int ack_rounds = 2;
  double bottleneck = 125000.0;
  int window_pkts = 20;
};

void add_tcp(CLI::App* cmd, TcpOpts& o) {
  cmd->add_option("--rtt", o.rtt, "Round-trip time (s)")->capture_default_str();
  cmd->add_option("--rto", o.rto, "Retransmission timeout (s)")->capture_default_str();
  cmd->add_option("--packet-size", o.packet, "Packet size (bytes)")->capture_default_str();
  cmd->add_option("--ack-rounds", o.ack_rounds, "Rounds per window increment")
      ->capture_default_str();
  cmd->add_option("--bottleneck", o.bottleneck, "Bottleneck rate (bytes/s)")
      ->capture_default_str();
  cmd->add_option("--window-pkts", o.window_pkts, "Advertised window (packets)")
      ->capture_default_str();
}

pi::TcpParams to_tcp(const TcpOpts& o) { return {o.rtt, o.rto, o.ack_rounds, o.packet}; }
pi::LinkConstraints to_caps(const TcpOpts& o) { return {o.bottleneck, o.window_pkts}; }

json tcp_json(const TcpOpts& o) {
  return json{{"rtt_s", o.rtt},          {"timeout_s", o.rto},
              {"packet_bytes", o.packet}, {"ack_rounds", o.ack_rounds},
              {"bottleneck_Bps", o.bottleneck}, {"window_pkts", o.window_pkts}};
}

struct GridOpts {
  double lo = 0.005;
  double hi = 0.12;
  double step = 0.005;
};

void add_grid(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--loss-min", g.lo, "First loss rate of the sweep")->capture_default_str();
  cmd->add_option("--loss-max", g.hi, "Last loss rate of the sweep")->capture_default_str();
  cmd->add_option("--loss-step", g.step, "Loss-rate increment")->capture_default_str();
}

std::vector<double> make_grid(const GridOpts& g) {
  if (!(g.step > 0.0) || !(g.hi >= g.lo)) {
    throw std::invalid_argument("loss grid requires loss-min <= loss-max and a positive step");
  }
  const auto count = static_cast<long long>((g.hi - g.lo) / g.step + 1e-9) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    grid.push_back(std::min(g.lo + static_cast<double>(i) * g.step, g.hi));
  }
  return grid;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path.string());
  file << content;
}

// null for non-finite values so the JSON stays standard.
json json_num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_manifest(const fs::path& dir, const std::string& command, std::uint64_t seed,
                    const json& parameters, const std::vector<std::string>& outputs) {
  const json manifest = {{"command", command},
                         {"version", pi::kVersion},
                         {"seed", seed},
                         {"parameters", parameters},
                         {"outputs", outputs}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cerr << "wrote ";
  for (const std::string& name : outputs) std::cerr << name << ", ";
  std::cerr << "manifest.json to " << dir.string() << '\n';
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

std::string metrics_json(const pi::EmpiricalMetrics& m) {
  const json j = {{"mean_pause_duration_s", json_num(m.mean_pause_duration_s)},
                  {"pause_count", m.pause_count},
                  {"pause_frequency_hz", json_num(m.pause_frequency_hz)},
                  {"pause_intensity", json_num(m.pause_intensity)},
                  {"paused_fraction", json_num(m.paused_fraction)},
                  {"window", {{"start_s", m.window.start_s}, {"end_s", m.window.end_s}}}};
  return j.dump(2) + "\n";
}

std::string density_csv(const pi::DensityCurve& curve) {
  std::ostringstream out;
  out << "x,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_number(curve.grid[i]) << ',' << format_number(curve.density[i]) << '\n';
  }
  return out.str();
}

std::string pmf_csv(const pi::DurationDistribution& dist,
                    const pi::DurationDistribution* mc = nullptr) {
  std::ostringstream out;
  out << "duration_s,probability";
  if (mc) out << ",mc_probability";
  out << '\n';
  const std::size_t rows =
      mc ? std::max(dist.probabilities.size(), mc->probabilities.size())
         : dist.probabilities.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const double duration = static_cast<double>(i + 1) * dist.segment_length_s;
    const double p = i < dist.probabilities.size() ? dist.probabilities[i] : 0.0;
    out << format_number(duration) << ',' << format_number(p);
    if (mc) {
      const double q = i < mc->probabilities.size() ? mc->probabilities[i] : 0.0;
      out << ',' << format_number(q);
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- model ----

struct ModelOpts {
  CommonOpts common;
  TcpOpts tcp;
  GridOpts grid;
  double lambda = 100000.0;
  double q0 = 198500.0;
};

void run_model(const ModelOpts& o) {
  if (!(o.lambda > 0.0)) throw std::invalid_argument("--lambda must be positive");
  if (!(o.q0 > 0.0)) throw std::invalid_argument("--q0 must be positive");
  const pi::TcpParams tcp = to_tcp(o.tcp);
  const pi::LinkConstraints caps = to_caps(o.tcp);
  const pi::CriticalPoints cp = pi::critical_points(tcp, caps, o.lambda);

  std::ostringstream csv;
  csv << "loss,eta,pause_duration,play_duration,period,pause_frequency,pause_intensity,"
         "beta,region\n";
  for (double p : make_grid(o.grid)) {
    const double eta = pi::effective_throughput(p, tcp, caps);
    const pi::PauseMetrics m = pi::pause_play_metrics(eta, o.lambda, o.q0);
    csv << format_number(p) << ',' << format_number(eta) << ','
        << format_number(m.avg_pause_duration_s) << ','
        << format_number(m.avg_play_duration_s) << ',' << format_number(m.period_s) << ','
        << format_number(m.pause_frequency_hz) << ',' << format_number(m.pause_intensity)
        << ',' << format_number(m.period_sensitivity) << ','
        << pi::region_label(pi::classify_region(p, cp)) << '\n';
  }
  const json summary = {{"p0", cp.loss_at_lambda},
                        {"p1", cp.loss_at_half_lambda},
                        {"always_pause", cp.always_pause},
                        {"capped_max_throughput_Bps", cp.capped_max_throughput_Bps}};
  if (o.common.out_dir.empty()) {
    std::cout << csv.str();
    std::cout << "# p0=" << format_number(cp.loss_at_lambda)
              << " p1=" << format_number(cp.loss_at_half_lambda)
              << " always_pause=" << (cp.always_pause ? "true" : "false") << '\n';
    return;
  }
  const fs::path dir = prepare_out_dir(o.common.out_dir);
  write_text(dir / "model.csv", csv.str());
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  const json params = {{"lambda_Bps", o.lambda},
                       {"q0_bytes", o.q0},
                       {"tcp", tcp_json(o.tcp)},
                       {"loss_grid", {{"min", o.grid.lo}, {"max", o.grid.hi}, {"step", o.grid.step}}}};
  write_manifest(dir, "model", o.common.seed, params, {"model.csv", "summary.json"});
}

// ------------------------------------------------------------- simulate ----

struct SimulateOpts {
  CommonOpts common;
  TcpOpts tcp;
  GridOpts grid;
  double lambda = 100000.0;
  double q_min = 1500.0;
  double q_max = 200000.0;
  double step = 0.1;
  double session = 10000.0;
  std::string mode = "deterministic";
  int runs = 10;
  double trace_loss = 0.0;  // 0: use the first grid point
  double jitter_shape = 2.8;
  double jitter_scale = 0.7;
  bool record_occupancy = false;
};

pi::SimConfig to_sim_config(const SimulateOpts& o) {
  pi::SimConfig cfg;
  cfg.tcp = to_tcp(o.tcp);
  cfg.caps = to_caps(o.tcp);
  cfg.buffer = {o.q_min, o.q_max};
  cfg.playout_rate_Bps = o.lambda;
  cfg.step_s = o.step;
  cfg.session_length_s = o.session;
  cfg.mode = o.mode == "stochastic" ? pi::SimMode::stochastic : pi::SimMode::deterministic;
  cfg.loss_jitter = {o.jitter_shape, o.jitter_scale, 100.0};
  cfg.seed = o.common.seed;
  cfg.record_occupancy = o.record_occupancy;
  return cfg;
}

void run_simulate(const SimulateOpts& o) {
  pi::SimConfig cfg = to_sim_config(o);
  const std::vector<double> grid = make_grid(o.grid);
  cfg.loss_rate = grid.front();
  const std::vector<pi::SweepRow> rows = pi::sweep_loss(cfg, grid, o.runs);

  std::ostringstream csv;
  csv << "loss,model_pi,sim_pi_mean,sim_pi_std,model_freq,sim_freq_mean,sim_freq_std,"
         "model_dur,sim_dur_mean,sim_dur_std\n";
  for (const pi::SweepRow& r : rows) {
    csv << format_number(r.loss) << ',' << format_number(r.model_pi) << ','
        << format_number(r.sim_pi_mean) << ',' << format_number(r.sim_pi_std) << ','
        << format_number(r.model_freq_hz) << ',' << format_number(r.sim_freq_mean) << ','
        << format_number(r.sim_freq_std) << ',' << format_number(r.model_duration_s) << ','
        << format_number(r.sim_dur_mean) << ',' << format_number(r.sim_dur_std) << '\n';
  }

  if (o.common.out_dir.empty()) {
    std::cout << csv.str();
    return;
  }
  const fs::path dir = prepare_out_dir(o.common.out_dir);
  write_text(dir / "sweep.csv", csv.str());

  cfg.loss_rate = o.trace_loss > 0.0 ? o.trace_loss : grid.front();
  const auto [trace, result] = pi::run_session(cfg);
  pi::write_trace(trace, (dir / "trace.csv").string());
  std::vector<std::string> outputs = {"sweep.csv", "trace.csv"};
  if (o.record_occupancy) {
    std::ostringstream occ;
    occ << "time_s,bytes\n";
    for (const pi::OccupancySample& s : trace.occupancy) {
      occ << pi::csv::format_fixed(s.time_s, 6) << ',' << format_number(s.bytes) << '\n';
    }
    write_text(dir / "occupancy.csv", occ.str());
    outputs.push_back("occupancy.csv");
  }
  const json params = {{"lambda_Bps", o.lambda},
                       {"q_min_bytes", o.q_min},
                       {"q_max_bytes", o.q_max},
                       {"step_s", o.step},
                       {"session_length_s", o.session},
                       {"mode", o.mode},
                       {"runs_per_point", o.runs},
                       {"trace_loss", cfg.loss_rate},
                       {"jitter", {{"shape", o.jitter_shape}, {"scale", o.jitter_scale}}},
                       {"tcp", tcp_json(o.tcp)},
                       {"loss_grid", {{"min", o.grid.lo}, {"max", o.grid.hi}, {"step", o.grid.step}}}};
  write_manifest(dir, "simulate", o.common.seed, params, outputs);
}

// ------------------------------------------------------------ correlate ----

struct CorrelateOpts {
  CommonOpts common;
  std::vector<std::string> builtins;
  std::vector<std::string> inputs;
};

void run_correlate(const CorrelateOpts& o) {
  std::vector<pi::SubjectiveDataset> parts;
  for (const std::string& name : o.builtins) parts.push_back(pi::load_builtin_dataset(name));
  for (const std::string& path : o.inputs) parts.push_back(pi::load_dataset(path));
  if (parts.empty()) {
    parts.push_back(pi::load_builtin_dataset("table3"));
    parts.push_back(pi::load_builtin_dataset("table5"));
  }
  const pi::SubjectiveDataset merged = pi::merge(parts);
  const std::vector<pi::CorrelationRow> table = pi::correlation_table(merged);

  std::ostringstream csv;
  csv << "content,r_frequency,r_duration,r_pi\n";
  for (const pi::CorrelationRow& row : table) {
    csv << row.content << ',' << format_number(row.r_frequency) << ','
        << format_number(row.r_duration) << ',' << format_number(row.r_pi) << '\n';
  }
  if (o.common.out_dir.empty()) {
    std::cout << csv.str();
    return;
  }
  const fs::path dir = prepare_out_dir(o.common.out_dir);
  write_text(dir / "correlations.csv", csv.str());
  const json params = {{"builtins", o.builtins}, {"inputs", o.inputs}, {"source", merged.source}};
  write_manifest(dir, "correlate", o.common.seed, params, {"correlations.csv"});
}

// -------------------------------------------------------------- analyze ----

struct AnalyzeOpts {
  CommonOpts common;
  std::string trace_path;
  std::string window;
};

void run_analyze(const AnalyzeOpts& o) {
  const pi::SessionTrace trace = pi::ingest_trace(o.trace_path);
  std::optional<pi::Window> window;
  if (!o.window.empty()) {
    const std::size_t colon = o.window.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("--window expects start:end seconds");
    }
    try {
      window = pi::Window{std::stod(o.window.substr(0, colon)),
                          std::stod(o.window.substr(colon + 1))};
    } catch (const std::exception&) {
      throw std::invalid_argument("--window expects start:end seconds");
    }
  }
  const pi::EmpiricalMetrics metrics = pi::compute_metrics(trace, window);
  const std::string text = metrics_json(metrics);
  std::cout << text;
  if (!o.common.out_dir.empty()) {
    const fs::path dir = prepare_out_dir(o.common.out_dir);
    write_text(dir / "metrics.json", text);
    const json params = {{"trace", o.trace_path}, {"window", o.window}};
    write_manifest(dir, "analyze", o.common.seed, params, {"metrics.json"});
  }
}

// -------------------------------------------------------- distributions ----

struct DistributionOpts {
  CommonOpts common;
  TcpOpts tcp;
  double shape = 2.8;
  double scale = 0.7;
  double divisor = 100.0;
  double lambda = 100000.0;
  double q_min = 1500.0;
  double q_max = 200000.0;
  double dt = 0.1;
  int max_segments = 2000;
  int points = pi::kDensityGridPoints;
  bool mc_check = false;
  std::size_t trials = 100000;
};

void run_distributions(const DistributionOpts& o) {
  const pi::GammaParams gamma{o.shape, o.scale, o.divisor};
  const pi::TcpParams tcp = to_tcp(o.tcp);
  const pi::BufferThresholds buf{o.q_min, o.q_max};
  const pi::SegmentConfig seg{o.dt, o.max_segments};

  const pi::DensityCurve loss_pdf = pi::loss_density_curve(gamma, o.points);
  const pi::DensityCurve th_pdf = pi::throughput_density(loss_pdf, tcp, o.points);
  const pi::DurationDistribution pause = pi::pause_duration_distribution(th_pdf, buf, seg);
  const pi::DurationDistribution play =
      pi::play_duration_distribution(th_pdf, buf, seg, o.lambda);

  const fs::path dir = prepare_out_dir(o.common.out_dir);
  write_text(dir / "loss_pdf.csv", density_csv(loss_pdf));
  write_text(dir / "throughput_pdf.csv", density_csv(th_pdf));
  std::vector<std::string> outputs = {"loss_pdf.csv", "throughput_pdf.csv", "pause_pmf.csv",
                                      "play_pmf.csv"};
  if (o.mc_check) {
    std::mt19937_64 rng(o.common.seed);
    std::vector<double> samples(5000);
    for (double& s : samples) {
      s = pi::reno_throughput_timeout(pi::sample_loss_rate(gamma, rng), tcp);
    }
    const double ks = pi::ks_statistic(std::move(samples), th_pdf);
    const pi::DurationDistribution mc_pause = pi::first_passage_monte_carlo(
        th_pdf, buf.fluctuation_area(), seg, 0.0, o.trials, o.common.seed);
    const pi::DurationDistribution mc_play = pi::first_passage_monte_carlo(
        th_pdf, buf.fluctuation_area(), seg, o.lambda, o.trials, o.common.seed + 1);
    write_text(dir / "pause_pmf.csv", pmf_csv(pause, &mc_pause));
    write_text(dir / "play_pmf.csv", pmf_csv(play, &mc_play));
    const json check = {{"ks_throughput", ks},
                        {"tv_pause", pi::total_variation(pause, mc_pause)},
                        {"tv_play", pi::total_variation(play, mc_play)}};
    write_text(dir / "mc_check.json", check.dump(2) + "\n");
    outputs.push_back("mc_check.json");
  } else {
    write_text(dir / "pause_pmf.csv", pmf_csv(pause));
    write_text(dir / "play_pmf.csv", pmf_csv(play));
  }
  const json params = {{"gamma", {{"shape", o.shape}, {"scale", o.scale}, {"divisor", o.divisor}}},
                       {"tcp", tcp_json(o.tcp)},
                       {"lambda_Bps", o.lambda},
                       {"q_min_bytes", o.q_min},
                       {"q_max_bytes", o.q_max},
                       {"segment_s", o.dt},
                       {"max_segments", o.max_segments},
                       {"grid_points", o.points},
                       {"mc_check", o.mc_check},
                       {"trials", o.trials}};
  write_manifest(dir, "distributions", o.common.seed, params, outputs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pause-intensity streaming QoE model toolkit"};
  app.require_subcommand(1);

  ModelOpts model_opts;
  CLI::App* model_cmd =
      app.add_subcommand("model", "Closed-form pause/play metrics swept over loss rate");
  add_common(model_cmd, model_opts.common);
  add_tcp(model_cmd, model_opts.tcp);
  add_grid(model_cmd, model_opts.grid);
  model_cmd->add_option("--lambda", model_opts.lambda, "Playout rate (bytes/s)")
      ->capture_default_str();
  model_cmd->add_option("--q0", model_opts.q0, "Buffer fluctuation area (bytes)")
      ->capture_default_str();
  model_cmd->callback([&]() {
    apply_config(model_cmd, model_opts.common.config_path);
    run_model(model_opts);
  });

  SimulateOpts sim_opts;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Playout-buffer sessions swept over loss rate");
  add_common(sim_cmd, sim_opts.common, ".");
  add_tcp(sim_cmd, sim_opts.tcp);
  add_grid(sim_cmd, sim_opts.grid);
  sim_cmd->add_option("--lambda", sim_opts.lambda, "Playout rate (bytes/s)")
      ->capture_default_str();
  sim_cmd->add_option("--q-min", sim_opts.q_min, "Pause threshold (bytes)")
      ->capture_default_str();
  sim_cmd->add_option("--q-max", sim_opts.q_max, "Resume threshold (bytes)")
      ->capture_default_str();
  sim_cmd->add_option("--step", sim_opts.step, "Segment length (s)")->capture_default_str();
  sim_cmd->add_option("--session", sim_opts.session, "Session length (s)")
      ->capture_default_str();
  sim_cmd->add_option("--mode", sim_opts.mode, "deterministic or stochastic")
      ->check(CLI::IsMember({"deterministic", "stochastic"}))
      ->capture_default_str();
  sim_cmd->add_option("--runs", sim_opts.runs, "Sessions per sweep point")
      ->capture_default_str();
  sim_cmd->add_option("--trace-loss", sim_opts.trace_loss,
                      "Loss rate of the emitted example trace (default: first grid point)");
  sim_cmd->add_option("--jitter-shape", sim_opts.jitter_shape, "Stochastic loss Gamma shape")
      ->capture_default_str();
  sim_cmd->add_option("--jitter-scale", sim_opts.jitter_scale, "Stochastic loss Gamma scale")
      ->capture_default_str();
  sim_cmd->add_flag("--record-occupancy", sim_opts.record_occupancy,
                    "Also emit buffer occupancy samples");
  sim_cmd->callback([&]() {
    apply_config(sim_cmd, sim_opts.common.config_path);
    run_simulate(sim_opts);
  });

  CorrelateOpts corr_opts;
  CLI::App* corr_cmd =
      app.add_subcommand("correlate", "MOS correlations for subjective datasets");
  add_common(corr_cmd, corr_opts.common);
  corr_cmd->add_option("--builtin", corr_opts.builtins,
                       "Bundled dataset name (table3 or table5); repeatable");
  corr_cmd->add_option("--input", corr_opts.inputs, "External dataset CSV path; repeatable");
  corr_cmd->callback([&]() {
    apply_config(corr_cmd, corr_opts.common.config_path);
    run_correlate(corr_opts);
  });

  AnalyzeOpts analyze_opts;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Pause metrics of an event trace");
  add_common(analyze_cmd, analyze_opts.common);
  analyze_cmd->add_option("trace", analyze_opts.trace_path, "Trace CSV (time_s,event)")
      ->required();
  analyze_cmd->add_option("--window", analyze_opts.window,
                          "Measurement window as start:end seconds");
  analyze_cmd->callback([&]() {
    apply_config(analyze_cmd, analyze_opts.common.config_path);
    run_analyze(analyze_opts);
  });

  DistributionOpts dist_opts;
  CLI::App* dist_cmd = app.add_subcommand(
      "distributions", "Loss/throughput densities and pause/play duration pmfs");
  add_common(dist_cmd, dist_opts.common, ".");
  add_tcp(dist_cmd, dist_opts.tcp);
  dist_cmd->add_option("--shape", dist_opts.shape, "Loss Gamma shape")->capture_default_str();
  dist_cmd->add_option("--scale", dist_opts.scale, "Loss Gamma scale")->capture_default_str();
  dist_cmd->add_option("--divisor", dist_opts.divisor, "Loss Gamma rescale divisor")
      ->capture_default_str();
  dist_cmd->add_option("--lambda", dist_opts.lambda, "Playout rate (bytes/s)")
      ->capture_default_str();
  dist_cmd->add_option("--q-min", dist_opts.q_min, "Pause threshold (bytes)")
      ->capture_default_str();
  dist_cmd->add_option("--q-max", dist_opts.q_max, "Resume threshold (bytes)")
      ->capture_default_str();
  dist_cmd->add_option("--dt", dist_opts.dt, "Segment length (s)")->capture_default_str();
  dist_cmd->add_option("--max-segments", dist_opts.max_segments, "Duration pmf support bound")
      ->capture_default_str();
  dist_cmd->add_option("--points", dist_opts.points, "Density grid points")
      ->capture_default_str();
  dist_cmd->add_flag("--mc-check", dist_opts.mc_check,
                     "Append Monte Carlo comparison columns and KS/TV statistics");
  dist_cmd->add_option("--trials", dist_opts.trials, "Monte Carlo first-passage trials")
      ->capture_default_str();
  dist_cmd->callback([&]() {
    apply_config(dist_cmd, dist_opts.common.config_path);
    run_distributions(dist_opts);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pi::csv::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
