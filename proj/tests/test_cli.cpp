#include "doctest.h"

#include "pi/simulator.hpp"
#include "pi/trace.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_tool(const std::string& args) {
  const std::string cmd = std::string(PITOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("pitool_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("cli: help and argument errors") {
  CHECK(run_tool("--help").code == 0);
  CHECK(run_tool("--help").out.find("model") != std::string::npos);
  CHECK(run_tool("").code == 2);              // a subcommand is required
  CHECK(run_tool("model --bogus").code == 2);
  CHECK(run_tool("frobnicate").code == 2);
}

TEST_CASE("cli: model sweep to stdout") {
  auto res = run_tool("model");
  CHECK(res.code == 0);
  CHECK(res.out.find("loss,eta,pause_duration,play_duration,period,pause_frequency,"
                     "pause_intensity,beta,region") == 0);
  // 0.005..0.12 in 0.005 steps: 24 data rows, plus header and boundary note.
  CHECK(count_lines(res.out) == 26);
  CHECK(res.out.find("# p0=0.0098") != std::string::npos);
  CHECK(res.out.find("always_pause=false") != std::string::npos);

  CHECK(run_tool("model --lambda 0").code == 2);
  CHECK(run_tool("model --loss-min 0.2").code == 2);
}

TEST_CASE("cli: model run is reproducible on disk") {
  auto dir = fresh_dir("model");
  auto res = run_tool("model --out-dir " + dir.string());
  CHECK(res.code == 0);
  REQUIRE(fs::exists(dir / "model.csv"));
  REQUIRE(fs::exists(dir / "summary.json"));
  REQUIRE(fs::exists(dir / "manifest.json"));

  auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["p0"].get<double>() == doctest::Approx(0.0098563).epsilon(1e-4));
  CHECK(summary["p1"].get<double>() == doctest::Approx(0.0351731).epsilon(1e-4));
  CHECK(summary["always_pause"].get<bool>() == false);

  auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "model");
  CHECK(manifest["version"] == "1.0.0");

  const std::string csv1 = slurp(dir / "model.csv");
  const std::string man1 = slurp(dir / "manifest.json");
  CHECK(run_tool("model --out-dir " + dir.string()).code == 0);
  CHECK(slurp(dir / "model.csv") == csv1);
  CHECK(slurp(dir / "manifest.json") == man1);
}

TEST_CASE("cli: simulate writes the sweep schema") {
  auto dir = fresh_dir("simulate");
  auto res = run_tool("simulate --out-dir " + dir.string() +
                      " --runs 1 --loss-min 0.02 --loss-max 0.04 --loss-step 0.01"
                      " --session 1000");
  CHECK(res.code == 0);
  const std::string sweep = slurp(dir / "sweep.csv");
  CHECK(sweep.find("loss,model_pi,sim_pi_mean,sim_pi_std,model_freq,sim_freq_mean,"
                   "sim_freq_std,model_dur,sim_dur_mean,sim_dur_std") == 0);
  CHECK(count_lines(sweep) == 4);  // header + 3 grid points
  CHECK(slurp(dir / "trace.csv").find("time_s,event") == 0);
  auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["parameters"]["mode"] == "deterministic");

  CHECK(run_tool("simulate --config /nonexistent.ini").code == 2);
  CHECK(run_tool("simulate --mode warpdrive").code == 2);
}

TEST_CASE("cli: config files feed options and flags override them") {
  auto dir = fresh_dir("config");
  std::ofstream cfg(dir / "sim.ini");
  cfg << "# sweep setup\n"
      << "runs = 1\n"
      << "session = 1000\n"
      << "loss-min = 0.02\n"
      << "loss-max = 0.04\n"
      << "loss-step = 0.01\n";
  cfg.close();

  const std::string base =
      "simulate --out-dir " + dir.string() + " --config " + (dir / "sim.ini").string();
  CHECK(run_tool(base).code == 0);
  CHECK(count_lines(slurp(dir / "sweep.csv")) == 4);  // header + 3 grid points

  // The command line wins over the file.
  CHECK(run_tool(base + " --loss-max 0.02").code == 0);
  CHECK(count_lines(slurp(dir / "sweep.csv")) == 2);

  std::ofstream bad(dir / "bad.ini");
  bad << "no-such-option = 1\n";
  bad.close();
  CHECK(run_tool("simulate --config " + (dir / "bad.ini").string()).code == 2);
}

TEST_CASE("cli: simulate can record occupancy") {
  auto dir = fresh_dir("occupancy");
  auto res = run_tool("simulate --out-dir " + dir.string() +
                      " --runs 1 --trace-loss 0.03 --session 500 --record-occupancy");
  CHECK(res.code == 0);
  const std::string occ = slurp(dir / "occupancy.csv");
  CHECK(occ.find("time_s,bytes") == 0);
  CHECK(count_lines(occ) > 100);
}

TEST_CASE("cli: correlate reproduces the study table") {
  auto res = run_tool("correlate");
  CHECK(res.code == 0);
  CHECK(res.out.find("content,r_frequency,r_duration,r_pi") == 0);
  CHECK(count_lines(res.out) == 6);  // header + M, R1, N, C, R2
  CHECK(res.out.find("M,") != std::string::npos);
  CHECK(res.out.find("R2,") != std::string::npos);

  // A file missing the mos column is rejected with exit 2.
  auto dir = fresh_dir("correlate");
  std::ofstream bad(dir / "bad.csv");
  bad << "video_id,content,pi,pause_frequency,avg_pause_duration\n1,M,0.1,0.1,1.0\n";
  bad.close();
  CHECK(run_tool("correlate --input " + (dir / "bad.csv").string()).code == 2);
}

TEST_CASE("cli: analyze computes trace metrics") {
  auto dir = fresh_dir("analyze");
  const fs::path trace_path = dir / "trace.csv";
  pi::write_trace(pi::synthesize_trace(0.11, 3.97, 90.0), trace_path.string());

  auto res = run_tool("analyze " + trace_path.string());
  CHECK(res.code == 0);
  auto metrics = nlohmann::json::parse(res.out);
  CHECK(metrics["pause_intensity"].get<double>() == doctest::Approx(0.4367).epsilon(1e-6));
  CHECK(metrics["pause_frequency_hz"].get<double>() == doctest::Approx(0.11).epsilon(1e-6));
  CHECK(metrics["pause_count"].get<int>() == 9);

  auto windowed = run_tool("analyze " + trace_path.string() + " --window 0:45");
  CHECK(windowed.code == 0);
  auto wm = nlohmann::json::parse(windowed.out);
  CHECK(wm["window"]["end_s"].get<double>() == doctest::Approx(45.0));

  CHECK(run_tool("analyze " + trace_path.string() + " --window oops").code == 2);
  CHECK(run_tool("analyze " + trace_path.string() + " --window 50:10").code == 2);
  CHECK(run_tool("analyze /nonexistent/trace.csv").code == 1);

  std::ofstream bad(dir / "bad.csv");
  bad << "time_s,event\n0.0,play_start\n1.0,play_start\n";
  bad.close();
  CHECK(run_tool("analyze " + (dir / "bad.csv").string()).code == 2);
}

TEST_CASE("cli: analyze writes metrics and manifest with an out dir") {
  auto dir = fresh_dir("analyze_out");
  const fs::path trace_path = dir / "trace.csv";
  pi::write_trace(pi::synthesize_trace(0.1, 2.0, 100.0), trace_path.string());

  auto res = run_tool("analyze " + trace_path.string() + " --out-dir " + dir.string());
  CHECK(res.code == 0);
  auto metrics = nlohmann::json::parse(slurp(dir / "metrics.json"));
  CHECK(metrics["pause_intensity"].get<double>() == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("cli: distributions emits the four curves") {
  auto dir = fresh_dir("distributions");
  auto res = run_tool("distributions --out-dir " + dir.string() + " --points 512");
  CHECK(res.code == 0);
  CHECK(slurp(dir / "loss_pdf.csv").find("x,density") == 0);
  CHECK(slurp(dir / "throughput_pdf.csv").find("x,density") == 0);
  CHECK(slurp(dir / "pause_pmf.csv").find("duration_s,probability") == 0);
  CHECK(slurp(dir / "play_pmf.csv").find("duration_s,probability") == 0);
  CHECK(!fs::exists(dir / "mc_check.json"));

  CHECK(run_tool("distributions --out-dir " + dir.string() + " --shape 0").code == 2);
}
