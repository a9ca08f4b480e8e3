#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "srsim/cli.hpp"

using namespace srsim;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("srsim_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

RunConfig make_config(const std::string& text, const fs::path& out_dir,
                      std::vector<std::pair<std::string, std::string>> overrides = {}) {
  overrides.emplace_back("output.out_dir", out_dir.string());
  return parse_config_text(text, overrides);
}

}  // namespace

TEST_CASE("run command writes episode outputs for the weak scenario") {
  const fs::path dir = fresh_dir("run_weak");
  const RunConfig config = make_config("", dir);
  std::ostringstream console;
  REQUIRE(cli::cmd_run(config, console) == 0);

  REQUIRE(console.str() ==
          "kind=episode t=200 mean_throughput_mbps=85.873125 "
          "min_bss_throughput_mbps=85.873125\nout_dir=" +
              dir.string() + "\n");

  const std::string resolved = read_file(dir / "config_resolved.ini");
  REQUIRE(resolved.rfind("# schema=config.v1\n# config_hash=" + config.config_hash_hex + "\n",
                         0) == 0);
  REQUIRE(resolved == "# schema=config.v1\n# config_hash=" + config.config_hash_hex + "\n" +
                          config.canonical_text);

  const std::string summary = read_file(dir / "summary.txt");
  REQUIRE_THAT(summary, ContainsSubstring("# schema=summary.v1\n"));
  REQUIRE_THAT(summary, ContainsSubstring("kind=episode\n"));
  REQUIRE_THAT(summary, ContainsSubstring("mean_throughput_mbps=85.873125\n"));
  REQUIRE_THAT(summary, ContainsSubstring("bss.0.mean_throughput_mbps=85.873125\n"));
  REQUIRE_THAT(summary, ContainsSubstring("bss.1.action_hist=0:186,1:0,2:0,3:14\n"));

  const std::string trace = read_file(dir / "trace.csv");
  REQUIRE(trace.rfind("# schema=trace.v1\n", 0) == 0);
  REQUIRE_THAT(trace,
               ContainsSubstring("t,bss_id,action_index,cst_dbm,power_dbm,throughput_mbps,reward\n"));
  REQUIRE(count_lines(trace) == 2 + 1 + 200 * 2);
  REQUIRE_THAT(trace, ContainsSubstring("\n1,0,3,-82,20,60.937500,0.500000000\n"));
  REQUIRE_THAT(trace, ContainsSubstring("\n200,1,0,-72,10,87.750000,0.720000000\n"));

  REQUIRE_FALSE(fs::exists(dir / "agents.csv"));
  fs::remove_all(dir);
}

TEST_CASE("trace level controls which artifacts appear") {
  const fs::path dir = fresh_dir("run_levels");
  std::ostringstream console;

  cli::cmd_run(make_config("[output]\ntrace_level = summary\n", dir), console);
  REQUIRE(fs::exists(dir / "summary.txt"));
  REQUIRE_FALSE(fs::exists(dir / "trace.csv"));
  fs::remove_all(dir);

  cli::cmd_run(make_config("[output]\ntrace_level = debug\n", dir), console);
  REQUIRE(fs::exists(dir / "trace.csv"));
  const std::string agents = read_file(dir / "agents.csv");
  REQUIRE(agents.rfind("# schema=agents.v1\n", 0) == 0);
  REQUIRE_THAT(agents, ContainsSubstring("bss.0.last_action=0\n"));
  REQUIRE_THAT(agents, ContainsSubstring("bss.1.pi="));
  REQUIRE_THAT(agents, ContainsSubstring("bss.1.q.3="));
  fs::remove_all(dir);
}

TEST_CASE("static learners show up as non-learners in the agent dump") {
  const fs::path dir = fresh_dir("run_static_agents");
  std::ostringstream console;
  cli::cmd_run(make_config("[scenario]\npolicy = static,regret_matching\n[output]\ntrace_level = "
                           "debug\n",
                           dir),
               console);
  const std::string agents = read_file(dir / "agents.csv");
  REQUIRE_THAT(agents, ContainsSubstring("bss.0.learner=none\n"));
  REQUIRE_THAT(agents, ContainsSubstring("bss.1.last_action="));
  fs::remove_all(dir);
}

TEST_CASE("repeated runs are byte identical") {
  const fs::path dir = fresh_dir("run_repeat");
  std::ostringstream console_a, console_b;
  cli::cmd_run(make_config("[output]\ntrace_level = debug\n", dir), console_a);
  const std::string summary_a = read_file(dir / "summary.txt");
  const std::string trace_a = read_file(dir / "trace.csv");
  const std::string agents_a = read_file(dir / "agents.csv");
  const std::string resolved_a = read_file(dir / "config_resolved.ini");
  fs::remove_all(dir);
  cli::cmd_run(make_config("[output]\ntrace_level = debug\n", dir), console_b);
  REQUIRE(console_a.str() == console_b.str());
  REQUIRE(read_file(dir / "summary.txt") == summary_a);
  REQUIRE(read_file(dir / "trace.csv") == trace_a);
  REQUIRE(read_file(dir / "agents.csv") == agents_a);
  REQUIRE(read_file(dir / "config_resolved.ini") == resolved_a);
  fs::remove_all(dir);
}

TEST_CASE("run command aggregates campaigns for random scenarios") {
  const fs::path dir = fresh_dir("run_campaign");
  const RunConfig config = make_config(
      "[scenario]\nkind = random\nnum_deployments = 3\nt_iterations = 30\n", dir);
  std::ostringstream console;
  cli::cmd_run(config, console);
  REQUIRE_THAT(console.str(), ContainsSubstring("kind=campaign deployments=3 mean_of_means_mbps="));

  const std::string summary = read_file(dir / "summary.txt");
  REQUIRE_THAT(summary, ContainsSubstring("kind=campaign\n"));
  REQUIRE_THAT(summary, ContainsSubstring("num_deployments=3\n"));
  REQUIRE_THAT(summary, ContainsSubstring("deployment.2.mean_mbps="));
  REQUIRE(fs::exists(dir / "trace.csv"));  // full trace level traces deployment 0
  fs::remove_all(dir);
}

TEST_CASE("sweep command crosses values with policies") {
  const fs::path dir = fresh_dir("sweep_random");
  const RunConfig config = make_config(
      "[scenario]\nkind = random\nnum_deployments = 2\nt_iterations = 15\n"
      "[sweep]\nvariable = d_ap_ap\nvalues = 3,9\npolicies = static,regret_matching\n",
      dir);
  std::ostringstream console;
  REQUIRE(cli::cmd_sweep(config, console) == 0);
  REQUIRE_THAT(console.str(), ContainsSubstring("kind=sweep variable=d_ap_ap rows=4\n"));

  const std::string sweep = read_file(dir / "sweep.csv");
  REQUIRE(sweep.rfind("# schema=sweep.v1\n", 0) == 0);
  REQUIRE_THAT(sweep,
               ContainsSubstring("variable,value,policy,mean_throughput_mbps,min_throughput_mbps\n"));
  REQUIRE(count_lines(sweep) == 2 + 1 + 4);
  REQUIRE_THAT(sweep, ContainsSubstring("\nd_ap_ap,3,static,"));
  REQUIRE_THAT(sweep, ContainsSubstring("\nd_ap_ap,9,regret_matching,"));
  fs::remove_all(dir);
}

TEST_CASE("policy sweeps on the weak scenario reproduce the known cell values") {
  const fs::path dir = fresh_dir("sweep_policy");
  const RunConfig config = make_config(
      "[sweep]\nvariable = policy\nvalues = static,regret_matching\n", dir);
  std::ostringstream console;
  cli::cmd_sweep(config, console);
  const std::string sweep = read_file(dir / "sweep.csv");
  REQUIRE_THAT(sweep,
               ContainsSubstring("\npolicy,static,static,60.937500,60.937500\n"));
  REQUIRE_THAT(sweep, ContainsSubstring(
                          "\npolicy,regret_matching,regret_matching,85.873125,85.873125\n"));
  fs::remove_all(dir);
}

TEST_CASE("seed sweeps fall back to the configured policy") {
  const fs::path dir = fresh_dir("sweep_seed");
  const RunConfig config = make_config(
      "[scenario]\nkind = random\nnum_deployments = 2\nt_iterations = 10\n"
      "[sweep]\nvariable = seed\nvalues = 1,2,3\n",
      dir);
  std::ostringstream console;
  cli::cmd_sweep(config, console);
  REQUIRE_THAT(console.str(), ContainsSubstring("rows=3\n"));
  REQUIRE_THAT(read_file(dir / "sweep.csv"), ContainsSubstring("\nseed,2,regret_matching,"));
  fs::remove_all(dir);
}

TEST_CASE("sweep validation") {
  const fs::path dir = fresh_dir("sweep_bad");
  std::ostringstream console;
  REQUIRE_THROWS_WITH(cli::cmd_sweep(make_config("", dir), console),
                      ContainsSubstring("sweep.values: must be non-empty"));
  REQUIRE_THROWS_WITH(
      cli::cmd_sweep(make_config("[sweep]\nvariable = d_ap_ap\nvalues = 2,4\n", dir), console),
      ContainsSubstring("d_ap_ap is fixed for toy scenarios"));
  REQUIRE_THROWS_WITH(
      cli::cmd_sweep(
          make_config("[scenario]\nkind = random\n[sweep]\nvariable = d_ap_ap\nvalues = -2\n",
                      dir),
          console),
      ContainsSubstring("must be > 0"));
  REQUIRE_THROWS_WITH(
      cli::cmd_sweep(make_config("[sweep]\nvariable = policy\nvalues = static\npolicies = "
                                 "static\n",
                                 dir),
                     console),
      ContainsSubstring("sweep.policies: not used"));
  const std::string pd =
      "[scenario]\nkind = abstract_game\n[abstract_game]\nnum_actions = 2,2\n"
      "payoffs_player0 = 0.6,0;1,0.2\npayoffs_player1 = 0.6,1;0,0.2\n"
      "[sweep]\nvalues = 1\n";
  REQUIRE_THROWS_WITH(cli::cmd_sweep(make_config(pd, dir), console),
                      ContainsSubstring("not supported for abstract_game"));
  fs::remove_all(dir);
}

TEST_CASE("oracle reports the brute-force optimum for both fixed scenarios") {
  const fs::path dir = fresh_dir("oracle");
  std::ostringstream weak;
  const RunConfig weak_config = make_config("", dir);
  cli::cmd_oracle(weak_config, weak);
  REQUIRE(weak.str() == "# schema=oracle.v1\n# config_hash=" + weak_config.config_hash_hex +
                            "\nobjective=sum\nprofile_indices=0,0\n"
                            "profile_actions=(-72,10);(-72,10)\n"
                            "sum_throughput_mbps=175.500000\n"
                            "min_throughput_mbps=87.750000\n"
                            "pure_nash=false\n");

  std::ostringstream strong;
  const RunConfig strong_config = make_config("[scenario]\nkind = toy_strong\n", dir);
  cli::cmd_oracle(strong_config, strong);
  REQUIRE_THAT(strong.str(), ContainsSubstring("profile_indices=1,1\n"));
  REQUIRE_THAT(strong.str(), ContainsSubstring("profile_actions=(-72,20);(-72,20)\n"));
  REQUIRE_THAT(strong.str(), ContainsSubstring("sum_throughput_mbps=243.750000\n"));
  REQUIRE_THAT(strong.str(), ContainsSubstring("min_throughput_mbps=121.875000\n"));
  REQUIRE_THAT(strong.str(), ContainsSubstring("pure_nash=true\n"));

  std::ostringstream console;
  const std::string pd =
      "[scenario]\nkind = abstract_game\n[abstract_game]\nnum_actions = 2,2\n"
      "payoffs_player0 = 0.6,0;1,0.2\npayoffs_player1 = 0.6,1;0,0.2\n";
  REQUIRE_THROWS_WITH(cli::cmd_oracle(make_config(pd, dir), console),
                      ContainsSubstring("not supported for abstract_game"));
}

TEST_CASE("load_config falls back to built-in defaults without a file") {
  cli::CliOptions opts;
  const RunConfig c = cli::load_config(opts);
  REQUIRE(c.spec.kind == ScenarioKind::toy_weak);
  opts.config_path = "/definitely/not/here.ini";
  REQUIRE_THROWS_AS(cli::load_config(opts), ConfigError);
}
