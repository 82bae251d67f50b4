#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "triwave/cli/app.hpp"
#include "triwave/cli/checkpoint.hpp"

namespace fs = std::filesystem;
using triwave::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "triwave");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "triwave_cli_test" / name;
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json summary_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

}  // namespace

TEST(Cli, ExactPsi) {
  const fs::path d = fresh("exact");
  const Outcome o = call({"--out", d.string(), "exact", "--family", "psi", "--omega", "0.5"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(summary_of(o)["peak"].get<double>(), 0.75, 1e-12);
  EXPECT_TRUE(fs::exists(d / "exact.csv"));
  EXPECT_TRUE(fs::exists(d / "meta.json"));
}

TEST(Cli, UsageErrors) {
  Outcome o = call({"exact", "--family", "psi", "--no-such-flag"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"exact", "--family", "chi"}).code, 1);
  EXPECT_EQ(call({"groundstate", "--gamma", "1", "--q1", "2"}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);

  o = call({"--out", fresh("badgrid").string(), "exact", "--family", "psi", "--grid-n", "1000"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("points"), std::string::npos);
}

TEST(Cli, IterationCapIsNumericalFailure) {
  const Outcome o = call({"--out", fresh("cap").string(), "groundstate", "--gamma", "1", "--mu", "1", "--s", "1",
                          "--grid-n", "256", "--max-iters", "2", "--restarts", "1"});
  EXPECT_EQ(o.code, 2) << o.err;
}

TEST(Cli, GroundStateThenStabilityAndEvolve) {
  const fs::path d = fresh("pipeline");
  const std::vector<std::string> gs{"--out", d.string(), "groundstate", "--q1", "3", "--q2", "3", "--grid-n", "512"};
  Outcome o = call(gs);
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = summary_of(o);
  EXPECT_NEAR(j["split_a"].get<double>(), 0.5065, 2e-3);
  for (const char* f : {"groundstate.json", "profile.csv", "energy_trace.csv", "state.triw"}) {
    EXPECT_TRUE(fs::exists(d / f)) << f;
  }

  o = call({"--out", d.string(), "stability", "--t-end", "1", "--sample-every", "250"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_LT(summary_of(o)["max_distance"].get<double>(), 0.1);

  o = call({"--out", d.string(), "evolve", "--t-end", "0.5", "--dt", "1e-3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(d / "final.triw"));
  EXPECT_EQ(triwave::cli::checkpoint_read(d / "final.triw").field.size(), 512u);

  // Deterministic: a second run reproduces every artifact except meta.json.
  const fs::path d2 = fresh("pipeline2");
  std::vector<std::string> gs2 = gs;
  gs2[1] = d2.string();
  ASSERT_EQ(call(gs2).code, 0);
  for (const char* f : {"groundstate.json", "profile.csv", "energy_trace.csv", "state.triw"}) {
    EXPECT_EQ(slurp(d / f), slurp(d2 / f)) << f;
  }
  EXPECT_EQ(call({"--out", d2.string(), "stability", "--t-end", "1", "--sample-every", "250"}).code, 0);
  EXPECT_EQ(slurp(d / "stability.csv"), slurp(d2 / "stability.csv"));
}

TEST(Cli, ConvertRoundTrip) {
  const fs::path d = fresh("convert");
  ASSERT_EQ(call({"--out", d.string(), "exact", "--family", "phi", "--grid-n", "256"}).code, 0);
  ASSERT_EQ(call({"convert", "--input", (d / "exact.csv").string(), "--output", (d / "x.triw").string()}).code, 0);
  ASSERT_EQ(call({"convert", "--input", (d / "x.triw").string(), "--output", (d / "y.csv").string()}).code, 0);
  EXPECT_EQ(slurp(d / "exact.csv"), slurp(d / "y.csv"));
}

TEST(Cli, ConfigFile) {
  const fs::path d = fresh("config");
  fs::create_directories(d);
  std::ofstream(d / "run.toml") << "[exact]\nfamily = \"psi\"\nomega = 2.0\n";
  const Outcome o = call({"--out", d.string(), "--config", (d / "run.toml").string(), "exact"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(summary_of(o)["peak"].get<double>(), 3.0, 1e-12);
}
