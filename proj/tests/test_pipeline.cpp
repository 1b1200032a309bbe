#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "mathns/mathns.hpp"

namespace {

using namespace mathns;
namespace fs = std::filesystem;

const fs::path kToy = MATHNS_TOY_DIR;

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    const auto tick = std::chrono::steady_clock::now().time_since_epoch().count();
    path = fs::temp_directory_path() / ("mathns_test_" + std::to_string(tick));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

nlohmann::json toy_json() { return artifacts::read_json(kToy / "config.json"); }

PipelineConfig toy_config(const fs::path& out) {
  auto j = toy_json();
  j["output_dir"] = out.string();
  j["evaluation"]["baseline_trials"] = 200;
  return parse_config(j, kToy);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = artifacts::read_text(e.path());
  return out;
}

int run_cli(const std::string& args) {
  const int rc = std::system((std::string(MATHNS_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Config, ParsesToyConfig) {
  const PipelineConfig c = toy_config("/tmp/unused");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.clustering.k, (std::vector<int>{4, 5, 6, 7, 8}));
  EXPECT_EQ(c.mode, Association::Weak);
  EXPECT_TRUE(fs::path(c.corpus).is_absolute());
  EXPECT_EQ(c.hierarchy.min_matches, 2u);
}

TEST(Config, Rejections) {
  auto j = toy_json();
  j.erase("seed");
  EXPECT_THROW(parse_config(j, kToy), ConfigError);
  j = toy_json();
  j["corpus"] = "missing.jsonl";
  EXPECT_THROW(parse_config(j, kToy), ConfigError);
  j = toy_json();
  j["surprise"] = 1;
  EXPECT_THROW(parse_config(j, kToy), ConfigError);
  j = toy_json();
  j["clustering"]["algorithm"] = "spectral";
  EXPECT_THROW(parse_config(j, kToy), ConfigError);
}

TEST(Config, StageNames) {
  for (Stage s : kAllStages) EXPECT_EQ(parse_stage(stage_name(s)), s);
  EXPECT_THROW(parse_stage("train"), ConfigError);
}

TEST(Artifacts, AssignmentTableRoundTrip) {
  artifacts::AssignmentTable t;
  t.runs = {"k2", "k3"};
  t.doc_ids = {"a", "b", "c"};
  t.columns = {ClusterAssignment{{0, 1, 1}, 2, {}}, ClusterAssignment{{2, -1, 0}, 3, {}}};
  const auto back = artifacts::parse_assignment_table(artifacts::format_assignment_table(t));
  EXPECT_EQ(back.runs, t.runs);
  EXPECT_EQ(back.doc_ids, t.doc_ids);
  EXPECT_EQ(back.columns[1].labels, t.columns[1].labels);
  EXPECT_EQ(back.columns[1].K, 3);
  EXPECT_THROW(artifacts::parse_assignment_table("x\ty\n"), ParseError);
}

TEST(Pipeline, DeterministicAndComplete) {
  TempDir a, b;
  run_pipeline(toy_config(a.path));
  run_pipeline(toy_config(b.path));
  const auto sa = snapshot(a.path), sb = snapshot(b.path);
  EXPECT_EQ(sa, sb);
  for (const char* f : {artifacts::kRelations, artifacts::kIdentifiers, artifacts::kStats, artifacts::kMatrix,
                        artifacts::kMatrixMeta, artifacts::kAssignments, artifacts::kClusterRuns, artifacts::kPurity,
                        artifacts::kAssignment, artifacts::kNamespaces, artifacts::kHierarchyMap})
    EXPECT_TRUE(sa.count(f)) << f;
}

TEST(Pipeline, GridProducesOneRunPerSetting) {
  TempDir d;
  run_pipeline(toy_config(d.path), Stage::Extract, Stage::Evaluate);
  const auto table = artifacts::parse_assignment_table(artifacts::read_text(d.path / artifacts::kAssignments));
  EXPECT_EQ(table.runs, (std::vector<std::string>{"k4", "k5", "k6", "k7", "k8"}));
  EXPECT_EQ(table.doc_ids.size(), 30u);
  const auto purity = artifacts::read_json(d.path / artifacts::kPurity);
  EXPECT_EQ(purity["runs"].size(), 5u);
  EXPECT_TRUE(purity["selected"].is_string());
  EXPECT_FALSE(fs::exists(d.path / artifacts::kNamespaces));
}

TEST(Pipeline, RestartFromStageReproducesOutput) {
  TempDir d;
  const PipelineConfig c = toy_config(d.path);
  run_pipeline(c);
  const auto full = snapshot(d.path);
  fs::remove(d.path / artifacts::kAssignments);
  fs::remove(d.path / artifacts::kNamespaces);
  run_pipeline(c, Stage::Cluster);
  EXPECT_EQ(snapshot(d.path), full);
}

TEST(Pipeline, MissingArtifactNamesTheStage) {
  TempDir d;
  try {
    run_pipeline(toy_config(d.path), Stage::Cluster, Stage::Cluster);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "cluster");
  }
}

TEST(Pipeline, SvdReductionNamesRuns) {
  TempDir d;
  auto j = toy_json();
  j["output_dir"] = d.path.string();
  j["reduction"] = {{"method", "svd"}, {"rank", {5, 8}}};
  j["clustering"]["k"] = {5};
  run_pipeline(parse_config(j, kToy), Stage::Extract, Stage::Cluster);
  const auto table = artifacts::parse_assignment_table(artifacts::read_text(d.path / artifacts::kAssignments));
  EXPECT_EQ(table.runs, (std::vector<std::string>{"svd5_k5", "svd8_k5"}));
}

TEST(Cli, PipelineAndSeedOverride) {
  TempDir d;
  const std::string cfg = (kToy / "config.json").string();
  EXPECT_EQ(run_cli("pipeline --config " + cfg + " --out " + d.path.string() + " --until vectorize"), 0);
  EXPECT_TRUE(fs::exists(d.path / artifacts::kMatrix));
  EXPECT_FALSE(fs::exists(d.path / artifacts::kAssignments));
  EXPECT_EQ(run_cli("cluster --config " + cfg + " --out " + d.path.string() + " --seed 7"), 0);
  EXPECT_TRUE(fs::exists(d.path / artifacts::kAssignments));
}

TEST(Cli, ErrorsGiveNonzeroExit) {
  TempDir d;
  const fs::path bad = d.path / "bad.json";
  std::ofstream(bad) << R"({"seed": 1, "corpus": "nope.jsonl"})";
  EXPECT_EQ(run_cli("pipeline --config " + bad.string()), 2);
  EXPECT_EQ(run_cli("pipeline --config " + (d.path / "absent.json").string()), 2);
  EXPECT_EQ(run_cli("evaluate --config " + (kToy / "config.json").string() + " --out " + (d.path / "empty").string()), 1);
}

}  // namespace
