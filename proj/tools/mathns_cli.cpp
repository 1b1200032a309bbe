// Command-line driver: runs one stage, or the pipeline from a given stage,
// as described by a JSON config. Exit codes: 0 success, 1 stage failure,
// 2 invalid config or usage.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mathns/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Identifier namespace discovery over mathematical documents"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string from_stage = "extract";
  std::string to_stage = "namespaces";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "override the output directory");
  };

  struct Single {
    const char* name;
    const char* help;
    mathns::Stage stage;
  };
  const Single singles[] = {
      {"extract", "identifiers and definition relations per document", mathns::Stage::Extract},
      {"stats", "corpus identifier statistics (needs extract)", mathns::Stage::Stats},
      {"vectorize", "document-identifier matrix (needs extract)", mathns::Stage::Vectorize},
      {"cluster", "cluster the matrix over the parameter grid (needs vectorize)", mathns::Stage::Cluster},
      {"evaluate", "purity, run selection and random baseline (needs cluster)", mathns::Stage::Evaluate},
      {"namespaces", "namespaces and hierarchy mapping (needs evaluate)", mathns::Stage::Namespaces},
  };
  std::optional<mathns::Stage> single;
  for (const auto& s : singles) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    sub->callback([&single, st = s.stage] { single = st; });
  }
  auto* pipeline = app.add_subcommand("pipeline", "run stages in order, reusing artifacts of skipped stages");
  add_common(pipeline);
  pipeline->add_option("--stage", from_stage, "first stage to run")
      ->check(CLI::IsMember({"extract", "stats", "vectorize", "cluster", "evaluate", "namespaces"}));
  pipeline->add_option("--until", to_stage, "last stage to run")
      ->check(CLI::IsMember({"extract", "stats", "vectorize", "cluster", "evaluate", "namespaces"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors share the config-error code
  }

  mathns::PipelineConfig config;
  try {
    config = mathns::load_config(config_path);
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.output_dir = out_dir;
  } catch (const mathns::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (single) {
      mathns::run_pipeline(config, *single, *single);
    } else {
      const auto from = mathns::parse_stage(from_stage), to = mathns::parse_stage(to_stage);
      if (to < from) {
        std::cerr << "error: --until precedes --stage\n";
        return 2;
      }
      mathns::run_pipeline(config, from, to);
    }
  } catch (const mathns::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
