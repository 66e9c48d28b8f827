// chunkga: train models from a chunked corpus, evolve template sequences,
// inspect the results.
//
//   chunkga train --config run.conf
//   chunkga generate --config run.conf
//   chunkga inspect out/ --top 10

#include <iostream>

#include "CLI11.hpp"
#include "chunkga/errors.h"
#include "chunkga/pipeline.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Template-sequence generation with a genetic algorithm"};
  app.require_subcommand(1);

  std::string config_path;
  auto* train = app.add_subcommand("train", "factor templates and train both language models");
  train->add_option("--config", config_path, "run config (key = value)")->required();
  auto* generate = app.add_subcommand("generate", "evolve a population from trained artifacts");
  generate->add_option("--config", config_path, "run config (key = value)")->required();

  std::string result_dir;
  std::size_t top_k = 10;
  auto* inspect = app.add_subcommand("inspect", "summarise a generate run");
  inspect->add_option("dir", result_dir, "output directory of a generate run")->required();
  inspect->add_option("--top", top_k, "chromosomes to list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (inspect->parsed()) {
      chunkga::cmd_inspect(result_dir, top_k, std::cout);
      return 0;
    }
    chunkga::RunConfig config = chunkga::load_config(config_path);
    chunkga::apply_env_overrides(config);
    if (train->parsed()) {
      auto s = chunkga::cmd_train(config);
      std::cout << "trained " << config.output_dir.string() << ": " << s.sentences << " sentences, "
                << s.tokens << " tokens, " << s.unique_templates_raw << " -> "
                << s.unique_templates_factored << " unique templates (config " << s.config_hash
                << ")\n";
    } else if (generate->parsed()) {
      auto result = chunkga::cmd_generate(config);
      const auto& last = result.stats.back();
      std::cout << "generation " << last.generation << ": mean fitness " << last.mean_fitness
                << ", max fitness " << last.max_fitness << ", mean length " << last.mean_len
                << "\n";
    }
  } catch (const chunkga::ConfigError& e) {
    std::cerr << "chunkga: " << e.what() << '\n';
    return kUsageError;
  } catch (const chunkga::Error& e) {
    std::cerr << "chunkga: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
