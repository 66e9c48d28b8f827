#ifndef CHUNKGA_PIPELINE_H_
#define CHUNKGA_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "chunkga/factoring.h"
#include "chunkga/ga.h"

namespace chunkga {

// Everything one train/generate cycle needs. Read from flat `key = value`
// text; see write_config for the full key list.
struct RunConfig {
  std::filesystem::path corpus;
  FactorPolicy policy = FactorPolicy::absolute(2);
  int token_order = 3;
  int signature_order = 5;
  GAConfig ga;
  std::filesystem::path output_dir = "out";

  // Throws ConfigError.
  void validate() const;
};

inline constexpr const char* kOutputDirEnv = "CHUNKGA_OUTPUT_DIR";

// Relative paths in the text are resolved against `base_dir`.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const RunConfig& config);
// CHUNKGA_OUTPUT_DIR, when set and non-empty, replaces output_dir.
void apply_env_overrides(RunConfig& config);

// Hex digest over the fields that shape trained artifacts: corpus path,
// factoring policy and both model orders.
std::string training_hash(const RunConfig& config);

// File names inside the output directory.
namespace artifacts {
inline constexpr const char* kInventory = "inventory.tsv";
inline constexpr const char* kTokenLm = "tokens.arpa";
inline constexpr const char* kSignatureLm = "signature.arpa";
inline constexpr const char* kManifest = "manifest.txt";
inline constexpr const char* kTrainConfig = "train.conf";
inline constexpr const char* kStats = "stats.csv";
inline constexpr const char* kPopulation = "population.txt";
inline constexpr const char* kGenerateConfig = "generate.conf";
}  // namespace artifacts

struct TrainSummary {
  std::string config_hash;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::uint64_t template_occurrences = 0;
  std::size_t unique_templates_raw = 0;
  std::size_t unique_templates_factored = 0;
};

// Reads the corpus, factors its templates, trains both models and writes
// inventory, ARPA files, manifest and the resolved config.
TrainSummary cmd_train(const RunConfig& config);

// Checks the manifest against the config, runs the GA and writes stats.csv,
// population.txt and the resolved config. Throws ManifestMismatch.
GAResult cmd_generate(const RunConfig& config);

// Top-k listing with bare-POS surfaces plus fitness and length trajectories.
void cmd_inspect(const std::filesystem::path& dir, std::size_t top_k, std::ostream& out);

// One block character per value, scaled between the series' min and max.
std::string sparkline(std::span<const double> values);

std::map<std::string, std::string> read_manifest(const std::filesystem::path& path);

}  // namespace chunkga

#endif  // CHUNKGA_PIPELINE_H_
