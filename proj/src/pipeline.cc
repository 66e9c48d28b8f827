#include "chunkga/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "chunkga/arpa.h"
#include "chunkga/errors.h"

namespace chunkga {
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
    auto v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace

void RunConfig::validate() const {
  policy.validate();
  if (token_order < 1 || token_order > kMaxOrder || signature_order < 1 ||
      signature_order > kMaxOrder) {
    throw ConfigError("lm orders must lie in [1, " + std::to_string(kMaxOrder) + "]");
  }
  ga.validate();
}

RunConfig parse_config(std::istream& in, const fs::path& base_dir) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + key);
    }
    if (key == "corpus") {
      cfg.corpus = resolve(base_dir, value);
    } else if (key == "output_dir") {
      cfg.output_dir = resolve(base_dir, value);
    } else if (key == "factor.mode") {
      cfg.policy.mode = parse_factor_mode(value);
    } else if (key == "factor.threshold") {
      cfg.policy.threshold = parse_uint(key, value);
    } else if (key == "lm.token_order") {
      cfg.token_order = static_cast<int>(parse_uint(key, value));
    } else if (key == "lm.signature_order") {
      cfg.signature_order = static_cast<int>(parse_uint(key, value));
    } else if (key == "ga.population_size") {
      cfg.ga.population_size = parse_uint(key, value);
    } else if (key == "ga.tournament_size") {
      cfg.ga.tournament_size = parse_uint(key, value);
    } else if (key == "ga.nbest") {
      cfg.ga.nbest = parse_uint(key, value);
    } else if (key == "ga.mutation_p") {
      cfg.ga.mutation_p = parse_double(key, value);
    } else if (key == "ga.target_length") {
      cfg.ga.target_length = parse_uint(key, value);
    } else if (key == "ga.generations") {
      cfg.ga.generations = parse_uint(key, value);
    } else if (key == "ga.rng") {
      if (value != Rng::kAlgorithm) {
        throw ConfigError("ga.rng: only " + std::string(Rng::kAlgorithm) + " is supported");
      }
    } else if (key == "seed") {
      cfg.ga.rng_seed = parse_uint(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (cfg.corpus.empty()) throw ConfigError("config: corpus is required");
  cfg.validate();
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

void write_config(std::ostream& out, const RunConfig& c) {
  char mutation[32];
  std::snprintf(mutation, sizeof mutation, "%.17g", c.ga.mutation_p);
  out << "corpus = " << c.corpus.string() << '\n'
      << "output_dir = " << c.output_dir.string() << '\n'
      << "factor.mode = " << c.policy.mode_name() << '\n'
      << "factor.threshold = " << c.policy.threshold << '\n'
      << "lm.token_order = " << c.token_order << '\n'
      << "lm.signature_order = " << c.signature_order << '\n'
      << "ga.population_size = " << c.ga.population_size << '\n'
      << "ga.tournament_size = " << c.ga.tournament_size << '\n'
      << "ga.nbest = " << c.ga.nbest << '\n'
      << "ga.mutation_p = " << mutation << '\n'
      << "ga.target_length = " << c.ga.target_length << '\n'
      << "ga.generations = " << c.ga.generations << '\n'
      << "ga.rng = " << Rng::kAlgorithm << '\n'
      << "seed = " << c.ga.rng_seed << '\n';
}

void apply_env_overrides(RunConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) config.output_dir = dir;
}

std::string training_hash(const RunConfig& c) {
  std::ostringstream canon;
  canon << "corpus=" << c.corpus.string() << '\n'
        << "factor.mode=" << c.policy.mode_name() << '\n'
        << "factor.threshold=" << c.policy.threshold << '\n'
        << "lm.token_order=" << c.token_order << '\n'
        << "lm.signature_order=" << c.signature_order << '\n';
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon.str())));
  return buf;
}

std::map<std::string, std::string> read_manifest(const fs::path& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("corrupt manifest " + path.string());
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

TrainSummary cmd_train(const RunConfig& config) {
  config.validate();
  auto sentences = read_conll_file(config.corpus);
  if (sentences.empty()) throw EmptyCorpus();

  TrainSummary summary;
  summary.config_hash = training_hash(config);
  summary.sentences = sentences.size();
  for (const auto& s : sentences) summary.tokens += s.tokens.size();

  const CountTable table = token_counts(sentences);
  const TemplateInventory raw = extract_templates(sentences);
  const TemplateInventory factored = factor_inventory(raw, table, config.policy);
  summary.template_occurrences = factored.total();
  summary.unique_templates_raw = raw.size();
  summary.unique_templates_factored = factored.size();

  const NGramModel token_lm =
      train_kn(factored_token_stream(sentences, table, config.policy), config.token_order);
  const NGramModel signature_lm = train_kn(factored.signatures(), config.signature_order);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());

  const fs::path dir = config.output_dir;
  {
    auto out = open_out(dir / artifacts::kInventory);
    write_inventory(out, factored);
    finish(out, dir / artifacts::kInventory);
  }
  write_arpa_file(dir / artifacts::kTokenLm, token_lm);
  write_arpa_file(dir / artifacts::kSignatureLm, signature_lm);
  {
    auto out = open_out(dir / artifacts::kManifest);
    out << "config_hash = " << summary.config_hash << '\n'
        << "sentences = " << summary.sentences << '\n'
        << "tokens = " << summary.tokens << '\n'
        << "template_occurrences = " << summary.template_occurrences << '\n'
        << "unique_templates_raw = " << summary.unique_templates_raw << '\n'
        << "unique_templates_factored = " << summary.unique_templates_factored << '\n'
        << "vocabulary = " << table.size() << '\n';
    finish(out, dir / artifacts::kManifest);
  }
  {
    auto out = open_out(dir / artifacts::kTrainConfig);
    write_config(out, config);
    finish(out, dir / artifacts::kTrainConfig);
  }
  return summary;
}

GAResult cmd_generate(const RunConfig& config) {
  config.validate();
  const fs::path dir = config.output_dir;
  auto manifest = read_manifest(dir / artifacts::kManifest);
  const std::string expected = training_hash(config);
  if (manifest["config_hash"] != expected) {
    throw ManifestMismatch("artifacts in " + dir.string() + " were trained with config hash '" +
                           manifest["config_hash"] + "', this config hashes to '" + expected +
                           "'; rerun train");
  }

  TemplateInventory inventory;
  {
    auto in = open_in(dir / artifacts::kInventory);
    inventory = read_inventory(in);
  }
  const NGramModel token_lm = read_arpa_file(dir / artifacts::kTokenLm);
  const NGramModel signature_lm = read_arpa_file(dir / artifacts::kSignatureLm);
  if (token_lm.order() != config.token_order || signature_lm.order() != config.signature_order) {
    throw ManifestMismatch("model orders on disk do not match the config");
  }

  GAResult result = run({inventory, token_lm, signature_lm, config.ga});

  {
    auto out = open_out(dir / artifacts::kStats);
    write_stats_csv(out, result.stats);
    finish(out, dir / artifacts::kStats);
  }
  {
    auto out = open_out(dir / artifacts::kPopulation);
    write_population(out, result.population);
    finish(out, dir / artifacts::kPopulation);
  }
  {
    auto out = open_out(dir / artifacts::kGenerateConfig);
    write_config(out, config);
    finish(out, dir / artifacts::kGenerateConfig);
  }
  return result;
}

std::string sparkline(std::span<const double> values) {
  static constexpr const char* kBlocks[] = {"▁", "▂", "▃", "▄", "▅", "▆", "▇", "█"};
  if (values.empty()) return {};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  std::string out;
  for (double v : values) {
    int level = range > 0 ? static_cast<int>((v - *lo) / range * 7.0 + 0.5) : 3;
    out += kBlocks[std::clamp(level, 0, 7)];
  }
  return out;
}

void cmd_inspect(const fs::path& dir, std::size_t top_k, std::ostream& out) {
  std::vector<PopulationRow> rows;
  std::vector<GenerationStats> stats;
  try {
    auto pin = open_in(dir / artifacts::kPopulation);
    rows = read_population(pin);
    auto sin = open_in(dir / artifacts::kStats);
    stats = read_stats_csv(sin);
  } catch (const MalformedLine& e) {
    throw IoError("corrupt result files in " + dir.string() + ": " + e.what());
  }
  if (rows.empty() || stats.empty()) throw IoError("empty result files in " + dir.string());

  std::stable_sort(rows.begin(), rows.end(),
                   [](const PopulationRow& a, const PopulationRow& b) { return a.fitness > b.fitness; });
  const std::size_t shown = std::min(top_k, rows.size());
  out << "top " << shown << " of " << rows.size() << " chromosomes\n";
  char num[32];
  for (std::size_t i = 0; i < shown; ++i) {
    std::snprintf(num, sizeof num, "%8.6f", rows[i].fitness);
    out << (i + 1) << '\t' << num << '\t' << display_surface(rows[i].surface) << "\t["
        << rows[i].signature << "]\n";
  }

  std::vector<double> fit, len;
  for (const auto& s : stats) {
    fit.push_back(s.mean_fitness);
    len.push_back(s.mean_len);
  }
  auto range = [&](const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g .. %.4g", *lo, *hi);
    return std::string(buf);
  };
  out << "\ngenerations 0.." << stats.back().generation << '\n';
  out << "mean fitness  " << sparkline(fit) << "  (" << range(fit) << ")\n";
  out << "mean length   " << sparkline(len) << "  (" << range(len) << ")\n";
  const auto& last = stats.back();
  std::snprintf(num, sizeof num, "%.4g", last.max_fitness);
  out << "final: max fitness " << num;
  std::snprintf(num, sizeof num, "%.4g", last.mean_len);
  out << ", mean length " << num;
  std::snprintf(num, sizeof num, "%.4g", last.std_len);
  out << ", length sd " << num << '\n';
}

}  // namespace chunkga
