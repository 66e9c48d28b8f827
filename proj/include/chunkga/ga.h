#ifndef CHUNKGA_GA_H_
#define CHUNKGA_GA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chunkga/corpus.h"
#include "chunkga/ngram.h"
#include "chunkga/rng.h"

namespace chunkga {

// An ordered list of templates with its rendered token stream and chunk-tag
// signature cached alongside.
class Chromosome {
 public:
  // Throws std::invalid_argument for an empty template list.
  static Chromosome of(const TemplateInventory& inventory, std::vector<TemplateId> templates);
  static Chromosome single(const TemplateInventory& inventory, TemplateId id);

  const std::vector<TemplateId>& templates() const { return templates_; }
  const std::vector<std::string>& surface() const { return surface_; }
  const std::vector<std::string>& signature() const { return signature_; }
  // In templates.
  std::size_t length() const { return templates_.size(); }

  // True when the caches equal a fresh rendering of templates().
  bool coherent_with(const TemplateInventory& inventory) const;

  friend Chromosome crossover(const Chromosome& left, const Chromosome& right);

 private:
  Chromosome() = default;

  std::vector<TemplateId> templates_;
  std::vector<std::string> surface_;
  std::vector<std::string> signature_;
};

// Juxtaposition: left's templates followed by right's.
Chromosome crossover(const Chromosome& left, const Chromosome& right);

struct GAConfig {
  std::size_t population_size = 1000;
  std::size_t tournament_size = 10;
  std::size_t nbest = 10;
  double mutation_p = 0.05;
  std::size_t target_length = 7;  // L, in templates
  std::size_t generations = 100;
  std::uint64_t rng_seed = 1;

  // Parents keep floor(P/2) places, offspring the rest. Not configurable.
  static constexpr double kParentShare = 0.5;
  // Candidate pairs tried per generation before giving up on offspring, as a
  // multiple of the population size.
  static constexpr std::size_t kPairCapFactor = 10'000;

  // Throws ConfigError.
  void validate() const;
};

struct Individual {
  Chromosome chromosome;
  double fitness = 0.0;
};

struct GenerationStats {
  std::size_t generation = 0;
  double mean_fitness = 0.0;
  double max_fitness = 0.0;
  double mean_len = 0.0;
  double std_len = 0.0;

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct GAState {
  std::size_t generation = 0;
  std::vector<Individual> population;
  std::vector<GenerationStats> stats;
};

struct GAResult {
  std::vector<Individual> population;
  std::vector<GenerationStats> stats;
};

// Everything a generation reads but never writes.
struct Evolution {
  const TemplateInventory& inventory;
  const NGramModel& token_lm;      // over factored tokens; gates crossover
  const NGramModel& signature_lm;  // over chunk tags; scores fitness
  const GAConfig& config;
};

// P(first token of right | last two tokens of left) under the token model.
double junction_probability(const NGramModel& token_lm, const Chromosome& left,
                            const Chromosome& right);

// With probability mutation_p, a fresh single-template chromosome drawn
// uniformly from the inventory; otherwise `c` unchanged.
Chromosome mutate(Chromosome c, const TemplateInventory& inventory, const GAConfig& config,
                  Rng& rng);

// 10^-max(NLp / len, NLt / ((len + 2) * max(1, |L - len|))) where NLp and NLt
// are the negated log10 probabilities of the signature without and with
// sentence boundaries, and len counts templates. Lies in (0, 1].
double fitness(const Chromosome& c, const NGramModel& signature_lm, const GAConfig& config);

GenerationStats compute_stats(std::size_t generation, std::span<const Individual> population);

// population_size single-template chromosomes drawn uniformly from the
// inventory. Throws EmptyInventory.
GAState init_population(const Evolution& evo, Rng& rng);

// One tournament: sample tournament_size parents without replacement, try
// every ordered pair (p, q) with p != q, accept with the junction probability,
// mutate and score each offspring, and return the nbest fittest (ties by
// production order).
std::vector<Individual> tournament_round(const GAState& state, const Evolution& evo, Rng& rng);

// Runs tournaments until ceil(P/2) offspring exist (or the pair cap is hit),
// then keeps the fittest floor(P/2) parents followed by the fittest offspring,
// padding with the next-fittest parents up to P.
void evolve_generation(GAState& state, const Evolution& evo, Rng& rng);

using GenerationObserver = std::function<void(const GAState&)>;

// init_population followed by config.generations generations, all driven by
// one Rng seeded from config.rng_seed. The observer sees the state after
// initialisation and after every generation.
GAResult run(const Evolution& evo, const GenerationObserver& observer = {});

// `generation,mean_fitness,max_fitness,mean_len,std_len`
void write_stats_csv(std::ostream& out, std::span<const GenerationStats> stats);
std::vector<GenerationStats> read_stats_csv(std::istream& in);

struct PopulationRow {
  std::string surface;    // tokens joined by spaces, factors as __POS__
  std::string signature;  // tags joined by spaces
  double fitness = 0.0;
};

// One line per chromosome, fittest first: surface<TAB>signature<TAB>fitness.
void write_population(std::ostream& out, std::span<const Individual> population);
std::vector<PopulationRow> read_population(std::istream& in);

// Factor markers shown as bare POS tags: "in the __NN__" -> "in the NN".
std::string display_surface(std::span<const std::string> tokens);
std::string display_surface(const std::string& rendered);

}  // namespace chunkga

#endif  // CHUNKGA_GA_H_
