#include "chunkga/ga.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chunkga/errors.h"

namespace chunkga {
namespace {

std::string join(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ' ';
    out += parts[i];
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Fittest first; equal fitness keeps the incoming order.
void sort_by_fitness(std::vector<Individual>& individuals) {
  std::stable_sort(individuals.begin(), individuals.end(),
                   [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
}

}  // namespace

Chromosome Chromosome::of(const TemplateInventory& inventory, std::vector<TemplateId> templates) {
  if (templates.empty()) throw std::invalid_argument("chromosome needs at least one template");
  Chromosome c;
  c.templates_ = std::move(templates);
  c.signature_.reserve(c.templates_.size());
  for (TemplateId id : c.templates_) {
    const Template& t = inventory.at(id);
    for (const auto& item : t.items) c.surface_.push_back(item.render());
    c.signature_.push_back(t.tag);
  }
  return c;
}

Chromosome Chromosome::single(const TemplateInventory& inventory, TemplateId id) {
  return of(inventory, {id});
}

bool Chromosome::coherent_with(const TemplateInventory& inventory) const {
  if (templates_.empty()) return false;
  Chromosome fresh = of(inventory, templates_);
  return fresh.surface_ == surface_ && fresh.signature_ == signature_;
}

Chromosome crossover(const Chromosome& left, const Chromosome& right) {
  Chromosome c = left;
  c.templates_.insert(c.templates_.end(), right.templates_.begin(), right.templates_.end());
  c.surface_.insert(c.surface_.end(), right.surface_.begin(), right.surface_.end());
  c.signature_.insert(c.signature_.end(), right.signature_.begin(), right.signature_.end());
  return c;
}

void GAConfig::validate() const {
  if (tournament_size < 2) throw ConfigError("ga.tournament_size must be >= 2");
  if (population_size < tournament_size) {
    throw ConfigError("ga.population_size must be >= ga.tournament_size");
  }
  if (nbest < 1 || nbest > tournament_size * (tournament_size - 1)) {
    throw ConfigError("ga.nbest must lie in [1, k(k-1)] for tournament size k");
  }
  if (!(mutation_p >= 0.0 && mutation_p <= 1.0)) {
    throw ConfigError("ga.mutation_p must lie in [0, 1]");
  }
  if (target_length < 1) throw ConfigError("ga.target_length must be >= 1");
}

double junction_probability(const NGramModel& token_lm, const Chromosome& left,
                            const Chromosome& right) {
  const auto& ls = left.surface();
  std::span<const std::string> context(ls);
  if (context.size() > 2) context = context.last(2);
  return std::pow(10.0, token_lm.logprob(context, right.surface().front()));
}

Chromosome mutate(Chromosome c, const TemplateInventory& inventory, const GAConfig& config,
                  Rng& rng) {
  if (!rng.bernoulli(config.mutation_p)) return c;
  auto id = static_cast<TemplateId>(rng.uniform_index(inventory.size()));
  return Chromosome::single(inventory, id);
}

double fitness(const Chromosome& c, const NGramModel& signature_lm, const GAConfig& config) {
  const auto& sig = c.signature();
  const double len = static_cast<double>(sig.size());
  const double nl_partial = -signature_lm.sequence_logprob(sig, false);
  const double nl_total = -signature_lm.sequence_logprob(sig, true);
  const double gap = std::max(1.0, std::abs(static_cast<double>(config.target_length) - len));
  const double score = std::max(nl_partial / len, nl_total / ((len + 2.0) * gap));
  return std::pow(10.0, -score);
}

GenerationStats compute_stats(std::size_t generation, std::span<const Individual> population) {
  GenerationStats s;
  s.generation = generation;
  if (population.empty()) return s;
  const double n = static_cast<double>(population.size());
  double sum_f = 0, max_f = 0, sum_len = 0;
  for (const auto& ind : population) {
    sum_f += ind.fitness;
    max_f = std::max(max_f, ind.fitness);
    sum_len += static_cast<double>(ind.chromosome.length());
  }
  s.mean_fitness = sum_f / n;
  s.max_fitness = max_f;
  s.mean_len = sum_len / n;
  double var = 0;
  for (const auto& ind : population) {
    const double d = static_cast<double>(ind.chromosome.length()) - s.mean_len;
    var += d * d;
  }
  s.std_len = std::sqrt(var / n);
  return s;
}

GAState init_population(const Evolution& evo, Rng& rng) {
  if (evo.inventory.empty()) throw EmptyInventory();
  GAState state;
  state.population.reserve(evo.config.population_size);
  for (std::size_t i = 0; i < evo.config.population_size; ++i) {
    auto id = static_cast<TemplateId>(rng.uniform_index(evo.inventory.size()));
    Chromosome c = Chromosome::single(evo.inventory, id);
    double f = fitness(c, evo.signature_lm, evo.config);
    state.population.push_back({std::move(c), f});
  }
  state.stats.push_back(compute_stats(0, state.population));
  return state;
}

std::vector<Individual> tournament_round(const GAState& state, const Evolution& evo, Rng& rng) {
  const auto& pop = state.population;
  const std::size_t k = evo.config.tournament_size;

  std::vector<std::size_t> sample;
  sample.reserve(k);
  while (sample.size() < k) {
    std::size_t idx = rng.uniform_index(pop.size());
    if (std::find(sample.begin(), sample.end(), idx) == sample.end()) sample.push_back(idx);
  }

  std::vector<Individual> offspring;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const Chromosome& left = pop[sample[a]].chromosome;
      const Chromosome& right = pop[sample[b]].chromosome;
      if (!rng.bernoulli(junction_probability(evo.token_lm, left, right))) continue;
      Chromosome child = mutate(crossover(left, right), evo.inventory, evo.config, rng);
      double f = fitness(child, evo.signature_lm, evo.config);
      offspring.push_back({std::move(child), f});
    }
  }
  sort_by_fitness(offspring);
  if (offspring.size() > evo.config.nbest) {
    offspring.erase(offspring.begin() + static_cast<std::ptrdiff_t>(evo.config.nbest),
                    offspring.end());
  }
  return offspring;
}

void evolve_generation(GAState& state, const Evolution& evo, Rng& rng) {
  const std::size_t size = evo.config.population_size;
  const std::size_t parent_slots = size / 2;
  const std::size_t offspring_slots = size - parent_slots;
  const std::size_t k = evo.config.tournament_size;
  const std::size_t pair_cap = GAConfig::kPairCapFactor * size;

  std::vector<Individual> offspring;
  std::size_t pairs_tried = 0;
  while (offspring.size() < offspring_slots && pairs_tried < pair_cap) {
    auto round = tournament_round(state, evo, rng);
    pairs_tried += k * (k - 1);
    std::move(round.begin(), round.end(), std::back_inserter(offspring));
  }
  sort_by_fitness(offspring);

  std::vector<Individual> parents = std::move(state.population);
  sort_by_fitness(parents);

  std::vector<Individual> next;
  next.reserve(size);
  auto take_parents = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) next.push_back(std::move(parents[i]));
  };
  take_parents(0, parent_slots);
  const std::size_t kept = std::min(offspring_slots, offspring.size());
  std::move(offspring.begin(), offspring.begin() + static_cast<std::ptrdiff_t>(kept),
            std::back_inserter(next));
  take_parents(parent_slots, parent_slots + (size - next.size()));

  state.population = std::move(next);
  ++state.generation;
  state.stats.push_back(compute_stats(state.generation, state.population));
}

GAResult run(const Evolution& evo, const GenerationObserver& observer) {
  evo.config.validate();
  Rng rng(evo.config.rng_seed);
  GAState state = init_population(evo, rng);
  if (observer) observer(state);
  for (std::size_t g = 0; g < evo.config.generations; ++g) {
    evolve_generation(state, evo, rng);
    if (observer) observer(state);
  }
  return {std::move(state.population), std::move(state.stats)};
}

void write_stats_csv(std::ostream& out, std::span<const GenerationStats> stats) {
  out << "generation,mean_fitness,max_fitness,mean_len,std_len\n";
  for (const auto& s : stats) {
    out << s.generation << ',' << format_number(s.mean_fitness) << ','
        << format_number(s.max_fitness) << ',' << format_number(s.mean_len) << ','
        << format_number(s.std_len) << '\n';
  }
}

std::vector<GenerationStats> read_stats_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "generation,mean_fitness,max_fitness,mean_len,std_len") {
    throw MalformedLine("missing stats header", 1);
  }
  std::vector<GenerationStats> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw MalformedLine("expected 5 comma-separated fields", lineno);
    try {
      GenerationStats s;
      s.generation = std::stoull(fields[0]);
      s.mean_fitness = std::stod(fields[1]);
      s.max_fitness = std::stod(fields[2]);
      s.mean_len = std::stod(fields[3]);
      s.std_len = std::stod(fields[4]);
      out.push_back(s);
    } catch (const std::exception&) {
      throw MalformedLine("bad number in stats row", lineno);
    }
  }
  return out;
}

void write_population(std::ostream& out, std::span<const Individual> population) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness > population[b].fitness;
  });
  for (std::size_t i : order) {
    const auto& ind = population[i];
    out << join(ind.chromosome.surface()) << '\t' << join(ind.chromosome.signature()) << '\t'
        << format_number(ind.fitness) << '\n';
  }
}

std::vector<PopulationRow> read_population(std::istream& in) {
  std::vector<PopulationRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw MalformedLine("expected surface<TAB>signature<TAB>fitness", lineno);
    PopulationRow row{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), 0.0};
    try {
      std::size_t used = 0;
      std::string num = line.substr(t2 + 1);
      row.fitness = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw MalformedLine("bad fitness value", lineno);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string display_surface(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    if (auto pos = parse_factor_marker(tokens[i])) {
      out += *pos;
    } else {
      out += tokens[i];
    }
  }
  return out;
}

std::string display_surface(const std::string& rendered) {
  std::istringstream ss(rendered);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(std::move(tok));
  return display_surface(tokens);
}

}  // namespace chunkga
