#ifndef CHUNKGA_FACTORING_H_
#define CHUNKGA_FACTORING_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chunkga/corpus.h"

namespace chunkga {

// Which tokens get replaced by their POS factor.
//   kAbsoluteCount: count(word) <  threshold
//   kRelativeRank:  rank(word)  >  threshold
// Words missing from the count table have count 0 and infinite rank, so they
// factor under every policy.
struct FactorPolicy {
  enum class Mode { kAbsoluteCount, kRelativeRank };

  Mode mode = Mode::kAbsoluteCount;
  std::uint64_t threshold = 1;

  static FactorPolicy absolute(std::uint64_t threshold) { return {Mode::kAbsoluteCount, threshold}; }
  static FactorPolicy relative(std::uint64_t threshold) { return {Mode::kRelativeRank, threshold}; }
  // count < 1 never holds for a corpus word.
  static FactorPolicy identity() { return absolute(1); }
  static FactorPolicy everything() {
    return absolute(std::numeric_limits<std::uint64_t>::max());
  }

  bool factors(const std::string& word, const CountTable& table) const;
  // "absolute" / "relative"
  std::string mode_name() const;
  // Throws ConfigError on threshold 0.
  void validate() const;

  friend bool operator==(const FactorPolicy&, const FactorPolicy&) = default;
};

FactorPolicy::Mode parse_factor_mode(const std::string& name);

TemplateItem factor_token(const std::string& word, const std::string& pos,
                          const CountTable& table, const FactorPolicy& policy);

// Factors every item, merging templates that become identical and re-pointing
// the per-sentence sequences at the merged templates.
TemplateInventory factor_inventory(const TemplateInventory& inventory, const CountTable& table,
                                   const FactorPolicy& policy);

// Sentences as factored token strings, factors written as `__POS__`.
std::vector<std::vector<std::string>> factored_token_stream(
    const std::vector<AnnotatedSentence>& sentences, const CountTable& table,
    const FactorPolicy& policy);

}  // namespace chunkga

#endif  // CHUNKGA_FACTORING_H_
