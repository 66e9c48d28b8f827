#ifndef CHUNKGA_NGRAM_H_
#define CHUNKGA_NGRAM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chunkga {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// ARPA convention for log10(0).
inline constexpr double kLogProbFloor = -99.0;

inline constexpr int kMaxOrder = 8;

using WordId = std::uint32_t;
inline constexpr WordId kNoWord = 0xffffffffu;

class Vocabulary {
 public:
  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

// Fixed-capacity id tuple used as the hash key for n-grams and contexts.
struct NGramKey {
  std::array<WordId, kMaxOrder> ids{};
  std::uint8_t size = 0;

  NGramKey() = default;
  explicit NGramKey(std::span<const WordId> words);

  std::span<const WordId> view() const { return {ids.data(), size}; }
  // Drops the oldest word.
  NGramKey suffix() const;
  // Drops the newest word.
  NGramKey prefix() const;

  friend bool operator==(const NGramKey& a, const NGramKey& b) {
    if (a.size != b.size) return false;
    for (std::uint8_t i = 0; i < a.size; ++i) {
      if (a.ids[i] != b.ids[i]) return false;
    }
    return true;
  }
};

struct NGramKeyHash {
  std::size_t operator()(const NGramKey& key) const noexcept;
};

template <typename V>
using NGramMap = std::unordered_map<NGramKey, V, NGramKeyHash>;

// Counts of every k-gram (k <= order) ending at a predicted position of the
// padded training sequences. Each sequence is padded with order-1 copies of
// <s> in front and one </s> behind; <s> itself is never predicted.
struct NGramCounts {
  int order = 0;
  Vocabulary vocab;
  // raw[k-1]: k-gram -> occurrence count.
  std::vector<NGramMap<std::uint64_t>> raw;
  // adjusted[k-1]: the counts the estimator uses at order k. Raw counts at the
  // highest order, continuation counts N1+(. w) below it.
  std::vector<NGramMap<std::uint64_t>> adjusted;
  // count_of_counts[k-1][j]: number of k-grams with adjusted count j+1 (j < 4).
  std::vector<std::array<std::uint64_t, 4>> count_of_counts;

  std::uint64_t count(std::span<const std::string> ngram) const;
  // Number of distinct words seen immediately left of `ngram`.
  std::uint64_t continuation(std::span<const std::string> ngram) const;
};

// Throws EmptyCorpus when `sequences` is empty, ConfigError for an order
// outside [1, kMaxOrder].
NGramCounts count_ngrams(const std::vector<std::vector<std::string>>& sequences, int order);

struct Discounts {
  // per_order[k-1] = {D1, D2, D3+}
  std::vector<std::array<double, 3>> per_order;

  double discount(int order, std::uint64_t count) const;
};

inline constexpr double kFallbackDiscount = 0.5;

// Closed-form estimates from count-of-counts n1..n4:
//   Y = n1 / (n1 + 2 n2)
//   D1 = 1 - 2Y n2/n1,  D2 = 2 - 3Y n3/n2,  D3+ = 3 - 4Y n4/n3
// clamped into [0, k); any zero n_k at an order gives 0.5 for all three.
Discounts estimate_discounts(const NGramCounts& counts);

// Backoff-form n-gram model in log10 space. Trained interpolated KN models and
// ARPA files both land here.
class NGramModel {
 public:
  struct Entry {
    double logprob = kLogProbFloor;
    double backoff = 0.0;
  };

  explicit NGramModel(int order = 1);

  int order() const { return order_; }
  const Vocabulary& vocab() const { return vocab_; }

  // Every token the model can predict: its unigrams minus <s> and <unk>.
  std::vector<std::string> predicted_vocabulary() const;

  // log10 P(token | context). Only the last order-1 context words are used.
  // Unseen tokens get the <unk> estimate (or the floor); never below -99.
  double logprob(std::span<const std::string> context, std::string_view token) const;
  double logprob(std::span<const WordId> context, WordId token) const;

  // Sum of per-token log probabilities with the left context growing up to
  // order-1 words. with_boundaries starts from <s> padding and adds the </s>
  // transition.
  double sequence_logprob(std::span<const std::string> tokens, bool with_boundaries) const;

  // Id of `word`, or kNoWord.
  WordId id(std::string_view word) const;

  void insert(std::span<const std::string> ngram, Entry entry);
  void insert(const NGramKey& key, Entry entry);
  WordId intern(std::string_view word) { return vocab_.intern(word); }
  const NGramMap<Entry>& entries(int k) const { return tables_.at(k - 1); }
  std::optional<Entry> find(std::span<const std::string> ngram) const;

  // Log probability charged to out-of-vocabulary tokens before context
  // backoff; nullopt means the -99 floor.
  std::optional<double> unk_logprob() const { return unk_logprob_; }
  void set_unk_logprob(std::optional<double> value) { unk_logprob_ = value; }

 private:
  int order_;
  Vocabulary vocab_;
  std::vector<NGramMap<Entry>> tables_;
  std::optional<double> unk_logprob_;
  WordId bos_ = kNoWord;
  WordId eos_ = kNoWord;
};

// Interpolated modified Kneser-Ney:
//   P(w|h) = max(c(hw) - D(c(hw)), 0) / c(h.) + gamma(h) P(w|h')
//   gamma(h) = (D1 N1(h.) + D2 N2(h.) + D3+ N3+(h.)) / c(h.)
// with adjusted counts c and the unigram level interpolated with the uniform
// distribution over predicted tokens. Stored as backoff-form entries: the
// interpolated probability of each seen n-gram and log10 gamma as the backoff
// of each context.
NGramModel train_kn(const NGramCounts& counts, const Discounts& discounts);

// count_ngrams + estimate_discounts + train_kn.
NGramModel train_kn(const std::vector<std::vector<std::string>>& sequences, int order);

}  // namespace chunkga

#endif  // CHUNKGA_NGRAM_H_
