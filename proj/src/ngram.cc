#include "chunkga/ngram.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "chunkga/errors.h"

namespace chunkga {
namespace {

double clamp_log(double lp) { return std::isnan(lp) || lp < kLogProbFloor ? kLogProbFloor : lp; }

double safe_log10(double p) { return p > 0.0 ? clamp_log(std::log10(p)) : kLogProbFloor; }

NGramKey key_of(std::span<const WordId> ids) { return NGramKey(ids); }

}  // namespace

WordId Vocabulary::intern(std::string_view word) {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

NGramKey::NGramKey(std::span<const WordId> words) {
  assert(words.size() <= static_cast<std::size_t>(kMaxOrder));
  std::copy(words.begin(), words.end(), ids.begin());
  size = static_cast<std::uint8_t>(words.size());
}

NGramKey NGramKey::suffix() const {
  assert(size > 0);
  return NGramKey(view().subspan(1));
}

NGramKey NGramKey::prefix() const {
  assert(size > 0);
  return NGramKey(view().first(size - 1u));
}

std::size_t NGramKeyHash::operator()(const NGramKey& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ key.size;
  for (std::uint8_t i = 0; i < key.size; ++i) {
    h ^= key.ids[i];
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

namespace {

std::optional<NGramKey> lookup_key(const Vocabulary& vocab, std::span<const std::string> words) {
  if (words.empty() || words.size() > static_cast<std::size_t>(kMaxOrder)) return std::nullopt;
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) {
    auto id = vocab.find(w);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  return NGramKey(ids);
}

std::uint64_t lookup_count(const std::vector<NGramMap<std::uint64_t>>& tables,
                           const Vocabulary& vocab, std::span<const std::string> ngram) {
  if (ngram.size() > tables.size()) return 0;
  auto key = lookup_key(vocab, ngram);
  if (!key) return 0;
  const auto& table = tables[ngram.size() - 1];
  auto it = table.find(*key);
  return it == table.end() ? 0 : it->second;
}

}  // namespace

std::uint64_t NGramCounts::count(std::span<const std::string> ngram) const {
  return lookup_count(raw, vocab, ngram);
}

std::uint64_t NGramCounts::continuation(std::span<const std::string> ngram) const {
  if (ngram.size() >= static_cast<std::size_t>(order)) return 0;
  return lookup_count(adjusted, vocab, ngram);
}

NGramCounts count_ngrams(const std::vector<std::vector<std::string>>& sequences, int order) {
  if (order < 1 || order > kMaxOrder) {
    throw ConfigError("n-gram order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (sequences.empty()) throw EmptyCorpus();

  NGramCounts counts;
  counts.order = order;
  const WordId bos = counts.vocab.intern(kBos);
  const WordId eos = counts.vocab.intern(kEos);
  counts.raw.resize(order);

  std::vector<WordId> padded;
  for (const auto& seq : sequences) {
    padded.assign(order - 1, bos);
    for (const auto& tok : seq) padded.push_back(counts.vocab.intern(tok));
    padded.push_back(eos);
    for (std::size_t pos = order - 1; pos < padded.size(); ++pos) {
      for (int k = 1; k <= order; ++k) {
        std::span<const WordId> gram(padded.data() + pos + 1 - k, k);
        ++counts.raw[k - 1][key_of(gram)];
      }
    }
  }

  counts.adjusted.resize(order);
  counts.adjusted[order - 1] = counts.raw[order - 1];
  for (int k = 1; k < order; ++k) {
    // Distinct (k+1)-grams sharing a suffix differ only in their first word.
    auto& table = counts.adjusted[k - 1];
    for (const auto& [gram, n] : counts.raw[k]) ++table[gram.suffix()];
  }

  counts.count_of_counts.assign(order, {0, 0, 0, 0});
  for (int k = 1; k <= order; ++k) {
    for (const auto& [gram, n] : counts.adjusted[k - 1]) {
      if (n >= 1 && n <= 4) ++counts.count_of_counts[k - 1][n - 1];
    }
  }
  return counts;
}

double Discounts::discount(int order, std::uint64_t count) const {
  if (count == 0) return 0.0;
  const auto& d = per_order.at(order - 1);
  return d[std::min<std::uint64_t>(count, 3) - 1];
}

Discounts estimate_discounts(const NGramCounts& counts) {
  constexpr double kEps = 1e-6;
  Discounts out;
  for (const auto& coc : counts.count_of_counts) {
    const double n1 = static_cast<double>(coc[0]);
    const double n2 = static_cast<double>(coc[1]);
    const double n3 = static_cast<double>(coc[2]);
    const double n4 = static_cast<double>(coc[3]);
    if (n1 == 0 || n2 == 0 || n3 == 0 || n4 == 0) {
      out.per_order.push_back({kFallbackDiscount, kFallbackDiscount, kFallbackDiscount});
      continue;
    }
    const double y = n1 / (n1 + 2 * n2);
    std::array<double, 3> d{1 - 2 * y * n2 / n1, 2 - 3 * y * n3 / n2, 3 - 4 * y * n4 / n3};
    for (int k = 0; k < 3; ++k) d[k] = std::clamp(d[k], 0.0, (k + 1) - kEps);
    out.per_order.push_back(d);
  }
  return out;
}

NGramModel::NGramModel(int order) : order_(order) {
  if (order < 1 || order > kMaxOrder) {
    throw ConfigError("n-gram order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  tables_.resize(order);
  bos_ = vocab_.intern(kBos);
  eos_ = vocab_.intern(kEos);
}

std::vector<std::string> NGramModel::predicted_vocabulary() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : tables_[0]) {
    const auto& w = vocab_.word(key.ids[0]);
    if (w != kBos && w != kUnk) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WordId NGramModel::id(std::string_view word) const {
  auto found = vocab_.find(word);
  return found ? *found : kNoWord;
}

void NGramModel::insert(std::span<const std::string> ngram, Entry entry) {
  if (ngram.empty() || ngram.size() > static_cast<std::size_t>(order_)) {
    throw ConfigError("n-gram length outside model order");
  }
  std::vector<WordId> ids;
  ids.reserve(ngram.size());
  for (const auto& w : ngram) ids.push_back(vocab_.intern(w));
  insert(NGramKey(ids), entry);
}

void NGramModel::insert(const NGramKey& key, Entry entry) {
  tables_.at(key.size - 1)[key] = entry;
}

std::optional<NGramModel::Entry> NGramModel::find(std::span<const std::string> ngram) const {
  if (ngram.size() > static_cast<std::size_t>(order_)) return std::nullopt;
  auto key = lookup_key(vocab_, ngram);
  if (!key) return std::nullopt;
  const auto& table = tables_[key->size - 1];
  auto it = table.find(*key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

double NGramModel::logprob(std::span<const WordId> context, WordId token) const {
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  if (context.size() > max_ctx) context = context.last(max_ctx);

  std::array<WordId, kMaxOrder> buf{};
  double backoff = 0.0;
  for (std::size_t len = context.size();; --len) {
    auto ctx = context.last(len);
    if (token != kNoWord) {
      std::copy(ctx.begin(), ctx.end(), buf.begin());
      buf[len] = token;
      const auto& table = tables_[len];
      auto it = table.find(NGramKey(std::span<const WordId>(buf.data(), len + 1)));
      if (it != table.end()) return clamp_log(backoff + it->second.logprob);
    }
    if (len == 0) break;
    const auto& ctx_table = tables_[len - 1];
    auto it = ctx_table.find(NGramKey(ctx));
    if (it != ctx_table.end()) backoff += it->second.backoff;
  }
  return clamp_log(backoff + unk_logprob_.value_or(kLogProbFloor));
}

double NGramModel::logprob(std::span<const std::string> context, std::string_view token) const {
  std::vector<WordId> ids;
  ids.reserve(context.size());
  for (const auto& w : context) ids.push_back(id(w));
  return logprob(std::span<const WordId>(ids), id(token));
}

double NGramModel::sequence_logprob(std::span<const std::string> tokens,
                                    bool with_boundaries) const {
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  std::vector<WordId> history;
  history.reserve(tokens.size() + max_ctx + 1);
  if (with_boundaries) history.assign(max_ctx, bos_);
  double total = 0.0;
  auto score = [&](WordId w) {
    std::span<const WordId> ctx(history);
    if (ctx.size() > max_ctx) ctx = ctx.last(max_ctx);
    total += logprob(ctx, w);
    history.push_back(w);
  };
  for (const auto& tok : tokens) score(id(tok));
  if (with_boundaries) score(eos_);
  return total;
}

NGramModel train_kn(const NGramCounts& counts, const Discounts& discounts) {
  const int order = counts.order;
  NGramModel model(order);
  for (std::size_t i = 0; i < counts.vocab.size(); ++i) {
    [[maybe_unused]] WordId id = model.intern(counts.vocab.word(static_cast<WordId>(i)));
    assert(id == i);
  }
  const WordId bos = model.id(kBos);

  struct ContextStats {
    double total = 0;
    double n[3] = {0, 0, 0};
  };
  auto gamma_of = [&](int k, const ContextStats& st) {
    const auto& d = discounts.per_order.at(k - 1);
    return (d[0] * st.n[0] + d[1] * st.n[1] + d[2] * st.n[2]) / st.total;
  };

  const double vocab_size = static_cast<double>(counts.adjusted[0].size());
  NGramMap<double> lower;  // linear probabilities at order k-1
  for (int k = 1; k <= order; ++k) {
    const auto& grams = counts.adjusted[k - 1];
    NGramMap<ContextStats> contexts;
    for (const auto& [gram, c] : grams) {
      auto& st = contexts[gram.prefix()];
      st.total += static_cast<double>(c);
      st.n[std::min<std::uint64_t>(c, 3) - 1] += 1;
    }

    NGramMap<double> current;
    current.reserve(grams.size());
    for (const auto& [gram, c] : grams) {
      const auto& st = contexts.at(gram.prefix());
      const double lower_p = k == 1 ? 1.0 / vocab_size : lower.at(gram.suffix());
      const double p = (static_cast<double>(c) - discounts.discount(k, c)) / st.total +
                       gamma_of(k, st) * lower_p;
      current.emplace(gram, p);
      model.insert(gram, {safe_log10(p), 0.0});
    }

    if (k == 1) {
      model.insert(NGramKey(std::span<const WordId>(&bos, 1)), {kLogProbFloor, 0.0});
      const auto& st = contexts.at(NGramKey());
      model.set_unk_logprob(safe_log10(gamma_of(1, st) / vocab_size));
    } else {
      // Contexts of this order carry the backoff weight on their own entry.
      // All-<s> contexts are never predicted, so they get a placeholder entry.
      for (const auto& [ctx, st] : contexts) {
        const auto& table = model.entries(k - 1);
        auto it = table.find(ctx);
        NGramModel::Entry entry = it != table.end() ? it->second : NGramModel::Entry{};
        entry.backoff = safe_log10(gamma_of(k, st));
        model.insert(ctx, entry);
      }
    }
    lower = std::move(current);
  }
  return model;
}

NGramModel train_kn(const std::vector<std::vector<std::string>>& sequences, int order) {
  auto counts = count_ngrams(sequences, order);
  return train_kn(counts, estimate_discounts(counts));
}

}  // namespace chunkga
