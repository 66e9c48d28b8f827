#include "chunkga/factoring.h"

#include "chunkga/errors.h"

namespace chunkga {

bool FactorPolicy::factors(const std::string& word, const CountTable& table) const {
  switch (mode) {
    case Mode::kAbsoluteCount:
      return table.count(word) < threshold;
    case Mode::kRelativeRank: {
      auto r = table.rank(word);
      return !r || *r > threshold;
    }
  }
  return false;
}

std::string FactorPolicy::mode_name() const {
  return mode == Mode::kAbsoluteCount ? "absolute" : "relative";
}

void FactorPolicy::validate() const {
  if (threshold < 1) throw ConfigError("factor.threshold must be >= 1");
}

FactorPolicy::Mode parse_factor_mode(const std::string& name) {
  if (name == "absolute") return FactorPolicy::Mode::kAbsoluteCount;
  if (name == "relative") return FactorPolicy::Mode::kRelativeRank;
  throw ConfigError("factor.mode must be 'absolute' or 'relative', got '" + name + "'");
}

TemplateItem factor_token(const std::string& word, const std::string& pos,
                          const CountTable& table, const FactorPolicy& policy) {
  if (policy.factors(word, table)) return TemplateItem::factor(pos);
  return TemplateItem::lexical(word, pos);
}

TemplateInventory factor_inventory(const TemplateInventory& inventory, const CountTable& table,
                                   const FactorPolicy& policy) {
  TemplateInventory out;
  std::vector<TemplateId> remap;
  remap.reserve(inventory.size());
  for (const auto& t : inventory.templates()) {
    std::vector<TemplateItem> items;
    items.reserve(t.items.size());
    for (const auto& item : t.items) {
      // Already-factored items stay factors; the POS is all they carry.
      items.push_back(item.is_factor() ? item : factor_token(item.text, item.pos, table, policy));
    }
    remap.push_back(out.add(std::move(items), t.tag, t.count));
  }
  for (const auto& seq : inventory.sentences()) {
    std::vector<TemplateId> mapped;
    mapped.reserve(seq.size());
    for (TemplateId id : seq) mapped.push_back(remap[id]);
    out.add_sentence(std::move(mapped));
  }
  return out;
}

std::vector<std::vector<std::string>> factored_token_stream(
    const std::vector<AnnotatedSentence>& sentences, const CountTable& table,
    const FactorPolicy& policy) {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    std::vector<std::string> toks;
    toks.reserve(s.tokens.size());
    for (const auto& tok : s.tokens) toks.push_back(factor_token(tok.surface, tok.pos, table, policy).render());
    out.push_back(std::move(toks));
  }
  return out;
}

}  // namespace chunkga
