#include "chunkga/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "chunkga/errors.h"

namespace chunkga {
namespace {

bool is_valid_chunk(std::string_view chunk) {
  if (chunk == "O") return true;
  return chunk.size() > 2 && (chunk[0] == 'B' || chunk[0] == 'I') && chunk[1] == '-';
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> fields;
  std::string f;
  while (ss >> f) fields.push_back(std::move(f));
  return fields;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<AnnotatedSentence> parse_conll(std::istream& in) {
  std::vector<AnnotatedSentence> sentences;
  AnnotatedSentence current;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_ws(line);
    if (fields.empty()) {
      if (!current.tokens.empty()) sentences.push_back(std::move(current));
      current = {};
      continue;
    }
    if (fields.size() != 3) {
      throw MalformedLine("expected 3 columns (surface pos chunk), got " +
                              std::to_string(fields.size()),
                          lineno);
    }
    if (parse_factor_marker(fields[0])) {
      throw MalformedLine("surface '" + fields[0] + "' collides with the factor marker form",
                          lineno);
    }
    const std::string& chunk = fields[2];
    if (!is_valid_chunk(chunk)) {
      throw MalformedLine("bad chunk label '" + chunk + "'", lineno);
    }
    if (chunk[0] == 'I') {
      bool continues = false;
      if (!current.tokens.empty()) {
        const std::string& prev = current.tokens.back().chunk;
        continues = prev != "O" && prev.compare(2, std::string::npos, chunk, 2) == 0;
      }
      if (!continues) {
        throw IllegalBio(chunk + " does not continue a " + chunk.substr(2) + " chunk", lineno);
      }
    }
    current.tokens.push_back({std::move(fields[0]), std::move(fields[1]), chunk});
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<AnnotatedSentence> read_conll_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path.string());
  try {
    return parse_conll(in);
  } catch (const MalformedLine& e) {
    throw MalformedLine(path.string() + ": " + e.what(), e.line());
  } catch (const IllegalBio& e) {
    throw IllegalBio(path.string() + ": " + e.what(), e.line());
  }
}

std::string factor_marker(std::string_view pos) {
  std::string out = "__";
  out += pos;
  out += "__";
  return out;
}

std::optional<std::string_view> parse_factor_marker(std::string_view text) {
  if (text.size() > 4 && text.starts_with("__") && text.ends_with("__")) {
    return text.substr(2, text.size() - 4);
  }
  return std::nullopt;
}

TemplateItem TemplateItem::lexical(std::string word, std::string pos) {
  return {Kind::kLexical, std::move(word), std::move(pos)};
}

TemplateItem TemplateItem::factor(std::string pos) {
  TemplateItem item{Kind::kFactor, pos, std::move(pos)};
  return item;
}

std::string TemplateItem::render() const {
  return is_factor() ? factor_marker(text) : text;
}

std::vector<std::string> Template::rendered() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.render());
  return out;
}

std::string Template::key() const { return tag + '\t' + join(rendered(), ' '); }

TemplateId TemplateInventory::add(std::vector<TemplateItem> items, std::string tag,
                                  std::uint64_t count) {
  Template t{std::move(items), std::move(tag), count};
  std::string key = t.key();
  total_ += count;
  auto it = index_.find(key);
  if (it != index_.end()) {
    templates_[it->second].count += count;
    return it->second;
  }
  auto id = static_cast<TemplateId>(templates_.size());
  templates_.push_back(std::move(t));
  index_.emplace(std::move(key), id);
  return id;
}

void TemplateInventory::add_sentence(std::vector<TemplateId> sequence) {
  sentences_.push_back(std::move(sequence));
}

std::optional<TemplateId> TemplateInventory::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::string>> TemplateInventory::signatures() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences_.size());
  for (const auto& seq : sentences_) {
    std::vector<std::string> tags;
    tags.reserve(seq.size());
    for (TemplateId id : seq) tags.push_back(templates_[id].tag);
    out.push_back(std::move(tags));
  }
  return out;
}

std::vector<std::vector<std::string>> TemplateInventory::surfaces() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences_.size());
  for (const auto& seq : sentences_) {
    std::vector<std::string> toks;
    for (TemplateId id : seq) {
      for (const auto& item : templates_[id].items) toks.push_back(item.render());
    }
    out.push_back(std::move(toks));
  }
  return out;
}

TemplateInventory extract_templates(const std::vector<AnnotatedSentence>& sentences) {
  TemplateInventory inv;
  for (const auto& sentence : sentences) {
    std::vector<TemplateId> sequence;
    std::vector<TemplateItem> span;
    std::string label;
    auto flush = [&] {
      if (!span.empty()) sequence.push_back(inv.add(std::move(span), label));
      span.clear();
    };
    for (const auto& tok : sentence.tokens) {
      if (tok.chunk == "O") {
        flush();
        sequence.push_back(inv.add({TemplateItem::lexical(tok.surface, tok.pos)}, "O"));
      } else if (tok.chunk[0] == 'B') {
        flush();
        label = tok.chunk.substr(2);
        span.push_back(TemplateItem::lexical(tok.surface, tok.pos));
      } else {
        span.push_back(TemplateItem::lexical(tok.surface, tok.pos));
      }
    }
    flush();
    inv.add_sentence(std::move(sequence));
  }
  return inv;
}

void write_inventory(std::ostream& out, const TemplateInventory& inventory) {
  struct Row {
    std::uint64_t count;
    std::string rest;
  };
  std::vector<Row> rows;
  rows.reserve(inventory.size());
  for (const auto& t : inventory.templates()) rows.push_back({t.count, t.key()});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.rest < b.rest;
  });
  for (const auto& row : rows) out << row.count << '\t' << row.rest << '\n';
}

TemplateInventory read_inventory(std::istream& in) {
  TemplateInventory inv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw MalformedInventory("expected count<TAB>tag<TAB>items", lineno);
    }
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(line.substr(0, tab1), &used);
      if (used != tab1 || count == 0) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw MalformedInventory("bad count '" + line.substr(0, tab1) + "'", lineno);
    }
    std::string tag = line.substr(tab1 + 1, tab2 - tab1 - 1);
    auto words = split_ws(line.substr(tab2 + 1));
    if (tag.empty() || words.empty()) {
      throw MalformedInventory("template needs a tag and at least one item", lineno);
    }
    std::vector<TemplateItem> items;
    items.reserve(words.size());
    for (auto& w : words) {
      if (auto pos = parse_factor_marker(w)) {
        items.push_back(TemplateItem::factor(std::string(*pos)));
      } else {
        items.push_back(TemplateItem::lexical(std::move(w), ""));
      }
    }
    inv.add(std::move(items), std::move(tag), count);
  }
  return inv;
}

CountTable::CountTable(std::unordered_map<std::string, std::uint64_t> counts)
    : counts_(std::move(counts)) {
  by_rank_.reserve(counts_.size());
  for (const auto& [word, n] : counts_) by_rank_.push_back(word);
  std::sort(by_rank_.begin(), by_rank_.end(), [this](const std::string& a, const std::string& b) {
    auto ca = counts_.at(a), cb = counts_.at(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  for (std::size_t i = 0; i < by_rank_.size(); ++i) ranks_.emplace(by_rank_[i], i + 1);
}

std::uint64_t CountTable::count(const std::string& word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::optional<std::uint64_t> CountTable::rank(const std::string& word) const {
  auto it = ranks_.find(word);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

CountTable token_counts(const std::vector<AnnotatedSentence>& sentences) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& tok : s.tokens) ++counts[tok.surface];
  }
  return CountTable(std::move(counts));
}

}  // namespace chunkga
