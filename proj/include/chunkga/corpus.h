#ifndef CHUNKGA_CORPUS_H_
#define CHUNKGA_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chunkga {

// One line of chunk-annotated input: `surface pos chunk`.
struct AnnotatedToken {
  std::string surface;
  std::string pos;
  std::string chunk;  // "O", "B-<label>" or "I-<label>"
};

struct AnnotatedSentence {
  std::vector<AnnotatedToken> tokens;
};

// Parses whitespace-separated 3-column text, one token per line, with blank
// lines between sentences. Throws MalformedLine or IllegalBio.
std::vector<AnnotatedSentence> parse_conll(std::istream& in);

// As parse_conll, but prefixes errors with the file name. Throws IoError when
// the file cannot be opened.
std::vector<AnnotatedSentence> read_conll_file(const std::filesystem::path& path);

// Factor items are written `__POS__` wherever items are rendered as text.
std::string factor_marker(std::string_view pos);

// Returns the POS inside a `__POS__` marker.
std::optional<std::string_view> parse_factor_marker(std::string_view text);

struct TemplateItem {
  enum class Kind { kLexical, kFactor };

  Kind kind = Kind::kLexical;
  std::string text;  // the word, or the POS tag for factors
  std::string pos;   // POS of the original token; empty for lexical items read back from an inventory file

  static TemplateItem lexical(std::string word, std::string pos);
  static TemplateItem factor(std::string pos);

  bool is_factor() const { return kind == Kind::kFactor; }
  // The token as it appears in factored text.
  std::string render() const;

  // Identity is the rendered token; the carried POS does not take part.
  friend bool operator==(const TemplateItem& a, const TemplateItem& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

struct Template {
  std::vector<TemplateItem> items;
  std::string tag;  // bare chunk label, "O" for out-of-chunk tokens
  std::uint64_t count = 0;

  std::vector<std::string> rendered() const;
  // "tag<TAB>item1 item2 ..." -- unique per (items, tag).
  std::string key() const;
};

using TemplateId = std::uint32_t;

// Unique templates with occurrence counts, plus each corpus sentence as the
// ordered sequence of templates it decomposes into.
class TemplateInventory {
 public:
  // Adds `count` occurrences of (items, tag), merging with an identical
  // template when one exists.
  TemplateId add(std::vector<TemplateItem> items, std::string tag, std::uint64_t count = 1);
  void add_sentence(std::vector<TemplateId> sequence);

  std::size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }
  std::uint64_t total() const { return total_; }
  const Template& at(TemplateId id) const { return templates_.at(id); }
  const std::vector<Template>& templates() const { return templates_; }
  std::optional<TemplateId> find(const std::string& key) const;

  const std::vector<std::vector<TemplateId>>& sentences() const { return sentences_; }
  // Chunk-tag sequence of every recorded sentence.
  std::vector<std::vector<std::string>> signatures() const;
  // Rendered tokens of every recorded sentence.
  std::vector<std::vector<std::string>> surfaces() const;

 private:
  std::vector<Template> templates_;
  std::unordered_map<std::string, TemplateId> index_;
  std::vector<std::vector<TemplateId>> sentences_;
  std::uint64_t total_ = 0;
};

// Every maximal B-X (I-X)* span becomes a template tagged X; every O token a
// single-item template tagged O.
TemplateInventory extract_templates(const std::vector<AnnotatedSentence>& sentences);

// `count<TAB>tag<TAB>items`, descending count then ascending by the rest of
// the line.
void write_inventory(std::ostream& out, const TemplateInventory& inventory);
// Reads the format above. Sentence sequences are not part of the file.
TemplateInventory read_inventory(std::istream& in);

// Corpus frequency of each surface word, with ranks (1 = most frequent, ties
// broken by byte order of the word).
class CountTable {
 public:
  CountTable() = default;
  explicit CountTable(std::unordered_map<std::string, std::uint64_t> counts);

  std::uint64_t count(const std::string& word) const;
  // nullopt for words outside the table (rank infinity).
  std::optional<std::uint64_t> rank(const std::string& word) const;
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  // Words in rank order.
  const std::vector<std::string>& by_rank() const { return by_rank_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint64_t> ranks_;
  std::vector<std::string> by_rank_;
};

CountTable token_counts(const std::vector<AnnotatedSentence>& sentences);

}  // namespace chunkga

#endif  // CHUNKGA_CORPUS_H_
