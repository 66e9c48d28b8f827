#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <map>
#include <sstream>

#include "chunkga/factoring.h"
#include "support/fixtures.h"

using namespace chunkga;
using chunkga::testing::load_corpus;

namespace {

CountTable table_of(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  std::unordered_map<std::string, std::uint64_t> m;
  for (const auto& [w, n] : entries) m[w] = n;
  return CountTable(std::move(m));
}

std::string serialize(const TemplateInventory& inv) {
  std::ostringstream out;
  write_inventory(out, inv);
  return out.str();
}

// Brute-force factoring straight off the raw file: count words, then walk
// the BIO columns and collect (tag, factored chunk text) occurrences.
struct BruteForce {
  std::map<std::string, std::uint64_t> templates;
  std::vector<std::vector<std::string>> stream;
};

BruteForce brute_force_factoring(const std::string& file, std::uint64_t min_count) {
  std::vector<std::vector<std::vector<std::string>>> sentences(1);
  std::map<std::string, std::uint64_t> counts;
  std::ifstream in(chunkga::testing::data_path(file));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> cols;
    std::string c;
    while (ss >> c) cols.push_back(c);
    if (cols.empty()) {
      if (!sentences.back().empty()) sentences.emplace_back();
      continue;
    }
    ++counts[cols[0]];
    sentences.back().push_back(cols);
  }
  if (sentences.back().empty()) sentences.pop_back();

  BruteForce out;
  for (const auto& s : sentences) {
    std::vector<std::string> toks;
    std::string tag, text;
    auto flush = [&] {
      if (!text.empty()) ++out.templates[tag + "\t" + text];
      text.clear();
    };
    for (const auto& cols : s) {
      std::string tok = counts[cols[0]] < min_count ? "__" + cols[1] + "__" : cols[0];
      toks.push_back(tok);
      if (cols[2] == "O") {
        flush();
        ++out.templates["O\t" + tok];
      } else if (cols[2][0] == 'B') {
        flush();
        tag = cols[2].substr(2);
        text = tok;
      } else {
        text += " " + tok;
      }
    }
    flush();
    out.stream.push_back(toks);
  }
  return out;
}

}  // namespace

TEST_CASE("absolute threshold is strict") {
  auto table = table_of({{"rare", 99}, {"edge", 100}, {"common", 101}});
  auto policy = FactorPolicy::absolute(100);
  auto rare = factor_token("rare", "NN", table, policy);
  CHECK(rare.is_factor());
  CHECK(rare.text == "NN");
  CHECK(rare.render() == "__NN__");
  CHECK_FALSE(factor_token("edge", "NN", table, policy).is_factor());
  CHECK_FALSE(factor_token("common", "NN", table, policy).is_factor());
}

TEST_CASE("relative threshold is strict") {
  std::unordered_map<std::string, std::uint64_t> m;
  for (int i = 0; i < 1001; ++i) m["w" + std::to_string(10000 + i)] = 5000 - i;
  CountTable table(std::move(m));
  REQUIRE(table.rank("w11000") == 1001);
  REQUIRE(table.rank("w10999") == 1000);
  auto policy = FactorPolicy::relative(1000);
  CHECK(factor_token("w11000", "JJ", table, policy).is_factor());
  CHECK_FALSE(factor_token("w10999", "JJ", table, policy).is_factor());
  CHECK_FALSE(factor_token("w10000", "JJ", table, policy).is_factor());
}

TEST_CASE("unseen words factor under every policy") {
  auto table = table_of({{"seen", 10}});
  for (auto policy : {FactorPolicy::absolute(1), FactorPolicy::relative(1'000'000)}) {
    CHECK(factor_token("unseen", "NNP", table, policy).is_factor());
    CHECK_FALSE(factor_token("seen", "NNP", table, policy).is_factor());
  }
}

TEST_CASE("policy validation and mode names") {
  CHECK_THROWS(FactorPolicy::absolute(0).validate());
  CHECK_NOTHROW(FactorPolicy::relative(1).validate());
  CHECK(parse_factor_mode("absolute") == FactorPolicy::Mode::kAbsoluteCount);
  CHECK(parse_factor_mode("relative") == FactorPolicy::Mode::kRelativeRank);
  CHECK_THROWS(parse_factor_mode("rank"));
}

TEST_CASE("identity policy leaves the inventory unchanged") {
  auto sentences = load_corpus("small.conll");
  auto table = token_counts(sentences);
  auto inv = extract_templates(sentences);
  auto same = factor_inventory(inv, table, FactorPolicy::identity());
  CHECK(serialize(same) == serialize(inv));
  CHECK(same.sentences() == inv.sentences());
}

TEST_CASE("templates that become identical merge with summed counts") {
  TemplateInventory inv;
  auto cat = inv.add({TemplateItem::lexical("the", "DT"), TemplateItem::lexical("cat", "NN")}, "NP", 2);
  auto dog = inv.add({TemplateItem::lexical("the", "DT"), TemplateItem::lexical("dog", "NN")}, "NP", 3);
  inv.add_sentence({cat, dog});
  auto table = table_of({{"the", 50}, {"cat", 1}, {"dog", 1}});

  auto out = factor_inventory(inv, table, FactorPolicy::absolute(2));
  REQUIRE(out.size() == 1);
  CHECK(out.at(0).key() == "NP\tthe __NN__");
  CHECK(out.at(0).count == 5);
  CHECK(out.total() == 5);
  CHECK(out.sentences()[0] == std::vector<TemplateId>{0, 0});
}

TEST_CASE("fixture under AbsoluteCount(2) matches brute-force factoring") {
  auto sentences = load_corpus("small.conll");
  auto table = token_counts(sentences);
  auto policy = FactorPolicy::absolute(2);
  auto oracle = brute_force_factoring("small.conll", 2);

  auto inv = factor_inventory(extract_templates(sentences), table, policy);
  std::map<std::string, std::uint64_t> got;
  for (const auto& t : inv.templates()) got[t.key()] = t.count;
  CHECK(got == oracle.templates);

  CHECK(factored_token_stream(sentences, table, policy) == oracle.stream);
  // The recorded sentence sequences render to the same stream.
  CHECK(inv.surfaces() == oracle.stream);
}

TEST_CASE("factored_token_stream limiting cases") {
  auto sentences = load_corpus("three.conll");
  auto table = token_counts(sentences);
  auto identity = factored_token_stream(sentences, table, FactorPolicy::identity());
  auto everything = factored_token_stream(sentences, table, FactorPolicy::everything());
  REQUIRE(identity.size() == 3);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    REQUIRE(identity[i].size() == sentences[i].tokens.size());
    for (std::size_t j = 0; j < identity[i].size(); ++j) {
      CHECK(identity[i][j] == sentences[i].tokens[j].surface);
      CHECK(everything[i][j] == "__" + sentences[i].tokens[j].pos + "__");
    }
  }
}

TEST_CASE("stricter policies never increase the unique template count") {
  auto sentences = load_corpus("small.conll");
  auto table = token_counts(sentences);
  auto inv = extract_templates(sentences);

  std::size_t previous = inv.size();
  for (std::uint64_t t : {1, 2, 3, 5, 8, 13, 21, 50, 1000}) {
    auto n = factor_inventory(inv, table, FactorPolicy::absolute(t)).size();
    CHECK(n <= previous);
    previous = n;
  }
  previous = inv.size();
  for (std::uint64_t t : {1000, 200, 100, 50, 20, 10, 5, 1}) {
    auto n = factor_inventory(inv, table, FactorPolicy::relative(t)).size();
    CHECK(n <= previous);
    previous = n;
  }
}

TEST_CASE("factoring is idempotent and preserves tags and arity") {
  auto sentences = load_corpus("small.conll");
  auto table = token_counts(sentences);
  auto inv = extract_templates(sentences);
  for (auto policy : {FactorPolicy::absolute(3), FactorPolicy::relative(20)}) {
    auto once = factor_inventory(inv, table, policy);
    auto twice = factor_inventory(once, table, policy);
    CHECK(serialize(once) == serialize(twice));
    CHECK(once.sentences() == twice.sentences());

    for (std::size_t s = 0; s < inv.sentences().size(); ++s) {
      const auto& before = inv.sentences()[s];
      const auto& after = once.sentences()[s];
      REQUIRE(before.size() == after.size());
      for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(inv.at(before[i]).tag == once.at(after[i]).tag);
        CHECK(inv.at(before[i]).items.size() == once.at(after[i]).items.size());
      }
    }
  }
}
