#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "chunkga/arpa.h"
#include "chunkga/errors.h"
#include "support/fixtures.h"

using namespace chunkga;
using namespace chunkga::testing;

namespace {

NGramModel small_token_model() {
  return train_kn(surface_stream(load_corpus("small.conll")), 3);
}

std::string to_arpa(const NGramModel& m) {
  std::ostringstream out;
  write_arpa(out, m);
  return out.str();
}

NGramModel from_arpa(const std::string& text) {
  std::istringstream in(text);
  return read_arpa(in);
}

std::size_t arpa_error_line(const std::string& text) {
  try {
    from_arpa(text);
  } catch (const MalformedArpa& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("write then read reproduces entries and queries") {
  auto m = small_token_model();
  auto back = from_arpa(to_arpa(m));
  CHECK(back.order() == 3);
  for (int k = 1; k <= 3; ++k) {
    CHECK(back.entries(k).size() == m.entries(k).size());
    for (const auto& [key, entry] : m.entries(k)) {
      std::vector<std::string> words;
      for (WordId id : key.view()) words.push_back(m.vocab().word(id));
      auto e = back.find(words);
      REQUIRE(e);
      CHECK(std::abs(e->logprob - entry.logprob) < 1e-4);
      if (k < 3) CHECK(std::abs(e->backoff - entry.backoff) < 1e-4);
    }
  }
  REQUIRE(back.unk_logprob());
  CHECK(std::abs(*back.unk_logprob() - *m.unk_logprob()) < 1e-4);

  auto vocab = m.predicted_vocabulary();
  CHECK(back.predicted_vocabulary() == vocab);
  vocab.push_back("<s>");
  vocab.push_back("oov-word");
  std::mt19937 gen(3);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> ctx(gen() % 3);
    for (auto& w : ctx) w = vocab[gen() % vocab.size()];
    const auto& w = vocab[gen() % vocab.size()];
    CHECK(std::abs(back.logprob(ctx, w) - m.logprob(ctx, w)) < 1e-4);
  }
}

TEST_CASE("ARPA output is deterministic and well formed") {
  const std::string a = to_arpa(small_token_model());
  const std::string b = to_arpa(small_token_model());
  CHECK(a == b);
  CHECK(a.rfind("\n\\data\\\nngram 1=", 0) == 0);
  CHECK(a.find("\n\\1-grams:\n") != std::string::npos);
  CHECK(a.find("\n\\3-grams:\n") != std::string::npos);
  CHECK(a.ends_with("\\end\\\n"));
}

TEST_CASE("hand-written unigram ARPA") {
  auto m = from_arpa(
      "\\data\\\n"
      "ngram 1=2\n"
      "\n"
      "\\1-grams:\n"
      "-0.3010\thello\n"
      "-0.6021\t</s>\n"
      "\n"
      "\\end\\\n");
  CHECK(m.order() == 1);
  CHECK(m.logprob(std::vector<std::string>{}, "hello") == -0.3010);
  CHECK(m.logprob(std::vector<std::string>{"anything"}, "</s>") == -0.6021);
  CHECK(m.logprob(std::vector<std::string>{}, "other") == kLogProbFloor);
  CHECK(m.predicted_vocabulary() == std::vector<std::string>{"</s>", "hello"});
}

TEST_CASE("malformed ARPA reports the line") {
  CHECK(arpa_error_line("ngram 1=1\n") > 0);                                          // no \data\ .
  CHECK(arpa_error_line("\\data\\\nngram 1=2\n\n\\1-grams:\n-1\ta\n\n\\end\\\n") == 7);  // count
  CHECK(arpa_error_line("\\data\\\nngram 1=1\n\n\\1-grams:\nxx\ta\n\\end\\\n") == 5);    // number
  CHECK(arpa_error_line("\\data\\\nngram 1=1\n\n\\1-grams:\n-1\ta\tb\tc\n\\end\\\n") == 5);
  CHECK(arpa_error_line("\\data\\\nngram 1=1\n\n\\2-grams:\n") == 4);                  // section
  CHECK(arpa_error_line("\\data\\\nngram 1=1\n\n\\1-grams:\n-1\ta\n") > 0);             // no \end\ .
  CHECK(arpa_error_line("\\data\\\nngram 2=1\n") == 2);                               // order gap
}

TEST_CASE("external toolkit trigram scores within 1e-3") {
  auto m = read_arpa_file(data_path("small.tokens.lmplz3.arpa"));
  REQUIRE(m.order() == 3);
  REQUIRE(m.unk_logprob());
  auto scores = load_scores("small.tokens.lmplz3.scores");
  REQUIRE(scores.size() == 50);
  for (const auto& [total, words] : scores) {
    CHECK(std::abs(m.sequence_logprob(words, true) - total) < 1e-3);
  }
  auto probes = load_scores("small.tokens.lmplz3.probe.scores");
  REQUIRE(probes.size() == 51);
  for (const auto& [total, words] : probes) {
    CHECK(std::abs(m.sequence_logprob(words, true) - total) < 1e-3);
  }
}

TEST_CASE("external toolkit 5-gram signature scores within 1e-3") {
  auto m = read_arpa_file(data_path("small.signature.lmplz5.arpa"));
  REQUIRE(m.order() == 5);
  auto scores = load_scores("small.signature.lmplz5.scores");
  REQUIRE(scores.size() == 50);
  for (const auto& [total, words] : scores) {
    CHECK(std::abs(m.sequence_logprob(words, true) - total) < 1e-3);
  }
}

TEST_CASE("file helpers surface IO errors") {
  CHECK_THROWS_AS(read_arpa_file("/nonexistent/model.arpa"), IoError);
  CHECK_THROWS_AS(write_arpa_file("/nonexistent/dir/model.arpa", NGramModel(2)), IoError);
}
