#ifndef CHUNKGA_TESTS_FIXTURES_H_
#define CHUNKGA_TESTS_FIXTURES_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chunkga/corpus.h"

#ifndef CHUNKGA_TEST_DATA_DIR
#error "CHUNKGA_TEST_DATA_DIR must point at tests/data"
#endif

namespace chunkga::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CHUNKGA_TEST_DATA_DIR) / name;
}

inline std::vector<AnnotatedSentence> load_corpus(const std::string& name) {
  return read_conll_file(data_path(name));
}

// Surface words of each sentence.
inline std::vector<std::vector<std::string>> surface_stream(
    const std::vector<AnnotatedSentence>& sentences) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : sentences) {
    std::vector<std::string> words;
    for (const auto& t : s.tokens) words.push_back(t.surface);
    out.push_back(std::move(words));
  }
  return out;
}

inline std::vector<std::string> split_words(const std::string& text) {
  std::istringstream ss(text);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

// `total<TAB>sentence` lines produced by an external toolkit.
inline std::vector<std::pair<double, std::vector<std::string>>> load_scores(
    const std::string& name) {
  std::ifstream in(data_path(name));
  std::vector<std::pair<double, std::vector<std::string>>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    out.emplace_back(std::stod(line.substr(0, tab)), split_words(line.substr(tab + 1)));
  }
  return out;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("chunkga_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace chunkga::testing

#endif  // CHUNKGA_TESTS_FIXTURES_H_
