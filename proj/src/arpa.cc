#include "chunkga/arpa.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chunkga/errors.h"

namespace chunkga {
namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

struct Row {
  std::vector<std::string> words;
  NGramModel::Entry entry;
};

std::vector<Row> sorted_rows(const NGramModel& model, int k) {
  std::vector<Row> rows;
  rows.reserve(model.entries(k).size());
  for (const auto& [key, entry] : model.entries(k)) {
    Row row{{}, entry};
    for (WordId id : key.view()) row.words.push_back(model.vocab().word(id));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.words < b.words; });
  return rows;
}

}  // namespace

void write_arpa(std::ostream& out, const NGramModel& model) {
  const int order = model.order();
  std::vector<std::vector<Row>> sections;
  for (int k = 1; k <= order; ++k) sections.push_back(sorted_rows(model, k));
  const bool has_unk = model.unk_logprob().has_value();

  out << "\n\\data\\\n";
  for (int k = 1; k <= order; ++k) {
    out << "ngram " << k << '=' << sections[k - 1].size() + (k == 1 && has_unk ? 1 : 0) << '\n';
  }
  for (int k = 1; k <= order; ++k) {
    out << "\n\\" << k << "-grams:\n";
    if (k == 1 && has_unk) {
      out << format_number(*model.unk_logprob()) << '\t' << kUnk;
      if (order > 1) out << "\t0";
      out << '\n';
    }
    for (const auto& row : sections[k - 1]) {
      out << format_number(row.entry.logprob) << '\t';
      for (std::size_t i = 0; i < row.words.size(); ++i) {
        if (i) out << ' ';
        out << row.words[i];
      }
      if (k < order) out << '\t' << format_number(row.entry.backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

namespace {

double parse_value(const std::string& text, std::size_t lineno) {
  if (text == "-inf" || text == "-Infinity") return kLogProbFloor;
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw MalformedArpa("bad number '" + text + "'", lineno);
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

NGramModel read_arpa(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& line) {
    if (!std::getline(in, raw)) return false;
    ++lineno;
    line = trim(raw);
    return true;
  };

  std::string line;
  bool found = false;
  while (next_line(line)) {
    if (line == "\\data\\") {
      found = true;
      break;
    }
  }
  if (!found) throw MalformedArpa("missing \\data\\ header", lineno);

  std::vector<std::size_t> declared;
  while (next_line(line)) {
    if (line.empty()) {
      if (declared.empty()) continue;
      break;
    }
    if (line.rfind("ngram ", 0) != 0) throw MalformedArpa("expected 'ngram k=count'", lineno);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw MalformedArpa("expected 'ngram k=count'", lineno);
    try {
      std::size_t k = std::stoul(line.substr(6, eq - 6));
      std::size_t n = std::stoul(line.substr(eq + 1));
      if (k != declared.size() + 1) throw MalformedArpa("ngram orders out of sequence", lineno);
      declared.push_back(n);
    } catch (const MalformedArpa&) {
      throw;
    } catch (const std::exception&) {
      throw MalformedArpa("bad ngram count line", lineno);
    }
  }
  if (declared.empty()) throw MalformedArpa("no ngram counts declared", lineno);
  if (declared.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw MalformedArpa("order exceeds " + std::to_string(kMaxOrder), lineno);
  }

  const int order = static_cast<int>(declared.size());
  NGramModel model(order);
  int section = 0;
  std::size_t seen = 0;
  bool ended = false;
  auto close_section = [&] {
    if (section > 0 && seen != declared[section - 1]) {
      throw MalformedArpa(std::to_string(section) + "-grams: declared " +
                              std::to_string(declared[section - 1]) + ", found " +
                              std::to_string(seen),
                          lineno);
    }
  };
  while (next_line(line)) {
    if (line.empty()) continue;
    if (line == "\\end\\") {
      close_section();
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      close_section();
      std::string expected = "\\" + std::to_string(section + 1) + "-grams:";
      if (line != expected) throw MalformedArpa("expected " + expected, lineno);
      ++section;
      seen = 0;
      continue;
    }
    if (section == 0) throw MalformedArpa("entry outside an n-gram section", lineno);

    std::istringstream fields(line);
    std::vector<std::string> parts;
    std::string f;
    while (fields >> f) parts.push_back(f);
    const std::size_t k = static_cast<std::size_t>(section);
    if (parts.size() != k + 1 && parts.size() != k + 2) {
      throw MalformedArpa("expected logprob, " + std::to_string(k) + " words, optional backoff",
                          lineno);
    }
    NGramModel::Entry entry{parse_value(parts[0], lineno), 0.0};
    if (parts.size() == k + 2) entry.backoff = parse_value(parts.back(), lineno);
    std::vector<std::string> words(parts.begin() + 1, parts.begin() + 1 + k);
    ++seen;
    if (k == 1 && words[0] == kUnk) {
      model.set_unk_logprob(entry.logprob);
      continue;
    }
    model.insert(words, entry);
  }
  if (!ended) throw MalformedArpa("missing \\end\\", lineno);
  if (section != order) throw MalformedArpa("missing n-gram sections", lineno);
  return model;
}

void write_arpa_file(const std::filesystem::path& path, const NGramModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_arpa(out, model);
  if (!out) throw IoError("error writing " + path.string());
}

NGramModel read_arpa_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_arpa(in);
  } catch (const MalformedArpa& e) {
    throw MalformedArpa(path.string() + ": " + e.what(), e.line());
  }
}

}  // namespace chunkga
