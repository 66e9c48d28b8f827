#ifndef CHUNKGA_TESTS_KN_ORACLE_H_
#define CHUNKGA_TESTS_KN_ORACLE_H_

// Reference interpolated modified Kneser-Ney computed straight from the
// definitions: every count is found by scanning the padded corpus, nothing is
// shared with the library's tables. Slow on purpose; meant for corpora of a
// few hundred tokens.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace chunkga::testing {

class NaiveKneserNey {
 public:
  using Gram = std::vector<std::string>;

  NaiveKneserNey(const std::vector<Gram>& sequences, int order) : order_(order) {
    for (const auto& seq : sequences) {
      Gram padded(order - 1, "<s>");
      padded.insert(padded.end(), seq.begin(), seq.end());
      padded.push_back("</s>");
      for (std::size_t p = order - 1; p < padded.size(); ++p) vocab_.insert(padded[p]);
      padded_.push_back(std::move(padded));
    }
    for (int k = 1; k <= order; ++k) discounts_.push_back(estimate(k));
  }

  int order() const { return order_; }
  const std::set<std::string>& vocabulary() const { return vocab_; }
  const std::array<double, 3>& discounts(int k) const { return discounts_[k - 1]; }

  // Raw occurrences of `g` ending at a predicted position.
  std::uint64_t raw_count(const Gram& g) const {
    std::uint64_t n = 0;
    for_each_match(g, [&](const Gram&, std::size_t) { ++n; });
    return n;
  }

  // Adjusted count: raw at the top order, distinct left neighbours below.
  std::uint64_t adjusted(const Gram& g) const {
    if (static_cast<int>(g.size()) == order_) return raw_count(g);
    std::set<std::string> left;
    for_each_match(g, [&](const Gram& s, std::size_t start) { left.insert(s[start - 1]); });
    return left.size();
  }

  double prob(Gram context, const std::string& w) const {
    if (static_cast<int>(context.size()) > order_ - 1) {
      context.erase(context.begin(), context.end() - (order_ - 1));
    }
    return prob_at(context, w);
  }

  double log10prob(const Gram& context, const std::string& w) const {
    double p = prob(context, w);
    return p > 0 ? std::max(-99.0, std::log10(p)) : -99.0;
  }

  double sequence_log10prob(const Gram& tokens, bool with_boundaries) const {
    Gram history;
    if (with_boundaries) history.assign(order_ - 1, "<s>");
    double total = 0;
    auto score = [&](const std::string& w) {
      total += log10prob(history, w);
      history.push_back(w);
    };
    for (const auto& t : tokens) score(t);
    if (with_boundaries) score("</s>");
    return total;
  }

  // Every distinct k-gram ending at a predicted position.
  std::set<Gram> grams(int k) const {
    std::set<Gram> out;
    for (const auto& s : padded_) {
      for (std::size_t p = order_ - 1; p < s.size(); ++p) {
        out.insert(Gram(s.begin() + static_cast<std::ptrdiff_t>(p + 1 - k),
                        s.begin() + static_cast<std::ptrdiff_t>(p + 1)));
      }
    }
    return out;
  }

 private:
  struct ContextStats {
    double total = 0;
    double gamma = 0;
    std::map<std::string, std::uint64_t> counts;
  };

  template <typename F>
  void for_each_match(const Gram& g, F&& f) const {
    const std::size_t k = g.size();
    for (const auto& s : padded_) {
      for (std::size_t p = order_ - 1; p < s.size(); ++p) {
        std::size_t start = p + 1 - k;
        if (std::equal(g.begin(), g.end(), s.begin() + static_cast<std::ptrdiff_t>(start))) {
          f(s, start);
        }
      }
    }
  }

  double discount(int k, std::uint64_t c) const {
    if (c == 0) return 0;
    return discounts_[k - 1][std::min<std::uint64_t>(c, 3) - 1];
  }

  std::array<double, 3> estimate(int k) const {
    double n[4] = {0, 0, 0, 0};
    for (const auto& g : grams(k)) {
      auto c = adjusted(g);
      if (c >= 1 && c <= 4) n[c - 1] += 1;
    }
    if (n[0] == 0 || n[1] == 0 || n[2] == 0 || n[3] == 0) return {0.5, 0.5, 0.5};
    double y = n[0] / (n[0] + 2 * n[1]);
    std::array<double, 3> d{1 - 2 * y * n[1] / n[0], 2 - 3 * y * n[2] / n[1],
                            3 - 4 * y * n[3] / n[2]};
    for (int i = 0; i < 3; ++i) d[i] = std::min(std::max(d[i], 0.0), (i + 1) - 1e-6);
    return d;
  }

  const ContextStats& stats(const Gram& h) const {
    auto it = cache_.find(h);
    if (it != cache_.end()) return it->second;
    ContextStats st;
    const int k = static_cast<int>(h.size()) + 1;
    std::set<std::string> followers;
    for (const auto& s : padded_) {
      for (std::size_t p = order_ - 1; p < s.size(); ++p) {
        std::size_t start = p + 1 - k;
        if (std::equal(h.begin(), h.end(), s.begin() + static_cast<std::ptrdiff_t>(start))) {
          followers.insert(s[p]);
        }
      }
    }
    double discounted = 0;
    for (const auto& x : followers) {
      Gram g = h;
      g.push_back(x);
      auto c = adjusted(g);
      st.counts[x] = c;
      st.total += static_cast<double>(c);
      discounted += discount(k, c);
    }
    if (st.total > 0) st.gamma = discounted / st.total;
    return cache_.emplace(h, std::move(st)).first->second;
  }

  double prob_at(const Gram& h, const std::string& w) const {
    const int k = static_cast<int>(h.size()) + 1;
    const double lower = k == 1 ? 1.0 / static_cast<double>(vocab_.size())
                                : prob_at(Gram(h.begin() + 1, h.end()), w);
    const auto& st = stats(h);
    if (st.total == 0) return lower;
    auto it = st.counts.find(w);
    const std::uint64_t c = it == st.counts.end() ? 0 : it->second;
    const double seen = std::max(static_cast<double>(c) - discount(k, c), 0.0) / st.total;
    return seen + st.gamma * lower;
  }

  int order_;
  std::vector<Gram> padded_;
  std::set<std::string> vocab_;
  std::vector<std::array<double, 3>> discounts_;
  mutable std::map<Gram, ContextStats> cache_;
};

}  // namespace chunkga::testing

#endif  // CHUNKGA_TESTS_KN_ORACLE_H_
