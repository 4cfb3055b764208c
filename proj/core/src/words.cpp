#include "camshift/words.hpp"

#include <algorithm>
#include <array>

#include "camshift/error.hpp"

namespace camshift {

Word word_from_string(std::string_view bits) {
  Word out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c == '0') {
      out.push_back(Symbol::zero);
    } else if (c == '1') {
      out.push_back(Symbol::one);
    } else {
      fail(ErrorCode::invalid_parameter, "word must be over {0,1}: '" + std::string(bits) + "'");
    }
  }
  return out;
}

char to_char(Symbol s) { return s == Symbol::zero ? '0' : '1'; }

std::string to_string(std::span<const Symbol> word) {
  std::string out(word.size(), '0');
  for (std::size_t i = 0; i < word.size(); ++i) out[i] = to_char(word[i]);
  return out;
}

Word repeat(std::span<const Symbol> word, std::size_t times) {
  Word out;
  out.reserve(word.size() * times);
  for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), word.begin(), word.end());
  return out;
}

Word concat(std::span<const Symbol> lhs, std::span<const Symbol> rhs) {
  Word out(lhs.begin(), lhs.end());
  out.insert(out.end(), rhs.begin(), rhs.end());
  return out;
}

namespace {

std::vector<std::size_t> failure_function(std::span<const Symbol> p) {
  std::vector<std::size_t> fail_at(p.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    while (k > 0 && p[i] != p[k]) k = fail_at[k];
    if (p[i] == p[k]) ++k;
    fail_at[i + 1] = k;
  }
  return fail_at;
}

}  // namespace

PatternMatcher::PatternMatcher(std::span<const Symbol> pattern) : length_(pattern.size()) {
  if (pattern.empty()) fail(ErrorCode::empty_pattern, "pattern must be non-empty");
  const auto fail_at = failure_function(pattern);
  delta_.assign(2 * (length_ + 1), 0);
  for (std::size_t state = 0; state <= length_; ++state) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto sym = static_cast<Symbol>(s);
      if (state < length_ && pattern[state] == sym) {
        delta_[2 * state + s] = static_cast<std::uint32_t>(state + 1);
      } else if (state == 0) {
        delta_[s] = 0;
      } else {
        delta_[2 * state + s] = delta_[2 * fail_at[state] + s];
      }
    }
  }
}

std::uint64_t PatternMatcher::count_in(std::span<const Symbol> text) const {
  std::uint64_t matches = 0;
  std::size_t state = 0;
  for (Symbol s : text) {
    state = step(state, s);
    if (state == length_) ++matches;
  }
  return matches;
}

std::uint64_t PatternMatcher::count_straddling(std::span<const Symbol> lhs,
                                               std::span<const Symbol> rhs) const {
  if (lhs.empty() || rhs.empty() || length_ < 2) return 0;
  // Only the last length-1 symbols of lhs can begin a straddling match.
  const std::size_t keep = std::min(lhs.size(), length_ - 1);
  std::size_t state = 0;
  for (Symbol s : lhs.subspan(lhs.size() - keep)) state = step(state, s);
  std::uint64_t matches = 0;
  const std::size_t limit = std::min(rhs.size(), length_ - 1);
  for (std::size_t i = 0; i < limit; ++i) {
    state = step(state, rhs[i]);
    if (state == length_) ++matches;
  }
  return matches;
}

std::uint64_t count_occurrences_naive(std::span<const Symbol> pattern, std::span<const Symbol> text) {
  if (pattern.empty()) fail(ErrorCode::empty_pattern, "pattern must be non-empty");
  if (pattern.size() > text.size()) return 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
    if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++count;
    }
  }
  return count;
}

std::size_t minimal_period(std::span<const Symbol> word) {
  if (word.empty()) fail(ErrorCode::invalid_parameter, "minimal_period of empty word");
  const auto fail_at = failure_function(word);
  return word.size() - fail_at[word.size()];
}

std::vector<std::uint64_t> distinct_factor_counts(std::span<const Symbol> text, std::size_t n_max) {
  struct State {
    std::size_t len = 0;
    std::ptrdiff_t link = -1;
    std::array<std::int64_t, 2> next{-1, -1};
  };
  std::vector<State> st;
  st.reserve(2 * text.size() + 2);
  st.push_back({});
  std::size_t last = 0;
  for (Symbol sym : text) {
    const auto c = static_cast<std::size_t>(sym);
    const std::size_t cur = st.size();
    st.push_back({st[last].len + 1, -1, {-1, -1}});
    std::ptrdiff_t p = static_cast<std::ptrdiff_t>(last);
    while (p != -1 && st[static_cast<std::size_t>(p)].next[c] == -1) {
      st[static_cast<std::size_t>(p)].next[c] = static_cast<std::int64_t>(cur);
      p = st[static_cast<std::size_t>(p)].link;
    }
    if (p == -1) {
      st[cur].link = 0;
    } else {
      const auto q = static_cast<std::size_t>(st[static_cast<std::size_t>(p)].next[c]);
      if (st[static_cast<std::size_t>(p)].len + 1 == st[q].len) {
        st[cur].link = static_cast<std::ptrdiff_t>(q);
      } else {
        const std::size_t clone = st.size();
        State copy = st[q];
        copy.len = st[static_cast<std::size_t>(p)].len + 1;
        st.push_back(copy);
        while (p != -1 && st[static_cast<std::size_t>(p)].next[c] == static_cast<std::int64_t>(q)) {
          st[static_cast<std::size_t>(p)].next[c] = static_cast<std::int64_t>(clone);
          p = st[static_cast<std::size_t>(p)].link;
        }
        st[q].link = static_cast<std::ptrdiff_t>(clone);
        st[cur].link = static_cast<std::ptrdiff_t>(clone);
      }
    }
    last = cur;
  }
  // State v represents one distinct factor of every length in (len(link(v)), len(v)].
  std::vector<std::int64_t> diff(n_max + 2, 0);
  for (std::size_t v = 1; v < st.size(); ++v) {
    const std::size_t lo = st[static_cast<std::size_t>(st[v].link)].len + 1;
    const std::size_t hi = std::min(st[v].len, n_max);
    if (lo > hi) continue;
    diff[lo] += 1;
    diff[hi + 1] -= 1;
  }
  std::vector<std::uint64_t> out(n_max, 0);
  std::int64_t running = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    running += diff[n];
    out[n - 1] = static_cast<std::uint64_t>(running);
  }
  return out;
}

}  // namespace camshift
