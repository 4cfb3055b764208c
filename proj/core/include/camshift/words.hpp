#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace camshift {

// The alphabet is {0, 1}.
enum class Symbol : std::uint8_t { zero = 0, one = 1 };

using Word = std::vector<Symbol>;

Word word_from_string(std::string_view bits);
std::string to_string(std::span<const Symbol> word);
char to_char(Symbol s);

Word repeat(std::span<const Symbol> word, std::size_t times);
Word concat(std::span<const Symbol> lhs, std::span<const Symbol> rhs);

// Binary KMP automaton. state() is the length of the longest pattern prefix
// that is a suffix of the input consumed so far.
class PatternMatcher {
 public:
  explicit PatternMatcher(std::span<const Symbol> pattern);

  std::size_t size() const noexcept { return length_; }
  std::size_t step(std::size_t state, Symbol s) const noexcept {
    return delta_[2 * state + static_cast<std::size_t>(s)];
  }
  // Number of full matches while feeding `text` starting from state 0.
  std::uint64_t count_in(std::span<const Symbol> text) const;
  // Matches of the pattern inside lhs+rhs that start in lhs and end in rhs.
  std::uint64_t count_straddling(std::span<const Symbol> lhs, std::span<const Symbol> rhs) const;

 private:
  std::size_t length_;
  std::vector<std::uint32_t> delta_;
};

// Sliding-window exact count of (possibly overlapping) occurrences.
std::uint64_t count_occurrences_naive(std::span<const Symbol> pattern, std::span<const Symbol> text);

// Smallest p >= 1 with word[i] == word[i + p] for all valid i.
std::size_t minimal_period(std::span<const Symbol> word);

// p(n) for n = 1..n_max: number of distinct length-n factors of `text`, via a
// suffix automaton. Index 0 of the result is p(1).
std::vector<std::uint64_t> distinct_factor_counts(std::span<const Symbol> text, std::size_t n_max);

}  // namespace camshift
