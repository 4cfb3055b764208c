#include <random>

#include <gtest/gtest.h>

#include "camshift/error.hpp"
#include "camshift/slp.hpp"
#include "oracles.hpp"

using namespace camshift;
using slp::NodeId;
using slp::SlpStore;

namespace {

constexpr std::size_t kMaxLen = 1'000'000;

std::string random_bits(std::mt19937_64& rng, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('0' + (rng() & 1));
  return s;
}

struct Expr {
  NodeId id;
  std::string text;
};

// Random grammar over a pool of expressions, each mirrored by its expansion.
class RandomGrammar {
 public:
  RandomGrammar(SlpStore& store, std::uint64_t seed) : store_(store), rng_(seed) {
    for (int i = 0; i < 4; ++i) {
      const auto s = random_bits(rng_, 1 + rng_() % 5);
      pool_.push_back({store_.from_word(word_from_string(s)), s});
    }
  }

  Expr next() {
    for (;;) {
      const std::size_t parts = 1 + rng_() % 4;
      std::vector<slp::Term> terms;
      std::string text;
      for (std::size_t i = 0; i < parts; ++i) {
        const Expr& child = pool_[rng_() % pool_.size()];
        const std::uint64_t rep = 1 + rng_() % (rng_() % 3 == 0 ? 40 : 3);
        terms.push_back({child.id, rep});
        text += oracle::power(child.text, rep);
      }
      if (text.size() > kMaxLen) continue;
      Expr e{store_.concat(std::move(terms)), std::move(text)};
      pool_.push_back(e);
      return e;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  SlpStore& store_;
  std::mt19937_64 rng_;
  std::vector<Expr> pool_;
};

}  // namespace

TEST(Slp, AtomsAndPowers) {
  SlpStore s;
  const auto zero = s.atom(Symbol::zero);
  const auto one = s.atom(Symbol::one);
  EXPECT_EQ(s.length(zero), 1);
  const auto p = s.power(s.concat({{zero, 1}, {one, 1}}), 3);
  EXPECT_EQ(to_string(s.materialize(p)), "010101");
  EXPECT_EQ(s.count_occurrences(word_from_string("0101"), p), 2);
  EXPECT_EQ(s.count_occurrences(word_from_string("1"), s.power(one, BigInt(1) << 80)), BigInt(1) << 80);
}

TEST(Slp, HashConsingSharesEqualNodes) {
  SlpStore s;
  const auto a = s.from_word(word_from_string("0110"));
  const auto b = s.from_word(word_from_string("0110"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(s.power(a, 5), s.power(b, 5));
}

TEST(Slp, CompressedCountMatchesNaiveOracle) {
  SlpStore s(64);
  RandomGrammar g(s, 20240601);
  int pairs = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Expr e = g.next();
    ASSERT_EQ(s.length(e.id), e.text.size());
    for (int j = 0; j < 3; ++j) {
      std::string pat;
      if (j == 0 && e.text.size() >= 2) {
        const std::size_t len = 1 + g.rng()() % std::min<std::size_t>(e.text.size(), 40);
        pat = e.text.substr(g.rng()() % (e.text.size() - len + 1), len);
      } else {
        pat = random_bits(g.rng(), 1 + g.rng()() % 12);
      }
      EXPECT_EQ(s.count_occurrences(word_from_string(pat), e.id), oracle::count(pat, e.text))
          << "pattern " << pat;
      ++pairs;
    }
  }
  EXPECT_GE(pairs, 200);
}

TEST(Slp, CountInPowerMatchesOracle) {
  SlpStore s(64);
  RandomGrammar g(s, 99);
  for (int trial = 0; trial < 30; ++trial) {
    Expr e = g.next();
    while (e.text.size() > 20000) e = g.next();
    const std::uint64_t r = 1 + g.rng()() % 4;
    const auto pat = random_bits(g.rng(), 1 + g.rng()() % 8);
    EXPECT_EQ(s.count_in_power(word_from_string(pat), e.id, r), oracle::count(pat, oracle::power(e.text, r)));
  }
}

TEST(Slp, CharAtAndWindowMatchExpansion) {
  SlpStore s;
  RandomGrammar g(s, 5);
  int checks = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Expr e = g.next();
    for (int j = 0; j < 4; ++j) {
      const std::size_t i = g.rng()() % e.text.size();
      EXPECT_EQ(to_char(s.char_at(e.id, i)), e.text[i]);
      ++checks;
    }
    const std::size_t start = g.rng()() % e.text.size();
    const std::size_t len = std::min<std::size_t>(e.text.size() - start, g.rng()() % 64);
    EXPECT_EQ(to_string(s.window(e.id, start, len)), e.text.substr(start, len));
    const auto piece = s.slice(e.id, start, len == 0 ? 1 : len);
    EXPECT_EQ(to_string(s.materialize(piece)), e.text.substr(start, len == 0 ? 1 : len));
  }
  EXPECT_GE(checks, 100);
}

TEST(Slp, Errors) {
  SlpStore s(8, 100);
  const auto w = s.from_word(word_from_string("0110"));
  const auto big = s.power(w, 1000);
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::malformed_input;
  };
  EXPECT_EQ(code_of([&] { s.char_at(w, 4); }), ErrorCode::index_out_of_range);
  EXPECT_EQ(code_of([&] { s.window(w, 2, 3); }), ErrorCode::index_out_of_range);
  EXPECT_EQ(code_of([&] { s.materialize(big); }), ErrorCode::budget_exceeded);
  EXPECT_EQ(code_of([&] { s.count_occurrences(Word{}, w); }), ErrorCode::empty_pattern);
  EXPECT_EQ(code_of([&] { s.count_occurrences(word_from_string("010101010"), w); }), ErrorCode::pattern_too_long);
  EXPECT_EQ(code_of([&] { s.power(w, 0); }), ErrorCode::invalid_parameter);
}

TEST(Slp, JsonRoundTrip) {
  SlpStore s;
  RandomGrammar g(s, 17);
  Expr e = g.next();
  for (int i = 0; i < 10; ++i) e = g.next();
  const auto j = s.to_json(e.id);
  SlpStore t;
  const auto id = t.from_json(j);
  EXPECT_EQ(to_string(t.materialize(id)), e.text);
  EXPECT_EQ(t.to_json(id), j);
  EXPECT_THROW(t.from_json(nlohmann::json{{"nodes", nlohmann::json::array()}, {"root", 3}}), Error);
}
