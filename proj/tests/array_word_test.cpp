#include <random>

#include <gtest/gtest.h>

#include "camshift/array_word.hpp"
#include "camshift/error.hpp"
#include "oracles.hpp"

using namespace camshift;
using namespace camshift::zd;

namespace {

ArrayWord random_array(std::mt19937_64& rng, Index sides, unsigned ones_in = 2) {
  std::size_t cells = 1;
  for (auto s : sides) cells *= s;
  Word w(cells);
  for (auto& c : w) c = rng() % ones_in == 0 ? Symbol::one : Symbol::zero;
  return ArrayWord(std::move(sides), std::move(w));
}

oracle::Grid grid(const ArrayWord& a) {
  oracle::Grid g{a.sides(), {}};
  for (auto s : a.cells()) g.cells.push_back(to_char(s));
  return g;
}

Index zero_based(const std::vector<std::size_t>& x) {
  Index i(x);
  for (auto& c : i) --c;
  return i;
}

}  // namespace

TEST(ArrayWord, SelfConcatExamples) {
  const auto ones = self_concat(ArrayWord::cube(2, 1, Symbol::one), {2, 2}).materialize();
  EXPECT_EQ(ones, ArrayWord::cube(2, 2, Symbol::one));
  const auto line = self_concat(ArrayWord({2}, word_from_string("01")), {3}).materialize();
  EXPECT_EQ(to_string(line.cells()), "010101");
}

TEST(ArrayWord, SelfConcatOfLoneOnePlacesOnesPeriodically) {
  auto a2 = ArrayWord::cube(2, 12, Symbol::zero);
  a2.set(Index{2, 2}, Symbol::one);
  const auto big = self_concat(a2, {2, 2}).materialize();
  EXPECT_EQ(big.count(Symbol::one), 4u);
  for (std::size_t x : {3u, 15u}) {
    for (std::size_t y : {3u, 15u}) EXPECT_EQ(big.at(Index{x - 1, y - 1}), Symbol::one);
  }
}

TEST(ArrayWord, PostcardLayoutInOneDimension) {
  const auto w = ArrayWord({3}, word_from_string("000"));
  const auto u1 = ArrayWord({3}, word_from_string("111"));
  const auto u2 = ArrayWord({3}, word_from_string("101"));
  // 13 blocks is below the e >= 2k+4 side condition of the standalone
  // postcard; the block-count form carries the same layout.
  EXPECT_THROW(postcard({u1, u2}, w, 6), Error);
  const auto p = stamped({u1, u2}, w, 13).materialize();
  ASSERT_EQ(p.size(), 13u * 3);
  std::string expected;
  for (std::size_t block = 1; block <= 13; ++block) {
    expected += block == 3 ? "111" : block == 5 ? "101" : "000";
  }
  EXPECT_EQ(to_string(p.cells()), expected);
}

TEST(ArrayWord, PostcardLayoutInTwoDimensions) {
  const auto w = ArrayWord::cube(2, 2, Symbol::zero);
  const auto u = ArrayWord::cube(2, 2, Symbol::one);
  const auto p = stamped({u, u}, w, 9).materialize();
  ASSERT_EQ(p.sides(), (Index{18, 18}));
  Index idx(2, 0);
  do {
    const std::size_t bx = idx[0] / 2 + 1;
    const std::size_t by = idx[1] / 2 + 1;
    const bool stamp = (bx == 3 || bx == 5) && by == 3;
    EXPECT_EQ(p.at(idx), stamp ? Symbol::one : Symbol::zero);
  } while (next_index(idx, p.sides()));
  EXPECT_EQ(postcard({}, w, 4), self_concat(w, {9, 9}));
  EXPECT_EQ(postcard({u, u}, w, 8), stamped({u, u}, w, 17));
}

TEST(ArrayWord, PostcardAgreesWithCellFormula) {
  std::mt19937_64 rng(2024);
  int instances = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % (d == 3 ? 2 : 3);
    const std::size_t k = rng() % 3;
    const std::size_t e = 2 * k + 4 + rng() % 2;
    const Index cube(d, n);
    const auto base = random_array(rng, cube);
    std::vector<ArrayWord> stamps;
    std::vector<oracle::Grid> stamp_grids;
    for (std::size_t m = 0; m < k; ++m) {
      stamps.push_back(random_array(rng, cube));
      stamp_grids.push_back(grid(stamps.back()));
    }
    const auto p = postcard(stamps, base, e);
    const auto mat = p.materialize();
    const auto g = grid(base);
    std::vector<std::size_t> x(d, 1);
    const std::vector<std::size_t> sides(d, (2 * e + 1) * n);
    do {
      const char want = oracle::postcard_cell(stamp_grids, g, x);
      ASSERT_EQ(to_char(mat.at(zero_based(x))), want);
      ASSERT_EQ(to_char(p.at(zero_based(x))), want);
    } while (oracle::next(x, sides));
    // No stamp reaches a corner block.
    Index corner(d, 0);
    do {
      Index lower(d);
      for (std::size_t i = 0; i < d; ++i) lower[i] = corner[i] * 2 * e * n;
      EXPECT_EQ(p.window(lower, cube), base);
    } while (next_index(corner, Index(d, 2)));
    ++instances;
  }
  EXPECT_GE(instances, 100);
  EXPECT_THROW(postcard({ArrayWord::cube(1, 2, Symbol::one)}, ArrayWord::cube(1, 2, Symbol::zero), 5), Error);
}

TEST(ArrayWord, CountOccurrencesMatchesOracle) {
  EXPECT_EQ(count_occurrences_d(ArrayWord::cube(2, 1, Symbol::one), ArrayWord::cube(2, 2, Symbol::one)), 4u);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    Index ts(d), ps(d);
    for (std::size_t i = 0; i < d; ++i) {
      ts[i] = 2 + rng() % (d == 3 ? 4 : 9);
      ps[i] = 1 + rng() % 2;
    }
    const auto text = random_array(rng, ts, 3);
    const auto pat = random_array(rng, ps, 3);
    EXPECT_EQ(count_occurrences_d(pat, text, 1 + trial % 3), oracle::count_d(grid(pat), grid(text)));
    EXPECT_EQ(count_occurrences_d(text, text), 1u);
  }
  try {
    count_occurrences_d(ArrayWord::cube(2, 3, Symbol::one), ArrayWord::cube(2, 2, Symbol::one));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::shape_mismatch);
  }
}

TEST(ArrayWord, PatchworkCountMatchesMaterializedCount) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    const std::size_t n = 2 + rng() % 3;
    const std::size_t k = 1 + rng() % 2;
    const Index cube(d, n);
    const auto base = random_array(rng, cube, 4);
    std::vector<ArrayWord> stamps;
    for (std::size_t m = 0; m < k; ++m) stamps.push_back(random_array(rng, cube, 2));
    const auto p = stamped(stamps, base, 2 * k + 4 + rng() % 3);
    const auto d2 = p.doubled();
    const auto mat = d2.materialize();
    for (int j = 0; j < 4; ++j) {
      Index ps(d);
      for (auto& s : ps) s = 1 + rng() % (2 * n);
      ArrayWord pat;
      if (j % 2 == 0) {
        Index lower(d);
        for (std::size_t i = 0; i < d; ++i) lower[i] = rng() % (mat.sides()[i] - ps[i] + 1);
        pat = d2.window(lower, ps);
      } else {
        pat = random_array(rng, ps, 3);
      }
      EXPECT_EQ(d2.count(pat), count_occurrences_d(pat, mat)) << "trial " << trial;
    }
  }
}

TEST(ArrayWord, PeriodLatticeExamples) {
  EXPECT_EQ(period_lattice(ArrayWord::cube(2, 4, Symbol::one)).index, 1);
  auto lone = ArrayWord::cube(2, 6, Symbol::zero);
  lone.set(Index{2, 2}, Symbol::one);
  EXPECT_EQ(period_lattice(lone).index, 36);
  const auto l = period_lattice(ArrayWord({4}, word_from_string("0101")));
  EXPECT_EQ(l.index, 2);
}

TEST(ArrayWord, PeriodLatticeSoundness) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    const std::size_t n = 2 + rng() % 5;
    // Tile a random motif so that nontrivial periods exist.
    const std::size_t m = n % 2 == 0 && rng() % 2 ? n / 2 : n;
    const auto motif = random_array(rng, Index(d, m));
    const auto w = self_concat(motif, Index(d, n / m)).materialize();
    const auto lat = period_lattice(w);
    EXPECT_EQ(lat.index * BigInt(lat.residues.size()), pow_big(n, static_cast<unsigned>(d)));
    for (const auto& g : lat.generators) {
      Index x(d, 0);
      do {
        Index y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = (x[i] + g[i]) % n;
        ASSERT_EQ(w.at(x), w.at(y));
      } while (next_index(x, w.sides()));
    }
  }
}

TEST(ArrayWord, JsonRoundTrip) {
  std::mt19937_64 rng(4);
  const auto a = random_array(rng, {3, 5});
  EXPECT_EQ(ArrayWord::from_json(a.to_json()), a);
  const auto p = stamped({random_array(rng, {2, 2})}, random_array(rng, {2, 2}), 6);
  EXPECT_EQ(PatchworkExpr::from_json(p.to_json()), p);
  EXPECT_THROW(ArrayWord::from_json(nlohmann::json{{"dim", 2}, {"sides", {2, 2}}, {"data", "01"}}), Error);
}
