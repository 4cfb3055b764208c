#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"
#include "camshift/words.hpp"

namespace camshift::zd {

using Index = std::vector<std::size_t>;

inline constexpr std::uint64_t kDefaultCellBudget = 100'000'000;

// Rectangular word over {0,1}, stored row-major with axis 0 slowest.
// Coordinates are 0-based here; the cell (x_1, ..., x_d) of the 1-based
// convention is at index (x_1 - 1, ..., x_d - 1).
class ArrayWord {
 public:
  ArrayWord() = default;
  ArrayWord(Index sides, Word cells);
  static ArrayWord filled(Index sides, Symbol s, std::uint64_t budget = kDefaultCellBudget);
  static ArrayWord cube(std::size_t dim, std::size_t side, Symbol s,
                        std::uint64_t budget = kDefaultCellBudget);

  std::size_t dim() const noexcept { return sides_.size(); }
  const Index& sides() const noexcept { return sides_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool is_cube() const noexcept;
  std::size_t side() const;  // requires a cube

  std::size_t linear(std::span<const std::size_t> idx) const;
  Symbol at(std::span<const std::size_t> idx) const { return cells_[linear(idx)]; }
  void set(std::span<const std::size_t> idx, Symbol s) { cells_[linear(idx)] = s; }
  const Word& cells() const noexcept { return cells_; }
  std::uint64_t count(Symbol s) const;

  friend bool operator==(const ArrayWord&, const ArrayWord&) = default;

  // {"dim": d, "sides": [...], "data": "0110..."} row-major.
  nlohmann::json to_json() const;
  static ArrayWord from_json(const nlohmann::json& j);

 private:
  Index sides_;
  Word cells_;
};

// Advances a multi-index over the box [0, bound) in row-major order; returns
// false after the last index.
bool next_index(Index& idx, std::span<const std::size_t> bound);

struct Patch {
  Index block;  // block coordinates, 0-based
  ArrayWord stamp;
};

// base^(e_1,...,e_d) with some whole blocks replaced by stamps.
class PatchworkExpr {
 public:
  PatchworkExpr() = default;
  PatchworkExpr(ArrayWord base, Index extents, std::vector<Patch> patches = {});

  std::size_t dim() const noexcept { return base_.dim(); }
  std::size_t block_side() const noexcept { return base_.side(); }
  const ArrayWord& base() const noexcept { return base_; }
  const Index& extents() const noexcept { return extents_; }
  const std::vector<Patch>& patches() const noexcept { return patches_; }
  Index sides() const;
  BigInt cell_count() const;
  bool is_cube() const;
  std::size_t side() const;

  Symbol at(std::span<const std::size_t> idx) const;
  ArrayWord materialize(std::uint64_t budget = kDefaultCellBudget) const;
  // Sub-array [lower, lower + sizes).
  ArrayWord window(std::span<const std::size_t> lower, std::span<const std::size_t> sizes,
                   std::uint64_t budget = kDefaultCellBudget) const;
  // The 2 x ... x 2 self-concatenation of the whole expression.
  PatchworkExpr doubled() const;

  // Exact occurrences of `pattern` without expanding the array: placements
  // matching the periodic base, corrected on the placements that touch a patch.
  BigInt count(const ArrayWord& pattern) const;

  friend bool operator==(const PatchworkExpr&, const PatchworkExpr&);

  nlohmann::json to_json() const;
  static PatchworkExpr from_json(const nlohmann::json& j);

 private:
  const ArrayWord* stamp_at(std::span<const std::size_t> block) const;

  ArrayWord base_;
  Index extents_;
  std::vector<Patch> patches_;
  std::map<Index, std::size_t> by_block_;
};

// w^(e_1,...,e_d).
PatchworkExpr self_concat(const ArrayWord& w, const Index& extents);

// Stamp m (1-based) covers first-axis block 2m+1 and block 3 of every other
// axis (1-based blocks); everything else follows the base. The standalone
// form has 2e+1 blocks per axis and needs e >= 2k+4.
PatchworkExpr postcard(const std::vector<ArrayWord>& stamps, const ArrayWord& base, std::size_t e);
// Same stamp layout on exactly `blocks` blocks per axis; needs blocks >= 2k+4.
PatchworkExpr stamped(const std::vector<ArrayWord>& stamps, const ArrayWord& base, std::size_t blocks);

// Every axis-aligned placement, by direct comparison.
std::uint64_t count_occurrences_d(const ArrayWord& pattern, const ArrayWord& text, unsigned jobs = 1);

struct PeriodLattice {
  std::size_t modulus = 0;
  std::size_t dim = 0;
  std::vector<Index> residues;    // periods in [0, n)^d
  std::vector<Index> generators;  // together with n e_i they generate the lattice
  BigInt index;                   // n^d / |residues|
};

// Translation periods of the infinite self-concatenation of a cube word.
PeriodLattice period_lattice(const ArrayWord& w);

}  // namespace camshift::zd
