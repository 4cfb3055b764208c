#include "camshift/array_word.hpp"

#include <algorithm>
#include <set>

#include "camshift/error.hpp"
#include "camshift/parallel.hpp"

namespace camshift::zd {

namespace {

std::uint64_t checked_product(std::span<const std::size_t> sides, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (auto s : sides) {
    if (s == 0) fail(ErrorCode::shape_mismatch, "array sides must be positive");
    if (total > budget / s) {
      fail(ErrorCode::budget_exceeded, "array exceeds the cell budget of " + std::to_string(budget));
    }
    total *= s;
  }
  return total;
}

std::string describe(std::span<const std::size_t> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

}  // namespace

bool next_index(Index& idx, std::span<const std::size_t> bound) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < bound[i]) return true;
    idx[i] = 0;
  }
  return false;
}

ArrayWord::ArrayWord(Index sides, Word cells) : sides_(std::move(sides)), cells_(std::move(cells)) {
  if (sides_.empty()) fail(ErrorCode::shape_mismatch, "arrays need at least one axis");
  std::uint64_t total = 1;
  for (auto s : sides_) {
    if (s == 0) fail(ErrorCode::shape_mismatch, "array sides must be positive");
    total *= s;
  }
  if (total != cells_.size()) {
    fail(ErrorCode::shape_mismatch, "sides " + describe(sides_) + " do not match " +
                                        std::to_string(cells_.size()) + " cells");
  }
}

ArrayWord ArrayWord::filled(Index sides, Symbol s, std::uint64_t budget) {
  if (sides.empty()) fail(ErrorCode::shape_mismatch, "arrays need at least one axis");
  const auto total = checked_product(sides, budget);
  return ArrayWord(std::move(sides), Word(total, s));
}

ArrayWord ArrayWord::cube(std::size_t dim, std::size_t side, Symbol s, std::uint64_t budget) {
  return filled(Index(dim, side), s, budget);
}

bool ArrayWord::is_cube() const noexcept {
  return !sides_.empty() &&
         std::all_of(sides_.begin(), sides_.end(), [&](auto s) { return s == sides_.front(); });
}

std::size_t ArrayWord::side() const {
  if (!is_cube()) fail(ErrorCode::shape_mismatch, "array " + describe(sides_) + " is not a cube");
  return sides_.front();
}

std::size_t ArrayWord::linear(std::span<const std::size_t> idx) const {
  std::size_t lin = 0;
  for (std::size_t i = 0; i < sides_.size(); ++i) lin = lin * sides_[i] + idx[i];
  return lin;
}

std::uint64_t ArrayWord::count(Symbol s) const {
  return static_cast<std::uint64_t>(std::count(cells_.begin(), cells_.end(), s));
}

nlohmann::json ArrayWord::to_json() const {
  return {{"dim", dim()}, {"sides", sides_}, {"data", to_string(cells_)}};
}

ArrayWord ArrayWord::from_json(const nlohmann::json& j) {
  try {
    auto sides = j.at("sides").get<Index>();
    if (j.at("dim").get<std::size_t>() != sides.size()) {
      fail(ErrorCode::malformed_input, "array dim disagrees with its sides");
    }
    return ArrayWord(std::move(sides), word_from_string(j.at("data").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("array word: ") + e.what());
  }
}

PatchworkExpr::PatchworkExpr(ArrayWord base, Index extents, std::vector<Patch> patches)
    : base_(std::move(base)), extents_(std::move(extents)), patches_(std::move(patches)) {
  base_.side();
  if (extents_.size() != base_.dim()) {
    fail(ErrorCode::shape_mismatch, "extents " + describe(extents_) + " do not match dimension " +
                                        std::to_string(base_.dim()));
  }
  for (auto e : extents_) {
    if (e == 0) fail(ErrorCode::invalid_parameter, "extents must be positive");
  }
  for (std::size_t i = 0; i < patches_.size(); ++i) {
    const auto& p = patches_[i];
    if (p.stamp.sides() != base_.sides()) {
      fail(ErrorCode::shape_mismatch, "stamp " + describe(p.stamp.sides()) +
                                          " does not match the base " + describe(base_.sides()));
    }
    if (p.block.size() != extents_.size()) {
      fail(ErrorCode::shape_mismatch, "patch anchor has the wrong dimension");
    }
    for (std::size_t a = 0; a < extents_.size(); ++a) {
      if (p.block[a] >= extents_[a]) {
        fail(ErrorCode::index_out_of_range, "patch block " + describe(p.block) + " outside extents " +
                                                describe(extents_));
      }
    }
    if (!by_block_.emplace(p.block, i).second) {
      fail(ErrorCode::invalid_parameter, "two patches on block " + describe(p.block));
    }
  }
}

Index PatchworkExpr::sides() const {
  Index out(extents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = extents_[i] * block_side();
  return out;
}

BigInt PatchworkExpr::cell_count() const {
  BigInt total = 1;
  for (auto s : sides()) total *= s;
  return total;
}

bool PatchworkExpr::is_cube() const {
  return std::all_of(extents_.begin(), extents_.end(), [&](auto e) { return e == extents_.front(); });
}

std::size_t PatchworkExpr::side() const {
  if (!is_cube()) fail(ErrorCode::shape_mismatch, "patchwork " + describe(extents_) + " is not a cube");
  return extents_.front() * block_side();
}

const ArrayWord* PatchworkExpr::stamp_at(std::span<const std::size_t> block) const {
  if (by_block_.empty()) return nullptr;
  const auto it = by_block_.find(Index(block.begin(), block.end()));
  return it == by_block_.end() ? nullptr : &patches_[it->second].stamp;
}

Symbol PatchworkExpr::at(std::span<const std::size_t> idx) const {
  const std::size_t s = block_side();
  Index block(idx.size());
  Index local(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= extents_[i] * s) fail(ErrorCode::index_out_of_range, "cell " + describe(idx) + " outside the array");
    block[i] = idx[i] / s;
    local[i] = idx[i] % s;
  }
  const ArrayWord* stamp = stamp_at(block);
  return (stamp ? *stamp : base_).at(local);
}

ArrayWord PatchworkExpr::materialize(std::uint64_t budget) const {
  const Index full = sides();
  const auto total = checked_product(full, budget);
  Word cells(total);
  const std::size_t s = block_side();
  const std::size_t d = dim();
  // Copy each block one contiguous last-axis row at a time.
  Index block(d, 0);
  do {
    const ArrayWord* stamp = stamp_at(block);
    const ArrayWord& src = stamp ? *stamp : base_;
    Index row(d > 1 ? d - 1 : 0, 0);
    const Index row_bound(row.size(), s);
    do {
      std::size_t dst = 0;
      std::size_t from = 0;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t local = i + 1 < d ? row[i] : 0;
        dst = dst * full[i] + block[i] * s + local;
        from = from * s + local;
      }
      std::copy_n(src.cells().begin() + static_cast<std::ptrdiff_t>(from), s,
                  cells.begin() + static_cast<std::ptrdiff_t>(dst));
    } while (!row.empty() && next_index(row, row_bound));
  } while (next_index(block, extents_));
  return ArrayWord(full, std::move(cells));
}

ArrayWord PatchworkExpr::window(std::span<const std::size_t> lower, std::span<const std::size_t> sizes,
                                std::uint64_t budget) const {
  if (lower.size() != dim() || sizes.size() != dim()) {
    fail(ErrorCode::shape_mismatch, "window has the wrong dimension");
  }
  const Index full = sides();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (lower[i] + sizes[i] > full[i]) {
      fail(ErrorCode::index_out_of_range, "window leaves the array on axis " + std::to_string(i));
    }
  }
  Index shape(sizes.begin(), sizes.end());
  const auto total = checked_product(shape, budget);
  Word cells;
  cells.reserve(total);
  Index off(dim(), 0);
  Index cell(dim());
  do {
    for (std::size_t i = 0; i < dim(); ++i) cell[i] = lower[i] + off[i];
    cells.push_back(at(cell));
  } while (next_index(off, shape));
  return ArrayWord(std::move(shape), std::move(cells));
}

PatchworkExpr PatchworkExpr::doubled() const {
  Index ext(extents_.size());
  for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = 2 * extents_[i];
  std::vector<Patch> out;
  const Index two(dim(), 2);
  Index corner(dim(), 0);
  do {
    for (const auto& p : patches_) {
      Patch q{p.block, p.stamp};
      for (std::size_t i = 0; i < dim(); ++i) q.block[i] += corner[i] * extents_[i];
      out.push_back(std::move(q));
    }
  } while (next_index(corner, two));
  return PatchworkExpr(base_, std::move(ext), std::move(out));
}

BigInt PatchworkExpr::count(const ArrayWord& pattern) const {
  const std::size_t d = dim();
  if (pattern.dim() != d) fail(ErrorCode::shape_mismatch, "pattern dimension differs from the text");
  const std::size_t s = block_side();
  const Index full = sides();
  const Index& q = pattern.sides();
  Index last(d);  // largest admissible placement per axis
  for (std::size_t i = 0; i < d; ++i) {
    if (q[i] > full[i]) return 0;
    last[i] = full[i] - q[i];
  }

  // Which residues mod s place the pattern on the periodic base.
  const Index mod_bound(d, s);
  std::vector<char> periodic(checked_product(mod_bound, UINT64_MAX), 0);
  auto base_matches = [&](std::span<const std::size_t> at_cell) {
    Index y(d, 0);
    Index cell(d);
    do {
      for (std::size_t i = 0; i < d; ++i) cell[i] = (at_cell[i] + y[i]) % s;
      if (base_.at(cell) != pattern.at(y)) return false;
    } while (next_index(y, q));
    return true;
  };
  BigInt total = 0;
  Index r(d, 0);
  do {
    if (!base_matches(r)) continue;
    periodic[base_.linear(r)] = 1;
    BigInt placements = 1;
    for (std::size_t i = 0; i < d; ++i) {
      placements *= r[i] <= last[i] ? (last[i] - r[i]) / s + 1 : 0;
    }
    total += placements;
  } while (next_index(r, mod_bound));
  if (patches_.empty()) return total;

  // Placements whose window meets a patch block.
  std::set<Index> touched;
  for (const auto& p : patches_) {
    Index lo(d);
    Index span(d);
    bool empty = false;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t begin = p.block[i] * s;
      const std::size_t from = begin + 1 >= q[i] ? begin + 1 - q[i] : 0;
      const std::size_t to = std::min(last[i], begin + s - 1);
      if (from > to) {
        empty = true;
        break;
      }
      lo[i] = from;
      span[i] = to - from + 1;
    }
    if (empty) continue;
    Index off(d, 0);
    do {
      Index x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = lo[i] + off[i];
      touched.insert(std::move(x));
    } while (next_index(off, span));
  }
  Index cell(d);
  Index res(d);
  for (const auto& x : touched) {
    for (std::size_t i = 0; i < d; ++i) res[i] = x[i] % s;
    const bool was = periodic[base_.linear(res)] != 0;
    bool is = true;
    Index y(d, 0);
    do {
      for (std::size_t i = 0; i < d; ++i) cell[i] = x[i] + y[i];
      if (at(cell) != pattern.at(y)) {
        is = false;
        break;
      }
    } while (next_index(y, q));
    if (was && !is) total -= 1;
    if (!was && is) total += 1;
  }
  return total;
}

bool operator==(const PatchworkExpr& lhs, const PatchworkExpr& rhs) {
  if (lhs.base_ != rhs.base_ || lhs.extents_ != rhs.extents_ || lhs.patches_.size() != rhs.patches_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < lhs.patches_.size(); ++i) {
    if (lhs.patches_[i].block != rhs.patches_[i].block || lhs.patches_[i].stamp != rhs.patches_[i].stamp) {
      return false;
    }
  }
  return true;
}

nlohmann::json PatchworkExpr::to_json() const {
  nlohmann::json patches = nlohmann::json::array();
  for (const auto& p : patches_) patches.push_back({{"block_anchor", p.block}, {"stamp", p.stamp.to_json()}});
  return {{"base", base_.to_json()}, {"extents", extents_}, {"patches", std::move(patches)}};
}

PatchworkExpr PatchworkExpr::from_json(const nlohmann::json& j) {
  try {
    std::vector<Patch> patches;
    for (const auto& p : j.at("patches")) {
      patches.push_back({p.at("block_anchor").get<Index>(), ArrayWord::from_json(p.at("stamp"))});
    }
    return PatchworkExpr(ArrayWord::from_json(j.at("base")), j.at("extents").get<Index>(), std::move(patches));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("patchwork: ") + e.what());
  }
}

PatchworkExpr self_concat(const ArrayWord& w, const Index& extents) { return PatchworkExpr(w, extents); }

PatchworkExpr stamped(const std::vector<ArrayWord>& stamps, const ArrayWord& base, std::size_t blocks) {
  const std::size_t k = stamps.size();
  if (blocks < 2 * k + 4) {
    fail(ErrorCode::stamp_count_too_large, std::to_string(k) + " stamps need at least " +
                                               std::to_string(2 * k + 4) + " blocks, got " +
                                               std::to_string(blocks));
  }
  std::vector<Patch> patches;
  for (std::size_t m = 1; m <= k; ++m) {
    Index block(base.dim(), 2);
    block[0] = 2 * m;
    patches.push_back({std::move(block), stamps[m - 1]});
  }
  return PatchworkExpr(base, Index(base.dim(), blocks), std::move(patches));
}

PatchworkExpr postcard(const std::vector<ArrayWord>& stamps, const ArrayWord& base, std::size_t e) {
  if (e < 2 * stamps.size() + 4) {
    fail(ErrorCode::stamp_count_too_large, std::to_string(stamps.size()) + " stamps need e >= " +
                                               std::to_string(2 * stamps.size() + 4) + ", got " +
                                               std::to_string(e));
  }
  return stamped(stamps, base, 2 * e + 1);
}

std::uint64_t count_occurrences_d(const ArrayWord& pattern, const ArrayWord& text, unsigned jobs) {
  const std::size_t d = text.dim();
  if (pattern.dim() != d) fail(ErrorCode::shape_mismatch, "pattern dimension differs from the text");
  const Index& q = pattern.sides();
  const Index& m = text.sides();
  Index span(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (q[i] > m[i]) {
      fail(ErrorCode::shape_mismatch, "pattern " + describe(q) + " does not fit in " + describe(m));
    }
    span[i] = m[i] - q[i] + 1;
  }
  const std::size_t row = q[d - 1];
  const Index row_bound(q.begin(), q.end() - 1);
  auto matches_at = [&](const Index& x) {
    Index y(d - 1, 0);
    Index cell(d);
    std::size_t prow = 0;
    do {
      for (std::size_t i = 0; i + 1 < d; ++i) cell[i] = x[i] + y[i];
      cell[d - 1] = x[d - 1];
      const auto from = text.cells().begin() + static_cast<std::ptrdiff_t>(text.linear(cell));
      const auto pat = pattern.cells().begin() + static_cast<std::ptrdiff_t>(prow * row);
      if (!std::equal(pat, pat + static_cast<std::ptrdiff_t>(row), from)) return false;
      ++prow;
    } while (!y.empty() && next_index(y, row_bound));
    return true;
  };
  // Slabs along axis 0 are independent.
  std::vector<std::uint64_t> per_slab(span[0], 0);
  parallel_for(span[0], jobs, [&](std::size_t x0) {
    Index rest(span.begin() + 1, span.end());
    Index off(d - 1, 0);
    Index x(d);
    x[0] = x0;
    std::uint64_t hits = 0;
    do {
      for (std::size_t i = 1; i < d; ++i) x[i] = off[i - 1];
      if (matches_at(x)) ++hits;
    } while (!off.empty() && next_index(off, rest));
    per_slab[x0] = hits;
  });
  std::uint64_t total = 0;
  for (auto h : per_slab) total += h;
  return total;
}

PeriodLattice period_lattice(const ArrayWord& w) {
  const std::size_t n = w.side();
  const std::size_t d = w.dim();
  PeriodLattice out;
  out.modulus = n;
  out.dim = d;
  const Index bound(d, n);
  Index r(d, 0);
  Index shifted(d);
  do {
    bool period = true;
    Index x(d, 0);
    do {
      for (std::size_t i = 0; i < d; ++i) shifted[i] = (x[i] + r[i]) % n;
      if (w.at(shifted) != w.at(x)) {
        period = false;
        break;
      }
    } while (next_index(x, bound));
    if (period) out.residues.push_back(r);
  } while (next_index(r, bound));

  // Greedy generating set: add a residue whenever it is not yet generated.
  std::vector<char> in_group(w.size(), 0);
  std::vector<Index> group{Index(d, 0)};
  in_group[0] = 1;
  for (const auto& g : out.residues) {
    if (in_group[w.linear(g)]) continue;
    out.generators.push_back(g);
    for (std::size_t i = 0; i < group.size(); ++i) {
      Index h(d);
      for (std::size_t a = 0; a < d; ++a) h[a] = (group[i][a] + g[a]) % n;
      const auto lin = w.linear(h);
      if (!in_group[lin]) {
        in_group[lin] = 1;
        group.push_back(std::move(h));
      }
    }
  }
  out.index = pow_big(n, static_cast<unsigned>(d)) / out.residues.size();
  return out;
}

}  // namespace camshift::zd
