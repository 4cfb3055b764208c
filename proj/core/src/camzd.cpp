#include "camshift/camzd.hpp"

#include <algorithm>

#include "camshift/error.hpp"
#include "camshift/parallel.hpp"

namespace camshift::zd {

namespace {

std::string periodic_name(std::size_t i, unsigned k) {
  return "w(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

std::string density_name(char side, unsigned k) { return std::string(1, side) + std::to_string(k); }

ArrayWord single(std::size_t dim, Symbol s) { return ArrayWord::cube(dim, 1, s); }

}  // namespace

std::vector<NamedArray> Level::words() const {
  std::vector<NamedArray> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({periodic_name(i + 1, k), &w[i]});
  if (a) out.push_back({density_name('a', k), &*a});
  if (b) out.push_back({density_name('b', k), &*b});
  return out;
}

BigInt Level::cells() const { return w.front().cell_count(); }

Family::Family(FamilyConfig config)
    : config_(std::move(config)), eps_(FrequencySequence::parse(config_.eps_scheme,
                                                                static_cast<unsigned>(config_.dim))) {
  if (config_.dim < 1) fail(ErrorCode::invalid_parameter, "dimension must be at least 1");
  Level first;
  first.k = 1;
  const Index one(config_.dim, 1);
  first.w = {self_concat(single(config_.dim, Symbol::zero), one),
             self_concat(single(config_.dim, Symbol::one), one)};
  levels_.push_back(std::move(first));
}

const Level& Family::level(unsigned k) const {
  if (k < 1 || k > levels_.size()) {
    fail(ErrorCode::out_of_built_range, "level " + std::to_string(k) + " is not built (top level " +
                                            std::to_string(levels_.size()) + ")");
  }
  return levels_[k - 1];
}

std::vector<std::uint64_t> Family::parameters() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 1; i < levels_.size(); ++i) out.push_back(levels_[i].n);
  return out;
}

bool Family::certified() const {
  return std::all_of(levels_.begin() + 1, levels_.end(),
                     [](const Level& l) { return l.certificate.passed(); });
}

std::size_t Family::next_stamp_count() const {
  const unsigned k = levels_.back().k;
  return k == 1 ? 1 : 2 * k;
}

ArrayWord Family::materialized(const PatchworkExpr& word) const {
  return word.materialize(config_.cell_budget);
}

Level Family::build_level(std::uint64_t n) const {
  if (n <= 1) fail(ErrorCode::invalid_parameter, "level parameter must exceed 1");
  if (n < minimum_parameter()) {
    fail(ErrorCode::stamp_count_too_large, std::to_string(next_stamp_count()) + " stamps need n >= " +
                                               std::to_string(minimum_parameter()) + ", got " +
                                               std::to_string(n));
  }
  const Level& prev = levels_.back();
  const std::size_t d = config_.dim;
  Level next;
  next.k = prev.k + 1;
  next.n = n;
  if (prev.side > UINT64_MAX / n) {
    fail(ErrorCode::budget_exceeded, "level side overflows");
  }
  next.side = prev.side * n;
  const Index ext(d, n);
  if (prev.k == 1) {
    const auto zero = single(d, Symbol::zero);
    const auto one = single(d, Symbol::one);
    next.w = {self_concat(zero, ext), self_concat(one, ext)};
    next.a = stamped({one}, zero, n);
    next.b = stamped({zero}, one, n);
    return next;
  }
  std::vector<ArrayWord> stamps;
  for (const auto& w : prev.w) stamps.push_back(materialized(w));
  const ArrayWord a = materialized(*prev.a);
  const ArrayWord b = materialized(*prev.b);
  for (const auto& s : stamps) next.w.push_back(self_concat(s, ext));
  next.w.push_back(self_concat(a, ext));
  next.w.push_back(self_concat(b, ext));
  stamps.push_back(a);
  stamps.push_back(b);
  next.a = stamped(stamps, a, n);
  next.b = stamped(stamps, b, n);
  return next;
}

CertificateReport Family::certify_level(const Level& candidate) const {
  if (candidate.k != top_level() + 1) {
    fail(ErrorCode::precondition_violated, "candidate level " + std::to_string(candidate.k) +
                                               " does not follow top level " + std::to_string(top_level()));
  }
  const unsigned k = candidate.k - 1;
  const auto d = static_cast<unsigned>(config_.dim);
  CertificateReport report(candidate.k);

  for (unsigned N = 1; N <= k; ++N) {
    report.add("frequency-tail", "N=" + std::to_string(N), eps_.tail(N), eps_.tail_bound(N));
  }
  report.add("postcard-side", "2*" + std::to_string(next_stamp_count()) + "+4 <= n",
             Rational(minimum_parameter() - 1), Rational(candidate.n));

  const Rational cells(candidate.cells());
  const Rational dens_bound = eps_.partial_sum(1, k);
  report.add("density-a", "N(1," + density_name('a', candidate.k) + ")",
             Rational(candidate.a->count(single(d, Symbol::one))) / cells, dens_bound);
  report.add("density-b", "N(0," + density_name('b', candidate.k) + ")",
             Rational(candidate.b->count(single(d, Symbol::zero))) / cells, dens_bound);

  struct Task {
    std::string id;
    std::string detail;
    const PatchworkExpr* u;
    const PatchworkExpr* text;
    unsigned m;
    std::size_t u_side;
  };
  const PatchworkExpr a2 = candidate.a->doubled();
  const PatchworkExpr b2 = candidate.b->doubled();
  const bool third = candidate.k == 3;
  std::vector<Task> tasks;
  for (unsigned m = 2; m <= k; ++m) {
    const Level& lm = level(m);
    for (const auto& u : lm.words()) {
      if (u.word == &*lm.a) continue;
      tasks.push_back({third ? "fraction1" : "fraction5",
                       "u=" + u.name + " m=" + std::to_string(m) + " in " + density_name('a', candidate.k) + "^(2)",
                       u.word, &a2, m, lm.side});
    }
    for (const auto& u : lm.words()) {
      if (u.word == &*lm.b) continue;
      tasks.push_back({third ? "fraction2" : "fraction6",
                       "u=" + u.name + " m=" + std::to_string(m) + " in " + density_name('b', candidate.k) + "^(2)",
                       u.word, &b2, m, lm.side});
    }
  }
  const Rational doubled_cells = cells * Rational(pow_big(2, d));
  // Each task yields the literal row and the informational side-length row.
  std::vector<CertificateRow> rows(2 * tasks.size());
  parallel_for(tasks.size(), config_.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    const BigInt ulen = t.u->cell_count();
    CertificateRow literal{t.id, t.detail, 0, 0, RowStatus::unverifiable, {}};
    CertificateRow side{t.id + "-side", t.detail, 0, 0, RowStatus::unverifiable, {}};
    if (ulen > config_.cell_budget) {
      literal.note = side.note = "unverifiable at budget: |u| = " + ulen.str() + " cells";
    } else {
      const Rational lhs = Rational(t.text->count(materialized(*t.u))) / doubled_cells;
      const Rational sum = eps_.partial_sum(t.m, k);
      literal.lhs = side.lhs = lhs;
      literal.rhs = sum / Rational(ulen * pow_big(2 * ulen - 1, d));
      side.rhs = sum / Rational(ulen * pow_big(BigInt(2 * t.u_side - 1), d));
      literal.status = lhs < literal.rhs ? RowStatus::pass : RowStatus::fail;
      side.status = lhs < side.rhs ? RowStatus::pass : RowStatus::fail;
    }
    rows[2 * i] = std::move(literal);
    rows[2 * i + 1] = std::move(side);
  });
  for (auto& r : rows) report.append(std::move(r));

  if (k >= 2) {
    const Level& lk = level(k);
    const std::string id = third ? "fraction3" : "inductive-bound";
    const BigInt alen = lk.cells();
    const std::string detail = "|" + density_name('a', k) + "|/|" + density_name('a', candidate.k) + "|";
    if (alen > config_.cell_budget) {
      report.add_unverifiable(id, detail, "unverifiable at budget: period lattice of " +
                                              density_name('a', k) + " needs " + alen.str() + " cells");
    } else {
      const BigInt p = period_lattice(materialized(*lk.a)).index;
      const Rational rhs = make_rational(1, BigInt(4 * k - 2) * p) - make_rational(1, pow_big(3, k) * alen);
      report.add(id, detail + " p=" + p.str(), make_rational(alen, candidate.cells()), rhs);
    }
  }
  return report;
}

std::uint64_t Family::choose_parameter() const {
  if (!certified()) fail(ErrorCode::precondition_violated, "parameter search needs a certified family");
  const std::uint64_t least = minimum_parameter();
  auto passes = [&](std::uint64_t n) {
    if (n < least) return false;
    return certify_level(build_level(n)).passed();
  };
  std::uint64_t lo = least - 1;
  std::uint64_t hi = least;
  while (!passes(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > config_.search_cap) {
      fail(ErrorCode::search_budget_exceeded, "no admissible parameter for level " +
                                                  std::to_string(top_level() + 1) + " up to " +
                                                  std::to_string(config_.search_cap));
    }
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (passes(hi - 1)) {
    fail(ErrorCode::search_budget_exceeded, "pass region is not upward closed near n = " + std::to_string(hi));
  }
  return hi;
}

const Level& Family::extend(std::uint64_t n) {
  Level next = build_level(n);
  next.certificate = certify_level(next);
  levels_.push_back(std::move(next));
  return levels_.back();
}

ArrayWord Family::transitive_config_window(const std::vector<std::int64_t>& lower, const Index& sizes,
                                           bool side_b) const {
  if (top_level() < 2) fail(ErrorCode::out_of_built_range, "the transitive configuration needs level 2");
  const Level& top = levels_.back();
  const std::size_t d = config_.dim;
  if (lower.size() != d || sizes.size() != d) fail(ErrorCode::shape_mismatch, "rectangle has the wrong dimension");
  const auto N = static_cast<std::int64_t>(top.side);
  Index start(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto last = lower[i] + static_cast<std::int64_t>(sizes[i]) - 1;
    if (sizes[i] == 0 || lower[i] <= -N || last > N) {
      fail(ErrorCode::out_of_built_range, "rectangle leaves the cube {" + std::to_string(1 - N) + ".." +
                                              std::to_string(N) + "} on axis " + std::to_string(i));
    }
    start[i] = static_cast<std::size_t>(lower[i] + N - 1);
  }
  const PatchworkExpr doubled = (side_b ? *top.b : *top.a).doubled();
  return doubled.window(start, sizes, config_.cell_budget);
}

Family build_family(unsigned K, const FamilyConfig& config) {
  if (K < 2) fail(ErrorCode::invalid_parameter, "a family needs at least two levels");
  Family family(config);
  while (family.top_level() < K) family.extend(family.choose_parameter());
  return family;
}

PairReport verify_distinct_subwords(const Family& family, unsigned k, std::uint64_t budget, unsigned jobs) {
  const auto words = family.level(k).words();
  const std::uint64_t doubling = std::uint64_t{1} << family.config().dim;
  std::vector<std::optional<ArrayWord>> plain(words.size());
  std::vector<std::optional<ArrayWord>> doubled(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const BigInt cells = words[i].word->cell_count();
    if (cells * doubling <= budget) {
      plain[i] = words[i].word->materialize(budget);
      doubled[i] = words[i].word->doubled().materialize(budget);
    }
  }
  struct Job {
    std::size_t u, v;
  };
  std::vector<Job> list;
  for (std::size_t v = 0; v < words.size(); ++v) {
    for (std::size_t u = 0; u < words.size(); ++u) {
      if (u != v) list.push_back({u, v});
    }
  }
  PairReport report;
  report.level = k;
  report.pairs.resize(list.size());
  parallel_for(list.size(), jobs, [&](std::size_t i) {
    const auto [u, v] = list[i];
    PairCheck check{words[u].name, words[v].name, PairStatus::certified_by_inequalities, 0};
    if (plain[u] && doubled[v]) {
      check.count = count_occurrences_d(*plain[u], *doubled[v]);
      check.status = check.count == 0 ? PairStatus::zero : PairStatus::occurs;
    }
    report.pairs[i] = std::move(check);
  });
  return report;
}

std::vector<MeasureRow> measure_report(const Family& family, unsigned k_max) {
  std::vector<MeasureRow> rows;
  const std::size_t d = family.config().dim;
  const Rational third = make_rational(1, 3);
  for (unsigned k = 2; k <= std::min(k_max, family.top_level()); ++k) {
    const Level& lk = family.level(k);
    const Rational cells(lk.cells());
    MeasureRow r;
    r.k = k;
    // Single-cell cylinders: averaging over the cube a_k^(2) is the same as over a_k.
    r.a1 = Rational(lk.a->count(single(d, Symbol::one))) / cells;
    r.a0 = Rational(lk.a->count(single(d, Symbol::zero))) / cells;
    r.b0 = Rational(lk.b->count(single(d, Symbol::zero))) / cells;
    r.b1 = Rational(lk.b->count(single(d, Symbol::one))) / cells;
    r.bound = family.frequencies().partial_sum(1, k - 1);
    r.origin_gap = abs(r.a0 - r.b0);
    r.a1_below_bound = r.a1 < r.bound;
    r.b0_below_bound = r.b0 < r.bound;
    r.gap_above_third = r.origin_gap > third;
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<MeasureRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k},
                   {"freq_a_1", rational_to_json(r.a1)},
                   {"freq_a_0", rational_to_json(r.a0)},
                   {"freq_b_0", rational_to_json(r.b0)},
                   {"freq_b_1", rational_to_json(r.b1)},
                   {"bound", rational_to_json(r.bound)},
                   {"origin_gap", rational_to_json(r.origin_gap)},
                   {"a1_below_bound", r.a1_below_bound},
                   {"b0_below_bound", r.b0_below_bound},
                   {"gap_above_third", r.gap_above_third}});
  }
  return out;
}

nlohmann::json Multiplicity::to_json() const {
  return {{"k", k},
          {"side", side},
          {"index", index.str()},
          {"count", count.str()},
          {"lower", rational_to_json(lower)},
          {"upper", rational_to_json(upper)},
          {"holds", holds}};
}

Multiplicity multiplicity_check(const Family& family, unsigned k, bool side_b) {
  if (k < 2) fail(ErrorCode::invalid_parameter, "base words start at level 2");
  const Level& lk = family.level(k);
  const auto budget = family.config().cell_budget;
  const PatchworkExpr& word = side_b ? *lk.b : *lk.a;
  const ArrayWord a = word.materialize(budget);
  const ArrayWord a2 = word.doubled().materialize(budget);
  const auto d = static_cast<unsigned>(family.config().dim);
  Multiplicity out;
  out.k = k;
  out.side = lk.side;
  out.index = period_lattice(a).index;
  out.count = count_occurrences_d(a, a2, family.config().jobs);
  const Rational volume(pow_big(lk.side, d));
  out.lower = volume / Rational(out.index);
  out.upper = volume * (make_rational(1, out.index) + make_rational(d, lk.side));
  out.holds = out.lower <= Rational(out.count) && Rational(out.count) <= out.upper;
  return out;
}

}  // namespace camshift::zd
