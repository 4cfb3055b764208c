#include "camshift/cam1d.hpp"

#include <algorithm>
#include <map>

#include "camshift/error.hpp"
#include "camshift/parallel.hpp"

namespace camshift::cam1d {

namespace {

BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

std::string density_name(char side, unsigned k) { return std::string(1, side) + std::to_string(k); }

}  // namespace

std::string periodic_name(std::size_t i, unsigned k) {
  return "w(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

std::vector<NamedWord> Level::words() const {
  std::vector<NamedWord> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({periodic_name(i + 1, k), w[i]});
  if (has_density_words()) {
    out.push_back({density_name('a', k), a});
    out.push_back({density_name('b', k), b});
  }
  return out;
}

Family::Family(FamilyConfig config)
    : config_(std::move(config)),
      eps_(FrequencySequence::parse(config_.eps_scheme, 1)),
      store_(std::make_unique<slp::SlpStore>(config_.window, config_.materialization_budget)) {
  Level first;
  first.k = 1;
  first.w = {store_->atom(Symbol::zero), store_->atom(Symbol::one)};
  levels_.push_back(std::move(first));
}

const Level& Family::level(unsigned k) const {
  if (k < 1 || k > levels_.size()) {
    fail(ErrorCode::out_of_built_range, "level " + std::to_string(k) + " is not built (top level " +
                                            std::to_string(levels_.size()) + ")");
  }
  return levels_[k - 1];
}

std::vector<BigInt> Family::parameters() const {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i < levels_.size(); ++i) out.push_back(levels_[i].n);
  return out;
}

bool Family::certified() const {
  return std::all_of(levels_.begin() + 1, levels_.end(),
                     [](const Level& l) { return l.certificate.passed(); });
}

Level Family::build_level(const BigInt& n) {
  if (n <= 1) fail(ErrorCode::invalid_parameter, "level parameter must exceed 1, got " + n.str());
  const Level& prev = levels_.back();
  const unsigned k = prev.k;
  auto& s = *store_;
  Level next;
  next.k = k + 1;
  next.n = n;
  if (k == 1) {
    const auto zero = prev.w[0];
    const auto one = prev.w[1];
    next.w = {s.power(zero, n + 1), s.power(one, n + 1)};
    next.a = s.concat({{zero, 1}, {one, n}});
    next.b = s.concat({{zero, n}, {one, 1}});
    return next;
  }
  const BigInt e = BigInt(2 * k + 1) * n + 2 * k;
  for (auto id : prev.w) next.w.push_back(s.power(id, e));
  next.w.push_back(s.power(prev.a, e));
  next.w.push_back(s.power(prev.b, e));
  auto density = [&](slp::NodeId base) {
    std::vector<slp::Term> terms;
    for (auto id : prev.w) {
      terms.push_back({base, n});
      terms.push_back({id, 1});
    }
    terms.push_back({base, n});
    terms.push_back({prev.a, 1});
    terms.push_back({base, n});
    terms.push_back({prev.b, 1});
    terms.push_back({base, n});
    return s.concat(std::move(terms));
  };
  next.a = density(prev.a);
  next.b = density(prev.b);
  return next;
}

CertificateReport Family::certify_level(const Level& candidate) const {
  if (candidate.k != top_level() + 1) {
    fail(ErrorCode::precondition_violated, "candidate level " + std::to_string(candidate.k) +
                                               " does not follow top level " + std::to_string(top_level()));
  }
  const unsigned k = candidate.k - 1;
  const auto& s = *store_;
  CertificateReport report(candidate.k);

  for (unsigned N = 1; N <= k; ++N) {
    report.add("frequency-tail", "N=" + std::to_string(N), eps_.tail(N), eps_.tail_bound(N));
  }

  const Word zero{Symbol::zero};
  const Word one{Symbol::one};
  const Rational dens_bound = eps_.partial_sum(1, k);
  report.add("density-a", "N(0," + density_name('a', candidate.k) + ")",
             Rational(s.count_occurrences(zero, candidate.a)) / Rational(s.length(candidate.a)),
             dens_bound);
  report.add("density-b", "N(1," + density_name('b', candidate.k) + ")",
             Rational(s.count_occurrences(one, candidate.b)) / Rational(s.length(candidate.b)),
             dens_bound);

  struct Task {
    std::string id;
    std::string detail;
    slp::NodeId u;
    slp::NodeId text;
    unsigned m;
  };
  std::vector<Task> tasks;
  const bool third = candidate.k == 3;
  for (unsigned m = 2; m <= k; ++m) {
    const Level& lm = level(m);
    for (const auto& u : lm.words()) {
      if (u.id == lm.a) continue;
      tasks.push_back({third ? "fraction1" : "fraction5",
                       "u=" + u.name + " m=" + std::to_string(m) + " in " +
                           density_name('a', candidate.k) + density_name('a', candidate.k),
                       u.id, candidate.a, m});
    }
    for (const auto& u : lm.words()) {
      if (u.id == lm.b) continue;
      tasks.push_back({third ? "fraction2" : "fraction6",
                       "u=" + u.name + " m=" + std::to_string(m) + " in " +
                           density_name('b', candidate.k) + density_name('b', candidate.k),
                       u.id, candidate.b, m});
    }
  }
  std::vector<CertificateRow> rows(tasks.size());
  parallel_for(tasks.size(), config_.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    const BigInt& ulen = s.length(t.u);
    CertificateRow row{t.id, t.detail, 0, 0, RowStatus::unverifiable, {}};
    if (ulen > s.window_size() || ulen > s.materialization_budget()) {
      row.note = "unverifiable at budget: |u| = " + ulen.str() + " exceeds the counting window " +
                 std::to_string(s.window_size());
      rows[i] = std::move(row);
      return;
    }
    const Word u = s.materialize(t.u);
    row.lhs = Rational(s.count_in_power(u, t.text, 2)) / Rational(2 * s.length(t.text));
    row.rhs = eps_.partial_sum(t.m, k) / Rational(ulen * (2 * ulen - 1));
    row.status = row.lhs < row.rhs ? RowStatus::pass : RowStatus::fail;
    rows[i] = std::move(row);
  });
  for (auto& r : rows) report.append(std::move(r));

  if (k >= 2) {
    const Level& lk = level(k);
    const std::string id = third ? "fraction3" : "inductive-bound";
    const BigInt& alen = s.length(lk.a);
    const std::string detail = "|" + density_name('a', k) + "|/|" + density_name('a', candidate.k) + "|";
    if (2 * alen > s.materialization_budget()) {
      report.add_unverifiable(id, detail, "unverifiable at budget: minimal period of " +
                                              density_name('a', k) + density_name('a', k) +
                                              " needs " + BigInt(2 * alen).str() + " symbols");
    } else {
      const Word aa = repeat(s.materialize(lk.a), 2);
      const BigInt p = minimal_period(aa);
      const Rational rhs = make_rational(1, BigInt(4 * k - 2) * p) -
                           make_rational(1, pow_big(3, k) * alen);
      report.add(id, detail + " p=" + p.str(), make_rational(alen, s.length(candidate.a)), rhs);
    }
  }
  return report;
}

BigInt Family::choose_parameter() {
  if (!certified()) {
    fail(ErrorCode::precondition_violated, "parameter search needs a certified family");
  }
  auto passes = [&](const BigInt& n) {
    if (n <= 1) return false;
    return certify_level(build_level(n)).passed();
  };
  BigInt lo = 1;  // n = 1 is never admissible
  BigInt hi = 2;
  while (!passes(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > config_.search_cap) {
      fail(ErrorCode::search_budget_exceeded, "no admissible parameter for level " +
                                                  std::to_string(top_level() + 1) + " up to " +
                                                  config_.search_cap.str());
    }
  }
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Guard against a non-monotone pass region.
  if (!passes(hi) || passes(hi - 1)) {
    fail(ErrorCode::search_budget_exceeded, "pass region is not upward closed near n = " + hi.str());
  }
  return hi;
}

const Level& Family::extend(const BigInt& n) {
  Level next = build_level(n);
  next.certificate = certify_level(next);
  levels_.push_back(std::move(next));
  return levels_.back();
}

Word Family::transitive_point_window(const BigInt& start, std::size_t len, bool side_b) const {
  if (top_level() < 2) fail(ErrorCode::out_of_built_range, "the transitive point needs level 2");
  const Level& top = levels_.back();
  const slp::NodeId base = side_b ? top.b : top.a;
  const BigInt& A = store_->length(base);
  if (start <= -A || start + BigInt(len) - 1 > A) {
    fail(ErrorCode::out_of_built_range, "window [" + start.str() + ", +" + std::to_string(len) +
                                            ") leaves (-" + A.str() + ", " + A.str() + "]");
  }
  if (len > store_->materialization_budget()) {
    fail(ErrorCode::budget_exceeded, "window of " + std::to_string(len) + " symbols exceeds the budget");
  }
  // Index into the doubled central word.
  const BigInt i = start + A - 1;
  Word out;
  out.reserve(len);
  if (i < A) {
    const BigInt first = std::min<BigInt>(BigInt(len), A - i);
    const Word head = store_->window(base, i, static_cast<std::size_t>(first));
    out.insert(out.end(), head.begin(), head.end());
    const auto rest = len - static_cast<std::size_t>(first);
    if (rest > 0) {
      const Word tail = store_->window(base, 0, rest);
      out.insert(out.end(), tail.begin(), tail.end());
    }
  } else {
    out = store_->window(base, i - A, len);
  }
  return out;
}

Family build_family(unsigned K, const FamilyConfig& config) {
  if (K < 2) fail(ErrorCode::invalid_parameter, "a family needs at least two levels");
  Family family(config);
  while (family.top_level() < K) family.extend(family.choose_parameter());
  return family;
}

PairReport verify_distinct_subwords(const Family& family, unsigned k, std::uint64_t budget,
                                    unsigned jobs) {
  const auto& s = family.store();
  const auto words = family.level(k).words();
  std::vector<std::optional<Word>> doubled(words.size());
  std::vector<std::optional<Word>> plain(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const BigInt& len = s.length(words[i].id);
    if (len <= budget && 2 * len <= s.materialization_budget()) {
      plain[i] = s.materialize(words[i].id);
      doubled[i] = repeat(*plain[i], 2);
    }
  }
  struct Job {
    std::size_t u, v;
  };
  std::vector<Job> jobs_list;
  for (std::size_t v = 0; v < words.size(); ++v) {
    for (std::size_t u = 0; u < words.size(); ++u) {
      if (u != v) jobs_list.push_back({u, v});
    }
  }
  PairReport report;
  report.level = k;
  report.pairs.resize(jobs_list.size());
  parallel_for(jobs_list.size(), jobs, [&](std::size_t i) {
    const auto [u, v] = jobs_list[i];
    PairCheck check{words[u].name, words[v].name, PairStatus::certified_by_inequalities, 0};
    if (plain[u] && doubled[v]) {
      check.count = count_occurrences_naive(*plain[u], *doubled[v]);
      check.status = check.count == 0 ? PairStatus::zero : PairStatus::occurs;
    }
    report.pairs[i] = std::move(check);
  });
  return report;
}

std::string_view to_string(PairForm form) {
  switch (form) {
    case PairForm::equal: return "equal";
    case PairForm::form1: return "form1";
    case PairForm::form2: return "form2";
    case PairForm::form3: return "form3";
    case PairForm::form4: return "form4";
    case PairForm::violation: return "violation";
  }
  return "violation";
}

nlohmann::json StructureParse::to_json() const {
  nlohmann::json p = nlohmann::json::array();
  for (auto f : pairs) p.push_back(to_string(f));
  return {{"level", level}, {"start", start.str()}, {"blocks", blocks},
          {"pairs", std::move(p)}, {"violations", violations}};
}

StructureParse parse_structure(const Family& family, unsigned k, const BigInt& start, std::size_t len) {
  if (k < 2) fail(ErrorCode::invalid_parameter, "structure parse starts at level 2");
  const Level& lk = family.level(k);
  const auto& s = family.store();
  const BigInt& A = s.length(lk.a);
  if (floor_mod(start - 1, A) != 0 || len == 0 || BigInt(len) % A != 0) {
    fail(ErrorCode::misaligned_window, "window must start at 1 mod " + A.str() +
                                           " and span a positive multiple of it");
  }
  const auto block = static_cast<std::size_t>(A);
  std::map<Word, std::string> dictionary;
  for (const auto& w : lk.words()) dictionary.emplace(s.materialize(w.id), w.name);
  const Word text = family.transitive_point_window(start, len);

  StructureParse out;
  out.level = k;
  out.start = start;
  const std::string a_name = density_name('a', k);
  const std::string b_name = density_name('b', k);
  for (std::size_t off = 0; off < len; off += block) {
    const Word piece(text.begin() + static_cast<std::ptrdiff_t>(off),
                     text.begin() + static_cast<std::ptrdiff_t>(off + block));
    const auto it = dictionary.find(piece);
    out.blocks.push_back(it == dictionary.end() ? "?" : it->second);
    if (it == dictionary.end()) ++out.violations;
  }
  auto periodic = [](const std::string& name) { return name.rfind("w(", 0) == 0; };
  for (std::size_t i = 0; i + 1 < out.blocks.size(); ++i) {
    const auto& x = out.blocks[i];
    const auto& y = out.blocks[i + 1];
    PairForm form = PairForm::violation;
    if (x == "?" || y == "?") {
      form = PairForm::violation;
    } else if (x == y) {
      form = PairForm::equal;
    } else if ((x == a_name && periodic(y)) || (periodic(x) && y == a_name)) {
      form = PairForm::form1;
    } else if ((x == b_name && periodic(y)) || (periodic(x) && y == b_name)) {
      form = PairForm::form2;
    } else if (x == a_name && y == b_name) {
      form = PairForm::form3;
    } else if (x == b_name && y == a_name) {
      form = PairForm::form4;
    }
    if (form == PairForm::violation) ++out.violations;
    out.pairs.push_back(form);
  }
  return out;
}

Rational empirical_measure(const Family& family, unsigned k, bool side_b, std::span<const Symbol> cylinder) {
  if (k < 2) fail(ErrorCode::invalid_parameter, "measures start at level 2");
  const Level& lk = family.level(k);
  const auto& s = family.store();
  const slp::NodeId base = side_b ? lk.b : lk.a;
  const BigInt& A = s.length(base);
  if (cylinder.empty()) fail(ErrorCode::empty_pattern, "cylinder word must be non-empty");
  if (cylinder.size() > s.window_size()) {
    fail(ErrorCode::budget_exceeded, "cylinder longer than the counting window");
  }
  if (BigInt(cylinder.size()) > A) {
    fail(ErrorCode::out_of_built_range, "cylinder longer than the level word");
  }
  // Shifts m in (-A, A] read x_{-A+2} .. x_{A+|w|}, which lies in the central
  // word tripled (for k = K the right overhang is the base word again, as the
  // next level begins with base^n). Those 2A starts cover two periods, and
  // N(w, base^2) - N(w, base) counts the starts in one period.
  const BigInt per_period = s.count_in_power(cylinder, base, 2) - s.count_occurrences(cylinder, base);
  return make_rational(2 * per_period, 2 * A);
}

std::vector<MeasureRow> measure_report(const Family& family, unsigned k_max) {
  std::vector<MeasureRow> rows;
  const Word zero{Symbol::zero};
  const Word one{Symbol::one};
  const Rational third = make_rational(1, 3);
  for (unsigned k = 2; k <= std::min(k_max, family.top_level()); ++k) {
    MeasureRow r;
    r.k = k;
    r.a0 = empirical_measure(family, k, false, zero);
    r.a1 = empirical_measure(family, k, false, one);
    r.b0 = empirical_measure(family, k, true, zero);
    r.b1 = empirical_measure(family, k, true, one);
    r.gap = abs(r.a0 - r.b0);
    r.a0_below_third = r.a0 < third;
    r.b1_below_third = r.b1 < third;
    r.gap_above_third = r.gap > third;
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<MeasureRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k},
                   {"nu_a_0", rational_to_json(r.a0)},
                   {"nu_a_1", rational_to_json(r.a1)},
                   {"nu_b_0", rational_to_json(r.b0)},
                   {"nu_b_1", rational_to_json(r.b1)},
                   {"gap", rational_to_json(r.gap)},
                   {"a0_below_third", r.a0_below_third},
                   {"b1_below_third", r.b1_below_third},
                   {"gap_above_third", r.gap_above_third}});
  }
  return out;
}

std::vector<std::uint64_t> complexity_profile(const Family& family, std::size_t n_max, std::size_t L) {
  if (L == 0 || n_max == 0) fail(ErrorCode::invalid_parameter, "window length and n_max must be positive");
  if (L > family.store().materialization_budget()) {
    fail(ErrorCode::budget_exceeded, "complexity window exceeds the materialization budget");
  }
  const BigInt start = 1 - BigInt(L / 2);
  const Word text = family.transitive_point_window(start, L);
  return distinct_factor_counts(text, n_max);
}

}  // namespace camshift::cam1d
