// One line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "camshift/cam1d.hpp"
#include "camshift/camzd.hpp"
#include "camshift/error.hpp"
#include "camshift/sft.hpp"
#include "oracles.hpp"

using namespace camshift;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

const cam1d::Family& family4() {
  static const cam1d::Family f = cam1d::build_family(4);
  return f;
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto& f = family4();
  const double secs = seconds_since(t0);
  o.require(secs < 600, "build took longer than 10 minutes");
  std::size_t rows = 0;
  for (unsigned k = 2; k <= 4; ++k) {
    const auto& cert = f.level(k).certificate;
    for (const auto& r : cert.rows()) {
      ++rows;
      o.require(r.status == RowStatus::pass && r.lhs < r.rhs,
                "level " + std::to_string(k) + " row " + r.id + " " + r.detail + " is " +
                    std::string(to_string(r.status)));
    }
  }
  // n - 1 must fail at least one row at every level.
  cam1d::Family g(f.config());
  for (unsigned k = 2; k <= 4; ++k) {
    const BigInt n = f.level(k).n;
    o.require(!g.certify_level(g.build_level(n - 1)).passed(), "n-1 passes at level " + std::to_string(k));
    g.extend(n);
  }
  o.detail << " n = 8, " << f.level(3).n << ", " << f.level(4).n << "; " << rows << " rows strict; built in "
           << secs << " s";
}

void criterion2(Outcome& o) {
  const auto& f = family4();
  std::size_t pairs = 0;
  for (unsigned k : {2u, 3u}) {
    const auto r = cam1d::verify_distinct_subwords(f, k, std::uint64_t{1} << 26, 1);
    pairs += r.scanned();
    o.require(r.occurrences() == 0, "occurrences at level " + std::to_string(k));
    for (const auto& p : r.pairs) o.require(p.status == PairStatus::zero, p.u + " in " + p.v + " not scanned");
  }
  o.require(pairs == 42, "expected 12 + 30 pairs");
  o.detail << " " << pairs << " ordered pairs scanned, 0 occurrences";
}

void criterion3(Outcome& o) {
  std::mt19937_64 rng(3);
  slp::SlpStore s(64);
  std::vector<std::pair<slp::NodeId, std::string>> pool;
  for (int i = 0; i < 4; ++i) {
    std::string w;
    for (std::size_t j = 0; j < 1 + rng() % 5; ++j) w += static_cast<char>('0' + (rng() & 1));
    pool.emplace_back(s.from_word(word_from_string(w)), w);
  }
  int pairs = 0;
  while (pairs < 240) {
    std::vector<slp::Term> terms;
    std::string text;
    for (std::size_t i = 0; i < 1 + rng() % 4; ++i) {
      const auto& [id, w] = pool[rng() % pool.size()];
      const std::uint64_t rep = 1 + rng() % (rng() % 3 == 0 ? 50 : 3);
      terms.push_back({id, rep});
      text += oracle::power(w, rep);
    }
    if (text.size() > 1'000'000) continue;
    const auto id = s.concat(std::move(terms));
    pool.emplace_back(id, text);
    const Word t = s.materialize(id);
    for (int j = 0; j < 3; ++j) {
      Word pat;
      if (j == 0) {
        const std::size_t len = 1 + rng() % std::min<std::size_t>(t.size(), 48);
        const std::size_t at = rng() % (t.size() - len + 1);
        pat.assign(t.begin() + static_cast<std::ptrdiff_t>(at), t.begin() + static_cast<std::ptrdiff_t>(at + len));
      } else {
        for (std::size_t i = 0; i < 1 + rng() % 16; ++i) pat.push_back(rng() & 1 ? Symbol::one : Symbol::zero);
      }
      const BigInt fast = s.count_occurrences(pat, id);
      o.require(fast == count_occurrences_naive(pat, t), "mismatch on pair " + std::to_string(pairs));
      o.require(fast == oracle::count(to_string(pat), text), "string oracle mismatch on pair " + std::to_string(pairs));
      ++pairs;
    }
  }
  o.detail << " " << pairs << " pairs agree";
}

void criterion4(Outcome& o) {
  const auto& f = family4();
  const Rational third = make_rational(1, 3);
  for (unsigned k = 2; k <= 4; ++k) {
    const Rational a0 = cam1d::empirical_measure(f, k, false, word_from_string("0"));
    const Rational b0 = cam1d::empirical_measure(f, k, true, word_from_string("0"));
    const Rational b1 = cam1d::empirical_measure(f, k, true, word_from_string("1"));
    o.require(a0 < third, "nu_a([0]) >= 1/3 at k=" + std::to_string(k));
    o.require(b1 < third, "nu_b([1]) >= 1/3 at k=" + std::to_string(k));
    o.require(abs(a0 - b0) > third, "separation <= 1/3 at k=" + std::to_string(k));
    if (k == 2) {
      o.require(a0 == make_rational(1, 9) && b0 == make_rational(8, 9), "k=2 values are not 1/9 and 8/9");
      o.detail << " k=2: " << to_string(a0) << " and " << to_string(b0) << ";";
    }
  }
  o.detail << " bounds hold for k = 2..4";
}

void criterion5(Outcome& o) {
  const auto& f = family4();
  const BigInt a3 = f.store().length(f.level(3).a);
  const auto p = cam1d::parse_structure(f, 2, 1 - a3, to_u64(2 * a3, "extent"));
  o.require(p.violations == 0, std::to_string(p.violations) + " violations");
  o.require(BigInt(p.blocks.size()) * 9 == 2 * a3, "extent not fully covered");
  o.detail << " " << p.blocks.size() << " blocks, " << p.violations << " violations";
}

void criterion6(Outcome& o) {
  using namespace camshift::zd;
  // One dimension: 13 blocks with stamps at blocks 3 and 5.
  const auto w = ArrayWord::cube(1, 2, Symbol::zero);
  // Both layouts use fewer blocks than the standalone postcard's side
  // condition allows, so they are drawn with the block-count form.
  const auto p1 = stamped({ArrayWord::cube(1, 2, Symbol::one), ArrayWord::cube(1, 2, Symbol::one)}, w, 13)
                      .materialize();
  std::string fig1;
  for (std::size_t b = 1; b <= 13; ++b) fig1 += (b == 3 || b == 5) ? "11" : "00";
  o.require(to_string(p1.cells()) == fig1, "one-dimensional stamp layout");
  // Two dimensions: 9 x 9 blocks with stamps at (3,3) and (5,3).
  const auto p2 = stamped({ArrayWord::cube(2, 2, Symbol::one), ArrayWord::cube(2, 2, Symbol::one)},
                          ArrayWord::cube(2, 2, Symbol::zero), 9)
                      .materialize();
  Index idx(2, 0);
  bool fig2 = p2.sides() == Index{18, 18};
  do {
    const std::size_t bx = idx[0] / 2 + 1, by = idx[1] / 2 + 1;
    fig2 = fig2 && (p2.at(idx) == Symbol::one) == ((bx == 3 || bx == 5) && by == 3);
  } while (next_index(idx, p2.sides()));
  o.require(fig2, "two-dimensional stamp layout");

  const auto t0 = Clock::now();
  const Family f = build_family(3);
  o.require(f.level(2).n == 6, "n_2 != 6");
  o.require(f.certified(), "d=2 certificates fail");
  for (unsigned k = 2; k <= 3; ++k) {
    for (const auto& r : f.level(k).certificate.rows()) {
      o.require(r.status == RowStatus::pass, "d=2 row " + r.id + " " + r.detail);
    }
  }
  const auto pairs = verify_distinct_subwords(f, 2, kDefaultCellBudget);
  o.require(pairs.scanned() == 12 && pairs.occurrences() == 0, "level-2 pair scan");
  for (const auto& p : pairs.pairs) o.require(p.status == PairStatus::zero, p.u + " in " + p.v);
  const auto m = multiplicity_check(f, 2);
  o.require(m.holds, "multiplicity sandwich");
  o.detail << " n = 6, " << f.level(3).n << "; 12 pairs, 0 occurrences; " << to_string(m.lower)
           << " <= " << m.count << " <= " << to_string(m.upper) << "; " << seconds_since(t0) << " s";
}

std::vector<sft::Matrix> sft_catalog() {
  using M = std::vector<std::vector<std::uint64_t>>;
  std::vector<sft::Matrix> out;
  for (const M& m : {M{{1}}, M{{2}}, M{{1, 1}, {1, 0}}, M{{0, 1}, {1, 0}}, M{{1, 1}, {1, 1}}, M{{2, 1}, {1, 0}},
                     M{{0, 2}, {1, 1}}, M{{1, 1, 0}, {0, 0, 1}, {1, 0, 0}}, M{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}},
                     M{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}},
                     M{{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}}}) {
    out.emplace_back(m);
  }
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 4;
    M rows(n, std::vector<std::uint64_t>(n));
    for (auto& r : rows) {
      for (auto& x : r) x = rng() % 3 == 0 ? 0 : rng() % 3;
    }
    out.emplace_back(rows);
  }
  return out;
}

void criterion7(Outcome& o) {
  std::size_t checks = 0;
  std::size_t skipped = 0;
  for (const auto& a : sft_catalog()) {
    for (std::uint64_t n = 1; n <= 10; ++n) {
      if (sft::trace_power(a, n) > sft::kBruteMaxSequences) {
        ++skipped;
        continue;
      }
      o.require(sft::tr_n(a, n) == sft::brute_periodic_points(a, n), "census mismatch " + a.to_json().dump());
      ++checks;
    }
    for (std::uint64_t n = 1; n <= 12; ++n) {
      BigInt sum = 0;
      for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) sum += sft::tr_n(a, d);
      }
      o.require(sum == sft::trace_power(a, n), "Mobius round trip " + a.to_json().dump());
    }
  }
  const sft::Matrix golden({{1, 1}, {1, 0}});
  o.require(sft::tr_n(golden, 1) == 1 && sft::tr_n(golden, 2) == 2 && sft::tr_n(golden, 3) == 3,
            "golden mean q1..q3");
  o.detail << " " << checks << " census values match brute force";
  if (skipped) o.detail << " (" << skipped << " over the enumeration cap, round trip only)";
}

void criterion8(Outcome& o) {
  const auto t0 = Clock::now();
  const sft::Matrix golden({{1, 1}, {1, 0}});
  const auto m2 = sft::embedding_feasibility(golden, 2, 12);
  const auto m1 = sft::embedding_feasibility(golden, 1, 12);
  const double secs = seconds_since(t0);
  o.require(m2.entropy == sft::Verdict::pass, "m=2 entropy is " + std::string(to_string(m2.entropy)));
  o.require(m1.entropy == sft::Verdict::fail, "m=1 entropy is " + std::string(to_string(m1.entropy)));
  o.require(secs < 1.0, "slower than 1 s");
  o.detail << " m=2 " << to_string(m2.entropy) << ", m=1 " << to_string(m1.entropy) << ", lambda in ["
           << std::setprecision(17) << m2.perron.lower.convert_to<double>() << ", "
           << m2.perron.upper.convert_to<double>() << "], " << secs << " s";
}

void criterion9(Outcome& o) {
  const auto a = cam1d::to_json(cam1d::build_family(4)).dump(2);
  o.require(a == cam1d::to_json(family4()).dump(2), "d=1 family files differ");
  cam1d::FamilyConfig threaded;
  threaded.jobs = 4;
  const auto b = cam1d::to_json(cam1d::build_family(3, threaded));
  const auto c = cam1d::to_json(cam1d::build_family(3));
  o.require(b.dump(2) == c.dump(2), "job count changes the d=1 family file");
  o.require(b["certificates"].dump() == c["certificates"].dump(), "certificate reports differ");
  const auto z1 = zd::to_json(zd::build_family(3)).dump(2);
  const auto z2 = zd::to_json(zd::build_family(3)).dump(2);
  o.require(z1 == z2, "d=2 family files differ");
  o.detail << " family files byte-identical (" << a.size() << " and " << z1.size() << " bytes)";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {criterion1, criterion2, criterion3,
                                                               criterion4, criterion5, criterion6,
                                                               criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << ":" << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
