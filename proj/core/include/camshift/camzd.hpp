#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/array_word.hpp"
#include "camshift/bigint.hpp"
#include "camshift/certificate.hpp"
#include "camshift/frequency.hpp"
#include "camshift/pairs.hpp"

namespace camshift::zd {

struct FamilyConfig {
  std::size_t dim = 2;
  std::string eps_scheme = "default";
  std::uint64_t cell_budget = kDefaultCellBudget;
  std::uint64_t search_cap = std::uint64_t{1} << 40;
  unsigned jobs = 1;
};

struct NamedArray {
  std::string name;
  const PatchworkExpr* word;
};

// Level 1 is the two one-cell words. Level k+1 words are patchworks whose
// blocks are level-k words: w(i,k+1) = w(i,k)^(n), w(2k-1,k+1) = a_k^(n),
// w(2k,k+1) = b_k^(n), and a_{k+1}, b_{k+1} stamp the 2k level-k words
// w(1,k)..w(2k-2,k), a_k, b_k onto a_k^(n), b_k^(n).
struct Level {
  unsigned k = 1;
  std::uint64_t n = 0;     // n_k, zero at level 1
  std::uint64_t side = 1;  // product of n_2..n_k
  std::vector<PatchworkExpr> w;
  std::optional<PatchworkExpr> a;
  std::optional<PatchworkExpr> b;
  CertificateReport certificate;

  std::vector<NamedArray> words() const;
  BigInt cells() const;
};

class Family {
 public:
  explicit Family(FamilyConfig config = {});

  const FamilyConfig& config() const noexcept { return config_; }
  const FrequencySequence& frequencies() const noexcept { return eps_; }
  unsigned top_level() const noexcept { return static_cast<unsigned>(levels_.size()); }
  const Level& level(unsigned k) const;
  std::vector<std::uint64_t> parameters() const;
  bool certified() const;

  // Number of stamps the next level places, and the smallest admissible n.
  std::size_t next_stamp_count() const;
  std::uint64_t minimum_parameter() const { return 2 * next_stamp_count() + 4; }

  Level build_level(std::uint64_t n) const;
  CertificateReport certify_level(const Level& candidate) const;
  std::uint64_t choose_parameter() const;
  const Level& extend(std::uint64_t n);

  // The configuration restricted to {1 - N, ..., N}^d is a_K^(2) (b_K^(2) on
  // the b side), N the top side. `lower` uses those centered coordinates.
  ArrayWord transitive_config_window(const std::vector<std::int64_t>& lower, const Index& sizes,
                                     bool side_b = false) const;

 private:
  ArrayWord materialized(const PatchworkExpr& word) const;

  FamilyConfig config_;
  FrequencySequence eps_;
  std::vector<Level> levels_;
};

Family build_family(unsigned K, const FamilyConfig& config = {});

// N(u, v^(2)) = 0 for all distinct u, v of level k, by a materialized scan when
// v^(2) fits in `budget` cells.
PairReport verify_distinct_subwords(const Family& family, unsigned k, std::uint64_t budget,
                                    unsigned jobs = 1);

struct MeasureRow {
  unsigned k = 0;
  Rational a1;  // frequency of 1 on the a side
  Rational a0;
  Rational b0;
  Rational b1;
  Rational bound;  // sum of eps_j for j < k
  Rational origin_gap;  // |nu_a(x(0) = 0) - nu_b(x(0) = 0)|
  bool a1_below_bound = false;
  bool b0_below_bound = false;
  bool gap_above_third = false;
};

std::vector<MeasureRow> measure_report(const Family& family, unsigned k_max);
nlohmann::json to_json(const std::vector<MeasureRow>& rows);

// n^d / p <= N(a, a^(2)) <= n^d (1/p + d/n) for a base word a of side n.
struct Multiplicity {
  unsigned k = 0;
  std::uint64_t side = 0;
  BigInt index;
  BigInt count;
  Rational lower;
  Rational upper;
  bool holds = false;

  nlohmann::json to_json() const;
};

Multiplicity multiplicity_check(const Family& family, unsigned k, bool side_b = false);

nlohmann::json to_json(const Family& family);
Family family_from_json(const nlohmann::json& j, FamilyConfig config = {});

}  // namespace camshift::zd
