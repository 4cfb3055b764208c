#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"
#include "camshift/certificate.hpp"
#include "camshift/frequency.hpp"
#include "camshift/pairs.hpp"
#include "camshift/slp.hpp"
#include "camshift/words.hpp"

namespace camshift::cam1d {

struct FamilyConfig {
  std::string eps_scheme = "default";
  // Level-4 certification counts level-3 words as patterns, so the default
  // window is well above the SLP store default.
  std::size_t window = 65536;
  std::uint64_t materialization_budget = slp::kDefaultMaterializationBudget;
  BigInt search_cap = BigInt(1) << 62;
  unsigned jobs = 1;
};

struct NamedWord {
  std::string name;
  slp::NodeId id;
};

// Level 1 holds w(1,1) = 0 and w(2,1) = 1 and nothing else. Level k >= 2 holds
// w(1,k)..w(2k-2,k), a_k and b_k.
struct Level {
  unsigned k = 1;
  BigInt n;  // n_k, zero at level 1
  std::vector<slp::NodeId> w;
  slp::NodeId a{};
  slp::NodeId b{};
  CertificateReport certificate;

  bool has_density_words() const noexcept { return k >= 2; }
  std::vector<NamedWord> words() const;
};

std::string periodic_name(std::size_t i, unsigned k);  // "w(i,k)", i 1-based

class Family {
 public:
  explicit Family(FamilyConfig config = {});

  const FamilyConfig& config() const noexcept { return config_; }
  const FrequencySequence& frequencies() const noexcept { return eps_; }
  slp::SlpStore& store() noexcept { return *store_; }
  const slp::SlpStore& store() const noexcept { return *store_; }

  unsigned top_level() const noexcept { return static_cast<unsigned>(levels_.size()); }
  const Level& level(unsigned k) const;
  // Parameters n_2..n_K.
  std::vector<BigInt> parameters() const;
  bool certified() const;

  // Words of level top_level() + 1 for parameter n; no certification.
  Level build_level(const BigInt& n);
  // Every inequality the next level must satisfy, evaluated exactly.
  CertificateReport certify_level(const Level& candidate) const;
  // Smallest n > 1 whose candidate level certifies. Requires a certified family.
  BigInt choose_parameter();
  // Builds, certifies and appends the next level (kept even when it fails).
  const Level& extend(const BigInt& n);

  // x on (-|a_K|, |a_K|], where x_1..x_|a_K| = a_K and x_{-|a_K|+1}..x_0 = a_K.
  // side_b reads the b-point, whose central window is b_K b_K.
  Word transitive_point_window(const BigInt& start, std::size_t len, bool side_b = false) const;

 private:
  FamilyConfig config_;
  FrequencySequence eps_;
  std::unique_ptr<slp::SlpStore> store_;
  std::vector<Level> levels_;
};

// Chooses n_2..n_K one level at a time.
Family build_family(unsigned K, const FamilyConfig& config = {});

// N(u, vv) = 0 for all distinct u, v of level k with |u| <= budget, by a
// materialized scan. Longer pairs are reported as certified by inequalities.
PairReport verify_distinct_subwords(const Family& family, unsigned k, std::uint64_t budget,
                                    unsigned jobs = 1);

enum class PairForm { equal, form1, form2, form3, form4, violation };

std::string_view to_string(PairForm form);

struct StructureParse {
  unsigned level = 0;
  BigInt start;
  std::vector<std::string> blocks;  // name of each word, or "?" when unknown
  std::vector<PairForm> pairs;
  std::size_t violations = 0;

  nlohmann::json to_json() const;
};

// start must be 1 mod |a_k| and len a multiple of |a_k|.
StructureParse parse_structure(const Family& family, unsigned k, const BigInt& start,
                               std::size_t len);

// #{m in (-|a_k|, |a_k|] : x_{m+1}..x_{m+|w|} = w} / (2|a_k|), on the a-point or
// the b-point.
Rational empirical_measure(const Family& family, unsigned k, bool side_b, std::span<const Symbol> cylinder);

struct MeasureRow {
  unsigned k = 0;
  Rational a0, a1, b0, b1;
  Rational gap;  // |nu_{k,a}([0]) - nu_{k,b}([0])|
  bool a0_below_third = false;
  bool b1_below_third = false;
  bool gap_above_third = false;
};

std::vector<MeasureRow> measure_report(const Family& family, unsigned k_max);
nlohmann::json to_json(const std::vector<MeasureRow>& rows);

// p(1..n_max) on the window of x of length L centered at the origin.
std::vector<std::uint64_t> complexity_profile(const Family& family, std::size_t n_max, std::size_t L);

nlohmann::json to_json(const Family& family);
// Rebuilds the family from its parameters and rejects files whose words or
// certificates disagree with the rebuild.
Family family_from_json(const nlohmann::json& j, FamilyConfig config = {});

}  // namespace camshift::cam1d
