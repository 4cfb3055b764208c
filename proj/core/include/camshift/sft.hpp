#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"

namespace camshift::sft {

// Square matrix of nonnegative integers presenting an edge shift.
class Matrix {
 public:
  explicit Matrix(std::vector<std::vector<std::uint64_t>> rows);

  std::size_t dim() const { return rows_.size(); }
  std::uint64_t at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }

  bool irreducible() const;

  nlohmann::json to_json() const;
  static Matrix from_json(const nlohmann::json& j);

  bool operator==(const Matrix&) const = default;

 private:
  std::vector<std::vector<std::uint64_t>> rows_;
};

int mobius(std::uint64_t n);

BigInt trace_power(const Matrix& a, std::uint64_t n);

// Points of least period n in the edge shift of a.
BigInt tr_n(const Matrix& a, std::uint64_t n);

constexpr std::size_t kBruteMaxDim = 6;
constexpr std::uint64_t kBruteMaxPeriod = 12;
constexpr std::uint64_t kBruteMaxSequences = 20'000'000;

// Enumerates closed edge sequences of length n and keeps those of least period n.
BigInt brute_periodic_points(const Matrix& a, std::uint64_t n);

struct Census {
  Matrix matrix;
  std::map<std::uint64_t, BigInt> counts;

  nlohmann::json to_json() const;  // {"1": "q1", ...}
};

Census census(const Matrix& a, std::uint64_t n_max);

struct Perron {
  double lambda = 0;  // Rayleigh quotient at the last iterate
  Rational lower;     // exact Collatz-Wielandt bounds: lower <= lambda_A <= upper
  Rational upper;
  double residual = 0;  // |Av - lambda v|_inf / |v|_inf
  std::uint64_t iterations = 0;
  bool periodic = false;  // the graph has period > 1

  nlohmann::json to_json() const;
};

constexpr double kDefaultTolerance = 1e-12;
constexpr std::uint64_t kDefaultIterationCap = 1'000'000;

Perron perron_eigenvalue(const Matrix& a, double tolerance = kDefaultTolerance,
                         std::uint64_t iteration_cap = kDefaultIterationCap);

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict verdict);

// Least-period counts of the height-m tower over the full 2-shift.
BigInt tower_qn(std::uint64_t m, std::uint64_t n);

struct PeriodicRow {
  std::uint64_t n = 0;
  BigInt tower;
  BigInt target;
  bool pass = false;
};

struct EmbeddingReport {
  std::uint64_t m = 0;
  std::uint64_t n_max = 0;
  Perron perron;
  Verdict entropy = Verdict::inconclusive;  // (log 2)/m < log lambda_A
  std::vector<PeriodicRow> periodic;

  bool periodic_ok() const;
  bool feasible() const { return entropy == Verdict::pass && periodic_ok(); }
  nlohmann::json to_json() const;
};

EmbeddingReport embedding_feasibility(const Matrix& a, std::uint64_t m, std::uint64_t n_max,
                                      double tolerance = kDefaultTolerance);

// Smallest tower height m <= m_cap whose report is feasible, checking periods up to max(n_max, m).
std::optional<std::uint64_t> smallest_feasible_height(const Matrix& a, std::uint64_t m_cap,
                                                      std::uint64_t n_max,
                                                      double tolerance = kDefaultTolerance);

}  // namespace camshift::sft
