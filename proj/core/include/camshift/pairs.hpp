#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"

namespace camshift {

enum class PairStatus { zero, occurs, certified_by_inequalities };

std::string_view to_string(PairStatus status);

struct PairCheck {
  std::string u;
  std::string v;
  PairStatus status = PairStatus::zero;
  BigInt count;  // N(u, vv) when scanned
};

// Outcome of scanning every ordered pair of distinct words of one level.
struct PairReport {
  unsigned level = 0;
  std::vector<PairCheck> pairs;

  std::size_t scanned() const;
  BigInt occurrences() const;
  bool ok() const;
  nlohmann::json to_json() const;
};

}  // namespace camshift
