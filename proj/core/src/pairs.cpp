#include "camshift/pairs.hpp"

#include <algorithm>

namespace camshift {

std::string_view to_string(PairStatus status) {
  switch (status) {
    case PairStatus::zero: return "zero";
    case PairStatus::occurs: return "occurs";
    case PairStatus::certified_by_inequalities: return "certified-by-inequalities";
  }
  return "occurs";
}

std::size_t PairReport::scanned() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) {
    return p.status != PairStatus::certified_by_inequalities;
  }));
}

BigInt PairReport::occurrences() const {
  BigInt total = 0;
  for (const auto& p : pairs) total += p.count;
  return total;
}

bool PairReport::ok() const {
  return std::none_of(pairs.begin(), pairs.end(),
                      [](const auto& p) { return p.status == PairStatus::occurs; });
}

nlohmann::json PairReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : pairs) {
    rows.push_back({{"u", p.u}, {"v", p.v}, {"status", to_string(p.status)}, {"count", p.count.str()}});
  }
  return {{"level", level},     {"pairs", pairs.size()}, {"scanned", scanned()},
          {"occurrences", occurrences().str()}, {"ok", ok()}, {"rows", std::move(rows)}};
}

}  // namespace camshift
