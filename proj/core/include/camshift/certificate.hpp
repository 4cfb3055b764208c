#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "camshift/bigint.hpp"

namespace camshift {

enum class RowStatus { pass, fail, unverifiable };

std::string_view to_string(RowStatus status);

struct CertificateRow {
  std::string id;      // inequality family, e.g. "fraction5" or "density-a"
  std::string detail;  // which word / level / side the row is about
  Rational lhs;
  Rational rhs;
  RowStatus status = RowStatus::unverifiable;
  std::string note;  // reason when unverifiable

  Rational margin() const { return rhs - lhs; }
};

// One row per inequality; a row passes iff lhs < rhs strictly.
class CertificateReport {
 public:
  CertificateReport() = default;
  explicit CertificateReport(unsigned level) : level_(level) {}

  void add(std::string id, std::string detail, Rational lhs, Rational rhs);
  void add_unverifiable(std::string id, std::string detail, std::string note);
  void append(CertificateRow row) { rows_.push_back(std::move(row)); }

  unsigned level() const noexcept { return level_; }
  const std::vector<CertificateRow>& rows() const noexcept { return rows_; }
  bool passed() const;
  std::size_t count(RowStatus status) const;

  nlohmann::json to_json() const;
  static CertificateReport from_json(const nlohmann::json& j);

 private:
  unsigned level_ = 0;
  std::vector<CertificateRow> rows_;
};

}  // namespace camshift
