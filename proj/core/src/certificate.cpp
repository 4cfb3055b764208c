#include "camshift/certificate.hpp"

#include <algorithm>

#include "camshift/error.hpp"

namespace camshift {

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::pass: return "pass";
    case RowStatus::fail: return "fail";
    case RowStatus::unverifiable: return "unverifiable";
  }
  return "unverifiable";
}

void CertificateReport::add(std::string id, std::string detail, Rational lhs, Rational rhs) {
  const auto status = lhs < rhs ? RowStatus::pass : RowStatus::fail;
  rows_.push_back({std::move(id), std::move(detail), std::move(lhs), std::move(rhs), status, {}});
}

void CertificateReport::add_unverifiable(std::string id, std::string detail, std::string note) {
  rows_.push_back({std::move(id), std::move(detail), 0, 0, RowStatus::unverifiable, std::move(note)});
}

bool CertificateReport::passed() const {
  return !rows_.empty() &&
         std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.status == RowStatus::pass; });
}

std::size_t CertificateReport::count(RowStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [&](const auto& r) { return r.status == status; }));
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    nlohmann::json row = {{"id", r.id}, {"detail", r.detail}, {"status", to_string(r.status)}};
    if (r.status == RowStatus::unverifiable) {
      row["note"] = r.note;
    } else {
      row["lhs"] = rational_to_json(r.lhs);
      row["rhs"] = rational_to_json(r.rhs);
      row["margin"] = rational_to_json(r.margin());
    }
    rows.push_back(std::move(row));
  }
  return {{"level", level_}, {"passed", passed()}, {"rows", std::move(rows)}};
}

CertificateReport CertificateReport::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("rows") || !j["rows"].is_array()) {
    fail(ErrorCode::malformed_input, "certificate needs 'level' and 'rows'");
  }
  CertificateReport out(j["level"].get<unsigned>());
  for (const auto& row : j["rows"]) {
    const auto status = row.at("status").get<std::string>();
    if (status == "unverifiable") {
      out.add_unverifiable(row.at("id").get<std::string>(), row.at("detail").get<std::string>(),
                           row.value("note", std::string()));
    } else if (status == "pass" || status == "fail") {
      out.add(row.at("id").get<std::string>(), row.at("detail").get<std::string>(),
              rational_from_json(row.at("lhs")), rational_from_json(row.at("rhs")));
      if (to_string(out.rows_.back().status) != status) {
        fail(ErrorCode::malformed_input, "certificate row status disagrees with its values");
      }
    } else {
      fail(ErrorCode::malformed_input, "unknown certificate row status '" + status + "'");
    }
  }
  return out;
}

}  // namespace camshift
