#include "camshift/camzd.hpp"
#include "camshift/error.hpp"

namespace camshift::zd {

nlohmann::json to_json(const Family& family) {
  nlohmann::json levels = nlohmann::json::array();
  nlohmann::json certificates = nlohmann::json::array();
  for (unsigned k = 1; k <= family.top_level(); ++k) {
    const Level& lk = family.level(k);
    nlohmann::json words = nlohmann::json::object();
    for (const auto& w : lk.words()) words[w.name] = w.word->to_json();
    levels.push_back({{"k", k}, {"side", lk.side}, {"words", std::move(words)}});
    if (k >= 2) certificates.push_back(lk.certificate.to_json());
  }
  nlohmann::json params = nlohmann::json::array();
  for (auto n : family.parameters()) params.push_back(std::to_string(n));
  return {{"dim", family.config().dim},
          {"K", family.top_level()},
          {"eps_scheme", family.frequencies().scheme()},
          {"params", std::move(params)},
          {"levels", std::move(levels)},
          {"certificates", std::move(certificates)}};
}

Family family_from_json(const nlohmann::json& j, FamilyConfig config) {
  try {
    if (!j.is_object() || j.contains("slp")) fail(ErrorCode::malformed_input, "not a patchwork family file");
    config.dim = j.at("dim").get<std::size_t>();
    config.eps_scheme = j.at("eps_scheme").get<std::string>();
    const auto K = j.at("K").get<unsigned>();
    const auto& params = j.at("params");
    if (K < 1 || !params.is_array() || params.size() + 1 != K) {
      fail(ErrorCode::malformed_input, "family needs K - 1 parameters");
    }
    Family family(config);
    for (const auto& p : params) {
      family.extend(static_cast<std::uint64_t>(to_u64(parse_decimal(p.get<std::string>()), "parameter")));
    }
    if (to_json(family) != j) {
      fail(ErrorCode::malformed_input, "family file disagrees with a rebuild from its parameters");
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("family file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::invalid_parameter && e.code() != ErrorCode::stamp_count_too_large) throw;
    fail(ErrorCode::malformed_input, std::string("family file: ") + e.what());
  }
}

}  // namespace camshift::zd
