#include "camshift/cam1d.hpp"
#include "camshift/error.hpp"

namespace camshift::cam1d {

nlohmann::json to_json(const Family& family) {
  std::vector<slp::NodeId> roots;
  for (unsigned k = 1; k <= family.top_level(); ++k) {
    for (const auto& w : family.level(k).words()) roots.push_back(w.id);
  }
  std::vector<std::uint32_t> ids;
  auto nodes = family.store().export_nodes(roots, ids);

  nlohmann::json levels = nlohmann::json::array();
  nlohmann::json certificates = nlohmann::json::array();
  std::size_t next = 0;
  for (unsigned k = 1; k <= family.top_level(); ++k) {
    const Level& lk = family.level(k);
    nlohmann::json words = nlohmann::json::object();
    for (const auto& w : lk.words()) words[w.name] = ids[next++];
    levels.push_back({{"k", k}, {"words", std::move(words)}});
    if (k >= 2) certificates.push_back(lk.certificate.to_json());
  }
  nlohmann::json params = nlohmann::json::array();
  for (const auto& n : family.parameters()) params.push_back(n.str());
  return {{"dim", 1},
          {"K", family.top_level()},
          {"eps_scheme", family.frequencies().scheme()},
          {"window", family.config().window},
          {"params", std::move(params)},
          {"levels", std::move(levels)},
          {"slp", {{"nodes", std::move(nodes)}}},
          {"certificates", std::move(certificates)}};
}

Family family_from_json(const nlohmann::json& j, FamilyConfig config) {
  try {
    if (!j.is_object() || j.value("dim", 0) != 1) {
      fail(ErrorCode::malformed_input, "not a one-dimensional family file");
    }
    const auto K = j.at("K").get<unsigned>();
    const auto& params = j.at("params");
    if (K < 1 || !params.is_array() || params.size() + 1 != K) {
      fail(ErrorCode::malformed_input, "family needs K - 1 parameters");
    }
    config.eps_scheme = j.at("eps_scheme").get<std::string>();
    config.window = j.at("window").get<std::size_t>();
    Family family(config);
    for (const auto& p : params) family.extend(parse_decimal(p.get<std::string>()));
    if (to_json(family) != j) {
      fail(ErrorCode::malformed_input, "family file disagrees with a rebuild from its parameters");
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("family file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::invalid_parameter) throw;
    fail(ErrorCode::malformed_input, std::string("family file: ") + e.what());
  }
}

}  // namespace camshift::cam1d
