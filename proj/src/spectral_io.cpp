#include <string>

#include <json.hpp>

#include "hk/errors.hpp"
#include "hk/spectral.hpp"

namespace hk::spectral {

std::string to_json(const SpectralState& state) {
  nlohmann::ordered_json j;
  j["n"] = state.dim();
  j["k_max"] = state.k_max();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& [alpha, a] : state.coefficients()) {
    list.push_back({alpha.degrees, a.real(), a.imag()});
  }
  j["coefficients"] = std::move(list);
  return j.dump();
}

SpectralState from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    SpectralState state(j.at("n").get<int>(), j.at("k_max").get<int>());
    for (const auto& entry : j.at("coefficients")) {
      if (!entry.is_array() || entry.size() != 3) throw InputError("coefficient entry must be [alpha, re, im]");
      state.set(MultiIndex(entry[0].get<std::vector<int>>()),
                Complex(entry[1].get<double>(), entry[2].get<double>()));
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed state JSON: ") + e.what());
  }
}

}  // namespace hk::spectral
