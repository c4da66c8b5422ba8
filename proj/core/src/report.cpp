#include "greenberg/report.hpp"

#include <json.hpp>

namespace greenberg {

namespace {

using json = nlohmann::json;  // std::map-backed: object keys come out sorted

json result_to_json(const SuiteResult& r, bool timings) {
  json j;
  j["suite"] = r.suite;
  j["group"] = r.group_name;
  j["ring"] = r.ring_spec;
  j["verdict"] = verdict_string(r.verdict);
  j["witnesses"] = r.witnesses;
  json sizes = json::object();
  for (const auto& [k, v] : r.sizes) sizes[k] = v;
  j["sizes"] = sizes;
  j["millis"] = timings ? r.millis : 0;
  return j;
}

}  // namespace

std::string suite_result_json(const SuiteResult& r, bool timings) {
  return result_to_json(r, timings).dump(2);
}

std::string report_json(const std::vector<SuiteResult>& results, std::uint64_t seed,
                        std::uint64_t guard, const std::vector<std::string>& suite_names,
                        bool timings) {
  json j;
  j["command"] = "verify";
  j["seed"] = seed;
  j["guard"] = guard;
  j["suites"] = suite_names;
  json arr = json::array();
  for (const auto& r : results) arr.push_back(result_to_json(r, timings));
  j["results"] = arr;
  return j.dump(2) + "\n";
}

std::string report_table(const std::vector<SuiteResult>& results, bool timings) {
  constexpr unsigned wsuite = 18, wgroup = 6, wring = 12, wverdict = 20, wsizes = 58, wms = 8;
  auto pad = [](std::string s, unsigned width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s + " ";
  };
  std::string out = pad("suite", wsuite) + pad("group", wgroup) + pad("ring", wring) +
                    pad("verdict", wverdict) + pad("sizes", wsizes) + pad("ms", wms) + "\n";
  out.append(out.size() - 1, '-');
  out += "\n";
  for (const auto& r : results) {
    std::string sizes;
    for (const auto& [k, v] : r.sizes) sizes += (sizes.empty() ? "" : " ") + k + "=" + std::to_string(v);
    out += pad(r.suite, wsuite) + pad(r.group_name, wgroup) + pad(r.ring_spec, wring) +
           pad(verdict_string(r.verdict), wverdict) + pad(sizes, wsizes) +
           pad(timings ? std::to_string(r.millis) : "-", wms) + "\n";
  }
  return out;
}

std::string filtration_json(const Filtration& f) {
  json j;
  j["ring"] = f.group().ring()->spec_string();
  j["group"] = f.group().name();
  json levels = json::array();
  for (const auto& level : f.levels()) {
    json l;
    l["level"] = level.level;
    l["kernel_order"] = level.kernel_order.get_str();
    l["layer_order"] = level.layer_order.get_str();
    l["elementary_abelian"] = level.elementary_abelian;
    levels.push_back(l);
  }
  j["levels"] = levels;
  return j.dump(2) + "\n";
}

}  // namespace greenberg
