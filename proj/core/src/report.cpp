#include "itolog/report.hpp"

#include <algorithm>
#include <ctime>

namespace itolog {

Json to_json(const VerificationReport& r) {
  Json j{{"test", r.test},
         {"max_abs_err", r.max_abs_err},
         {"tolerance", r.tolerance},
         {"pass", r.pass},
         {"seed", nullptr},
         {"grid_points", r.grid_points},
         {"paths", r.paths}};
  if (r.seed) j["seed"] = *r.seed;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.test = j.at("test").get<std::string>();
  r.max_abs_err = j.at("max_abs_err").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.grid_points = j.at("grid_points").get<std::size_t>();
  r.paths = j.at("paths").get<std::size_t>();
  if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
  return r;
}

bool all_pass(const std::vector<VerificationReport>& cases) {
  return std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.pass; });
}

Json suite_json(const std::string& suite, const std::vector<VerificationReport>& cases, bool deterministic) {
  Json list = Json::array();
  for (const auto& c : cases) list.push_back(to_json(c));
  Json j{{"suite", suite}, {"pass", all_pass(cases)}, {"cases", std::move(list)}};
  if (!deterministic) {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    j["timestamp"] = buf;
  }
  return j;
}

}  // namespace itolog
