#include <doctest.h>

#include <json.hpp>

#include "curveprime/selftest.hpp"

using namespace curveprime;

namespace {

int failed(const std::vector<selftest::CheckResult>& results) {
  int n = 0;
  for (const auto& r : results) n += r.passed ? 0 : 1;
  return n;
}

std::string tamper(const std::function<void(nlohmann::json&)>& edit) {
  auto doc = nlohmann::json::parse(selftest::embedded_fixtures());
  edit(doc);
  return doc.dump();
}

}  // namespace

TEST_CASE("embedded fixtures pass") {
  const auto results = selftest::run({true, std::nullopt});
  for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name, ": ", r.detail);
  CHECK(results.size() > 5);
}

TEST_CASE("tampered fixtures fail") {
  const std::vector<std::function<void(nlohmann::json&)>> edits{
      [](nlohmann::json& d) { d["records"][0]["outcome"] = "composite"; },
      [](nlohmann::json& d) { d["rational_multiple"]["k"] = "12"; },
      [](nlohmann::json& d) { d["jacobian_orders"][0]["order"] = "401"; },
      [](nlohmann::json& d) { d["lambda_list"]["certified"].push_back(11); },
      [](nlohmann::json& d) { d["s_rows"][0]["certified"].erase(0); },
      [](nlohmann::json& d) { d.erase("four_F"); },
  };
  for (std::size_t i = 0; i < edits.size(); ++i) {
    CAPTURE(i);
    CHECK(failed(selftest::run({true, tamper(edits[i])})) > 0);
  }
}
