#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "curveprime/curveprime.h"

namespace {

struct Result {
  cp_result* r = nullptr;
  ~Result() { cp_result_free(r); }
};

}  // namespace

TEST_CASE("version") { CHECK(std::strlen(cp_version()) > 0); }

TEST_CASE("test_A through the C API") {
  Result a;
  REQUIRE(cp_test_A("13", 7, nullptr, &a.r) == CP_OK);
  CHECK(cp_result_verdict(a.r) == CP_CERTIFIED_PRIME);
  CHECK(std::string(cp_result_outcome(a.r)) == "certified_prime");
  CHECK(std::string(cp_result_value(a.r)) == "1663");
  CHECK(cp_result_witness(a.r) == nullptr);

  Result b;
  REQUIRE(cp_test_A("5", 6, nullptr, &b.r) == CP_OK);
  CHECK(cp_result_verdict(b.r) == CP_COMPOSITE);
  CHECK(std::string(cp_result_value(b.r)) == "319");
}

TEST_CASE("hypothesis and argument errors") {
  cp_result* r = nullptr;
  CHECK(cp_test_A("3", 5, nullptr, &r) == CP_ERR_HYPOTHESIS);  // 95 is divisible by 5
  CHECK(r == nullptr);
  CHECK(std::strlen(cp_last_error()) > 0);
  CHECK(cp_test_A("twelve", 5, nullptr, &r) == CP_ERR_INVALID_ARGUMENT);
  CHECK(cp_test_L(4, "10", nullptr, nullptr, &r) == CP_ERR_HYPOTHESIS);
  CHECK(cp_test_L(3, "10", "x+1;4", nullptr, &r) == CP_ERR_HYPOTHESIS);  // off the curve
  CHECK(cp_test_L(3, "10", "x+;", nullptr, &r) == CP_ERR_INVALID_ARGUMENT);
  CHECK(cp_test_mersenne(2, nullptr, &r) == CP_ERR_HYPOTHESIS);
  const char* keys[] = {"m", "q"};
  const char* values[] = {"13", "7"};
  CHECK(cp_run("A", keys, values, 2, nullptr, &r) == CP_ERR_INVALID_ARGUMENT);
  CHECK(cp_run("B", keys, values, 1, nullptr, &r) == CP_ERR_INVALID_ARGUMENT);
  CHECK(cp_test_A("13", 7, nullptr, nullptr) == CP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("generic run with trace") {
  const char* keys[] = {"p", "n"};
  const char* values[] = {"11", "11"};
  cp_options opts{1, 0};
  Result r;
  REQUIRE(cp_run("S", keys, values, 2, &opts, &r.r) == CP_OK);
  CHECK(cp_result_verdict(r.r) == CP_CERTIFIED_PRIME);
  CHECK(cp_result_trace_size(r.r) > 0);
  CHECK(cp_result_trace_at(r.r, cp_result_trace_size(r.r)) == nullptr);
  CHECK(cp_result_steps(r.r) > 0);
}

TEST_CASE("L and mersenne") {
  Result l3, l5, m11;
  REQUIRE(cp_test_L(3, "10", nullptr, nullptr, &l3.r) == CP_OK);
  CHECK(cp_result_verdict(l3.r) == CP_CERTIFIED_PRIME);
  CHECK(std::string(cp_result_value(l3.r)) == "499");
  cp_options cf{0, 1};
  REQUIRE(cp_test_L(5, "10", "x+1;3", &cf, &l5.r) == CP_OK);
  CHECK(cp_result_verdict(l5.r) != CP_CERTIFIED_PRIME);
  if (const char* w = cp_result_witness(l5.r)) CHECK((std::string(w) == "29" || std::string(w) == "431"));
  REQUIRE(cp_test_mersenne(11, nullptr, &m11.r) == CP_OK);
  CHECK(cp_result_verdict(m11.r) == CP_COMPOSITE);
}

TEST_CASE("family value, search start and prefilter") {
  const char* keys[] = {"n"};
  const char* values[] = {"5"};
  char* v = nullptr;
  REQUIRE(cp_family_value("L", keys, values, 1, &v) == CP_OK);
  CHECK(std::string(v) == "12499");
  cp_string_free(v);

  unsigned n = 0;
  REQUIRE(cp_search_start("A", "13", &n) == CP_OK);
  CHECK(n == 6);  // 52 < 64
  REQUIRE(cp_search_start("S", "11", &n) == CP_OK);
  CHECK(n == 4);
  REQUIRE(cp_search_start("L", nullptr, &n) == CP_OK);
  CHECK(n == 3);
  CHECK(cp_search_start("A", nullptr, &n) == CP_ERR_INVALID_ARGUMENT);

  int d = -1;
  REQUIRE(cp_prefilter_A("3", 5, &d) == CP_OK);
  CHECK(d == 5);
  REQUIRE(cp_prefilter_A("13", 7, &d) == CP_OK);
  CHECK(d == 0);
  CHECK(cp_prefilter_A("4", 7, &d) == CP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle") {
  cp_oracle_result* o = nullptr;
  REQUIRE(cp_oracle_check("12499", &o) == CP_OK);
  CHECK(cp_oracle_verdict(o) == CP_ORACLE_COMPOSITE);
  const std::string f = cp_oracle_factor(o);
  CHECK((f == "29" || f == "431"));
  cp_oracle_free(o);
  REQUIRE(cp_oracle_check("1663", &o) == CP_OK);
  CHECK(cp_oracle_verdict(o) == CP_ORACLE_PRIME);
  CHECK(cp_oracle_factor(o) == nullptr);
  cp_oracle_free(o);
  CHECK(cp_oracle_check("1", &o) == CP_ERR_INVALID_ARGUMENT);
}

namespace {

void collect(const char* name, int passed, const char*, void* user) {
  static_cast<std::vector<std::pair<std::string, int>>*>(user)->emplace_back(name, passed);
}

}  // namespace

TEST_CASE("selftest through the C API") {
  std::vector<std::pair<std::string, int>> seen;
  int failures = -1;
  REQUIRE(cp_selftest(1, nullptr, collect, &seen, &failures) == CP_OK);
  CHECK(failures == 0);
  CHECK(seen.size() > 5);
  CHECK(std::string(cp_selftest_fixtures()).find("rational_multiple") != std::string::npos);

  std::string tampered = cp_selftest_fixtures();
  const auto at = tampered.find("\"1663\"");
  REQUIRE(at != std::string::npos);
  tampered.replace(at, 6, "\"1667\"");
  seen.clear();
  REQUIRE(cp_selftest(1, tampered.c_str(), collect, &seen, &failures) == CP_OK);
  CHECK(failures > 0);
  failures = 0;
  REQUIRE(cp_selftest(1, "{not json", collect, &seen, &failures) == CP_OK);
  CHECK(failures > 0);
}
