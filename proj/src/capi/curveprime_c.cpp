#include "curveprime/curveprime.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "curveprime/oracle.hpp"
#include "curveprime/run.hpp"
#include "curveprime/selftest.hpp"
#include "curveprime/supersingular.hpp"

struct cp_result {
  std::string outcome;
  std::string value;
  std::string witness;
  bool has_witness = false;
  std::string reason;
  std::uint64_t steps = 0;
  std::vector<std::string> trace;
  curveprime::Verdict verdict = curveprime::Verdict::kNotCertified;
};

struct cp_oracle_result {
  curveprime::oracle::OracleVerdict verdict;
  std::string factor;
  std::string description;
};

namespace {

thread_local std::string last_error;

template <class Fn>
cp_status guarded(Fn&& body) {
  try {
    last_error.clear();
    body();
    return CP_OK;
  } catch (const curveprime::HypothesisViolated& e) {
    last_error = e.what();
    return CP_ERR_HYPOTHESIS;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return CP_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return CP_ERR_INTERNAL;
  }
}

curveprime::Params to_params(const char* const* keys, const char* const* values, size_t count) {
  curveprime::Params params;
  if (count > 0 && (!keys || !values)) throw std::invalid_argument("null parameter arrays");
  for (size_t i = 0; i < count; ++i) {
    if (!keys[i] || !values[i]) throw std::invalid_argument("null parameter");
    params[keys[i]] = values[i];
  }
  return params;
}

curveprime::Family to_family(const char* family) {
  if (!family) throw std::invalid_argument("null family");
  auto f = curveprime::parse_family(family);
  if (!f) throw std::invalid_argument(std::string("unknown family '") + family + "'");
  return *f;
}

cp_status run_params(curveprime::Family family, const curveprime::Params& params, const cp_options* options,
                     cp_result** out) {
  if (!out) {
    last_error = "null output handle";
    return CP_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    curveprime::RunOptions ro;
    if (options) {
      ro.collect_trace = options->collect_trace != 0;
      ro.closed_form = options->closed_form != 0;
    }
    auto r = curveprime::run_family(family, params, ro);
    auto res = std::make_unique<cp_result>();
    res->verdict = r.outcome.verdict;
    res->outcome = curveprime::verdict_name(r.outcome.verdict);
    res->value = curveprime::to_decimal(r.value);
    if (r.outcome.factor) {
      res->has_witness = true;
      res->witness = curveprime::to_decimal(*r.outcome.factor);
    }
    res->reason = std::move(r.outcome.reason);
    res->steps = r.outcome.steps;
    res->trace = std::move(r.outcome.trace);
    *out = res.release();
  });
}

}  // namespace

extern "C" {

const char* cp_version(void) { return "1.0.0"; }

const char* cp_last_error(void) { return last_error.c_str(); }

cp_status cp_run(const char* family, const char* const* keys, const char* const* values, size_t count,
                 const cp_options* options, cp_result** out) {
  curveprime::Family f{};
  curveprime::Params params;
  const cp_status st = guarded([&] {
    f = to_family(family);
    params = to_params(keys, values, count);
  });
  if (st != CP_OK) {
    if (out) *out = nullptr;
    return st;
  }
  return run_params(f, params, options, out);
}

cp_status cp_test_A(const char* m, unsigned n, const cp_options* options, cp_result** out) {
  if (!m) {
    last_error = "null m";
    return CP_ERR_INVALID_ARGUMENT;
  }
  return run_params(curveprime::Family::kA, {{"m", m}, {"n", std::to_string(n)}}, options, out);
}

cp_status cp_test_S(const char* p, unsigned n, const cp_options* options, cp_result** out) {
  if (!p) {
    last_error = "null p";
    return CP_ERR_INVALID_ARGUMENT;
  }
  return run_params(curveprime::Family::kS, {{"p", p}, {"n", std::to_string(n)}}, options, out);
}

cp_status cp_test_L(unsigned n, const char* h, const char* divisor, const cp_options* options, cp_result** out) {
  curveprime::Params params{{"n", std::to_string(n)}};
  if (h) params["h"] = h;
  if (divisor) params["F"] = divisor;
  return run_params(curveprime::Family::kL, params, options, out);
}

cp_status cp_test_mersenne(unsigned p, const cp_options* options, cp_result** out) {
  return run_params(curveprime::Family::kMersenne, {{"p", std::to_string(p)}}, options, out);
}

cp_verdict cp_result_verdict(const cp_result* r) {
  if (!r) return CP_NOT_CERTIFIED;
  switch (r->verdict) {
    case curveprime::Verdict::kCertifiedPrime: return CP_CERTIFIED_PRIME;
    case curveprime::Verdict::kCompositeWitness: return CP_COMPOSITE;
    case curveprime::Verdict::kNotCertified: return CP_NOT_CERTIFIED;
  }
  return CP_NOT_CERTIFIED;
}

const char* cp_result_outcome(const cp_result* r) { return r ? r->outcome.c_str() : nullptr; }
const char* cp_result_value(const cp_result* r) { return r ? r->value.c_str() : nullptr; }
const char* cp_result_witness(const cp_result* r) { return r && r->has_witness ? r->witness.c_str() : nullptr; }
const char* cp_result_reason(const cp_result* r) { return r ? r->reason.c_str() : nullptr; }
uint64_t cp_result_steps(const cp_result* r) { return r ? r->steps : 0; }
size_t cp_result_trace_size(const cp_result* r) { return r ? r->trace.size() : 0; }

const char* cp_result_trace_at(const cp_result* r, size_t i) {
  if (!r || i >= r->trace.size()) return nullptr;
  return r->trace[i].c_str();
}

void cp_result_free(cp_result* r) { delete r; }

cp_status cp_family_value(const char* family, const char* const* keys, const char* const* values, size_t count,
                          char** out) {
  if (!out) {
    last_error = "null output";
    return CP_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    const std::string v = curveprime::to_decimal(curveprime::family_value(to_family(family), to_params(keys, values, count)));
    char* s = new char[v.size() + 1];
    std::memcpy(s, v.c_str(), v.size() + 1);
    *out = s;
  });
}

void cp_string_free(char* s) { delete[] s; }

cp_status cp_search_start(const char* family, const char* param, unsigned* n) {
  if (!n) {
    last_error = "null output";
    return CP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const auto f = to_family(family);
    if (!param && (f == curveprime::Family::kA || f == curveprime::Family::kS)) {
      throw std::invalid_argument("search start needs m or p");
    }
    *n = curveprime::search_start(f, param ? param : "");
  });
}

cp_status cp_prefilter_A(const char* m, unsigned n, int* divisor) {
  if (!m || !divisor) {
    last_error = "null argument";
    return CP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const curveprime::BigInt mm = curveprime::parse_bigint(m);
    if (mm < 1 || mm % 2 == 0) throw std::invalid_argument("m must be odd and positive");
    switch (curveprime::supersingular::prefilter_35(mm, n)) {
      case curveprime::supersingular::Prefilter::kClean: *divisor = 0; break;
      case curveprime::supersingular::Prefilter::kDivisibleBy3: *divisor = 3; break;
      case curveprime::supersingular::Prefilter::kDivisibleBy5: *divisor = 5; break;
    }
  });
}

cp_status cp_oracle_check(const char* n, cp_oracle_result** out) {
  if (!n || !out) {
    last_error = "null argument";
    return CP_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    const curveprime::BigInt v = curveprime::parse_bigint(n);
    if (v < 2) throw std::invalid_argument("oracle needs n >= 2");
    auto res = std::make_unique<cp_oracle_result>();
    res->verdict = curveprime::oracle::is_prime_oracle(v);
    if (res->verdict.factor) res->factor = curveprime::to_decimal(*res->verdict.factor);
    res->description = res->verdict.describe();
    *out = res.release();
  });
}

cp_oracle_kind cp_oracle_verdict(const cp_oracle_result* r) {
  using Kind = curveprime::oracle::OracleVerdict::Kind;
  if (!r) return CP_ORACLE_COMPOSITE;
  switch (r->verdict.kind) {
    case Kind::kPrime: return CP_ORACLE_PRIME;
    case Kind::kComposite: return CP_ORACLE_COMPOSITE;
    case Kind::kProbablePrime: return CP_ORACLE_PROBABLE_PRIME;
  }
  return CP_ORACLE_COMPOSITE;
}

const char* cp_oracle_factor(const cp_oracle_result* r) {
  return r && r->verdict.factor ? r->factor.c_str() : nullptr;
}

const char* cp_oracle_describe(const cp_oracle_result* r) { return r ? r->description.c_str() : nullptr; }

void cp_oracle_free(cp_oracle_result* r) { delete r; }

cp_status cp_selftest(int quick, const char* fixtures_json, cp_selftest_report report, void* user, int* failures) {
  return guarded([&] {
    curveprime::selftest::Options opts;
    opts.quick = quick != 0;
    if (fixtures_json) opts.fixtures_json = std::string(fixtures_json);
    int failed = 0;
    curveprime::selftest::run(opts, [&](const curveprime::selftest::CheckResult& r) {
      if (!r.passed) ++failed;
      if (report) report(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    });
    if (failures) *failures = failed;
  });
}

const char* cp_selftest_fixtures(void) { return curveprime::selftest::embedded_fixtures().c_str(); }

}  // extern "C"
