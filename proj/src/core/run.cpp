#include "curveprime/run.hpp"

#include <limits>
#include <set>

#include "curveprime/classic.hpp"
#include "curveprime/cm.hpp"
#include "curveprime/jacobian.hpp"
#include "curveprime/supersingular.hpp"

namespace curveprime {

namespace {

const std::set<std::string>& allowed(Family f) {
  static const std::set<std::string> a{"m", "n"}, s{"p", "n"}, l{"n", "h", "F"}, mp{"p"};
  switch (f) {
    case Family::kA: return a;
    case Family::kS: return s;
    case Family::kL: return l;
    case Family::kMersenne: return mp;
  }
  return mp;
}

void check_keys(Family f, const Params& params) {
  for (const auto& [key, value] : params) {
    if (!allowed(f).count(key)) {
      throw std::invalid_argument(std::string("unknown parameter '") + key + "' for family " + family_name(f));
    }
  }
}

const std::string& get(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

std::string get_or(const Params& params, const std::string& key, const std::string& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

unsigned get_unsigned(const Params& params, const std::string& key) {
  const BigInt v = parse_bigint(get(params, key));
  if (v < 0 || v > std::numeric_limits<unsigned>::max()) {
    throw std::invalid_argument("parameter '" + key + "' out of range");
  }
  return static_cast<unsigned>(v.get_ui());
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
  if (name == "A") return Family::kA;
  if (name == "S") return Family::kS;
  if (name == "L") return Family::kL;
  if (name == "mersenne") return Family::kMersenne;
  return std::nullopt;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kA: return "A";
    case Family::kS: return "S";
    case Family::kL: return "L";
    case Family::kMersenne: return "mersenne";
  }
  return "?";
}

BigInt family_value(Family family, const Params& params) {
  check_keys(family, params);
  switch (family) {
    case Family::kA: return supersingular::a_value(parse_bigint(get(params, "m")), get_unsigned(params, "n"));
    case Family::kS: return cm::s_value(parse_bigint(get(params, "p")), get_unsigned(params, "n"));
    case Family::kL: return lambda_value(get_unsigned(params, "n"));
    case Family::kMersenne: return classic::mersenne(get_unsigned(params, "p"));
  }
  throw std::logic_error("unhandled family");
}

RunResult run_family(Family family, const Params& params, const RunOptions& options) {
  RunResult out{TestOutcome{}, family_value(family, params)};
  TestOptions base;
  base.collect_trace = options.collect_trace;
  switch (family) {
    case Family::kA:
      out.outcome = supersingular::test_A(parse_bigint(get(params, "m")), get_unsigned(params, "n"), base);
      break;
    case Family::kS:
      out.outcome = cm::test_S(parse_bigint(get(params, "p")), get_unsigned(params, "n"), base);
      break;
    case Family::kL: {
      jacobian::LambdaOptions lo;
      lo.collect_trace = options.collect_trace;
      lo.closed_form = options.closed_form;
      const BigInt h = parse_bigint(get_or(params, "h", "10"));
      const auto f = jacobian::parse_divisor(get_or(params, "F", "x+1;3"));
      out.outcome = jacobian::test_lambda(get_unsigned(params, "n"), h, f, lo);
      break;
    }
    case Family::kMersenne: {
      const unsigned p = get_unsigned(params, "p");
      if (p < 3) throw HypothesisViolated("Lucas-Lehmer needs p > 2");
      out.outcome = classic::lucas_lehmer(p, base);
      break;
    }
  }
  return out;
}

unsigned search_start(Family family, const std::string& param) {
  switch (family) {
    case Family::kA:
    case Family::kS: {
      BigInt v = parse_bigint(param);
      if (v < 1) throw std::invalid_argument("parameter must be positive");
      if (family == Family::kA) v *= 4;
      // Least n with v < 2^n.
      return static_cast<unsigned>(mpz_sizeinbase(v.get_mpz_t(), 2));
    }
    case Family::kL:
    case Family::kMersenne:
      return 3;
  }
  throw std::logic_error("unhandled family");
}

}  // namespace curveprime
