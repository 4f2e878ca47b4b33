#include "curveprime/selftest.hpp"

#include <json.hpp>

#include <random>
#include <set>
#include <sstream>

#include "curveprime/cm.hpp"
#include "curveprime/jacobian.hpp"
#include "curveprime/oracle.hpp"
#include "curveprime/run.hpp"
#include "curveprime/supersingular.hpp"
#include "selftest_fixtures.inc"

namespace curveprime::selftest {

namespace {

using nlohmann::json;

class Runner {
 public:
  Runner(const Options& options, const std::function<void(const CheckResult&)>& sink)
      : options_(options), sink_(sink) {}

  // Runs `body`, which returns an empty string on success or a failure detail.
  template <class Fn>
  void check(const std::string& name, Fn&& body) {
    CheckResult r{name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    if (sink_) sink_(r);
    results_.push_back(std::move(r));
  }

  bool quick() const { return options_.quick; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const Options& options_;
  const std::function<void(const CheckResult&)>& sink_;
  std::vector<CheckResult> results_;
};

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::uint64_t u64(const json& j) { return std::stoull(str(j)); }

std::string set_text(const std::set<unsigned>& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (unsigned v : s) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << "}";
  return out.str();
}

void fixture_checks(Runner& run, const json& doc) {
  for (const auto& rec : doc.at("records")) {
    const std::string family = rec.at("family").get<std::string>();
    Params params;
    std::string label = family;
    for (const auto& [k, v] : rec.at("params").items()) {
      params[k] = str(v);
      label += " " + k + "=" + str(v);
    }
    run.check("fixture " + label, [&]() -> std::string {
      const auto fam = parse_family(family);
      if (!fam) return "unknown family " + family;
      const RunResult r = run_family(*fam, params);
      if (rec.contains("value") && to_decimal(r.value) != str(rec["value"])) {
        return "value " + to_decimal(r.value) + " != " + str(rec["value"]);
      }
      const std::string got = verdict_name(r.outcome.verdict);
      if (got != str(rec.at("outcome"))) return "outcome " + got + ", expected " + str(rec["outcome"]);
      return {};
    });
  }

  const auto& rm = doc.at("rational_multiple");
  run.check("fixture rational multiple", [&]() -> std::string {
    const supersingular::RationalPoint p{Rational(parse_bigint(str(rm.at("x")))),
                                         Rational(parse_bigint(str(rm.at("y")))), false};
    const auto q = supersingular::rational_multiple(parse_bigint(str(rm.at("c"))), p, parse_bigint(str(rm.at("k"))));
    const std::string got = q.x.get_str();
    return got == str(rm.at("result_x")) ? std::string() : "x = " + got;
  });

  const auto& ff = doc.at("four_F");
  run.check("fixture 4F over Q", [&]() -> std::string {
    const BigInt h = parse_bigint(str(ff.at("h")));
    const jacobian::Genus2Arithmetic<RationalField> jac(RationalField{}, Rational(h));
    const auto four = jac.scalar_mul(4, jacobian::parse_divisor(str(ff.at("F"))));
    const auto expected = jacobian::parse_divisor(str(ff.at("result")));
    return four == expected ? std::string() : "4F = " + jacobian::divisor_text(four);
  });

  for (const auto& jo : doc.at("jacobian_orders")) {
    const std::uint64_t q = u64(jo.at("q"));
    if (run.quick() && q >= 499) continue;
    run.check("fixture #J(F_" + std::to_string(q) + ")", [&]() -> std::string {
      const auto got = jacobian::jacobian_order_oracle(q, std::stoll(str(jo.at("h"))));
      return got == u64(jo.at("order")) ? std::string() : "order " + std::to_string(got);
    });
  }

  for (const auto& gc : doc.at("gauss_counts")) {
    const std::uint64_t q = u64(gc.at("q"));
    run.check("fixture #E(F_" + std::to_string(q) + ") for y^2 = x^3 - x", [&]() -> std::string {
      const auto g = cm::gauss_count_check(q);
      if (!g.consistent()) return "count disagrees with q + 1 - 2 alpha";
      return g.count == u64(gc.at("count")) ? std::string() : "count " + std::to_string(g.count);
    });
  }

  const auto& ll = doc.at("lambda_list");
  run.check("fixture lambda_n list", [&]() -> std::string {
    std::set<unsigned> expected, got;
    for (const auto& v : ll.at("certified")) expected.insert(static_cast<unsigned>(u64(v)));
    const unsigned max_n = static_cast<unsigned>(u64(ll.at("max_n")));
    for (unsigned n = 3; n <= max_n; n += 2) {
      const auto r = run_family(Family::kL, {{"n", std::to_string(n)}, {"h", str(ll.at("h"))}, {"F", str(ll.at("F"))}});
      if (r.outcome.is_certified()) got.insert(n);
    }
    return got == expected ? std::string() : "certified " + set_text(got);
  });

  for (const auto& row : doc.at("s_rows")) {
    const std::string p = str(row.at("p"));
    run.check("fixture S row p=" + p, [&]() -> std::string {
      std::set<unsigned> expected, got;
      for (const auto& v : row.at("certified")) expected.insert(static_cast<unsigned>(u64(v)));
      const BigInt pb = parse_bigint(p);
      const unsigned max_n = static_cast<unsigned>(u64(row.at("max_n")));
      for (unsigned n = 1; n <= max_n; ++n) {
        if (mpz_sizeinbase(pb.get_mpz_t(), 2) > n) continue;  // need p < 2^n
        if (cm::test_S(pb, n).is_certified()) got.insert(n);
      }
      return got == expected ? std::string() : "certified " + set_text(got);
    });
  }
}

void property_checks(Runner& run) {
  const bool quick = run.quick();

  run.check("E_t(F_p) has p + 1 points", [&]() -> std::string {
    const std::uint64_t limit = quick ? 200 : 2000;
    for (std::uint64_t p = 3; p <= limit; p += 4) {
      if (!oracle::is_prime_small(p)) continue;
      for (std::uint64_t t = 1; t <= 3; ++t) {
        if ((t * t + 1) % p == 0) continue;
        const auto g = supersingular::brute_group_structure(p, t);
        if (g.order != p + 1) return "p=" + std::to_string(p) + " t=" + std::to_string(t);
      }
    }
    return {};
  });

  run.check("Gauss counts", [&]() -> std::string {
    const std::uint64_t limit = quick ? 1000 : 10000;
    for (std::uint64_t q = 5; q <= limit; q += 4) {
      if (oracle::is_prime_small(q) && !cm::gauss_count_check(q).consistent()) return "q=" + std::to_string(q);
    }
    return {};
  });

  run.check("sqrt5^2 = 5 on J(F_19)", [&]() -> std::string {
    const jacobian::Sqrt5Context ctx(QuadExtContext(Modulus(19), 9), 10);
    const auto& jac = ctx.base();
    for (const auto& d : jacobian::enumerate_jacobian(19, 10)) {
      auto s = jacobian::sqrt5_action(d, ctx);
      if (!s) return "failure at " + jacobian::divisor_json(d);
      auto ss = jacobian::sqrt5_action(s.value(), ctx);
      if (!ss || !(ss.value() == jac.scalar_mul(5, d))) return "mismatch at " + jacobian::divisor_json(d);
    }
    return {};
  });

  run.check("Mumford congruence and closed form modulo lambda_3", [&]() -> std::string {
    const auto ctx = jacobian::Sqrt5Context::for_lambda(3, 10);
    const auto& jac = ctx.base();
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < (quick ? 50 : 300)) {
      auto a = jacobian::random_divisor(ctx, rng);
      auto b = jacobian::random_divisor(ctx, rng);
      if (!a || !b) continue;
      const auto sum = jac.add(*a, *b);
      auto s = jacobian::sqrt5_action(sum, ctx);
      if (!s || !jac.is_valid(sum) || !jac.is_valid(s.value())) return "congruence fails";
      if (auto cf = jacobian::sqrt5_closed_form(sum, ctx)) {
        if (!cf->ok() || !(cf->value() == s.value())) return "closed form disagrees";
      }
      ++done;
    }
    return {};
  });

  run.check("test_A agrees with the oracle", [&]() -> std::string {
    for (long m = 1; m <= (quick ? 9 : 25); m += 2) {
      for (unsigned n = 2; n <= (quick ? 24u : 40u); ++n) {
        if (BigInt(4 * m) >= BigInt(1) << n) continue;
        if (supersingular::prefilter_35(m, n) != supersingular::Prefilter::kClean) continue;
        const BigInt a = supersingular::a_value(m, n);
        if (a <= 5) continue;
        const auto out = supersingular::test_A(m, n);
        if (out.is_certified() != oracle::is_prime_oracle(a).says_prime()) {
          return "m=" + std::to_string(m) + " n=" + std::to_string(n);
        }
      }
    }
    return {};
  });

  run.check("Lucas-Lehmer agrees with the oracle", [&]() -> std::string {
    for (unsigned p = 3; p <= (quick ? 61u : 127u); ++p) {
      if (!oracle::is_prime_small(p)) continue;
      const auto out = run_family(Family::kMersenne, {{"p", std::to_string(p)}});
      if (out.outcome.is_certified() != oracle::is_prime_oracle(out.value).says_prime()) {
        return "p=" + std::to_string(p);
      }
    }
    return {};
  });
}

}  // namespace

const std::string& embedded_fixtures() {
  static const std::string text(detail::kFixtures);
  return text;
}

std::vector<CheckResult> run(const Options& options, const std::function<void(const CheckResult&)>& on_result) {
  Runner runner(options, on_result);
  json doc;
  runner.check("fixtures parse", [&]() -> std::string {
    doc = json::parse(options.fixtures_json ? *options.fixtures_json : embedded_fixtures());
    return {};
  });
  if (!doc.is_null()) {
    runner.check("fixtures well-formed", [&]() -> std::string {
      for (const char* key : {"records", "rational_multiple", "four_F", "jacobian_orders", "gauss_counts",
                              "lambda_list", "s_rows"}) {
        if (!doc.contains(key)) return std::string("missing ") + key;
      }
      return {};
    });
    try {
      fixture_checks(runner, doc);
    } catch (const std::exception& e) {
      runner.check("fixtures readable", [&]() -> std::string { return e.what(); });
    }
  }
  property_checks(runner);
  return runner.take();
}

}  // namespace curveprime::selftest
