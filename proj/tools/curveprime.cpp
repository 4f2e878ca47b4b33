// curveprime {test|search|selftest}: front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "curveprime/curveprime.h"

namespace {

using nlohmann::json;

constexpr int kExitCertified = 0;
constexpr int kExitComposite = 1;
constexpr int kExitNotCertified = 2;
constexpr int kExitUsage = 3;
constexpr int kExitDisagreement = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  bool json = false;
  bool dump_trace = false;
  bool cross_check = false;
  bool closed_form = false;
  std::string out;
};

using Params = std::vector<std::pair<std::string, std::string>>;

struct Record {
  std::string family;
  Params params;
  std::optional<std::string> skipped;  // prefilter reason; no test was run
  std::string outcome, value, reason;
  std::optional<std::string> witness;
  std::uint64_t steps = 0;
  std::int64_t ms = 0;
  std::vector<std::string> trace;
  std::optional<json> oracle;
  bool disagreement = false;
};

Record run_one(const std::string& family, const Params& params, const Flags& flags) {
  Record rec;
  rec.family = family;
  rec.params = params;
  std::vector<const char*> keys, values;
  for (const auto& [k, v] : params) {
    keys.push_back(k.c_str());
    values.push_back(v.c_str());
  }
  cp_options opts{flags.dump_trace ? 1 : 0, flags.closed_form ? 1 : 0};
  cp_result* r = nullptr;
  const auto start = std::chrono::steady_clock::now();
  const cp_status st = cp_run(family.c_str(), keys.data(), values.data(), keys.size(), &opts, &r);
  const auto stop = std::chrono::steady_clock::now();
  if (st != CP_OK) {
    const std::string msg = cp_last_error();
    if (st == CP_ERR_INTERNAL) throw std::runtime_error(msg);
    throw UsageError(msg);
  }
  rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  rec.outcome = cp_result_outcome(r);
  rec.value = cp_result_value(r);
  rec.reason = cp_result_reason(r);
  if (const char* w = cp_result_witness(r)) rec.witness = w;
  rec.steps = cp_result_steps(r);
  for (size_t i = 0; i < cp_result_trace_size(r); ++i) rec.trace.emplace_back(cp_result_trace_at(r, i));
  const cp_verdict verdict = cp_result_verdict(r);
  cp_result_free(r);

  if (flags.cross_check) {
    cp_oracle_result* o = nullptr;
    if (cp_oracle_check(rec.value.c_str(), &o) != CP_OK) throw std::runtime_error(cp_last_error());
    const bool says_prime = cp_oracle_verdict(o) != CP_ORACLE_COMPOSITE;
    json oj{{"certificate", false}, {"detail", cp_oracle_describe(o)}};
    oj["verdict"] = cp_oracle_verdict(o) == CP_ORACLE_PRIME       ? "prime"
                    : cp_oracle_verdict(o) == CP_ORACLE_COMPOSITE ? "composite"
                                                                  : "probable_prime";
    cp_oracle_free(o);
    // Certificates in either direction must match the oracle.
    if ((verdict == CP_CERTIFIED_PRIME && !says_prime) || (verdict == CP_COMPOSITE && says_prime)) {
      rec.disagreement = true;
      oj["disagreement"] = true;
    }
    rec.oracle = oj;
  }
  return rec;
}

json to_json(const Record& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json j{{"family", r.family}, {"params", params}, {"outcome", r.outcome}, {"value", r.value},
         {"reason", r.reason}, {"steps", r.steps}, {"ms", r.ms}};
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  if (!r.trace.empty()) j["trace"] = r.trace;
  if (r.oracle) j["oracle"] = *r.oracle;
  return j;
}

std::string param_text(const Params& params) {
  std::string out;
  for (const auto& [k, v] : params) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

void print_record(std::ostream& out, const Record& r, const Flags& flags) {
  if (r.skipped) {
    // Skips are not test records; in JSON mode they go to stderr.
    (flags.json ? std::cerr : out) << r.family << " " << param_text(r.params) << ": skipped (" << *r.skipped
                                   << ")\n";
    return;
  }
  if (flags.json) {
    out << to_json(r).dump() << "\n";
    return;
  }
  out << r.family << " " << param_text(r.params) << ": " << r.outcome;
  if (r.witness) out << " witness=" << *r.witness;
  out << " (" << r.reason << "; steps " << r.steps << ", " << r.ms << " ms)\n";
  if (flags.dump_trace) {
    for (std::size_t i = 0; i < r.trace.size(); ++i) out << "  [" << i << "] " << r.trace[i] << "\n";
  }
  if (r.oracle) {
    out << "  oracle (not a certificate): " << (*r.oracle)["verdict"].get<std::string>() << ", "
        << (*r.oracle)["detail"].get<std::string>();
    if (r.disagreement) out << "  DISAGREES";
    out << "\n";
  }
}

unsigned default_jobs() {
  if (const char* env = std::getenv("CURVEPRIME_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring CURVEPRIME_JOBS=" << env << "\n";
  }
  return 1;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------

int cmd_test(const std::string& family, const Params& params, const Flags& flags) {
  Output out(flags.out);
  const Record r = run_one(family, params, flags);
  print_record(out.stream(), r, flags);
  if (r.disagreement) return kExitDisagreement;
  if (r.outcome == "certified_prime") return kExitCertified;
  if (r.outcome == "composite") return kExitComposite;
  return kExitNotCertified;
}

struct Candidate {
  unsigned n;
  Params params;
  std::optional<std::string> skip;
};

unsigned search_start(const char* family, const std::string& param) {
  unsigned n = 0;
  if (cp_search_start(family, param.c_str(), &n) != CP_OK) throw UsageError(cp_last_error());
  return n;
}

int cmd_search(const std::string& family, const std::string& m, const std::string& p, const std::string& h,
               const std::string& divisor, unsigned min_n, unsigned max_n, unsigned jobs, const Flags& flags) {
  std::vector<Candidate> cands;
  std::string label;
  if (family == "A") {
    if (m.empty()) throw UsageError("search A needs --m");
    label = "m=" + m;
    for (unsigned n = std::max(min_n, search_start("A", m)); n <= max_n; ++n) {
      const std::string ns = std::to_string(n);
      int divisor3or5 = 0;
      if (cp_prefilter_A(m.c_str(), n, &divisor3or5) != CP_OK) throw UsageError(cp_last_error());
      Candidate c{n, {{"m", m}, {"n", ns}}, std::nullopt};
      if (divisor3or5 != 0) c.skip = "A divisible by " + std::to_string(divisor3or5);
      cands.push_back(std::move(c));
    }
  } else if (family == "S") {
    if (p.empty()) throw UsageError("search S needs --p");
    label = "p=" + p;
    for (unsigned n = std::max(min_n, search_start("S", p)); n <= max_n; ++n) {
      cands.push_back({n, {{"p", p}, {"n", std::to_string(n)}}, std::nullopt});
    }
  } else if (family == "L") {
    label = "h=" + h;
    for (unsigned n = std::max(min_n, 3u) | 1u; n <= max_n; n += 2) {
      cands.push_back({n, {{"n", std::to_string(n)}, {"h", h}, {"F", divisor}}, std::nullopt});
    }
  } else if (family == "mersenne") {
    label = "p";
    for (unsigned q = std::max(min_n, 3u); q <= max_n; ++q) {
      bool prime = true;
      for (unsigned d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
      if (prime) cands.push_back({q, {{"p", std::to_string(q)}}, std::nullopt});
    }
  } else {
    throw UsageError("unknown family '" + family + "'");
  }

  // Hypothesis violations during a sweep are per-candidate skips (e.g. p >= 2^n).
  std::vector<std::optional<Record>> done(cands.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  auto worker = [&] {
    for (std::size_t i = next++; i < cands.size(); i = next++) {
      Record rec;
      rec.family = family;
      rec.params = cands[i].params;
      try {
        if (cands[i].skip) {
          rec.skipped = cands[i].skip;
        } else {
          rec = run_one(family, cands[i].params, flags);
        }
      } catch (const UsageError& e) {
        rec.skipped = e.what();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!fatal) fatal = std::current_exception();
        rec.skipped = "internal error";
      }
      std::lock_guard lock(mu);
      done[i] = std::move(rec);
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(jobs, 1u); ++j) pool.emplace_back(worker);
  if (jobs <= 1) worker();

  Output out(flags.out);
  std::vector<unsigned> certified;
  bool disagreement = false;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done[i].has_value(); });
    const Record rec = *done[i];
    lock.unlock();
    print_record(out.stream(), rec, flags);
    out.stream().flush();
    if (!rec.skipped && rec.outcome == "certified_prime") certified.push_back(cands[i].n);
    disagreement = disagreement || rec.disagreement;
  }
  for (auto& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);

  std::ostringstream summary;
  summary << "summary " << family << " " << label << " certified n: ";
  for (std::size_t i = 0; i < certified.size(); ++i) summary << (i ? "," : "") << certified[i];
  (flags.json ? std::cerr : out.stream()) << summary.str() << "\n";
  return disagreement ? kExitDisagreement : 0;
}

void selftest_report(const char* name, int passed, const char* detail, void*) {
  std::cout << (passed ? "PASS " : "FAIL ") << name;
  if (!passed && detail && *detail) std::cout << ": " << detail;
  std::cout << std::endl;
}

int cmd_selftest(bool quick, const std::string& fixtures, bool dump) {
  if (dump) {
    std::cout << cp_selftest_fixtures() << "\n";
    return 0;
  }
  std::string text;
  if (!fixtures.empty()) {
    std::ifstream in(fixtures);
    if (!in) throw UsageError("cannot read " + fixtures);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  int failures = 0;
  if (cp_selftest(quick ? 1 : 0, fixtures.empty() ? nullptr : text.c_str(), selftest_report, nullptr, &failures) !=
      CP_OK) {
    throw std::runtime_error(cp_last_error());
  }
  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED: " + std::to_string(failures) + " check(s)")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic primality certificates for m*2^n-1, p^2*16^n+1 and 4*5^n-1"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h is not free: --h sets the curve constant
  Flags flags;
  unsigned jobs = default_jobs();

  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_flag("--json", flags.json, "one JSON object per record");
    sub->add_flag("--cross-check", flags.cross_check, "append an oracle verdict (not a certificate)");
    sub->add_flag("--closed-form", flags.closed_form, "L: closed-form sqrt(5) where defined");
    sub->add_option("--out", flags.out, "write records to a file instead of stdout");
  };

  std::string family, m, p, h = "10", divisor = "x+1;3";
  unsigned n = 0;
  auto* test = app.add_subcommand("test", "run one test (exit 0 certified, 1 composite, 2 not certified)");
  test->add_option("family", family, "A | S | L | mersenne")->required();
  test->add_option("--m", m, "A: odd multiplier");
  test->add_option("--p", p, "S: prime = +-1 mod 10; mersenne: exponent");
  test->add_option("--n", n, "exponent");
  test->add_option("--h", h, "L: curve y^2 = x^5 + h")->capture_default_str();
  test->add_option("--F", divisor, "L: base divisor \"u;v\" over Q")->capture_default_str();
  test->add_flag("--dump-trace", flags.dump_trace, "print every sequence value");
  add_output_flags(test);

  unsigned min_n = 0, max_n = 0;
  auto* search = app.add_subcommand("search", "test a range of exponents in order");
  search->add_option("family", family, "A | S | L | mersenne")->required();
  search->add_option("--m", m, "A: odd multiplier");
  search->add_option("--p", p, "S: prime = +-1 mod 10");
  search->add_option("--h", h, "L: curve y^2 = x^5 + h")->capture_default_str();
  search->add_option("--F", divisor, "L: base divisor \"u;v\" over Q")->capture_default_str();
  search->add_option("--min-n", min_n, "smallest exponent");
  search->add_option("--max-n", max_n, "largest exponent (mersenne: largest p)")->required();
  search->add_option("--jobs", jobs, "worker threads (default $CURVEPRIME_JOBS or 1)")->check(CLI::PositiveNumber);
  add_output_flags(search);

  bool quick = false, dump = false;
  std::string fixtures;
  auto* selftest = app.add_subcommand("selftest", "run embedded fixtures and property checks");
  selftest->add_flag("--quick", quick, "smaller sweeps");
  selftest->add_option("--fixtures", fixtures, "fixture JSON to use instead of the embedded one");
  selftest->add_flag("--dump-fixtures", dump, "print the embedded fixture JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*test) {
      Params params;
      if (family == "A") {
        params = {{"m", m}, {"n", std::to_string(n)}};
      } else if (family == "S") {
        params = {{"p", p}, {"n", std::to_string(n)}};
      } else if (family == "L") {
        params = {{"n", std::to_string(n)}, {"h", h}, {"F", divisor}};
      } else if (family == "mersenne") {
        params = {{"p", p}};
      } else {
        throw UsageError("unknown family '" + family + "'");
      }
      return cmd_test(family, params, flags);
    }
    if (*search) return cmd_search(family, m, p, h, divisor, min_n, max_n, jobs, flags);
    return cmd_selftest(quick, fixtures, dump);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
