// logzono: reachability, set utilities and LFSR key search on logical zonotopes.
//
// Exit codes: 0 success, 1 input or configuration error, 2 soundness
// violation (zonotope result misses an exact state), 3 key search failed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logzono.hpp"

namespace {

using namespace logzono;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnsound = 2;
constexpr int kExitSearchFailed = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path), path); }

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError(std::string(what) + " list is empty");
  return out;
}

EnumerationLimits limits_from_env(std::size_t flag_cap) {
  EnumerationLimits limits{flag_cap};
  if (const char* env = std::getenv("LOGZONO_GAMMA_CAP")) {
    const auto v = parse_list(env, "LOGZONO_GAMMA_CAP");
    if (v.size() != 1 || v[0] == 0 || v[0] > 62) throw UsageError("LOGZONO_GAMMA_CAP must be an integer in [1, 62]");
    limits.gamma_cap = v[0];
  }
  return limits;
}

// ---------------------------------------------------------------------------
// reach

struct ReachArgs {
  std::string file;
  std::optional<std::size_t> horizon;
  std::string backend = "both";
  std::string out = "text";
  bool golden = false;
  std::string forbid;
  std::size_t reduce_threshold = 8;
  std::size_t state_budget = 20;
};

void print_reach_text(const ReachResult& r) {
  std::cout << "backend " << to_string(r.backend) << ", horizon " << r.horizon << "\n";
  std::cout << std::setw(6) << "k" << std::setw(8) << "size" << std::setw(12) << "joint" << "  marginals\n";
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const ReachStep& s = r.steps[k];
    std::cout << std::setw(6) << k << std::setw(8) << s.table_size << std::setw(12) << s.joint_size << "  ";
    for (std::size_t i = 0; i < s.marginals.size(); ++i) {
      std::cout << (i ? " " : "") << r.state_vars[i] << "=" << dsl::to_string(s.marginals[i]);
    }
    std::cout << "\n";
  }
  std::cout << "total " << total_seconds(r) << " s\n";
}

int cmd_reach(const ReachArgs& a, const EnumerationLimits& limits) {
  const dsl::SystemSpec sys = dsl::parse_system(read_file(a.file));
  const std::size_t horizon = a.horizon.value_or(sys.horizon.value_or(10));
  ReachOptions opts;
  opts.limits = limits;
  opts.reduce_threshold = a.reduce_threshold;
  opts.exact.state_bits = a.state_budget;

  std::vector<ReachResult> results;
  if (a.backend == "zono" || a.backend == "both") results.push_back(reach(sys, horizon, Backend::Zonotope, opts));
  if (a.backend == "exact" || a.backend == "both") results.push_back(reach(sys, horizon, Backend::Exact, opts));

  std::optional<ContainmentReport> report;
  if (results.size() == 2) report = check_containment(results[0], results[1]);

  dsl::ExprPtr predicate;
  if (!a.forbid.empty()) predicate = dsl::parse_state_predicate(a.forbid, sys);

  const std::string fmt = a.golden ? "json" : a.out;
  if (fmt == "json") {
    Json j = Json::object();
    for (const ReachResult& r : results) j[to_string(r.backend)] = to_json(r, !a.golden);
    if (report) {
      Json viol = Json::array();
      for (const auto& v : report->violations) viol.push_back({{"k", v.step}, {"state", v.state.to_string()}});
      Json surplus = Json::array();
      for (const auto& s : report->steps) surplus.push_back(static_cast<long long>(s.zonotope_table) - static_cast<long long>(s.exact_table));
      j["containment"] = {{"holds", report->holds()}, {"violations", viol}, {"surplus", surplus}};
    }
    if (predicate) {
      Json hits = Json::object();
      for (const ReachResult& r : results) hits[to_string(r.backend)] = forbidden_hits(r, *predicate);
      j["forbidden"] = {{"predicate", dsl::to_string(*predicate)}, {"hits", hits}};
    }
    std::cout << j.dump(2) << "\n";
  } else if (fmt == "csv") {
    std::cout << kReachCsvHeader << "\n";
    for (const ReachResult& r : results) {
      for (std::size_t k = 0; k < r.steps.size(); ++k) std::cout << reach_csv_row(r, k) << "\n";
    }
  } else {
    for (const ReachResult& r : results) print_reach_text(r);
    if (report) {
      const auto& last = report->steps.back();
      std::cout << "containment " << (report->holds() ? "holds" : "VIOLATED") << "; at k=" << horizon << " size "
                << last.zonotope_table << " vs " << last.exact_table << ", surplus "
                << static_cast<long long>(last.zonotope_table) - static_cast<long long>(last.exact_table) << "\n";
      for (const auto& v : report->violations) {
        std::cout << "  k=" << v.step << " state " << v.state.to_string() << " missing from zonotope sets\n";
      }
    }
    if (predicate) {
      for (const ReachResult& r : results) {
        const auto hits = forbidden_hits(r, *predicate);
        std::cout << "forbidden (" << to_string(r.backend) << "): ";
        if (hits.empty()) {
          std::cout << "never reachable\n";
        } else {
          std::cout << (r.backend == Backend::Exact ? "reachable" : "possibly reachable") << " at " << hits.size()
                    << " step(s), first k=" << hits.front() << "\n";
        }
      }
    }
  }
  return report && !report->holds() ? kExitUnsound : kExitOk;
}

// ---------------------------------------------------------------------------
// lfsr

struct LfsrArgs {
  std::size_t length = 60;
  std::string taps;
  std::string output_taps;
  std::optional<std::size_t> message_len;
  std::uint64_t seed = 1;
  std::string instance;
  std::string write_instance;
  std::string sweep;
  std::size_t seed_width = 2;
  std::size_t trials = 3;
};

LfsrSpec spec_from_args(const LfsrArgs& a, std::size_t length) {
  LfsrSpec spec = length == 60 ? LfsrSpec::standard() : LfsrSpec::scaled(length);
  if (!a.taps.empty()) spec.feedback = parse_list(a.taps, "feedback tap");
  if (!a.output_taps.empty()) spec.output = parse_list(a.output_taps, "output tap");
  spec.validate();
  return spec;
}

double seconds_of(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Mean time of one brute-force candidate check (generate keystream, compare).
double candidate_check_seconds(const LfsrSpec& spec, const CipherInstance& inst) {
  std::mt19937_64 rng(0x5eed);
  const std::size_t iters = 2000;
  std::size_t matches = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < iters; ++i) {
    BitVec key(spec.length);
    for (std::size_t b = 0; b < spec.length; ++b) key.set(b, (rng() & 1U) != 0);
    matches += (lfsr_keystream(spec, key, inst.message.size()) ^ inst.message) == inst.ciphertext ? 1 : 0;
  }
  static volatile std::size_t sink = 0;
  sink = matches;
  return seconds_of(t0) / static_cast<double>(iters);
}

int cmd_lfsr_sweep(const LfsrArgs& a) {
  std::cout << "l_k,algorithm_s,traditional_s_extrapolated,verified\n";
  bool all_ok = true;
  for (std::size_t l : parse_list(a.sweep, "sweep length")) {
    const LfsrSpec spec = spec_from_args(a, l);
    const std::size_t m = a.message_len.value_or(4 * l);
    double total = 0.0;
    bool ok = true;
    CipherInstance last;
    for (std::size_t t = 0; t < a.trials; ++t) {
      auto [key, inst] = random_instance(spec, m, a.seed + t);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const KeySearchReport rep = key_search(spec, inst, {a.seed_width});
        ok = ok && (lfsr_keystream(spec, rep.key, m) ^ inst.message) == inst.ciphertext;
      } catch (const SearchFailed&) {
        ok = false;
      }
      total += seconds_of(t0);
      last = inst;
    }
    const double traditional = std::ldexp(candidate_check_seconds(spec, last), static_cast<int>(std::min<std::size_t>(l, 1000)));
    std::cout << l << ',' << total / static_cast<double>(a.trials) << ',' << traditional << ',' << (ok ? "true" : "false")
              << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? kExitOk : kExitSearchFailed;
}

int cmd_lfsr(const LfsrArgs& a) {
  if (a.trials == 0) throw UsageError("--trials must be positive");
  if (!a.sweep.empty()) return cmd_lfsr_sweep(a);

  LfsrSpec spec;
  CipherInstance inst;
  std::optional<BitVec> true_key;
  if (!a.instance.empty()) {
    InstanceFile f = instance_from_json(read_json(a.instance));
    spec = f.spec;
    inst = f.instance;
    true_key = f.key;
  } else {
    spec = spec_from_args(a, a.length);
    auto [key, generated] = random_instance(spec, a.message_len.value_or(4 * spec.length), a.seed);
    inst = generated;
    true_key = key;
  }
  if (!a.write_instance.empty()) {
    std::ofstream out(a.write_instance);
    if (!out) throw UsageError("cannot write '" + a.write_instance + "'");
    out << to_json(InstanceFile{spec, inst, true_key}).dump(2) << "\n";
  }
  if (inst.message.size() < spec.length) {
    std::cerr << "warning: " << inst.message.size() << " message bits for a " << spec.length
              << "-bit register; the key may be under-determined\n";
  }

  const auto t0 = std::chrono::steady_clock::now();
  KeySearchReport rep;
  try {
    rep = key_search(spec, inst, {a.seed_width});
  } catch (const SearchFailed& e) {
    std::cout << "search failed after " << seconds_of(t0) << " s: " << e.what() << "\n";
    return kExitSearchFailed;
  }
  const double secs = seconds_of(t0);
  const bool verified = (lfsr_keystream(spec, rep.key, inst.message.size()) ^ inst.message) == inst.ciphertext;
  std::cout << "length " << spec.length << ", message bits " << inst.message.size() << "\n";
  std::cout << "recovered key " << rep.key.to_string() << "\n";
  if (true_key) std::cout << "matches generating key: " << (rep.key == *true_key ? "yes" : "no") << "\n";
  std::cout << "verified: " << (verified ? "yes" : "no") << "\n";
  std::cout << "keystream runs " << rep.keystream_runs << ", time " << secs << " s\n";
  return verified ? kExitOk : kExitSearchFailed;
}

// ---------------------------------------------------------------------------
// set, reduce, contains

void print_zonotope(const LogicalZonotope& z, bool with_points, const EnumerationLimits& limits) {
  Json j = to_json(z);
  if (with_points) j["points"] = to_json(evaluate(z, limits))["points"];
  std::cout << j.dump(2) << "\n";
}

int cmd_set(const std::string& op, const std::string& a_path, const std::string& b_path, bool with_points,
            const EnumerationLimits& limits) {
  if (op == "enclose") {
    const ExplicitSet s = explicit_set_from_json(read_json(a_path));
    if (s.empty()) throw EmptyInputError("enclose needs at least one point");
    print_zonotope(enclose_points(s.points()), with_points, limits);
    return kExitOk;
  }
  if (op == "stp") {
    if (b_path.empty()) throw UsageError("stp needs two matrix zonotope files");
    const auto z = mink_stp(matrix_zonotope_from_json(read_json(a_path)), matrix_zonotope_from_json(read_json(b_path)));
    Json j = to_json(z);
    if (with_points) {
      Json pts = Json::array();
      for (const BitMatrix& m : evaluate_matrix(z, limits)) pts.push_back(detail::matrix_rows(m));
      j["points"] = pts;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  const LogicalZonotope a = zonotope_from_json(read_json(a_path));
  if (op == "not") {
    print_zonotope(mink_not(a), with_points, limits);
    return kExitOk;
  }
  const auto parsed = parse_logic_op(op);
  if (!parsed) throw UsageError("unknown set operation '" + op + "'");
  if (b_path.empty()) throw UsageError(op + " needs two zonotope files");
  print_zonotope(mink_op(*parsed, a, zonotope_from_json(read_json(b_path))), with_points, limits);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const std::string& file, const std::string& horizons, const std::string& backend,
              const EnumerationLimits& limits) {
  const dsl::SystemSpec sys = file.empty() ? intersection_system() : dsl::parse_system(read_file(file));
  ReachOptions opts;
  opts.limits = limits;
  std::cout << kReachCsvHeader << "\n";
  for (std::size_t n : parse_list(horizons, "horizon")) {
    if (backend == "zono" || backend == "both") std::cout << reach_csv_row(reach(sys, n, Backend::Zonotope, opts), n) << "\n";
    if (backend == "exact" || backend == "both") std::cout << reach_csv_row(reach(sys, n, Backend::Exact, opts), n) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability and set operations with logical zonotopes"};
  app.require_subcommand(1);
  std::size_t gamma_cap = kDefaultGammaCap;
  app.add_option("--gamma-cap", gamma_cap, "Largest generator count that may be enumerated")
      ->check(CLI::Range(1, 62));

  ReachArgs ra;
  auto* reach_cmd = app.add_subcommand("reach", "Reachable sets of a .lbn system");
  reach_cmd->add_option("system", ra.file, "System file")->required();
  reach_cmd->add_option("--horizon,-N", ra.horizon, "Number of steps (default: file horizon, else 10)");
  reach_cmd->add_option("--backend", ra.backend)->check(CLI::IsMember({"zono", "exact", "both"}));
  reach_cmd->add_option("--out", ra.out)->check(CLI::IsMember({"json", "csv", "text"}));
  reach_cmd->add_flag("--golden", ra.golden, "Canonical JSON without timings");
  reach_cmd->add_option("--forbid", ra.forbid, "Predicate over state variables that must never hold");
  reach_cmd->add_option("--reduce-threshold", ra.reduce_threshold, "Reduce scalar zonotopes above this many generators");
  reach_cmd->add_option("--state-budget", ra.state_budget, "Most state variables the exact backend accepts")
      ->check(CLI::Range(1, 30));

  LfsrArgs la;
  auto* lfsr_cmd = app.add_subcommand("lfsr", "LFSR key search");
  lfsr_cmd->add_option("--length", la.length, "Register length")->check(CLI::Range(4, 4096));
  lfsr_cmd->add_option("--taps", la.taps, "Feedback taps, comma separated, 1-based");
  lfsr_cmd->add_option("--output-taps", la.output_taps, "Output taps, comma separated, 1-based");
  lfsr_cmd->add_option("--message-len", la.message_len, "Message bits (default 4 x length)");
  lfsr_cmd->add_option("--seed", la.seed, "Seed for the random key and message");
  lfsr_cmd->add_option("--instance", la.instance, "Instance JSON instead of a random one");
  lfsr_cmd->add_option("--write-instance", la.write_instance, "Save the instance as JSON");
  lfsr_cmd->add_option("--sweep", la.sweep, "Comma separated lengths; prints CSV");
  lfsr_cmd->add_option("--seed-width", la.seed_width, "Leading key bits enumerated explicitly")->check(CLI::Range(0, 16));
  lfsr_cmd->add_option("--trials", la.trials, "Keys per length in --sweep");

  std::string set_op, set_a, set_b;
  bool set_eval = false;
  auto* set_cmd = app.add_subcommand("set", "Minkowski operation on zonotope files");
  set_cmd->add_option("op", set_op, "xor|and|or|nand|nor|xnor|not|enclose|stp")->required();
  set_cmd->add_option("a", set_a, "First operand")->required();
  set_cmd->add_option("b", set_b, "Second operand");
  set_cmd->add_flag("--evaluate", set_eval, "Also list the points");

  std::string red_file;
  bool red_eval = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Drop generators that do not change the point set");
  reduce_cmd->add_option("zonotope", red_file)->required();
  reduce_cmd->add_flag("--evaluate", red_eval, "Also list the points");

  std::string cont_file, cont_bits;
  auto* contains_cmd = app.add_subcommand("contains", "Membership test");
  contains_cmd->add_option("zonotope", cont_file)->required();
  contains_cmd->add_option("point", cont_bits)->required();

  std::string bench_file, bench_horizons = "10,50,100,1000", bench_backend = "both";
  auto* bench_cmd = app.add_subcommand("bench", "Size and timing table (N, backend, time_s, size)");
  bench_cmd->add_option("--system", bench_file, "System file (default: intersection protocol)");
  bench_cmd->add_option("--horizons", bench_horizons);
  bench_cmd->add_option("--backend", bench_backend)->check(CLI::IsMember({"zono", "exact", "both"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const EnumerationLimits limits = limits_from_env(gamma_cap);
    if (*reach_cmd) return cmd_reach(ra, limits);
    if (*lfsr_cmd) return cmd_lfsr(la);
    if (*set_cmd) return cmd_set(set_op, set_a, set_b, set_eval, limits);
    if (*reduce_cmd) {
      print_zonotope(reduce(zonotope_from_json(read_json(red_file)), limits), red_eval, limits);
      return kExitOk;
    }
    if (*contains_cmd) {
      const bool in = contains(zonotope_from_json(read_json(cont_file)), BitVec::from_string(cont_bits));
      std::cout << (in ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (*bench_cmd) return cmd_bench(bench_file, bench_horizons, bench_backend, limits);
  } catch (const dsl::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << " (" << e.cap_name() << ")\n";
    return kExitInput;
  } catch (const SearchFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSearchFailed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON record: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
