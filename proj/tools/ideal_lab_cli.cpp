// ideal-lab: construct, search, certify and verify from the command line.
// Reports go to stdout as JSON, diagnostics to stderr.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ideal_lab/errors.hpp"
#include "ideal_lab/json_io.hpp"
#include "ideal_lab/suites.hpp"

using namespace ideal_lab;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  unsigned threads = 0;
  bool stable = false;
};

unsigned resolve_threads(unsigned flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv("IDEAL_LAB_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("IDEAL_LAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_ladder(const std::string& text) {
  if (text.empty()) return default_eps_ladder();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad ε value '" + item + "'");
    }
    if (used != item.size()) throw DomainError("bad ε value '" + item + "'");
    out.push_back(v);
  }
  check_eps_ladder(out);
  return out;
}

GenSet parse_gen_list(const std::string& text) {
  if (!text.empty() && text.front() == '[') return gen_set_from_json(Json::parse(text));
  std::vector<Nat> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(item, &used);
    if (used != item.size()) throw DomainError("bad generator '" + item + "'");
    v.push_back(x);
  }
  return GenSet(v);
}

// smallest greedy very sparse set whose certified bound covers `bound`
std::size_t sparse_size_for(Nat bound) {
  if (bound == 0) return 10;
  Nat total = 0, next = 1;
  for (std::size_t k = 1; k <= kMaxVerySparseSize; ++k) {
    total += next;
    if (total + 1 >= bound) return k;
    next = kDefaultGrowthFactor * total + 1;
  }
  throw DomainError("bound " + std::to_string(bound) + " exceeds every certifiable very sparse set");
}

int emit(const Globals& g, Json report, std::chrono::steady_clock::time_point t0) {
  if (!g.stable)
    report["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  std::cout << report.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ideal-lab: ideal convergence driven by partition regular functions"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (default: $IDEAL_LAB_THREADS or all cores)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--stable", g.stable, "omit timing so repeated runs are byte-identical");

  // construct
  auto* construct = app.add_subcommand("construct", "build a realized sequence for a Souslin scheme");
  std::string kind_s, scheme_s, out_path;
  Nat c_bound = 0;
  std::size_t c_depth = kDefaultResolutionDepth, c_sparse = 0;
  construct->add_option("--kind", kind_s, "ramsey | hindman")->required();
  construct->add_option("--scheme", scheme_s, "singleton:c | finite:a,b,… | cantor | rationals | file.json")->required();
  construct->add_option("--bound", c_bound, "window bound (hindman: 0 = certified bound)");
  construct->add_option("--depth", c_depth, "resolution depth of branch points")->check(CLI::Range(0, 64));
  construct->add_option("--sparse-size", c_sparse, "hindman: size of the very sparse set (default: smallest covering --bound)");
  construct->add_option("--out", out_path, "write the sequence here instead of stdout");

  // check-limit
  auto* check = app.add_subcommand("check-limit", "search or check a ρ-limit witness");
  std::string seq_path, rho_s, ladder_s, given_f;
  double eta = 0;
  std::size_t max_f = 6, max_k = 0;
  Nat max_elem = 0;
  std::uint64_t budget = 0;
  check->add_option("--seq", seq_path, "sequence JSON file")->required();
  check->add_option("--rho", rho_s, "fs | pairs")->required();
  check->add_option("--eta", eta, "candidate limit")->required();
  check->add_option("--eps-ladder", ladder_s, "comma separated, strictly decreasing (default 2^-1..2^-10)");
  check->add_option("--max-F", max_f, "size of F searched")->check(CLI::Range(1, 64));
  check->add_option("--max-K", max_k, "largest |K| per rung (default unlimited)");
  check->add_option("--max-element", max_elem, "generators drawn below this (default: window bound)");
  check->add_option("--node-budget", budget, "give up after this many search nodes (0 = never)");
  check->add_option("--F", given_f, "check this F instead of searching (JSON array or comma list)");

  // example
  auto* example = app.add_subcommand("example", "built-in example sequences");
  auto* nu2_cmd = example->add_subcommand("nu2", "x_0 = 1/3, x_n = 2^-ν₂(n)");
  example->require_subcommand(1);
  Nat e_bound = 0;
  std::string e_out;
  nu2_cmd->add_option("--bound", e_bound, "window bound")->required();
  nu2_cmd->add_option("--out", e_out, "write the sequence here instead of stdout");

  // certify-sparse
  auto* certify = app.add_subcommand("certify-sparse", "generate and certify a very sparse set");
  std::size_t s_size = 0;
  Nat s_growth = kDefaultGrowthFactor;
  certify->add_option("--size", s_size, "number of elements")->required()->check(CLI::Range(std::size_t{1}, kMaxVerySparseSize));
  certify->add_option("--growth", s_growth, "d_{k+1} = growth·(d_0+…+d_k) + 1")->check(CLI::Range(Nat{1}, Nat{1000}));

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  std::size_t v_depth = 4;
  verify->add_option("--suite", suite, "thm42 | thm43 | axioms")->required()->check(CLI::IsMember({"thm42", "thm43", "axioms"}));
  verify->add_option("--depth", v_depth, "tree depth")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ExecPolicy policy{resolve_threads(g.threads)};

    if (*construct) {
      const RealizationKind kind = parse_realization_kind(kind_s);
      const SouslinScheme scheme = parse_scheme_spec(scheme_s);
      std::optional<VerySparseSet> d;
      if (kind == RealizationKind::Hindman)
        d = generate_very_sparse(c_sparse != 0 ? c_sparse : sparse_size_for(c_bound), kDefaultGrowthFactor, policy);
      const RealizedSequence y = build_realized_sequence(kind, scheme, c_depth, c_bound, d, policy);
      Json seq = to_json(y);
      Json report{{"command", "construct"},
                  {"parameters", {{"kind", kind_s}, {"scheme", to_json(scheme)}, {"bound", y.bound()}, {"depth", c_depth}}},
                  {"results",
                   {{"indices", y.window.size()}, {"in_A_empty", y.in_a_empty}, {"base_point", y.base_point},
                    {"max_error", y.max_error}}}};
      if (d) report["results"]["D"] = to_json(d->elements());
      if (out_path.empty()) {
        report["results"]["sequence"] = std::move(seq);
      } else {
        write_json_file(out_path, seq);
        report["results"]["out"] = out_path;
      }
      return emit(g, std::move(report), t0);
    }

    if (*check) {
      const PartitionRegularMap rho = parse_rho(rho_s);
      const SequenceWindow x = sequence_from_json(read_json_file(seq_path));
      if (x.domain() != rho.target_domain())
        throw DomainError("sequence domain '" + std::string(to_string(x.domain())) + "' does not match ρ=" + rho.name());
      const auto ladder = parse_ladder(ladder_s);
      Json params{{"rho", rho.name()}, {"eta", eta}, {"eps_ladder", ladder}, {"window", x.bound()}};
      Json results;
      bool ok = true;
      if (!given_f.empty()) {
        const GenSet f = parse_gen_list(given_f);
        params["F"] = to_json(f);
        auto w = tails_for_given_F(rho, x, eta, f, ladder);
        results["found"] = w.has_value();
        if (w) {
          ok = w->verified;
          results["witness"] = to_json(*w);
        }
      } else {
        LimitSearch ls;
        ls.target_size = max_f;
        ls.search_bound = max_elem;
        if (max_k != 0) ls.max_k = max_k;
        ls.node_budget = budget;
        params["max_F"] = max_f;
        params["max_K"] = max_k == 0 ? Json(nullptr) : Json(max_k);
        auto r = find_limit_witness(rho, x, eta, ladder, ls);
        results["found"] = r.found();
        if (r.witness) {
          ok = r.witness->verified;
          results["witness"] = to_json(*r.witness);
        } else {
          results["bounds"] = to_json(r.bounds);
        }
      }
      emit(g, Json{{"command", "check-limit"}, {"parameters", params}, {"results", results}}, t0);
      return ok ? kOk : kFailed;
    }

    if (*example) {
      if (e_bound == 0) throw DomainError("example nu2: --bound must be positive");
      const SequenceWindow x = nu2_sequence(e_bound);
      Json report{{"command", "example nu2"}, {"parameters", {{"bound", e_bound}}}};
      if (e_out.empty()) {
        report["results"] = Json{{"sequence", to_json(x)}};
      } else {
        write_json_file(e_out, to_json(x));
        report["results"] = Json{{"out", e_out}};
      }
      return emit(g, std::move(report), t0);
    }

    if (*certify) {
      // certify the greedy candidate explicitly so failures are reported, not thrown
      std::vector<Nat> v{1};
      Nat total = 1;
      for (std::size_t k = 1; k < s_size; ++k) {
        v.push_back(s_growth * total + 1);
        total += v.back();
      }
      const GenSet cand(v);
      const CertificationReport rep = certify_very_sparse(cand, policy);
      Json results{{"elements", to_json(cand)}, {"certification", to_json(rep)}};
      if (rep.pass) results["certified_bound"] = total + 1;
      emit(g, Json{{"command", "certify-sparse"}, {"parameters", {{"size", s_size}, {"growth", s_growth}}},
                   {"results", results}},
           t0);
      return rep.pass ? kOk : kFailed;
    }

    if (*verify) {
      const Json r = run_suite(suite, SuiteOptions{v_depth, policy});
      const bool pass = r["pass"].get<bool>();
      emit(g, Json{{"command", "verify"}, {"parameters", {{"suite", suite}, {"depth", v_depth}}}, {"results", r}}, t0);
      return pass ? kOk : kFailed;
    }
  } catch (const Error& e) {
    std::cerr << "ideal-lab: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ideal-lab: bad JSON: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ideal-lab: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
