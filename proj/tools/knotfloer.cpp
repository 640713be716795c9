// Command-line driver: exact Tristram-Levine signatures, SU(2) representation
// counts, and the named verification suites.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "knotfloer/cache.hpp"
#include "knotfloer/verify.hpp"
#include "knotfloer/version.hpp"

using namespace knotfloer;

namespace {

std::pair<long, long> parse_torus(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--torus expects p,q");
  return {std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
}

std::string jump_list(const SeifertMatrix& v) {
  auto jumps = signature_jumps(v);
  std::string out;
  for (auto& a : jumps.exact) {
    if (!out.empty()) out += ", ";
    out += to_string(a);
  }
  for (auto& [lo, hi] : jumps.intervals) {
    if (!out.empty()) out += ", ";
    out += "(" + to_string(lo) + ", " + to_string(hi) + ")";
  }
  return out;
}

struct CommonOpts {
  std::string torus;
  std::string seifert_file;
  std::vector<std::string> alphas;
  std::string format = "json";
};

SeifertMatrix resolve_knot(const CommonOpts& o) {
  if (!o.torus.empty()) {
    auto [p, q] = parse_torus(o.torus);
    return torus_knot_seifert(p, q);
  }
  if (!o.seifert_file.empty()) return load_seifert_json(o.seifert_file);
  throw CLI::ValidationError("need --torus p,q or --seifert FILE");
}

int run_sig(const CommonOpts& o) {
  SeifertMatrix v = resolve_knot(o);
  auto cache = ResultCache::from_env();
  nlohmann::json results = nlohmann::json::array();
  for (auto& astr : o.alphas) {
    Rational alpha = parse_rational(astr);
    std::string key = (v.name.empty() ? "seifert" : v.name) + ";alpha=" + astr;
    long sigma;
    if (cache) {
      if (auto rec = cache->get("signature", key)) {
        sigma = rec->value.get<long>();
        results.push_back({{"alpha", astr}, {"sigma", sigma}, {"cached", true}});
        continue;
      }
    }
    if (!admissible(v, alpha)) {
      std::cerr << "alpha = " << astr
                << " is a root of the Alexander polynomial; signature jumps at: "
                << jump_list(v) << "\n";
      return 2;
    }
    sigma = tl_signature(v, alpha);
    if (cache) cache->put_value("signature", key, sigma);
    results.push_back({{"alpha", astr}, {"sigma", sigma}});
  }
  if (o.format == "csv") {
    std::cout << "alpha,sigma\n";
    for (auto& r : results)
      std::cout << r["alpha"].get<std::string>() << "," << r["sigma"].get<long>()
                << "\n";
  } else {
    nlohmann::json out;
    out["kind"] = "signature";
    out["knot"] = v.name.empty() ? "seifert-file" : v.name;
    out["results"] = results;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int run_count(const CommonOpts& o, const std::string& dump_csv) {
  if (o.torus.empty())
    throw CLI::ValidationError("count needs --torus p,q");
  auto [p, q] = parse_torus(o.torus);
  SeifertMatrix v = torus_knot_seifert(p, q);
  auto cache = ResultCache::from_env();
  nlohmann::json results = nlohmann::json::array();
  for (auto& astr : o.alphas) {
    Rational alpha = parse_rational(astr);
    if (!admissible(v, alpha)) {
      std::cerr << "alpha = " << astr
                << " is a root of the Alexander polynomial; signature jumps at: "
                << jump_list(v) << "\n";
      return 2;
    }
    std::string key = v.name + ";alpha=" + astr;
    long n;
    if (cache) {
      if (auto rec = cache->get("count", key)) {
        n = rec->value.get<long>();
        results.push_back({{"alpha", astr}, {"count", n}, {"cached", true}});
        continue;
      }
    }
    n = count_reps(p, q, alpha);
    if (cache) cache->put_value("count", key, n);
    results.push_back({{"alpha", astr}, {"count", n}});
    if (!dump_csv.empty()) {
      std::ofstream out(dump_csv);
      out << "a,b,tau_over_pi_lo,tau_over_pi_hi,trace\n";
      for (auto& row : rep_csv_rows(p, q, alpha))
        out << row.a << "," << row.b << "," << to_string(row.u_lo) << ","
            << to_string(row.u_hi) << "," << row.trace_mid << "\n";
    }
  }
  if (o.format == "csv") {
    std::cout << "alpha,count\n";
    for (auto& r : results)
      std::cout << r["alpha"].get<std::string>() << "," << r["count"].get<long>()
                << "\n";
  } else {
    nlohmann::json out;
    out["kind"] = "count";
    out["knot"] = v.name;
    out["results"] = results;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact knot invariants at rational holonomy parameters"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts sig_opts, count_opts;
  std::string count_dump;

  auto* sig = app.add_subcommand("sig", "Tristram-Levine signature sigma_alpha");
  sig->add_option("--torus", sig_opts.torus, "torus knot p,q");
  sig->add_option("--seifert", sig_opts.seifert_file, "Seifert matrix JSON file");
  sig->add_option("--alpha", sig_opts.alphas, "holonomy parameter c/d")
      ->required();
  sig->add_option("--format", sig_opts.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* count = app.add_subcommand(
      "count", "number of irreducible SU(2) representations at alpha");
  count->add_option("--torus", count_opts.torus, "torus knot p,q")->required();
  count->add_option("--alpha", count_opts.alphas, "holonomy parameter c/d")
      ->required();
  count->add_option("--format", count_opts.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  count->add_option("--dump", count_dump,
                    "write per-arc (arc, tau-window, trace) rows to a CSV file");

  std::string suite;
  long max_pq = 35, max_r = 12, max_pqr = 200, max_l = 6, max_len = 4,
       grid = 50, max_k = 10, n_random = 50;
  unsigned seed = 20240901;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string verify_format = "json";
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite, "absolute-counting|p2|froyshov|ranks|euler|flip|litherland|tensor-axioms")
      ->required()
      ->check(CLI::IsMember({"absolute-counting", "p2", "froyshov", "ranks",
                             "euler", "flip", "litherland", "tensor-axioms"}));
  verify->add_option("--max-pq", max_pq, "largest p*q for torus knots");
  verify->add_option("--max-r", max_r, "largest denominator r in alpha = l/2r");
  verify->add_option("--max-pqr", max_pqr, "largest p*q*r for Brieskorn triples");
  verify->add_option("--max-l", max_l, "largest tensor power of the block");
  verify->add_option("--max-len", max_len, "largest tensor word length");
  verify->add_option("--grid", grid, "admissible grid points per knot");
  verify->add_option("--max-k", max_k, "largest k for T(2, 2k+1)");
  verify->add_option("--count", n_random, "number of random instances");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--jobs", jobs, "worker threads");
  verify->add_option("--format", verify_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sig->parsed()) return run_sig(sig_opts);
    if (count->parsed()) return run_count(count_opts, count_dump);
    if (verify->parsed()) {
      auto disk = ResultCache::from_env();
      InvariantMemo memo(disk ? &*disk : nullptr);
      VerifyReport rep;
      if (suite == "absolute-counting")
        rep = verify_absolute_counting(max_pq, max_r, jobs, &memo);
      else if (suite == "p2") rep = verify_p2(max_pqr, jobs, &memo);
      else if (suite == "froyshov") rep = verify_froyshov(max_l, n_random, seed, jobs);
      else if (suite == "ranks") rep = verify_ranks(max_l, jobs);
      else if (suite == "euler") rep = verify_euler(max_l, jobs);
      else if (suite == "flip") rep = verify_flip(max_pq, max_r, jobs, &memo);
      else if (suite == "litherland") rep = verify_litherland(max_k, grid, jobs, &memo);
      else if (suite == "tensor-axioms") rep = verify_tensor_axioms(max_len, jobs);
      if (verify_format == "csv") {
        std::cout << "params,expected,got,pass\n";
        for (auto& i : rep.instances)
          std::cout << "\"" << i.params << "\",\"" << i.expected << "\",\""
                    << i.got << "\"," << (i.pass ? 1 : 0) << "\n";
      } else {
        std::cout << rep.to_json().dump(2) << "\n";
      }
      std::cerr << rep.summary_line() << "\n";
      return rep.all_pass() ? 0 : 3;
    }
  } catch (const NotAdmissible& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
