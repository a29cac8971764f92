// relaxtree: count | verify | convert | asym {ratio|bounds|profile}
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 cache error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaxtree/relaxtree.hpp"

namespace rt = relaxtree;
using rt::ojson;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCache = 3;

int exit_code_for(const rt::Error& e) {
  if (e.code() == "cache-corrupt" || e.code() == "cache-mismatch") return kExitCache;
  return kExitUsage;
}

void write_out(const std::string& text) {
  std::fwrite(text.data(), 1, text.size(), stdout);
  std::fflush(stdout);
}

int default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != item.size()) throw rt::Error("invalid-argument", "not an integer list: " + text);
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// count

struct CountOptions {
  std::string kind = "relaxed";
  int k = 2;
  int n_max = 10;
  std::string format = "csv";
  std::string cache_dir;
};

int run_count(const CountOptions& o) {
  const rt::CountKind kind = rt::parse_count_kind(o.kind);
  if (o.k < 2 || o.n_max < 0) throw rt::Error("invalid-argument", "need --k >= 2 and --n-max >= 0");
  std::string dir = o.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("RELAXTREE_CACHE")) dir = env;
  std::vector<mpz_class> diag;
  if (dir.empty()) {
    diag = rt::diagonal_sequence(kind, o.k, o.n_max);
  } else {
    const auto table = rt::load_or_build(dir, kind, o.k, (o.k - 1) * o.n_max);
    diag = rt::diagonal_sequence(table, o.n_max);
  }
  if (o.format == "csv") {
    write_out(rt::count_csv(diag));
  } else {
    ojson doc = {{"kind", std::string(rt::to_string(kind))}, {"k", o.k}, {"n_max", o.n_max}, {"counts", ojson::array()}};
    for (const auto& v : diag) doc["counts"].push_back(v.get_str());
    write_out(rt::dump_document(doc));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string scope;
  int k = 2;
  int n_max = -1;
  int dfa_states = 0;
  long long i_max = 10000;
  long long i0_limit = 5000;
  double eta = 0;  // 0 selects 1.05 times the threshold
  double epsilon = 0.1;
  int threads = 0;
  std::string neighbours = "recurrence";
  std::string cubic = "linear";
  std::string quartic = "ij";
  bool json = false;
};

struct VerifyResult {
  bool ok = true;
  long long checks = 0;
  ojson details = ojson::array();
  ojson counterexample;  // null unless a check failed
  std::vector<std::string> lines;

  void fail(ojson example) {
    if (ok) counterexample = std::move(example);
    ok = false;
  }
};

rt::BoundForm parse_form(const VerifyOptions& o) {
  rt::BoundForm f;
  if (o.neighbours == "recurrence")
    f.neighbours = rt::BoundForm::Neighbours::recurrence;
  else if (o.neighbours == "swapped")
    f.neighbours = rt::BoundForm::Neighbours::swapped;
  else
    throw rt::Error("invalid-argument", "--neighbours must be recurrence or swapped");
  if (o.cubic == "linear")
    f.cubic = rt::BoundForm::Cubic::linear;
  else if (o.cubic == "squared")
    f.cubic = rt::BoundForm::Cubic::squared;
  else
    throw rt::Error("invalid-argument", "--cubic must be linear or squared");
  if (o.quartic == "ij")
    f.quartic = rt::BoundForm::Quartic::ij;
  else if (o.quartic == "mn")
    f.quartic = rt::BoundForm::Quartic::mn;
  else
    throw rt::Error("invalid-argument", "--quartic must be ij or mn");
  return f;
}

void verify_oracle(const VerifyOptions& o, VerifyResult& res) {
  const int n_max = o.n_max < 0 ? rt::default_enumeration_limit(o.k) : o.n_max;
  const auto relaxed = rt::diagonal_sequence(rt::CountKind::relaxed, o.k, n_max);
  const auto compacted = rt::diagonal_sequence(rt::CountKind::compacted, o.k, n_max);
  for (int n = 1; n <= n_max; ++n) {
    mpz_class direct = 0, via = 0, comp = 0;
    std::set<std::string> seen;
    bool valid = true, unique = true;
    rt::enumerate_relaxed(o.k, n, [&](const rt::RelaxedTree& t) {
      ++direct;
      comp += rt::is_compacted(t) ? 1 : 0;
      valid = valid && rt::validate_tree(t).ok();
      unique = seen.insert(rt::dump_tree(t)).second && unique;
    }, n_max);
    via = static_cast<unsigned long>(rt::enumerate_relaxed_via_paths(o.k, n, [](const rt::RelaxedTree&) {}, n_max));
    const bool match = direct == relaxed[n] && via == relaxed[n] && comp == compacted[n] && valid && unique;
    res.checks += 1;
    res.details.push_back({{"n", n}, {"relaxed", relaxed[n].get_str()}, {"enumerated", direct.get_str()},
                           {"via_paths", via.get_str()}, {"compacted", compacted[n].get_str()},
                           {"compacted_enumerated", comp.get_str()}, {"match", match}});
    res.lines.push_back("n=" + std::to_string(n) + " relaxed " + relaxed[n].get_str() + "/" + direct.get_str() + "/" +
                        via.get_str() + " compacted " + compacted[n].get_str() + "/" + comp.get_str() +
                        (match ? " ok" : " MISMATCH"));
    if (!match) res.fail({{"n", n}, {"recurrence", relaxed[n].get_str()}, {"enumerated", direct.get_str()}});
  }
  if (o.dfa_states > 0) {
    const auto dfa = rt::diagonal_sequence(rt::CountKind::dfa, o.k, o.dfa_states);
    for (int states = 1; states <= o.dfa_states; ++states) {
      // Entry j of the b diagonal counts minimal automata with j+1 states.
      const mpz_class oracle = rt::count_min_dfa_oracle(o.k, states);
      const bool match = oracle == dfa[states - 1];
      res.checks += 1;
      res.details.push_back({{"states", states}, {"dfa_recurrence", dfa[states - 1].get_str()}, {"dfa_enumerated", oracle.get_str()},
                             {"match", match}});
      res.lines.push_back("states=" + std::to_string(states) + " dfa " + dfa[states - 1].get_str() + "/" + oracle.get_str() +
                          (match ? " ok" : " MISMATCH"));
      if (!match) res.fail({{"states", states}, {"recurrence", dfa[states - 1].get_str()}, {"enumerated", oracle.get_str()}});
    }
  }
  res.lines.push_back("matched " + std::to_string(res.checks) + " counts");
}

void verify_bijection(const VerifyOptions& o, VerifyResult& res) {
  const int n_max = o.n_max < 0 ? rt::default_enumeration_limit(o.k) : o.n_max;
  for (int n = 0; n <= n_max; ++n) {
    long long trees = 0, paths = 0, failures = 0;
    rt::enumerate_relaxed(o.k, n, [&](const rt::RelaxedTree& t) {
      ++trees;
      const auto p = rt::tree_to_path(t);
      if (!(rt::path_to_tree(p) == t)) {
        ++failures;
        res.fail({{"direction", "tree-path-tree"}, {"tree", rt::tree_to_json(t)}});
      }
    }, n_max);
    rt::generate_paths(o.k, n, [&](const rt::DecoratedPath& p) {
      ++paths;
      const auto t = rt::path_to_tree(p);
      if (!(rt::tree_to_path(t) == p)) {
        ++failures;
        res.fail({{"direction", "path-tree-path"}, {"path", rt::path_to_json(p)}});
      }
    }, n_max);
    if (trees != paths) {
      ++failures;
      res.fail({{"n", n}, {"trees", trees}, {"paths", paths}});
    }
    res.checks += trees + paths;
    res.details.push_back({{"n", n}, {"trees", trees}, {"paths", paths}, {"failures", failures}});
    res.lines.push_back("n=" + std::to_string(n) + " trees " + std::to_string(trees) + " paths " + std::to_string(paths) +
                        " failures " + std::to_string(failures));
  }
}

void verify_bounds_scope(const VerifyOptions& o, rt::BoundSide side, VerifyResult& res) {
  const double eta = o.eta > 0 ? o.eta : 1.05 * rt::eta_threshold(o.k);
  const rt::BoundParams params(o.k, eta, o.epsilon);
  const int threads = o.threads > 0 ? o.threads : default_threads();
  const auto rep = rt::verify_bounds(side, params, 2, o.i_max, threads, parse_form(o));
  const bool ok = rep.i0 <= o.i0_limit;
  res.checks += 1;
  res.details.push_back({{"side", std::string(rt::to_string(side))}, {"k", o.k}, {"eta", eta}, {"epsilon", o.epsilon},
                         {"i0", rep.i0}, {"scanned_i_max", rep.scanned_i_max}, {"violations", rep.violation_count}});
  std::string line = rt::bounds_csv_row(rep);
  line.pop_back();
  res.lines.push_back(rt::bounds_csv_header().substr(0, rt::bounds_csv_header().size() - 1));
  res.lines.push_back(line);
  if (!ok) {
    const auto& v = rep.violations.back();
    res.fail({{"i0", rep.i0}, {"i0_limit", o.i0_limit}, {"last_stored_violation", {{"i", v.i}, {"j", v.j}, {"lhs", v.lhs}, {"rhs", v.rhs}}}});
  }
}

void verify_ratio(const VerifyOptions& o, VerifyResult& res) {
  const int n_max = o.n_max < 0 ? 200 : o.n_max;
  std::vector<int> grid;
  for (int n : {50, 100, 200, 400, 600})
    if (n <= n_max) grid.push_back(n);
  if (grid.empty()) throw rt::Error("invalid-argument", "ratio scope needs --n-max >= 50");
  const auto exact = rt::ratio_diagnostic(o.k, grid, rt::RatioRoute::exact);
  const auto scaled = rt::ratio_diagnostic(o.k, grid, rt::RatioRoute::scaled);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    const double diff = std::fabs(exact[t].log_ratio - scaled[t].log_ratio);
    const bool ok = diff < 1e-6 && std::isfinite(exact[t].log_ratio);
    res.checks += 1;
    res.details.push_back({{"n", grid[t]}, {"exact", exact[t].log_ratio}, {"scaled", scaled[t].log_ratio}, {"ok", ok}});
    res.lines.push_back("n=" + std::to_string(grid[t]) + " exact " + rt::format_real(exact[t].log_ratio) + " scaled " +
                        rt::format_real(scaled[t].log_ratio) + (ok ? " ok" : " MISMATCH"));
    if (!ok) res.fail({{"n", grid[t]}, {"exact", exact[t].log_ratio}, {"scaled", scaled[t].log_ratio}});
  }
}

void verify_p_ineq(const VerifyOptions& o, VerifyResult& res) {
  const int n_max = o.n_max < 0 ? rt::kPathRatioLimit / o.k : o.n_max;
  for (int n = 1; n <= n_max; ++n) {
    const auto rep = rt::p_ratio_check(o.k, n);
    res.checks += rep.ratio_checks + rep.origin_checks;
    res.details.push_back({{"n", n}, {"ratio_checks", rep.ratio_checks}, {"origin_checks", rep.origin_checks},
                           {"violations", rep.violations}});
    res.lines.push_back("kn=" + std::to_string(o.k * n) + " checks " + std::to_string(rep.ratio_checks + rep.origin_checks) +
                        " violations " + std::to_string(rep.violations));
    if (!rep.ok) {
      const auto& v = rep.first_violation;
      res.fail({{"n", n}, {"inequality", v.inequality}, {"r", v.r}, {"s1", v.s1}, {"s2", v.s2}});
    }
  }
}

void verify_transform(const VerifyOptions& o, VerifyResult& res) {
  const int n_max = o.n_max < 0 ? 30 / o.k : o.n_max;
  const auto rep = rt::transform_identity_check(o.k, o.k * n_max);
  res.checks += rep.checked;
  res.details.push_back({{"kn_max", o.k * n_max}, {"checked", rep.checked}, {"ok", rep.ok}});
  res.lines.push_back("checked " + std::to_string(rep.checked) + " diagonal entries" + (rep.ok ? " ok" : " MISMATCH"));
  if (!rep.ok) res.fail({{"n", rep.first_mismatch_n}});
}

int run_verify(const VerifyOptions& o) {
  if (o.k < 2) throw rt::Error("invalid-argument", "need --k >= 2");
  VerifyResult res;
  if (o.scope == "oracle")
    verify_oracle(o, res);
  else if (o.scope == "bijection")
    verify_bijection(o, res);
  else if (o.scope == "bounds-lower")
    verify_bounds_scope(o, rt::BoundSide::lower, res);
  else if (o.scope == "bounds-upper")
    verify_bounds_scope(o, rt::BoundSide::upper, res);
  else if (o.scope == "ratio")
    verify_ratio(o, res);
  else if (o.scope == "p-ineq")
    verify_p_ineq(o, res);
  else if (o.scope == "transform")
    verify_transform(o, res);
  else
    throw rt::Error("invalid-argument", "unknown scope " + o.scope);

  if (o.json) {
    ojson doc = {{"scope", o.scope}, {"k", o.k}, {"ok", res.ok}, {"checks", res.checks}, {"details", res.details}};
    doc["first_counterexample"] = res.counterexample;
    write_out(rt::dump_document(doc));
  } else {
    std::string text;
    for (const auto& l : res.lines) text += l + "\n";
    text += std::string(res.ok ? "PASS" : "FAIL") + " scope=" + o.scope + " k=" + std::to_string(o.k) + "\n";
    if (!res.ok) text += "counterexample " + res.counterexample.dump() + "\n";
    write_out(text);
  }
  return res.ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertOptions {
  std::string direction;
  std::string input;
  std::string output;
};

int run_convert(const ConvertOptions& o) {
  std::string text;
  if (o.direction == "tree-to-path") {
    text = rt::dump_path(rt::tree_to_path(rt::load_tree_file(o.input)));
  } else if (o.direction == "path-to-tree") {
    text = rt::dump_tree(rt::path_to_tree(rt::load_path_file(o.input)));
  } else {
    throw rt::Error("invalid-argument", "--direction must be tree-to-path or path-to-tree");
  }
  if (o.output.empty() || o.output == "-") {
    write_out(text);
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw rt::Error("io-error", "cannot write " + o.output);
    out << text;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// asym

struct AsymOptions {
  int k = 2;
  std::string grid = "16,32,64,128,256,512";
  std::string route = "auto";
  std::string side = "both";
  std::string ks;
  long long i_max = 10000;
  double eta = 0;
  double epsilon = 0.1;
  int threads = 0;
  int column = 1000;
  bool summary = false;
};

int run_asym_ratio(const AsymOptions& o) {
  write_out(rt::ratio_csv(rt::ratio_diagnostic(o.k, parse_int_list(o.grid), rt::parse_ratio_route(o.route))));
  return kExitOk;
}

int run_asym_bounds(const AsymOptions& o) {
  std::vector<int> ks = o.ks.empty() ? std::vector<int>{o.k} : parse_int_list(o.ks);
  std::vector<rt::BoundSide> sides;
  if (o.side == "both")
    sides = {rt::BoundSide::lower, rt::BoundSide::upper};
  else
    sides = {rt::parse_bound_side(o.side)};
  const int threads = o.threads > 0 ? o.threads : default_threads();
  std::string out = rt::bounds_csv_header();
  for (int k : ks)
    for (auto side : sides) {
      const double eta = o.eta > 0 ? o.eta : 1.05 * rt::eta_threshold(k);
      out += rt::bounds_csv_row(rt::verify_bounds(side, rt::BoundParams(k, eta, o.epsilon), 2, o.i_max, threads));
    }
  write_out(out);
  return kExitOk;
}

int run_asym_profile(const AsymOptions& o) {
  const auto rep = rt::profile_check(o.k, o.column);
  if (o.summary) {
    write_out("i,best_scale,sup_deviation\n" + std::to_string(rep.i) + "," + rt::format_real(rep.best_scale) + "," +
              rt::format_real(rep.sup_deviation) + "\n");
  } else {
    write_out(rt::profile_csv(rep));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed and compacted k-ary trees: exact counts, bijection, asymptotics"};
  app.require_subcommand(1);

  CountOptions count;
  auto* c = app.add_subcommand("count", "Print the diagonal of a counting table");
  c->add_option("--kind", count.kind, "relaxed | compacted | dfa")->check(CLI::IsMember({"relaxed", "compacted", "dfa"}));
  c->add_option("--k", count.k, "Arity (alphabet size for dfa)")->required();
  c->add_option("--n-max", count.n_max, "Largest node count")->required();
  c->add_option("--format", count.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--cache-dir", count.cache_dir, "Table cache directory (overrides RELAXTREE_CACHE)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run an invariant suite");
  v->add_option("--scope", verify.scope, "oracle | bijection | bounds-lower | bounds-upper | ratio | p-ineq | transform")
      ->required()
      ->check(CLI::IsMember({"oracle", "bijection", "bounds-lower", "bounds-upper", "ratio", "p-ineq", "transform"}));
  v->add_option("--k", verify.k, "Arity")->required();
  v->add_option("--n-max", verify.n_max, "Largest node count");
  v->add_option("--dfa-states", verify.dfa_states, "Also compare DFA counts up to this many states (oracle scope)");
  v->add_option("--i-max", verify.i_max, "Last scanned column (bounds scopes)");
  v->add_option("--i0-limit", verify.i0_limit, "Largest acceptable threshold index (bounds scopes)");
  v->add_option("--eta", verify.eta, "Quartic coefficient (default 1.05 times its threshold)");
  v->add_option("--epsilon", verify.epsilon, "Range exponent offset");
  v->add_option("--threads", verify.threads, "Worker threads for sweeps (default: all cores)");
  v->add_option("--neighbours", verify.neighbours, "recurrence | swapped");
  v->add_option("--cubic", verify.cubic, "linear | squared");
  v->add_option("--quartic", verify.quartic, "ij | mn");
  v->add_flag("--json", verify.json, "Machine-readable report");

  ConvertOptions convert;
  auto* cv = app.add_subcommand("convert", "Convert between tree and path files");
  cv->add_option("--direction", convert.direction, "tree-to-path | path-to-tree")
      ->required()
      ->check(CLI::IsMember({"tree-to-path", "path-to-tree"}));
  cv->add_option("--input", convert.input, "Input file")->required();
  cv->add_option("--output", convert.output, "Output file (default stdout)");

  AsymOptions asym;
  auto* a = app.add_subcommand("asym", "Asymptotic diagnostics");
  a->require_subcommand(1);
  auto* ar = a->add_subcommand("ratio", "log rho_n = ln r - predictor");
  ar->add_option("--k", asym.k, "Arity")->required();
  ar->add_option("--n-grid", asym.grid, "Comma separated node counts");
  ar->add_option("--route", asym.route, "exact | scaled | auto")->check(CLI::IsMember({"exact", "scaled", "auto"}));
  auto* ab = a->add_subcommand("bounds", "Bound-sequence threshold report");
  ab->add_option("--k", asym.k, "Arity");
  ab->add_option("--ks", asym.ks, "Comma separated arities (overrides --k)");
  ab->add_option("--side", asym.side, "lower | upper | both")->check(CLI::IsMember({"lower", "upper", "both"}));
  ab->add_option("--i-max", asym.i_max, "Last scanned column");
  ab->add_option("--eta", asym.eta, "Quartic coefficient (default 1.05 times its threshold)");
  ab->add_option("--epsilon", asym.epsilon, "Range exponent offset");
  ab->add_option("--threads", asym.threads, "Worker threads (default: all cores)");
  auto* ap = a->add_subcommand("profile", "Airy profile fit of one column");
  ap->add_option("--k", asym.k, "Arity")->required();
  ap->add_option("--i", asym.column, "Column index (>= 100)");
  ap->add_flag("--summary", asym.summary, "Print only the fitted scale and deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_count(count);
    if (v->parsed()) return run_verify(verify);
    if (cv->parsed()) return run_convert(convert);
    if (ar->parsed()) return run_asym_ratio(asym);
    if (ab->parsed()) return run_asym_bounds(asym);
    if (ap->parsed()) return run_asym_profile(asym);
  } catch (const rt::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
