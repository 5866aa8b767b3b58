// ksp: command-line front end over the C API.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ksp/ksp.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerify = 2, kBudget = 3 };

struct Failure {
  int code;
};

int exit_for(ksp_status s) {
  switch (s) {
    case KSP_OK: return kOk;
    case KSP_ERR_VERIFICATION: return kVerify;
    case KSP_ERR_BUDGET:
    case KSP_ERR_SIZE_LIMIT: return kBudget;
    default: return kUsage;
  }
}

// Prints the error and unwinds to main.
void check(ksp_status s, const std::string& what) {
  if (s == KSP_OK) return;
  std::cerr << "ksp: " << what << ": " << ksp_status_name(s) << ": "
            << ksp_last_error() << "\n";
  throw Failure{exit_for(s)};
}

struct FamilyDel { void operator()(ksp_family* f) const { ksp_family_free(f); } };
struct ResultDel { void operator()(ksp_result* r) const { ksp_result_free(r); } };
struct ReductionDel { void operator()(ksp_reduction* r) const { ksp_reduction_free(r); } };
struct MgraphDel { void operator()(ksp_mgraph* g) const { ksp_mgraph_free(g); } };
struct TreeDel { void operator()(ksp_tree* t) const { ksp_tree_free(t); } };
using Family = std::unique_ptr<ksp_family, FamilyDel>;
using Result = std::unique_ptr<ksp_result, ResultDel>;

Family load_family(const std::string& path) {
  ksp_family* f = nullptr;
  check(ksp_family_read(path.c_str(), &f), "reading " + path);
  return Family(f);
}

const std::map<std::string, ksp_mode> kModes{{"greedy", KSP_MODE_GREEDY},
                                             {"exact", KSP_MODE_EXACT},
                                             {"swap", KSP_MODE_SWAP},
                                             {"pwls", KSP_MODE_PWLS}};

struct SolveArgs {
  std::string mode = "greedy";
  int r = 2;
  int pw = 1;
  std::int64_t trials = 0;
  double delta = 0.01;
  std::uint64_t seed = 0;
  double budget = 0.0;
  std::int64_t cap = 0;

  ksp_solve_options options() const {
    ksp_solve_options o;
    ksp_solve_options_init(&o);
    o.mode = kModes.at(mode);
    o.r = r;
    o.pw = pw;
    o.trials = trials;
    o.delta = delta;
    o.seed = seed;
    o.budget_seconds = budget;
    o.iteration_cap = cap;
    return o;
  }
};

void add_solve_flags(CLI::App* app, SolveArgs& a, bool with_mode) {
  if (with_mode)
    app->add_option("--mode", a.mode, "greedy, exact, swap or pwls")
        ->check(CLI::IsMember({"greedy", "exact", "swap", "pwls"}));
  app->add_option("--r", a.r, "largest swap size")->check(CLI::PositiveNumber);
  app->add_option("--pw", a.pw, "pathwidth bound (pwls)")->check(CLI::NonNegativeNumber);
  app->add_option("--trials", a.trials, "coloring trials per swap size, 0 derives from --delta")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--delta", a.delta, "failure probability per search")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--seed", a.seed, "random seed");
  app->add_option("--budget", a.budget, "time budget in seconds, 0 is unlimited")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--max-swaps", a.cap, "stop after this many swaps, 0 is unlimited")
      ->check(CLI::NonNegativeNumber);
}

int run_solve(const std::string& path, const SolveArgs& a, std::string cert,
              const std::string& trace) {
  auto fam = load_family(path);
  auto opts = a.options();
  ksp_result* raw = nullptr;
  check(ksp_solve(fam.get(), &opts, &raw), "solving " + path);
  Result res(raw);
  if (cert.empty()) cert = path + ".cert";
  check(ksp_result_write_certificate(res.get(), cert.c_str()), "writing " + cert);
  if (!trace.empty())
    check(ksp_result_write_trace(res.get(), trace.c_str()), "writing " + trace);
  const bool budget = ksp_result_budget_terminated(res.get());
  std::cout << "size " << ksp_result_size(res.get()) << "\n"
            << "start " << ksp_result_start_size(res.get()) << "\n"
            << "swaps " << ksp_result_num_swaps(res.get()) << "\n"
            << "trials " << ksp_result_trials(res.get()) << "\n"
            << "status " << (budget ? "budget" : "ok") << "\n"
            << "certificate " << cert << "\n";
  return kOk;
}

int run_gen(const std::string& kind, const std::vector<long long>& p,
            std::uint64_t seed, const std::string& out) {
  auto need = [&](std::size_t n, const char* usage) {
    if (p.size() != n) {
      std::cerr << "ksp: gen " << kind << " expects " << usage << "\n";
      throw Failure{kUsage};
    }
  };
  if (kind == "mgraph") {
    need(2, "<n> <gamma>");
    ksp_mgraph* g = nullptr;
    check(ksp_mgraph_random(static_cast<int>(p[0]), static_cast<int>(p[1]), seed, &g),
          "generating");
    std::unique_ptr<ksp_mgraph, MgraphDel> hold(g);
    check(ksp_mgraph_write(g, out.c_str()), "writing " + out);
    std::cout << "vertices " << ksp_mgraph_num_vertices(g) << "\nedges "
              << ksp_mgraph_num_edges(g) << "\n";
    return kOk;
  }
  ksp_family* f = nullptr;
  int planted = -1;
  if (kind == "random") {
    need(3, "<n_elements> <n_sets> <k>");
    check(ksp_family_gen_random(static_cast<int>(p[0]), static_cast<int>(p[1]),
                                static_cast<int>(p[2]), seed, &f),
          "generating");
  } else {
    need(2, "<m> <noise>");
    check(ksp_family_gen_3dm(static_cast<int>(p[0]), static_cast<int>(p[1]), seed, &f,
                             &planted),
          "generating");
  }
  Family hold(f);
  check(ksp_family_write(f, out.c_str()), "writing " + out);
  std::cout << "elements " << ksp_family_num_elements(f) << "\nsets "
            << ksp_family_num_sets(f) << "\n";
  if (planted >= 0) std::cout << "planted " << planted << "\n";
  return kOk;
}

int run_reduce(const std::string& graph, const std::string& out, const std::string& map) {
  ksp_reduction* raw = nullptr;
  check(ksp_reduction_from_mcc(graph.c_str(), &raw), "reducing " + graph);
  std::unique_ptr<ksp_reduction, ReductionDel> red(raw);
  const ksp_family* f = ksp_reduction_family(raw);
  check(ksp_family_write(f, out.c_str()), "writing " + out);
  if (!map.empty()) check(ksp_reduction_write_map(raw, map.c_str()), "writing " + map);
  std::cout << "elements " << ksp_family_num_elements(f) << "\n"
            << "sets " << ksp_family_num_sets(f) << "\n"
            << "f0 " << ksp_reduction_f0_size(raw) << "\n"
            << "k " << ksp_reduction_padded_k(raw) << "\n"
            << "perfect " << ksp_family_num_elements(f) / 3 << "\n";
  return kOk;
}

int run_tree(const std::string& graph, const std::string& out) {
  ksp_mgraph* g = nullptr;
  check(ksp_mgraph_read(graph.c_str(), &g), "reading " + graph);
  std::unique_ptr<ksp_mgraph, MgraphDel> hold(g);
  ksp_tree* t = nullptr;
  check(ksp_tree_find(g, &t), "searching " + graph);
  std::unique_ptr<ksp_tree, TreeDel> tree(t);
  if (!out.empty()) check(ksp_tree_write(t, out.c_str()), "writing " + out);
  ksp_tree_report rep;
  check(ksp_tree_report_get(t, &rep), "report");
  std::cout << "vertices " << rep.vertices << " (limit " << rep.vertex_limit << ")\n"
            << "edges " << rep.edges << "\n"
            << "beta " << rep.beta << "\n"
            << "width " << rep.width << " (limit " << rep.width_limit << ")\n"
            << "checks " << (rep.checks_passed ? "ok" : "failed") << "\n";
  return rep.checks_passed ? kOk : kVerify;
}

int run_verify(const std::string& what, const std::vector<std::string>& files,
               double budget) {
  auto need = [&](std::size_t lo, std::size_t hi, const char* usage) {
    if (files.size() < lo || files.size() > hi) {
      std::cerr << "ksp: verify " << what << " expects " << usage << "\n";
      throw Failure{kUsage};
    }
  };
  if (what == "packing") {
    need(2, 2, "<instance> <certificate>");
    auto fam = load_family(files[0]);
    int size = 0;
    check(ksp_verify_certificate(fam.get(), files[1].c_str(), &size), "verifying " + files[1]);
    std::cout << "valid packing of size " << size << "\n";
  } else if (what == "trace") {
    need(2, 3, "<instance> <trace> [certificate]");
    auto fam = load_family(files[0]);
    check(ksp_verify_trace(fam.get(), files[1].c_str(),
                           files.size() == 3 ? files[2].c_str() : nullptr),
          "verifying " + files[1]);
    std::cout << "trace replays\n";
  } else if (what == "cert-tree") {
    need(2, 2, "<mgraph> <certificate>");
    ksp_mgraph* g = nullptr;
    check(ksp_mgraph_read(files[0].c_str(), &g), "reading " + files[0]);
    std::unique_ptr<ksp_mgraph, MgraphDel> hold(g);
    check(ksp_tree_verify(g, files[1].c_str()), "verifying " + files[1]);
    std::cout << "certificate valid\n";
  } else {
    need(1, 1, "<graph file>");
    ksp_reduction_report rep{};
    auto s = ksp_check_reduction(files[0].c_str(), budget, &rep);
    if (s == KSP_OK || s == KSP_ERR_VERIFICATION || s == KSP_ERR_BUDGET)
      std::cout << "elements " << rep.universe << "\nsets " << rep.sets << "\nf0 "
                << rep.f0_size << "\nk " << rep.padded_k << "\ncliques " << rep.cliques
                << "\nwitnesses_ok " << rep.witnesses_ok << "\nmax_symmetric_difference "
                << rep.max_symmetric_difference << "\noptimum " << rep.optimum
                << (rep.exact_finished ? "" : " (not proven)") << "\nperfect "
                << (rep.perfect ? "yes" : "no") << "\n";
    check(s, "verifying reduction of " + files[0]);
    std::cout << "reduction consistent\n";
  }
  return kOk;
}

std::vector<std::string> split_modes(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string m;
  while (std::getline(ss, m, ','))
    if (!m.empty()) out.push_back(m);
  return out;
}

int run_bench(const std::string& dir, const std::string& modes_arg, const SolveArgs& a,
              double exact_budget) {
  auto modes = split_modes(modes_arg);
  for (const auto& m : modes)
    if (!kModes.count(m)) {
      std::cerr << "ksp: unknown mode " << m << "\n";
      return kUsage;
    }
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << "ksp: not a directory: " << dir << "\n";
    return kUsage;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".sp") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::cout << "instance,mode,size,optimum_or_bound,reference,ratio,wall_time_s,seed,status\n";
  char buf[64];
  for (const auto& path : files) {
    auto fam = load_family(path.string());
    int opt = 0, finished = 0;
    check(ksp_exact_size(fam.get(), exact_budget, &opt, &finished), "exact " + path.string());
    if (!finished) {
      // Every set has at least one element, and no more sets than elements
      // over the smallest set size can be disjoint.
      int smallest = ksp_family_k(fam.get());
      for (int s = 0; s < ksp_family_num_sets(fam.get()); ++s)
        smallest = std::max(1, std::min(smallest, ksp_family_set(fam.get(), s, nullptr, 0)));
      opt = std::min(ksp_family_num_sets(fam.get()),
                     ksp_family_num_elements(fam.get()) / smallest);
    }
    for (const auto& m : modes) {
      SolveArgs b = a;
      b.mode = m;
      auto opts = b.options();
      ksp_result* raw = nullptr;
      const auto t0 = std::chrono::steady_clock::now();
      check(ksp_solve(fam.get(), &opts, &raw), "solving " + path.string());
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      Result res(raw);
      const int size = ksp_result_size(res.get());
      std::string ratio = "inf";
      if (size > 0) {
        std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(opt) / size);
        ratio = buf;
      } else if (opt == 0) {
        ratio = "1.000000";
      }
      std::snprintf(buf, sizeof buf, "%.6f", secs);
      std::cout << path.filename().string() << ',' << m << ',' << size << ',' << opt << ','
                << (finished ? "exact" : "bound") << ',' << ratio << ',' << buf << ','
                << a.seed << ',' << (ksp_result_budget_terminated(res.get()) ? "budget" : "ok")
                << "\n";
    }
  }
  return kOk;
}

int run_suggest(int k, double eps, int n_sets) {
  ksp_parameters p;
  check(ksp_suggest_parameters(k, eps, n_sets, &p), "suggesting parameters");
  std::cout << "r " << p.r << "\npw " << p.pw << "\n";
  if (p.warning[0]) std::cout << "warning " << p.warning << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-Set Packing toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  std::string instance, cert_out, trace_out;
  auto* solve = app.add_subcommand("solve", "solve an instance and write a certificate");
  solve->add_option("instance", instance, "instance file")->required();
  add_solve_flags(solve, solve_args, true);
  solve->add_option("-o,--output", cert_out, "certificate file (default <instance>.cert)");
  solve->add_option("--trace", trace_out, "write the applied swaps here");

  std::string gen_kind, gen_out;
  std::vector<long long> gen_params;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("kind", gen_kind, "random <n> <sets> <k> | 3dm <m> <noise> | mgraph <n> <gamma>")
      ->required()
      ->check(CLI::IsMember({"random", "3dm", "mgraph"}));
  gen->add_option("params", gen_params, "numeric parameters")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("-o,--output", gen_out, "output file")->required();

  std::string red_kind, red_graph, red_out, red_map;
  auto* reduce = app.add_subcommand("reduce", "reduce a colored graph to 3-set packing");
  reduce->add_option("kind", red_kind)->required()->check(CLI::IsMember({"mcc"}));
  reduce->add_option("graph", red_graph, "colored graph file")->required();
  reduce->add_option("-o,--output", red_out, "instance file")->required();
  reduce->add_option("--map", red_map, "element name map file");

  std::string tree_graph, tree_out;
  auto* tree = app.add_subcommand("tree", "find a bounded tree with two extra edges");
  tree->add_option("mgraph", tree_graph, "labeled multigraph file")->required();
  tree->add_option("-o,--output", tree_out, "certificate file");

  std::string verify_kind;
  std::vector<std::string> verify_files;
  double verify_budget = 60.0;
  auto* verify = app.add_subcommand("verify", "check a certificate or the reduction");
  verify->add_option("kind", verify_kind, "packing | trace | cert-tree | reduction")
      ->required()
      ->check(CLI::IsMember({"packing", "trace", "cert-tree", "reduction"}));
  verify->add_option("files", verify_files)->required();
  verify->add_option("--budget", verify_budget, "exact solver budget for reduction, seconds")
      ->check(CLI::NonNegativeNumber);

  std::string bench_dir, bench_modes = "greedy,swap,pwls";
  SolveArgs bench_args;
  double bench_exact = 10.0;
  auto* bench = app.add_subcommand("bench", "run modes over a directory of .sp files");
  bench->add_option("suite", bench_dir, "directory")->required();
  bench->add_option("--modes", bench_modes, "comma separated modes");
  add_solve_flags(bench, bench_args, false);
  bench->add_option("--exact-budget", bench_exact, "seconds for the reference optimum")
      ->check(CLI::NonNegativeNumber);

  int sg_k = 3, sg_n = 2;
  double sg_eps = 1.0;
  auto* suggest = app.add_subcommand("suggest", "analysis values for r and pw");
  suggest->add_option("k", sg_k)->required();
  suggest->add_option("eps", sg_eps)->required();
  suggest->add_option("n_sets", sg_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return run_solve(instance, solve_args, cert_out, trace_out);
    if (*gen) return run_gen(gen_kind, gen_params, gen_seed, gen_out);
    if (*reduce) return run_reduce(red_graph, red_out, red_map);
    if (*tree) return run_tree(tree_graph, tree_out);
    if (*verify) return run_verify(verify_kind, verify_files, verify_budget);
    if (*bench) return run_bench(bench_dir, bench_modes, bench_args, bench_exact);
    if (*suggest) return run_suggest(sg_k, sg_eps, sg_n);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
