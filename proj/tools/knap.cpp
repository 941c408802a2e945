// Command-line front end: solve, gen, verify, bench.
// Exit codes: 0 = OPT/YES (or verification passed), 1 = NO (or verification
// failed), 2 = input error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knap/bellman.hpp"
#include "knap/gen.hpp"
#include "knap/instance.hpp"
#include "knap/io.hpp"
#include "knap/knapsack.hpp"
#include "knap/subsetsum.hpp"
#include "knap/sumset.hpp"

namespace {

using namespace knap;

constexpr const char* kCsvHeader = "kind,n,s,u,t,algo,seed,micros,result";

i64 time_micros(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
}

/// Median-of-three timing, to keep bench rows stable.
i64 timed_median(const std::function<void()>& fn) {
  std::vector<i64> runs;
  for (int i = 0; i < 3; ++i) runs.push_back(time_micros(fn));
  std::sort(runs.begin(), runs.end());
  return runs[1];
}

int cmd_solve(const std::string& path, const std::string& algo, i64 budget) {
  const ParsedInstance parsed = parse_instance_file(path);
  if (parsed.kind == InstanceKind::kKnapsack) {
    const KnapsackInstance& inst = parsed.knapsack;
    SolutionVector sol;
    if (algo == "s3") {
      sol = solve_small_sizes(inst);
    } else if (algo == "v3") {
      sol = solve_small_values(inst);
    } else if (algo == "dp") {
      sol = bellman_oracle(inst, budget).recover(inst.capacity);
    } else if (algo == "s53") {
      throw InputError("--algo s53 applies to subsetsum instances");
    } else {
      sol = solve_knapsack(inst);
    }
    std::cout << print_solution(solution_file("OPT", sol));
    return 0;
  }
  const SubsetSumInstance& inst = parsed.subsetsum;
  SubsetSumResult res;
  if (algo == "dp") {
    const SumsetWithWitness table = bounded_subset_sums(inst.items, inst.target);
    if (table.contains(inst.target)) {
      res.yes = true;
      res.counts.assign(inst.items.size(), 0);
      for (const SumsetPart& p : recover_subset(table, inst.target))
        res.counts[static_cast<size_t>(p.item)] = p.count;
    }
  } else if (algo == "s3" || algo == "v3") {
    throw InputError("--algo " + algo + " applies to knapsack instances");
  } else {
    res = solve_subset_sum(inst);
  }
  if (!res.yes) {
    SolutionFile f;
    f.status = "NO";
    std::cout << print_solution(f);
    return 1;
  }
  KnapsackInstance view = as_knapsack(inst);
  std::cout << print_solution(solution_file("YES", make_solution(view, res.counts)));
  return 0;
}

int cmd_gen(const GenParams& params) {
  std::cout << print_instance(generate_instance(params));
  return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path,
               bool against_dp, i64 budget) {
  const ParsedInstance parsed = parse_instance_file(inst_path);
  const SolutionFile sol = parse_solution_file(sol_path);
  const i64 n = parsed.n();
  if (sol.status == "NO") {
    if (!sol.rows.empty()) {
      std::cerr << "NO solution carries item rows\n";
      return 1;
    }
    if (against_dp && parsed.kind == InstanceKind::kSubsetSum) {
      const SubsetSumInstance& inst = parsed.subsetsum;
      if (bounded_subset_sums(inst.items, inst.target).contains(inst.target)) {
        std::cerr << "dp found a subset sum but solution says NO\n";
        return 1;
      }
    }
    return 0;
  }
  const std::vector<i64> counts = sol.to_counts(n);
  VerifyReport rep;
  if (parsed.kind == InstanceKind::kKnapsack)
    rep = verify_solution(parsed.knapsack, make_solution(parsed.knapsack, counts));
  else
    rep = verify_solution(parsed.subsetsum, counts);
  if (!rep.feasible || rep.value != sol.value || rep.size != sol.size) {
    std::cerr << "solution does not verify\n";
    return 1;
  }
  if (against_dp && sol.status == "OPT" &&
      parsed.kind == InstanceKind::kKnapsack) {
    const i64 opt = bellman_oracle(parsed.knapsack, budget).optimum();
    if (opt != sol.value) {
      std::cerr << "dp optimum " << opt << " != claimed " << sol.value << '\n';
      return 1;
    }
  }
  return 0;
}

void bench_row(InstanceKind kind, i64 n, i64 s, i64 u, i64 t,
               const std::string& algo, u64 seed, i64 micros,
               const std::string& result) {
  std::cout << kind_name(kind) << ',' << n << ',' << s << ',' << u << ',' << t
            << ',' << algo << ',' << seed << ',' << micros << ',' << result
            << '\n';
}

int cmd_bench(const std::string& suite, u64 seed) {
  std::cout << kCsvHeader << '\n';
  if (suite == "t-independence") {
    GenParams p;
    p.kind = InstanceKind::kKnapsack;
    p.n = 500;
    p.max_size = 64;
    p.max_value = 64;
    p.max_mult = 1'000'000;
    p.seed = seed;
    for (i64 t : {i64{1'000'000}, i64{1'000'000'000}}) {
      ParsedInstance parsed = generate_instance(p);
      KnapsackInstance inst;
      {
        std::vector<Item> items = parsed.knapsack.items;
        inst = validate_and_normalize(std::move(items), t);
      }
      i64 value = 0;
      const i64 micros =
          timed_median([&] { value = solve_small_sizes(inst).total_value; });
      bench_row(p.kind, inst.n(), inst.max_size, inst.max_mult, t, "s3", seed,
                micros, std::to_string(value));
    }
    return 0;
  }
  if (suite == "s-scaling") {
    for (i64 s : {i64{32}, i64{64}, i64{128}}) {
      GenParams p;
      p.kind = InstanceKind::kKnapsack;
      p.n = 500;
      p.max_size = s;
      p.max_value = s;
      p.max_mult = 1'000'000;
      p.seed = seed;
      ParsedInstance parsed = generate_instance(p);
      KnapsackInstance inst;
      {
        std::vector<Item> items = parsed.knapsack.items;
        inst = validate_and_normalize(std::move(items), i64{1'000'000'000});
      }
      i64 value = 0;
      const i64 micros =
          timed_median([&] { value = solve_small_sizes(inst).total_value; });
      bench_row(p.kind, inst.n(), inst.max_size, inst.max_mult, inst.capacity,
                "s3", seed, micros, std::to_string(value));
    }
    return 0;
  }
  if (suite == "dense-vs-dp") {
    GenParams p;
    p.kind = InstanceKind::kSubsetSum;
    p.n = 6;
    p.max_size = 40;
    p.max_mult = 120;
    p.family = GenFamily::kClustered;
    p.t_mode = TMode::kFeasible;
    for (int i = 0; i < 5; ++i) {
      p.seed = seed + static_cast<u64>(i);
      const ParsedInstance parsed = generate_instance(p);
      const SubsetSumInstance& inst = parsed.subsetsum;
      SubsetSumConfig cfg;
      cfg.force_pipeline = true;
      bool yes = false;
      i64 micros = timed_median([&] { yes = solve_subset_sum(inst, cfg).yes; });
      bench_row(p.kind, inst.n(), inst.max_size, inst.max_mult, inst.target,
                "s53", p.seed, micros, yes ? "YES" : "NO");
      bool dp_yes = false;
      micros = timed_median([&] {
        dp_yes = bounded_subset_sums(inst.items, inst.target).contains(inst.target);
      });
      bench_row(p.kind, inst.n(), inst.max_size, inst.max_mult, inst.target,
                "dp", p.seed, micros, dp_yes ? "YES" : "NO");
    }
    return 0;
  }
  throw InputError("unknown suite: " + suite);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knapsack and Subset Sum solvers for small item sizes"};
  app.require_subcommand(1);

  std::string path, algo = "auto";
  i64 budget = BellmanProfile::kDefaultBudget;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("path", path, "instance file")->required();
  solve->add_option("--algo", algo, "auto|s3|v3|s53|dp")
      ->check(CLI::IsMember({"auto", "s3", "v3", "s53", "dp"}));
  solve->add_option("--budget", budget, "dp cell budget");

  GenParams gp;
  std::string gen_kind = "subsetsum", gen_family = "uniform", gen_tmode = "random";
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--kind", gen_kind, "knapsack|subsetsum")
      ->check(CLI::IsMember({"knapsack", "subsetsum"}));
  gen->add_option("-n", gp.n, "number of items");
  gen->add_option("-s", gp.max_size, "max item size");
  gen->add_option("-u", gp.max_mult, "max multiplicity");
  gen->add_option("-v", gp.max_value, "max item value (knapsack)");
  gen->add_option("--family", gen_family, "uniform|clustered|parity")
      ->check(CLI::IsMember({"uniform", "clustered", "parity"}));
  gen->add_option("--t-mode", gen_tmode, "random|feasible|half")
      ->check(CLI::IsMember({"random", "feasible", "half"}));
  gen->add_option("--seed", gp.seed, "rng seed");

  std::string inst_path, sol_path, against;
  CLI::App* verify = app.add_subcommand("verify", "verify a solution file");
  verify->add_option("instance", inst_path, "instance file")->required();
  verify->add_option("solution", sol_path, "solution file")->required();
  verify->add_option("--against", against, "recompute the optimum (dp)")
      ->check(CLI::IsMember({"dp"}));
  verify->add_option("--budget", budget, "dp cell budget");

  std::string suite;
  u64 bench_seed = 1;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite (CSV)");
  bench->add_option("--suite", suite, "s-scaling|t-independence|dense-vs-dp")
      ->required()
      ->check(CLI::IsMember({"s-scaling", "t-independence", "dense-vs-dp"}));
  bench->add_option("--seed", bench_seed, "rng seed");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(path, algo, budget);
    if (gen->parsed()) {
      gp.kind = gen_kind == "knapsack" ? InstanceKind::kKnapsack
                                       : InstanceKind::kSubsetSum;
      gp.family = gen_family == "uniform"     ? GenFamily::kUniform
                  : gen_family == "clustered" ? GenFamily::kClustered
                                              : GenFamily::kParity;
      gp.t_mode = gen_tmode == "random"     ? TMode::kRandom
                  : gen_tmode == "feasible" ? TMode::kFeasible
                                            : TMode::kHalf;
      return cmd_gen(gp);
    }
    if (verify->parsed())
      return cmd_verify(inst_path, sol_path, against == "dp", budget);
    if (bench->parsed()) return cmd_bench(suite, bench_seed);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
