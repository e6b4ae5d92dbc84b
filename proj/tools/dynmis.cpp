#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dynmis/dynmis.hpp"

namespace {

using namespace dynmis;

struct instance_options {
  std::string input;
  std::string format;
  bool weighted = false;
  std::optional<std::uint64_t> weight_seed;
};

struct algo_options {
  std::string algo = "one-strong";
  std::optional<std::size_t> depth;
  std::optional<std::size_t> numax;
  std::optional<double> delta;
  std::optional<std::size_t> rare_x;
  std::optional<double> tlimit;
  std::optional<bool> prune;
  std::optional<bool> pinch;
  std::uint64_t seed = 1;
};

struct instance {
  std::string name;
  dynamic_graph start;
  edit_sequence sequence;
};

// METIS files become insertion sequences on the edgeless graph. Weights:
// 1 in cardinality mode; in weighted mode the file's vertex weights when
// present and no --weight-seed is given, otherwise uniform [1, 100].
instance load(const instance_options& opt) {
  if (!std::filesystem::exists(opt.input)) throw std::invalid_argument("no such file: " + opt.input);
  io::loaded_instance loaded = io::load_instance(opt.input, opt.format);
  if (loaded.dropped > 0) std::cerr << "warning: dropped or repaired " << loaded.dropped << " adjacency entries\n";
  instance out;
  out.name = std::filesystem::path(opt.input).stem().string();
  out.sequence = std::move(loaded.sequence);
  const std::size_t n = out.sequence.n;
  std::vector<std::int64_t> weights(n, 1);
  if (opt.weighted) {
    if (!loaded.vertex_weights.empty() && !opt.weight_seed) {
      weights = std::move(loaded.vertex_weights);
    } else {
      weights = io::assign_random_weights(n, opt.weight_seed.value_or(0));
    }
  }
  out.start = dynamic_graph(n, std::move(weights));
  return out;
}

config make_config(const algo_options& opt, bool weighted) {
  const bool custom = opt.algo == "one-custom";
  const bool tuned = opt.depth || opt.numax || opt.delta || opt.rare_x || opt.prune || opt.pinch;
  if (tuned && !custom) throw std::invalid_argument("--d/--numax/--delta/--rare-x/--prune/--pinch need --algo one-custom");
  config cfg;
  if (opt.algo == "greedy") {
    cfg = config::greedy_only();
  } else if (opt.algo == "deggreedy") {
    cfg = config::deg_greedy_only();
  } else if (opt.algo == "one-fast") {
    cfg = config::one_fast();
  } else {
    cfg = config::one_strong();
  }
  if (opt.tlimit) {
    if (!cfg.exploration) throw std::invalid_argument("--tlimit has no effect with a greedy-only algorithm");
    if (!(*opt.tlimit > 0)) throw std::invalid_argument("--tlimit must be positive");
    cfg.solver_time_limit = std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(*opt.tlimit));
  }
  if (custom) {
    if (opt.depth) cfg.depth = *opt.depth;
    if (opt.numax) cfg.max_size = *opt.numax;
    if (opt.delta) cfg.pinch_factor = *opt.delta;
    if (opt.pinch) cfg.pinch = *opt.pinch;
    if (opt.prune) cfg.prune = *opt.prune;
    if (opt.rare_x) {
      cfg.rare = *opt.rare_x > 1;
      cfg.rare_period = std::max<std::size_t>(*opt.rare_x, 1);
    }
  }
  cfg.weighting = weighted ? mode::weighted : mode::cardinality;
  cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

void add_instance_flags(CLI::App* cmd, instance_options& opt) {
  cmd->add_option("--input", opt.input, "graph (.graph, METIS) or edit sequence (.seq)")->required();
  cmd->add_option("--format", opt.format, "input format")->check(CLI::IsMember({"metis", "seq"}));
  cmd->add_flag("--weighted", opt.weighted, "maximize weight instead of cardinality");
  cmd->add_option("--weight-seed", opt.weight_seed, "seed for uniform [1,100] vertex weights");
}

void add_algo_flags(CLI::App* cmd, algo_options& opt) {
  cmd->add_option("--algo", opt.algo, "algorithm")
      ->check(CLI::IsMember({"greedy", "deggreedy", "one-fast", "one-strong", "one-custom"}));
  cmd->add_option("--d", opt.depth, "BFS depth");
  cmd->add_option("--numax", opt.numax, "subproblem size cap");
  cmd->add_option("--delta", opt.delta, "pinch factor (> 1)");
  cmd->add_option("--rare-x", opt.rare_x, "solve every x-th eligible update (1 = every one)");
  cmd->add_option("--prune", opt.prune, "skip solving when greedy adds a vertex (true/false)");
  cmd->add_option("--pinch", opt.pinch, "drop high-degree non-solution vertices (true/false)");
  cmd->add_option("--tlimit", opt.tlimit, "solver time limit per subproblem in seconds");
  cmd->add_option("--seed", opt.seed, "RNG seed for tie-breaking");
}

struct run_summary {
  std::uint64_t seed = 0;
  std::int64_t weight = 0;
  std::size_t cardinality = 0;
  std::size_t updates = 0;
  std::size_t obsolete = 0;
  std::size_t solves = 0;
  std::size_t timeouts = 0;
  double seconds = 0;
  std::string csv;  // only filled when requested
};

run_summary run_once(const instance& inst, config cfg, bool want_csv, bool timing) {
  run_result r = run_sequence(inst.start, inst.sequence, cfg);
  run_summary s;
  s.seed = cfg.seed;
  s.weight = r.solution.total_weight();
  s.cardinality = r.solution.cardinality();
  s.updates = r.trace.size();
  s.obsolete = r.obsolete_count;
  for (const auto& u : r.trace) {
    s.solves += u.solved ? 1 : 0;
    s.timeouts += (u.solved && !u.solver_optimal) ? 1 : 0;
  }
  s.seconds = std::chrono::duration<double>(r.total_update_time).count();
  if (want_csv) {
    std::ostringstream csv;
    io::write_csv(csv, r.trace, timing);
    s.csv = csv.str();
  }
  return s;
}

void print_summary(std::ostream& out, const run_summary& s) {
  out << "seed " << s.seed << '\n'
      << "final_weight " << s.weight << '\n'
      << "final_cardinality " << s.cardinality << '\n'
      << "updates " << s.updates << '\n'
      << "obsolete " << s.obsolete << '\n'
      << "solves " << s.solves << '\n'
      << "solver_timeouts " << s.timeouts << '\n'
      << std::setprecision(6) << "total_update_time_s " << s.seconds << '\n'
      << "mean_update_time_us " << (s.updates ? 1e6 * s.seconds / static_cast<double>(s.updates) : 0.0) << '\n';
}

int cmd_run(const instance_options& iopt, const algo_options& aopt, const std::string& csv_path, bool trace,
            bool no_timing, std::size_t repeat, std::size_t jobs) {
  const instance inst = load(iopt);
  const config base = make_config(aopt, iopt.weighted);
  if (repeat == 0) throw std::invalid_argument("--repeat must be >= 1");
  if (repeat > 1 && (!csv_path.empty() || trace)) throw std::invalid_argument("--csv/--trace need --repeat 1");
  const bool want_csv = !csv_path.empty() || trace;

  std::vector<run_summary> results(repeat);
  std::atomic<std::size_t> next{0};
  std::mutex failure_lock;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < repeat;) {
      try {
        config cfg = base;
        cfg.seed = base.seed + i;
        results[i] = run_once(inst, cfg, want_csv, !no_timing);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, repeat); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::cout << "instance " << inst.name << '\n'
            << "vertices " << inst.sequence.n << '\n'
            << "algo " << aopt.algo << '\n'
            << "mode " << (iopt.weighted ? "weighted" : "cardinality") << '\n';
  for (const auto& s : results) print_summary(std::cout, s);
  if (repeat > 1) {
    double w = 0, c = 0, t = 0;
    for (const auto& s : results) {
      w += static_cast<double>(s.weight);
      c += static_cast<double>(s.cardinality);
      t += s.seconds;
    }
    const double k = static_cast<double>(repeat);
    std::cout << "mean_final_weight " << w / k << '\n'
              << "mean_final_cardinality " << c / k << '\n'
              << "mean_total_update_time_s " << t / k << '\n';
  }
  if (trace) std::cout << results.front().csv;
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << results.front().csv;
  }
  return 0;
}

int cmd_verify(const instance_options& iopt, const algo_options& aopt, std::size_t every) {
  if (every == 0) throw std::invalid_argument("--every must be >= 1");
  const instance inst = load(iopt);
  const config cfg = make_config(aopt, iopt.weighted);
  std::size_t audits = 0;
  std::string problem;
  run_sequence(inst.start, inst.sequence, cfg, [&](const auto& engine, const auto& stats) {
    if (!problem.empty() || stats.update_index % every != 0) return;
    ++audits;
    problem = engine.solution().audit(engine.graph());
    if (problem.empty() && !engine.solution().is_maximal()) problem = "solution is not maximal";
    if (!problem.empty()) problem = "update " + std::to_string(stats.update_index) + ": " + problem;
  });
  if (!problem.empty()) {
    std::cout << "FAIL " << problem << '\n';
    return 1;
  }
  std::cout << "ok " << audits << " audits\n";
  return 0;
}

int cmd_oracle(const instance_options& iopt) {
  const instance inst = load(iopt);
  if (inst.sequence.n > oracle::max_vertices) {
    throw std::invalid_argument("oracle handles at most " + std::to_string(oracle::max_vertices) + " vertices");
  }
  dynamic_graph g = inst.start;
  for (const edit_event& e : inst.sequence.events) {
    if (e.kind == update_kind::insert) g.insert_edge(e.u, e.v);
    else g.delete_edge(e.u, e.v);
  }
  const auto best = oracle::brute_force_mwis(g);
  std::cout << "weight " << best.weight << '\n' << "cardinality " << best.set.size() << '\n' << "set";
  for (vertex_id v : best.set) std::cout << ' ' << v;
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic maximal (weight) independent sets"};
  app.require_subcommand(1);

  instance_options run_inst, verify_inst, oracle_inst;
  algo_options run_algo, verify_algo;
  std::string csv_path;
  bool trace = false;
  bool no_timing = false;
  std::size_t repeat = 1;
  std::size_t jobs = 1;
  std::size_t every = 1;

  CLI::App* run = app.add_subcommand("run", "replay an instance and report the final solution");
  add_instance_flags(run, run_inst);
  add_algo_flags(run, run_algo);
  run->add_option("--csv", csv_path, "write one row per applied update");
  run->add_flag("--trace", trace, "print the per-update rows to stdout");
  run->add_flag("--no-timing", no_timing, "leave the elapsed_ns column empty");
  run->add_option("--repeat", repeat, "run seeds seed..seed+k-1");
  run->add_option("--jobs", jobs, "threads for --repeat");

  CLI::App* verify = app.add_subcommand("verify", "replay and audit the solution every k updates");
  add_instance_flags(verify, verify_inst);
  add_algo_flags(verify, verify_algo);
  verify->add_option("--every", every, "audit interval");

  CLI::App* orc = app.add_subcommand("oracle", "exact optimum of the final graph by brute force");
  add_instance_flags(orc, oracle_inst);

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(run_inst, run_algo, csv_path, trace, no_timing, repeat, jobs);
    if (verify->parsed()) return cmd_verify(verify_inst, verify_algo, every);
    return cmd_oracle(oracle_inst);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
