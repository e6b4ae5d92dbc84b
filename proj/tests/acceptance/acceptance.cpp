// One line per criterion: "[Cn] PASS|FAIL|BLOCKED <summary>". Exit codes:
// 0 when nothing failed, 1 on any failure, 77 when a single requested
// criterion could not run for lack of input data.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynmis/dynmis.hpp"
#include "support/generators.hpp"

namespace {

using namespace dynmis;
using seconds = std::chrono::duration<double>;

// Pinned tolerances and sizes.
constexpr std::size_t kC1Sequences = 500;
constexpr std::size_t kC1MaxN = 16;
constexpr double kC1Budget = 300.0;

constexpr std::size_t kC2Sequences = 200;
constexpr std::size_t kC2MaxN = 200;

constexpr std::size_t kC3Graphs = 1000;
constexpr std::size_t kC3MaxN = 20;
constexpr double kC3MinDensity = 0.05;
constexpr double kC3MaxDensity = 0.60;
constexpr double kC3Budget = 300.0;

constexpr std::size_t kAdd20Optimum = 1130;
constexpr std::size_t kAdd20Min = 1119;  // within 1% of the optimum
constexpr std::size_t kHaggleExact = 234;
constexpr std::size_t kSociopatternsExact = 118;
constexpr std::size_t kUkMin = 2170;

constexpr std::size_t kC5Seeds = 5;
constexpr std::size_t kC5MaxSize = 2500;
constexpr std::size_t kC5MaxDepth = 4;
constexpr double kC5InversionTolerance = 0.002;
constexpr std::size_t kC5AllowedInversions = 1;
constexpr double kC5MinGain = 0.03;

constexpr std::size_t kC6Depth = 10;
constexpr std::size_t kC6Seeds = 3;
constexpr double kC6MinPruneSaving = 0.10;
constexpr double kC6MaxPruneQualityChange = 0.002;
constexpr double kC6MaxRareQualityLoss = 0.01;
constexpr std::size_t kC6RarePeriod = 3;

constexpr std::uint64_t kC7WeightSeeds = 3;
constexpr double kC7MinAdvantage = 0.01;

enum class verdict { pass, fail, blocked };

struct report {
  verdict state = verdict::pass;
  std::string summary;
};

const char* label(verdict v) {
  switch (v) {
    case verdict::pass: return "PASS";
    case verdict::fail: return "FAIL";
    case verdict::blocked: return "BLOCKED";
  }
  return "?";
}

std::string fixed(double x, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

double since(std::chrono::steady_clock::time_point start) {
  return seconds(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- C1

report exhaustive_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  splitmix64 rng(0xC1);
  std::size_t exact = 0;
  std::string first_mismatch;
  for (std::size_t i = 0; i < kC1Sequences; ++i) {
    const std::size_t n = 1 + rng.below(kC1MaxN);
    const std::size_t length = n * (2 + rng.below(5));
    const double share = 0.55 + 0.3 * testgen::unit(rng);
    const edit_sequence seq = testgen::mixed_sequence(n, length, share, rng);
    const dynamic_graph g(n, testgen::weights(n, rng, true));
    config cfg = config::exhaustive(n);
    cfg.weighting = mode::weighted;
    cfg.seed = i;
    const run_result r = run_sequence(g, seq, cfg);
    const auto best = oracle::brute_force_mwis(r.graph);
    if (r.solution.total_weight() == best.weight) {
      ++exact;
    } else if (first_mismatch.empty()) {
      first_mismatch = "; first mismatch at sequence " + std::to_string(i) + ": " +
                       std::to_string(r.solution.total_weight()) + " vs " + std::to_string(best.weight);
    }
  }
  const double elapsed = since(start);
  report out;
  out.state = exact == kC1Sequences && elapsed < kC1Budget ? verdict::pass : verdict::fail;
  out.summary = "exhaustive configuration matches brute force on " + std::to_string(exact) + "/" +
                std::to_string(kC1Sequences) + " weighted sequences (n <= " + std::to_string(kC1MaxN) +
                ", exact) in " + fixed(elapsed) + " s (budget " + fixed(kC1Budget, 0) + " s)" + first_mismatch;
  return out;
}

// ---------------------------------------------------------------- C2

report invariant_suite() {
  const auto start = std::chrono::steady_clock::now();
  splitmix64 rng(0xC2);
  const std::pair<const char*, config> presets[] = {{"Greedy", config::greedy_only()},
                                                    {"DegGreedy", config::deg_greedy_only()},
                                                    {"DynamicOneFast", config::one_fast()},
                                                    {"DynamicOneStrong", config::one_strong()}};
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first;
  for (std::size_t i = 0; i < kC2Sequences; ++i) {
    const std::size_t n = 2 + rng.below(kC2MaxN - 1);
    const bool weighted = i % 2 == 1;
    const double share = 0.6 + 0.3 * testgen::unit(rng);
    const edit_sequence seq = testgen::mixed_sequence(n, 4 * n, share, rng);
    const dynamic_graph g(n, testgen::weights(n, rng, weighted));
    for (const auto& [name, preset] : presets) {
      config cfg = preset;
      cfg.weighting = weighted ? mode::weighted : mode::cardinality;
      cfg.seed = i;
      run_sequence(g, seq, cfg, [&](const dynamic_one& engine, const update_stats& stats) {
        ++checks;
        std::string problem = engine.solution().audit(engine.graph());
        const auto members = engine.solution().members();
        if (problem.empty() && !oracle::verify_independent(engine.graph(), members)) problem = "not independent";
        if (problem.empty() && !oracle::verify_maximal(engine.graph(), members)) problem = "not maximal";
        if (problem.empty()) return;
        ++violations;
        if (first.empty()) {
          first = std::string("; first: ") + name + " sequence " + std::to_string(i) + " update " +
                  std::to_string(stats.update_index) + ": " + problem;
        }
      });
    }
  }
  report out;
  out.state = violations == 0 ? verdict::pass : verdict::fail;
  out.summary = std::to_string(violations) + " violations in " + std::to_string(checks) +
                " post-update audits (independence, maximality, tight counts; " + std::to_string(kC2Sequences) +
                " sequences, n <= " + std::to_string(kC2MaxN) + ", 4 presets) in " + fixed(since(start)) + " s" +
                first;
  return out;
}

// ---------------------------------------------------------------- C3

report solver_exactness() {
  const auto start = std::chrono::steady_clock::now();
  splitmix64 rng(0xC3);
  std::size_t exact = 0;
  std::string first;
  for (std::size_t i = 0; i < kC3Graphs; ++i) {
    const std::size_t n = 1 + rng.below(kC3MaxN);
    const double p = kC3MinDensity + (kC3MaxDensity - kC3MinDensity) * testgen::unit(rng);
    const static_graph g = testgen::gnp(n, p, rng, i % 2 == 0);
    solver_options options;
    options.time_limit = clock::duration::max();
    const auto r = solve_mwis(g, std::span<const vertex_id>{}, options);
    const auto best = oracle::brute_force_mwis(g);
    const bool ok = r.proven_optimal && r.weight == best.weight && g.weight_of(r.set) == r.weight &&
                    oracle::verify_independent(g, r.set);
    if (ok) {
      ++exact;
    } else if (first.empty()) {
      first = "; first mismatch at graph " + std::to_string(i);
    }
  }
  const double elapsed = since(start);
  report out;
  out.state = exact == kC3Graphs && elapsed < kC3Budget ? verdict::pass : verdict::fail;
  out.summary = "solver matches brute force on " + std::to_string(exact) + "/" + std::to_string(kC3Graphs) +
                " graphs (n <= " + std::to_string(kC3MaxN) + ", density " + fixed(kC3MinDensity) + "-" +
                fixed(kC3MaxDensity) + ", half weighted) in " + fixed(elapsed) + " s (budget " +
                fixed(kC3Budget, 0) + " s)" + first;
  return out;
}

// ---------------------------------------------------------------- data

struct dataset {
  std::filesystem::path dir;

  // <dir>/<name>.seq, .graph or .metis, whichever exists first.
  std::optional<std::filesystem::path> find(const std::string& name) const {
    for (const char* ext : {".seq", ".graph", ".metis"}) {
      const auto path = dir / (name + ext);
      if (std::filesystem::exists(path)) return path;
    }
    return std::nullopt;
  }
};

struct loaded {
  std::size_t n = 0;
  edit_sequence sequence;
};

std::optional<loaded> load(const dataset& data, const std::string& name) {
  const auto path = data.find(name);
  if (!path) return std::nullopt;
  io::loaded_instance inst = io::load_instance(path->string());
  return loaded{inst.sequence.n, std::move(inst.sequence)};
}

struct run_point {
  std::size_t cardinality = 0;
  std::int64_t weight = 0;
  double seconds = 0;
};

run_point run(const loaded& inst, config cfg, std::optional<std::uint64_t> weight_seed = std::nullopt) {
  std::vector<std::int64_t> w(inst.n, 1);
  if (weight_seed) {
    w = io::assign_random_weights(inst.n, *weight_seed);
    cfg.weighting = mode::weighted;
  }
  const run_result r = run_sequence(dynamic_graph(inst.n, std::move(w)), inst.sequence, cfg);
  return {r.solution.cardinality(), r.solution.total_weight(), seconds(r.total_update_time).count()};
}

std::string missing(const dataset& data, const std::string& name) {
  return name + " not found in " + data.dir.string() + " (expects " + name + ".seq or " + name + ".graph)";
}

// Combines sub-results: any failure fails, otherwise any blocked part blocks.
struct tally {
  bool failed = false;
  bool blocked = false;
  std::vector<std::string> parts;

  void add(verdict v, std::string text) {
    failed = failed || v == verdict::fail;
    blocked = blocked || v == verdict::blocked;
    parts.push_back(std::string(label(v)) + " " + std::move(text));
  }

  report finish(const std::string& title) const {
    report out;
    out.state = failed ? verdict::fail : (blocked ? verdict::blocked : verdict::pass);
    out.summary = title;
    for (const auto& p : parts) out.summary += "\n      " + p;
    return out;
  }
};

// ---------------------------------------------------------------- C4

report reference_numbers(const dataset& data) {
  tally t;
  if (auto add20 = load(data, "add20")) {
    const run_point p = run(*add20, config::one_strong());
    t.add(p.cardinality >= kAdd20Min ? verdict::pass : verdict::fail,
          "add20 DynamicOneStrong cardinality " + std::to_string(p.cardinality) + " (need >= " +
              std::to_string(kAdd20Min) + ", optimum " + std::to_string(kAdd20Optimum) + ")");
  } else {
    t.add(verdict::blocked, missing(data, "add20"));
  }

  if (auto haggle = load(data, "haggle")) {
    const std::pair<const char*, config> algos[] = {{"Greedy", config::greedy_only()},
                                                    {"DegGreedy", config::deg_greedy_only()},
                                                    {"DynamicOneFast", config::one_fast()},
                                                    {"DynamicOneStrong", config::one_strong()}};
    for (const auto& [name, cfg] : algos) {
      const run_point p = run(*haggle, cfg);
      t.add(p.cardinality == kHaggleExact ? verdict::pass : verdict::fail,
            std::string("haggle ") + name + " cardinality " + std::to_string(p.cardinality) + " (need exactly " +
                std::to_string(kHaggleExact) + ")");
    }
  } else {
    t.add(verdict::blocked, missing(data, "haggle"));
  }

  if (auto socio = load(data, "sociopatterns-infections")) {
    const run_point p = run(*socio, config::one_strong());
    t.add(p.cardinality == kSociopatternsExact ? verdict::pass : verdict::fail,
          "sociopatterns-infections DynamicOneStrong cardinality " + std::to_string(p.cardinality) +
              " (need exactly " + std::to_string(kSociopatternsExact) + ")");
  } else {
    t.add(verdict::blocked, missing(data, "sociopatterns-infections"));
  }

  if (auto uk = load(data, "uk")) {
    const run_point p = run(*uk, config::one_strong());
    t.add(p.cardinality >= kUkMin ? verdict::pass : verdict::fail,
          "uk DynamicOneStrong cardinality " + std::to_string(p.cardinality) + " (need >= " + std::to_string(kUkMin) +
              ")");
  } else {
    t.add(verdict::blocked, missing(data, "uk"));
  }
  return t.finish("final cardinalities on insertion sequences of public instances");
}

// ---------------------------------------------------------------- C5

config exploration_only(std::size_t depth, std::size_t max_size) {
  config cfg = config::one_strong();
  cfg.depth = depth;
  cfg.max_size = max_size;
  cfg.pinch = false;
  cfg.prune = false;
  cfg.rare = false;
  return cfg;
}

report depth_trend(const dataset& data) {
  tally t;
  const auto uk = load(data, "uk");
  if (!uk) {
    t.add(verdict::blocked, missing(data, "uk"));
    return t.finish("mean cardinality over depth d = 0..4 on uk");
  }
  std::vector<double> mean(kC5MaxDepth + 1, 0.0);
  for (std::size_t d = 0; d <= kC5MaxDepth; ++d) {
    for (std::uint64_t seed = 1; seed <= kC5Seeds; ++seed) {
      config cfg = exploration_only(d, kC5MaxSize);
      cfg.seed = seed;
      mean[d] += static_cast<double>(run(*uk, cfg).cardinality);
    }
    mean[d] /= static_cast<double>(kC5Seeds);
  }
  std::size_t inversions = 0;
  bool large_inversion = false;
  std::string series;
  for (std::size_t d = 0; d <= kC5MaxDepth; ++d) {
    series += (d ? ", " : "") + std::string("d=") + std::to_string(d) + ": " + fixed(mean[d], 1);
    if (d > 0 && mean[d] < mean[d - 1]) {
      ++inversions;
      large_inversion = large_inversion || (mean[d - 1] - mean[d]) / mean[d - 1] > kC5InversionTolerance;
    }
  }
  const double gain = (mean[kC5MaxDepth] - mean[0]) / mean[0];
  t.add(inversions <= kC5AllowedInversions && !large_inversion ? verdict::pass : verdict::fail,
        "trend " + series + " (" + std::to_string(inversions) + " inversions, at most " +
            std::to_string(kC5AllowedInversions) + " of <= " + fixed(100 * kC5InversionTolerance, 1) + "% allowed)");
  t.add(gain >= kC5MinGain ? verdict::pass : verdict::fail,
        "d=4 over d=0: +" + fixed(100 * gain) + "% (need >= " + fixed(100 * kC5MinGain, 0) + "%)");
  return t.finish("mean cardinality over depth d = 0..4 on uk (nu_max " + std::to_string(kC5MaxSize) + ", " +
                  std::to_string(kC5Seeds) + " seeds)");
}

// ---------------------------------------------------------------- C6

report component_effects(const dataset& data) {
  tally t;
  const auto uk = load(data, "uk");
  if (!uk) {
    t.add(verdict::blocked, missing(data, "uk"));
    return t.finish("pruning and rare updates on uk");
  }
  auto total = [&](config cfg) {
    run_point sum;
    for (std::uint64_t seed = 1; seed <= kC6Seeds; ++seed) {
      cfg.seed = seed;
      const run_point p = run(*uk, cfg);
      sum.cardinality += p.cardinality;
      sum.seconds += p.seconds;
    }
    return sum;
  };
  config base = exploration_only(kC6Depth, config{}.max_size);
  const run_point off = total(base);
  base.prune = true;
  const run_point pruned = total(base);
  base.rare = true;
  base.rare_period = kC6RarePeriod;
  const run_point rare = total(base);

  const double saving = 1.0 - pruned.seconds / off.seconds;
  const double prune_change =
      std::abs(static_cast<double>(pruned.cardinality) - static_cast<double>(off.cardinality)) /
      static_cast<double>(off.cardinality);
  t.add(saving >= kC6MinPruneSaving ? verdict::pass : verdict::fail,
        "pruning time " + fixed(pruned.seconds) + " s vs " + fixed(off.seconds) + " s: -" + fixed(100 * saving, 1) +
            "% (need >= " + fixed(100 * kC6MinPruneSaving, 0) + "%)");
  t.add(prune_change <= kC6MaxPruneQualityChange ? verdict::pass : verdict::fail,
        "pruning quality change " + fixed(100 * prune_change, 3) + "% (need <= " +
            fixed(100 * kC6MaxPruneQualityChange, 1) + "%)");
  const double rare_loss = (static_cast<double>(pruned.cardinality) - static_cast<double>(rare.cardinality)) /
                           static_cast<double>(pruned.cardinality);
  t.add(rare.seconds < pruned.seconds ? verdict::pass : verdict::fail,
        "rare updates time " + fixed(rare.seconds) + " s vs " + fixed(pruned.seconds) + " s with pruning alone");
  t.add(rare_loss <= kC6MaxRareQualityLoss ? verdict::pass : verdict::fail,
        "rare updates quality loss " + fixed(100 * rare_loss, 3) + "% (need <= " +
            fixed(100 * kC6MaxRareQualityLoss, 0) + "%)");
  return t.finish("pruning and rare updates on uk (d = " + std::to_string(kC6Depth) + ", " +
                  std::to_string(kC6Seeds) + " seeds summed)");
}

// ---------------------------------------------------------------- C7

report weighted_mode(const dataset& data) {
  tally t;
  const auto add20 = load(data, "add20");
  if (!add20) {
    t.add(verdict::blocked, missing(data, "add20"));
    return t.finish("weighted DynamicOneStrong vs DegGreedy on add20");
  }
  double strong = 0, greedy = 0;
  for (std::uint64_t ws = 1; ws <= kC7WeightSeeds; ++ws) {
    strong += static_cast<double>(run(*add20, config::one_strong(), ws).weight);
    greedy += static_cast<double>(run(*add20, config::deg_greedy_only(), ws).weight);
  }
  const double advantage = strong / greedy - 1.0;
  t.add(advantage >= kC7MinAdvantage ? verdict::pass : verdict::fail,
        "mean weight " + fixed(strong / kC7WeightSeeds, 1) + " vs " + fixed(greedy / kC7WeightSeeds, 1) + ": +" +
            fixed(100 * advantage) + "% (need >= " + fixed(100 * kC7MinAdvantage, 0) + "%)");
  return t.finish("weighted DynamicOneStrong vs DegGreedy on add20 (uniform [1,100] weights, " +
                  std::to_string(kC7WeightSeeds) + " weight seeds)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string data_dir;
  if (const char* env = std::getenv("DYNMIS_DATA_DIR")) data_dir = env;
#ifdef DYNMIS_DEFAULT_DATA_DIR
  if (data_dir.empty()) data_dir = DYNMIS_DEFAULT_DATA_DIR;
#endif
  app.add_option("--criterion", only, "run a single criterion (1-7); 0 runs all")->check(CLI::Range(0, 7));
  app.add_option("--data", data_dir, "directory with benchmark instances");
  CLI11_PARSE(app, argc, argv);

  const dataset data{data_dir.empty() ? std::filesystem::path("data") : std::filesystem::path(data_dir)};
  const std::vector<std::pair<int, std::function<report()>>> criteria = {
      {1, exhaustive_equivalence},
      {2, invariant_suite},
      {3, solver_exactness},
      {4, [&] { return reference_numbers(data); }},
      {5, [&] { return depth_trend(data); }},
      {6, [&] { return component_effects(data); }},
      {7, [&] { return weighted_mode(data); }},
  };

  bool failed = false;
  bool blocked = false;
  for (const auto& [id, check] : criteria) {
    if (only != 0 && id != only) continue;
    report r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {verdict::fail, std::string("exception: ") + e.what()};
    }
    std::cout << "[C" << id << "] " << label(r.state) << "  " << r.summary << std::endl;
    failed = failed || r.state == verdict::fail;
    blocked = blocked || r.state == verdict::blocked;
  }
  if (failed) return 1;
  if (blocked && only != 0) return 77;
  return 0;
}
