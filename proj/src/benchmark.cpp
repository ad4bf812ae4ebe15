#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "sgframe/io_util.hpp"

#include "json.hpp"

#include "sgframe/bench.hpp"
#include "sgframe/error.hpp"
#include "sgframe/generators.hpp"
#include "sgframe/graph_io.hpp"
#include "sgframe/transform.hpp"

namespace sgf {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename T>
T value_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

Graph make_graph(const BenchGraphSpec& spec) {
  if (!spec.path.empty()) return load_graph(spec.path);
  if (spec.generator == "random-regular") return random_regular_graph(spec.n, spec.degree, spec.seed);
  if (spec.generator == "random-connected") {
    return random_connected_graph(spec.n, spec.edge_probability, spec.seed);
  }
  if (spec.generator == "grid") return grid_graph(spec.rows, spec.cols);
  if (spec.generator == "path") return path_graph(spec.n);
  if (spec.generator == "cycle") return cycle_graph(spec.n);
  throw InputError("graph '" + spec.name + "': unknown generator '" + spec.generator + "'");
}

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

} // namespace

BenchConfig parse_bench_config(const std::string& json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("bench config: expected an object");
  BenchConfig cfg;

  if (!doc.contains("graphs") || !doc["graphs"].is_array() || doc["graphs"].empty()) {
    throw ParseError("bench config: 'graphs' must be a non-empty array");
  }
  for (std::size_t i = 0; i < doc["graphs"].size(); ++i) {
    const std::string where = "graphs[" + std::to_string(i) + "]";
    const json& g = doc["graphs"][i];
    if (!g.is_object()) throw ParseError(where + ": expected an object");
    BenchGraphSpec spec;
    spec.path = value_or<std::string>(g, "path", "", where);
    spec.generator = value_or<std::string>(g, "generator", "", where);
    if (spec.path.empty() == spec.generator.empty()) {
      throw ParseError(where + ": give exactly one of 'path' or 'generator'");
    }
    if (!spec.path.empty() && !base_dir.empty() && std::filesystem::path(spec.path).is_relative()) {
      spec.path = (std::filesystem::path(base_dir) / spec.path).string();
    }
    spec.name = value_or<std::string>(g, "name", spec.path.empty() ? spec.generator : spec.path, where);
    spec.n = value_or<int>(g, "n", 0, where);
    spec.degree = value_or<int>(g, "degree", 4, where);
    spec.edge_probability = value_or<double>(g, "edge_probability", 0.05, where);
    spec.rows = value_or<int>(g, "rows", 0, where);
    spec.cols = value_or<int>(g, "cols", 0, where);
    spec.seed = value_or<std::uint64_t>(g, "seed", 1, where);
    spec.branching = value_or<int>(g, "branching", 2, where);
    spec.connected_clusters = value_or<bool>(g, "connected", true, where);
    cfg.graphs.push_back(std::move(spec));
  }

  const json variants = doc.value("variants", json::array({"haar"}));
  if (!variants.is_array() || variants.empty()) throw ParseError("bench config: 'variants' must be a non-empty array");
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const std::string where = "variants[" + std::to_string(i) + "]";
    BenchVariantSpec v;
    try {
      if (variants[i].is_string()) {
        v.variant = parse_variant(variants[i].get<std::string>());
      } else {
        v.variant = parse_variant(value_or<std::string>(variants[i], "variant", "", where));
        v.r_schedule = value_or<std::vector<int>>(variants[i], "r", {}, where);
        v.label = value_or<std::string>(variants[i], "label", "", where);
      }
    } catch (const InputError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (v.label.empty()) v.label = to_string(v.variant);
    cfg.variants.push_back(std::move(v));
  }

  const json signals = doc.value("signals", json::array({"piecewise-constant"}));
  if (!signals.is_array() || signals.empty()) throw ParseError("bench config: 'signals' must be a non-empty array");
  for (const auto& s : signals) {
    if (!s.is_string()) throw ParseError("bench config: signal kinds must be strings");
    try {
      cfg.signals.push_back(parse_signal_kind(s.get<std::string>()));
    } catch (const InputError& e) {
      throw ParseError(std::string("bench config: ") + e.what());
    }
  }

  const json ks = doc.value("K", json::array({0, "m"}));
  if (!ks.is_array() || ks.empty()) throw ParseError("bench config: 'K' must be a non-empty array");
  for (const auto& k : ks) {
    if (k.is_string() && k.get<std::string>() == "m") {
      cfg.K.push_back(-1);
    } else if (k.is_number_integer() && k.get<int>() >= 0) {
      cfg.K.push_back(k.get<int>());
    } else {
      throw ParseError("bench config: K entries must be nonnegative integers or \"m\"");
    }
  }

  cfg.seeds = value_or<std::vector<std::uint64_t>>(doc, "seeds", {1}, "config");
  if (cfg.seeds.empty()) throw ParseError("bench config: 'seeds' must not be empty");
  cfg.signal_options.bandlimited_modes = value_or<int>(doc, "bandlimited_modes", 5, "config");
  if (doc.contains("path_snr_db") && !doc["path_snr_db"].is_null()) {
    cfg.signal_options.path_snr_db = value_or<double>(doc, "path_snr_db", 0.0, "config");
  }
  cfg.record_timing = value_or<bool>(doc, "record_timing", true, "config");
  cfg.plot_dir = value_or<std::string>(doc, "plot_dir", "", "config");
  if (!cfg.plot_dir.empty() && !base_dir.empty() && std::filesystem::path(cfg.plot_dir).is_relative()) {
    cfg.plot_dir = (std::filesystem::path(base_dir) / cfg.plot_dir).string();
  }
  return cfg;
}

BenchResult run_benchmark(const BenchConfig& config) {
  BenchResult result;
  for (const auto& gspec : config.graphs) {
    const Graph g = make_graph(gspec);
    auto start = Clock::now();
    const PartitionTree tree =
        build_partition_tree(g, PartitionOptions{gspec.branching, gspec.connected_clusters});
    const double tree_ms = elapsed_ms(start);

    for (const auto& vspec : config.variants) {
      start = Clock::now();
      FilterBankOptions fopts;
      fopts.r_schedule = vspec.r_schedule;
      const FilterBanks banks = make_filterbanks(tree, vspec.variant, fopts);
      const FrameAtoms frame = build_frame(tree, banks);
      const double frame_ms = elapsed_ms(start);
      const int m = frame.num_atoms();

      std::vector<int> Ks;
      for (int K : config.K) {
        const int resolved = K < 0 ? m : K;
        if (resolved <= m) Ks.push_back(resolved);
      }

      double analyze_total = 0.0;
      int analyses = 0;
      for (SignalKind kind : config.signals) {
        for (std::uint64_t seed : config.seeds) {
          const Eigen::VectorXd f = gen_signal(tree, kind, seed, config.signal_options);
          start = Clock::now();
          const auto coef = analyze(f, tree, banks);
          const double analyze_ms = elapsed_ms(start);
          (void)coef;
          analyze_total += analyze_ms;
          ++analyses;

          const auto curve = nl_approx_curve(f, frame, Ks);
          std::string plot;
          for (const auto& point : curve) {
            BenchRow row;
            row.graph = gspec.name;
            row.variant = vspec.label;
            row.signal = to_string(kind);
            row.seed = seed;
            row.K = point.K;
            row.m = m;
            row.rel_error = point.relative_error;
            if (config.record_timing) {
              row.analyze_ms = analyze_ms;
              row.build_ms = tree_ms + frame_ms;
            }
            result.rows.push_back(row);
            plot += std::to_string(point.K) + ' ' + format_double(point.relative_error) + '\n';
          }
          if (!config.plot_dir.empty()) {
            const std::string name = gspec.name + "_" + vspec.label + "_" + to_string(kind) + "_" +
                                     std::to_string(seed) + ".dat";
            result.plots.emplace_back(
                (std::filesystem::path(config.plot_dir) / name).string(), std::move(plot));
          }
        }
      }

      TimingRow timing;
      timing.graph = gspec.name;
      timing.variant = vspec.label;
      timing.n = g.num_vertices();
      timing.m = m;
      if (config.record_timing) {
        timing.tree_ms = tree_ms;
        timing.frame_ms = frame_ms;
        timing.analyze_ms = analyses > 0 ? analyze_total / analyses : 0.0;
      }
      result.timings.push_back(timing);
    }
  }
  return result;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "graph,variant,signal,seed,K,m,rel_error,analyze_ms,build_ms\n";
  for (const auto& r : rows) {
    out += r.graph + ',' + r.variant + ',' + r.signal + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.K) + ',' + std::to_string(r.m) + ',' + format_double(r.rel_error) + ',' +
           fixed3(r.analyze_ms) + ',' + fixed3(r.build_ms) + '\n';
  }
  return out;
}

std::string format_timing_csv(const std::vector<TimingRow>& rows) {
  std::string out = "graph,variant,n,m,tree_ms,frame_ms,analyze_ms\n";
  for (const auto& r : rows) {
    out += r.graph + ',' + r.variant + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
           fixed3(r.tree_ms) + ',' + fixed3(r.frame_ms) + ',' + fixed3(r.analyze_ms) + '\n';
  }
  return out;
}

} // namespace sgf
