// sgframe: command-line front end for tight frames on graphs.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sgframe/bench.hpp"
#include "sgframe/error.hpp"
#include "sgframe/filterbank.hpp"
#include "sgframe/frame.hpp"
#include "sgframe/graph_io.hpp"
#include "sgframe/io_util.hpp"
#include "sgframe/parallel.hpp"
#include "sgframe/partition_tree.hpp"
#include "sgframe/transform.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SGFRAME_LOG_LEVEL");
    const std::string v = env ? env : "";
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::quiet;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) <= static_cast<int>(log_level())) std::cerr << "sgframe: " << msg << '\n';
}

// Validation failures that are not exceptions (e.g. a frame that is not tight).
struct VerificationFailed {
  std::string message;
};

struct FrameArgs {
  std::string variant = "haar";
  std::vector<int> r;
  bool max_spanning = false;
  bool permissive = false;
};

void add_frame_options(CLI::App* cmd, FrameArgs& fa) {
  cmd->add_option("--variant", fa.variant, "Filterbank variant")
      ->check(CLI::IsMember({"haar", "eigen", "tree"}))
      ->capture_default_str();
  cmd->add_option("--r", fa.r, "Low-pass rows per level (one value applies to all levels)")
      ->delimiter(',');
  cmd->add_flag("--max-spanning", fa.max_spanning, "Use maximum spanning trees for the tree variant");
  cmd->add_flag("--permissive", fa.permissive, "Allow the eigen variant on disconnected clusters");
}

sgf::FilterBankOptions bank_options(const FrameArgs& fa) {
  const sgf::Variant v = sgf::parse_variant(fa.variant);
  if (v == sgf::Variant::tree) {
    for (int r : fa.r) {
      if (r != 1) throw sgf::ConfigError("tree variant requires r = 1");
    }
  }
  sgf::FilterBankOptions opts;
  opts.r_schedule = fa.r;
  opts.spanning_tree = fa.max_spanning ? sgf::SpanningTreeKind::maximum : sgf::SpanningTreeKind::minimum;
  opts.allow_disconnected = fa.permissive;
  return opts;
}

sgf::PartitionTree load_matching_tree(const std::string& graph_path, const std::string& tree_path) {
  const sgf::Graph g = sgf::load_graph(graph_path);
  sgf::PartitionTree t = sgf::load_tree(tree_path);
  if (!(t.graph() == g)) {
    throw sgf::InputError("tree '" + tree_path + "' was not built from graph '" + graph_path + "'");
  }
  return t;
}

bool looks_binary(const std::string& bytes) { return bytes.rfind("SGFC", 0) == 0; }

int run(int argc, char** argv) {
  CLI::App app{"Tight frames on graphs from partition trees"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = hardware concurrency)");

  // build-tree
  std::string bt_graph, bt_out;
  int branching = 2;
  bool connected = true;
  auto* bt = app.add_subcommand("build-tree", "Build a partition tree by greedy heavy-edge grouping");
  bt->add_option("graph", bt_graph, "Graph file (edge list or MatrixMarket)")->required();
  bt->add_option("-o,--output", bt_out, "Tree JSON output")->required();
  bt->add_option("--branching", branching, "Maximum children per cluster")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  bt->add_flag("--connected,!--no-connected", connected, "Require connected clusters (default on)");

  // build-frame
  std::string bf_graph, bf_tree, bf_out, bf_dump;
  FrameArgs bf_args;
  auto* bf = app.add_subcommand("build-frame", "Build the frame atoms and export them");
  bf->add_option("graph", bf_graph)->required();
  bf->add_option("tree", bf_tree)->required();
  bf->add_option("-o,--output", bf_out, "Frame MatrixMarket output (index sidecar alongside)")->required();
  bf->add_option("--dump-filters", bf_dump, "Directory for A_j_k.mtx / B_j_k.mtx");
  add_frame_options(bf, bf_args);

  // verify
  std::string vf_frame;
  double tol = 1e-8;
  auto* vf = app.add_subcommand("verify", "Check tightness, orthogonality and supports of a frame");
  vf->add_option("frame", vf_frame)->required();
  vf->add_option("--tol", tol)->capture_default_str();

  // analyze
  std::string an_graph, an_tree, an_signal, an_out;
  FrameArgs an_args;
  bool binary = false;
  auto* an = app.add_subcommand("analyze", "Fast analysis of a signal");
  an->add_option("graph", an_graph)->required();
  an->add_option("tree", an_tree)->required();
  an->add_option("signal", an_signal, "Signal text file, one value per line")->required();
  an->add_option("-o,--output", an_out)->required();
  an->add_flag("--binary", binary, "Write flat binary coefficients instead of JSON");
  add_frame_options(an, an_args);

  // synthesize
  std::string sy_graph, sy_tree, sy_coef, sy_out;
  FrameArgs sy_args;
  auto* sy = app.add_subcommand("synthesize", "Reconstruct a signal from coefficients");
  sy->add_option("graph", sy_graph)->required();
  sy->add_option("tree", sy_tree)->required();
  sy->add_option("coefficients", sy_coef, "JSON or binary coefficient file")->required();
  sy->add_option("-o,--output", sy_out)->required();
  add_frame_options(sy, sy_args);

  // nlapprox
  std::string nl_graph, nl_tree, nl_signal, nl_out, nl_recon;
  std::vector<int> nl_K;
  FrameArgs nl_args;
  auto* nl = app.add_subcommand("nlapprox", "Best K-term approximation errors");
  nl->add_option("graph", nl_graph)->required();
  nl->add_option("tree", nl_tree)->required();
  nl->add_option("signal", nl_signal)->required();
  nl->add_option("--K", nl_K, "Comma-separated K values")->delimiter(',')->required();
  nl->add_option("-o,--output", nl_out, "CSV output (default: standard output)");
  nl->add_option("--reconstruction", nl_recon, "Write f_K for the largest K to this file");
  add_frame_options(nl, nl_args);

  // bench
  std::string bc_config, bc_out, bc_timing;
  bool no_timing = false;
  auto* bc = app.add_subcommand("bench", "Run an approximation benchmark from a JSON config");
  bc->add_option("config", bc_config)->required();
  bc->add_option("-o,--output", bc_out, "Results CSV")->required();
  bc->add_option("--timing", bc_timing, "Timing CSV (default: <output stem>_timing.csv)");
  bc->add_flag("--no-timing", no_timing, "Write zero timings so outputs are byte-reproducible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  sgf::set_max_threads(threads);

  if (bt->parsed()) {
    const sgf::Graph g = sgf::load_graph(bt_graph);
    const sgf::PartitionTree t = sgf::build_partition_tree(g, {branching, connected});
    const auto report = sgf::validate_partition_tree(t, connected);
    if (!report.passed()) throw VerificationFailed{"partition tree failed validation:\n" + report.summary()};
    sgf::save_tree(t, bt_out);
    log(LogLevel::info, "tree with J = " + std::to_string(t.depth()) + " written to " + bt_out);
  } else if (bf->parsed()) {
    const auto opts = bank_options(bf_args);
    const auto t = load_matching_tree(bf_graph, bf_tree);
    const auto banks = sgf::make_filterbanks(t, sgf::parse_variant(bf_args.variant), opts);
    const auto fa = sgf::build_frame(t, banks);
    if (!bf_dump.empty()) sgf::dump_filterbanks(banks, bf_dump);
    sgf::export_frame(fa, bf_out);
    log(LogLevel::info, "frame with m = " + std::to_string(fa.num_atoms()) + " atoms written to " + bf_out);
  } else if (vf->parsed()) {
    const auto fa = sgf::import_frame(vf_frame);
    const auto rep = sgf::verify_tight(fa, tol);
    std::cout << "atoms: " << fa.num_atoms() << "  vertices: " << fa.n << '\n'
              << "max tightness deviation: " << sgf::format_double(rep.gram_deviation) << '\n'
              << "max low/high inner product: " << sgf::format_double(rep.block_orthogonality) << '\n'
              << "support violations: " << rep.support_violations.size() << '\n';
    if (!rep.passed) throw VerificationFailed{"frame is not tight within tolerance " + sgf::format_double(tol)};
  } else if (an->parsed()) {
    const auto opts = bank_options(an_args);
    const auto t = load_matching_tree(an_graph, an_tree);
    const auto f = sgf::parse_signal_text(sgf::read_text_file(an_signal));
    const auto banks = sgf::make_filterbanks(t, sgf::parse_variant(an_args.variant), opts);
    const auto coef = sgf::analyze(f, t, banks);
    sgf::write_file_atomic(an_out, binary ? sgf::format_coefficients_binary(sgf::flatten(coef))
                                          : sgf::format_coefficients_json(coef));
  } else if (sy->parsed()) {
    const auto opts = bank_options(sy_args);
    const auto t = load_matching_tree(sy_graph, sy_tree);
    const auto banks = sgf::make_filterbanks(t, sgf::parse_variant(sy_args.variant), opts);
    const std::string bytes = sgf::read_text_file(sy_coef);
    const auto coef = looks_binary(bytes)
                          ? sgf::unflatten(sgf::parse_coefficients_binary(bytes), t, banks)
                          : sgf::parse_coefficients_json(bytes, t, banks);
    sgf::write_file_atomic(sy_out, sgf::format_signal_text(sgf::synthesize(coef, t, banks)));
  } else if (nl->parsed()) {
    const auto opts = bank_options(nl_args);
    const auto t = load_matching_tree(nl_graph, nl_tree);
    const auto f = sgf::parse_signal_text(sgf::read_text_file(nl_signal));
    if (f.size() != t.num_vertices()) {
      throw sgf::InputError("signal has " + std::to_string(f.size()) + " values, graph has " +
                            std::to_string(t.num_vertices()) + " vertices");
    }
    const auto banks = sgf::make_filterbanks(t, sgf::parse_variant(nl_args.variant), opts);
    const auto fa = sgf::build_frame(t, banks);
    const auto curve = sgf::nl_approx_curve(f, fa, nl_K);
    std::string csv = "K,m,rel_error\n";
    for (const auto& p : curve) {
      csv += std::to_string(p.K) + ',' + std::to_string(p.m) + ',' + sgf::format_double(p.relative_error) + '\n';
    }
    std::vector<std::pair<std::string, std::string>> files;
    if (!nl_recon.empty()) {
      int kmax = 0;
      for (int k : nl_K) kmax = std::max(kmax, k);
      files.emplace_back(nl_recon, sgf::format_signal_text(sgf::nl_approx(f, fa, kmax).first));
    }
    if (nl_out.empty()) {
      std::cout << csv;
    } else {
      files.emplace_back(nl_out, csv);
    }
    if (!files.empty()) sgf::write_files_atomic(files);
  } else if (bc->parsed()) {
    const std::string base = std::filesystem::path(bc_config).parent_path().string();
    auto cfg = sgf::parse_bench_config(sgf::read_text_file(bc_config), base);
    if (no_timing) cfg.record_timing = false;
    const auto result = sgf::run_benchmark(cfg);
    if (bc_timing.empty()) {
      std::filesystem::path p(bc_out);
      bc_timing = (p.parent_path() / (p.stem().string() + "_timing.csv")).string();
    }
    if (!cfg.plot_dir.empty()) std::filesystem::create_directories(cfg.plot_dir);
    auto files = result.plots;
    files.emplace_back(bc_out, sgf::format_bench_csv(result.rows));
    files.emplace_back(bc_timing, sgf::format_timing_csv(result.timings));
    sgf::write_files_atomic(files);
    log(LogLevel::info, std::to_string(result.rows.size()) + " rows written to " + bc_out);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const VerificationFailed& e) {
    std::cerr << "sgframe: " << e.message << '\n';
    return 1;
  } catch (const sgf::ParseError& e) {
    std::cerr << "sgframe: parse error: " << e.what() << '\n';
    return 2;
  } catch (const sgf::IoError& e) {
    std::cerr << "sgframe: I/O error: " << e.what() << '\n';
    return 2;
  } catch (const sgf::Error& e) {
    std::cerr << "sgframe: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "sgframe: I/O error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sgframe: internal error: " << e.what() << '\n';
    return 1;
  }
}
