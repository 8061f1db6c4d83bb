#include "cli.hpp"

#include "here/bench.hpp"
#include "here/io.hpp"
#include "here/pipeline.hpp"
#include "here/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace here::cli {
namespace {

struct PipelineFlags {
  PipelineConfig cfg;
  std::string sampling = "valid";
  bool no_verify = false;

  PipelineConfig resolve() const {
    PipelineConfig c = cfg;
    c.use_verification = !no_verify;
    if (sampling == "random") c.sampling = SamplingMode::Random;
    else if (sampling == "score") c.sampling = SamplingMode::ScoreOnly;
    else c.sampling = SamplingMode::Valid;
    return c;
  }
};

void add_pipeline_flags(CLI::App* app, PipelineFlags& f, bool xi_required) {
  auto* xi = app->add_option("--xi", f.cfg.xi, "inlier threshold");
  if (xi_required) xi->required();
  app->add_option("--kt", f.cfg.k_t, "translation-stage samples")->capture_default_str();
  app->add_option("--m", f.cfg.m, "surfaces per shell")->capture_default_str();
  app->add_option("--kr", f.cfg.k_r, "axis-stage samples")->capture_default_str();
  app->add_option("--n", f.cfg.n, "half-circles per girdle")->capture_default_str();
  app->add_option("--psi", f.cfg.psi, "branch resolution")->capture_default_str();
  app->add_option("--seed", f.cfg.seed, "random seed")->capture_default_str();
  app->add_flag("--no-verify", f.no_verify, "skip compatibility verification");
  app->add_option("--sampling", f.sampling, "sampling strategy")
      ->check(CLI::IsMember({"valid", "random", "score"}))
      ->capture_default_str();
}

int cmd_register(const std::string& corr, const std::string& out_path, const PipelineFlags& f,
                 std::ostream& out, std::ostream& err) {
  CorrespondenceSet set;
  try {
    set = read_correspondences(std::filesystem::path(corr));
  } catch (const ParseError& e) {
    err << "error: " << corr << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  RegistrationReport report;
  try {
    report = register_correspondences(set, f.resolve());
  } catch (const RegistrationError& e) {
    err << signal_name(e.signal()) << ": " << e.what() << '\n';
    return kExitSignal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& s : report.fallbacks) err << "note: stage fallback after " << s << '\n';
  if (out_path.empty()) {
    write_pose(out, report);
    return kExitOk;
  }
  try {
    auto f_out = open_output(out_path);
    write_pose(f_out, report);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  out << "consensus " << report.consensus.size() << " of " << set.size() << ", pose written to "
      << out_path << '\n';
  return kExitOk;
}

int cmd_synth(SynthConfig sc, const std::string& source_path, const std::string& out_path,
              std::string truth_path, std::ostream& out, std::ostream& err) {
  try {
    if (!source_path.empty()) sc.source = read_point_cloud(std::filesystem::path(source_path));
    const auto inst = generate(sc);
    if (truth_path.empty()) truth_path = out_path + ".truth.json";
    auto f_corr = open_output(out_path);
    write_correspondences(f_corr, inst.set);
    auto f_truth = open_output(truth_path);
    write_ground_truth(f_truth, inst.truth, inst.inlier_mask);
    out << inst.set.size() << " correspondences (" << inst.inlier_count() << " inliers) written to "
        << out_path << ", truth to " << truth_path << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int cmd_bench(BenchConfig bc, const PipelineFlags& f, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  bc.pipeline = f.resolve();
  std::vector<TrialRow> rows;
  try {
    rows = run_bench(bc);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto summary = summarize(rows, bc.thresholds);
  if (out_path.empty()) {
    write_csv(out, rows);
    write_summary(err, summary);
    return kExitOk;
  }
  try {
    auto f_csv = open_output(out_path);
    write_csv(f_csv, rows);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  write_summary(out, summary);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust rigid registration from putative correspondences", "here"};
  app.require_subcommand(1);

  auto* reg = app.add_subcommand("register", "estimate a rigid transform from a correspondence file");
  PipelineFlags reg_flags;
  std::string corr, reg_out;
  reg->add_option("--corr", corr, "correspondence file")->required();
  reg->add_option("--out", reg_out, "pose JSON (stdout when omitted)");
  add_pipeline_flags(reg, reg_flags, true);

  auto* syn = app.add_subcommand("synth", "generate a synthetic correspondence set");
  SynthConfig sc;
  std::string source_path, syn_out, truth_path;
  syn->add_option("-N,--points", sc.n, "number of correspondences")->capture_default_str();
  syn->add_option("--rho", sc.rho, "outlier ratio")->capture_default_str();
  syn->add_option("--noise", sc.noise_radius, "inlier noise radius")->capture_default_str();
  syn->add_option("--seed", sc.seed, "random seed")->capture_default_str();
  syn->add_option("--source", source_path, "source point cloud (x y z per line)");
  syn->add_option("--out", syn_out, "correspondence file")->required();
  syn->add_option("--truth", truth_path, "ground-truth sidecar (default <out>.truth.json)");

  auto* ben = app.add_subcommand("bench", "synthetic benchmark grid");
  BenchConfig bc;
  PipelineFlags ben_flags;
  std::string ben_out;
  ben->add_option("--grid-n", bc.grid_n, "comma-separated N values")->delimiter(',');
  ben->add_option("--grid-rho", bc.grid_rho, "comma-separated outlier ratios")->delimiter(',');
  ben->add_option("--trials", bc.trials, "trials per grid cell")->capture_default_str();
  ben->add_option("--methods", bc.methods, "comma-separated methods")->delimiter(',');
  ben->add_option("--out", ben_out, "CSV file (stdout when omitted)");
  ben->add_option("--max-rot-deg", bc.thresholds.rotation_deg, "success rotation threshold")
      ->capture_default_str();
  ben->add_option("--max-trans", bc.thresholds.translation, "success translation threshold")
      ->capture_default_str();
  add_pipeline_flags(ben, ben_flags, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*reg) return cmd_register(corr, reg_out, reg_flags, out, err);
  if (*syn) return cmd_synth(sc, source_path, syn_out, truth_path, out, err);
  bc.seed = ben_flags.cfg.seed;
  return cmd_bench(bc, ben_flags, ben_out, out, err);
}

}  // namespace here::cli
