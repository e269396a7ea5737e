// sepwidth: command-line front end.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sepwidth/cli/commands.hpp"
#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/parallel.hpp"

using namespace sepwidth;
using namespace sepwidth::cli;

namespace {

enum Exit { kOk = 0, kOther = 1, kPrecondition = 2, kBoundMiss = 3, kFalsification = 4 };

struct Common {
  std::uint64_t seed = 0;
  std::string report;
  std::string csv_dir;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Common& common) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--seed", common.seed, "Random seed")->required();
  sub->add_option("--report", common.report, "Report path (default stdout)");
  sub->add_option("--csv-dir", common.csv_dir, "Directory for CSV tables");
  return sub;
}

int emit(const Report& r, const Common& common) {
  if (common.report.empty() || common.report == "-") {
    std::cout << r.text();
  } else {
    std::ofstream f(common.report);
    if (!f) throw IoError("cannot write " + common.report);
    f << r.text();
  }
  if (!common.csv_dir.empty()) r.write_csv(common.csv_dir, r.command());
  return r.ok() ? kOk : kBoundMiss;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separators, foams and width certificates"};
  app.set_config("--config", "", "Config file (TOML/INI); flags given on the command line win");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0: hardware)");

  Common common;
  std::function<Report()> run;

  LemmasConfig lemmas;
  auto* s = add_command(app, "lemmas", "Signed-permutation averaging identities and bounds", common);
  s->add_option("--n", lemmas.n, "Dimension (0: 1..5)");
  s->add_option("--trials", lemmas.trials);
  s->callback([&] {
    lemmas.seed = common.seed;
    run = [&] { return run_lemmas(lemmas); };
  });

  FoamSweepConfig sweep;
  s = add_command(app, "foam-sweep", "Level-set ratio sweep of the eigenfield", common);
  s->add_option("--n", sweep.n, "Dimension (0: 1..4)");
  s->add_option("--samples", sweep.samples);
  s->callback([&] {
    sweep.seed = common.seed;
    run = [&] { return run_foam_sweep(sweep); };
  });

  FoamUnionConfig uni;
  s = add_command(app, "foam-union", "Union process of random blob translates", common);
  s->add_option("--n", uni.n);
  s->add_option("--res", uni.res);
  s->add_option("--seeds", uni.seeds);
  s->add_option("--lambda", uni.lambda, "Level (<= 0: from a sweep)");
  s->add_option("--samples", uni.samples);
  s->add_option("--slack", uni.slack);
  s->add_flag("--measure-report-only", uni.measure_report_only);
  s->callback([&] {
    uni.seed = common.seed;
    run = [&] { return run_foam_union(uni); };
  });

  KinematicConfig kin;
  s = add_command(app, "kinematic", "Flat-piece kinematic oracles", common);
  s->add_option("--trials", kin.trials);
  s->add_option("--samples", kin.samples);
  s->callback([&] {
    kin.seed = common.seed;
    run = [&] { return run_kinematic(kin); };
  });

  AvoidConfig avoid;
  s = add_command(app, "avoid", "Axis-line avoidance shifts", common);
  s->add_option("--meshes", avoid.meshes);
  s->callback([&] {
    avoid.seed = common.seed;
    run = [&] { return run_avoid(avoid); };
  });

  TowerConfig tower;
  s = add_command(app, "tower", "Separator tower and nerve map on an N=3 foam", common);
  s->add_option("--res", tower.res);
  s->add_option("--lambda", tower.lambda);
  s->add_option("--levels", tower.levels);
  s->add_option("--pose-samples", tower.pose_samples);
  s->add_option("--queries", tower.queries);
  s->add_option("--foam-seed", tower.foam_seed);
  s->add_option("--samples", tower.samples);
  s->callback([&] {
    tower.seed = common.seed;
    run = [&] { return run_tower(tower); };
  });

  HighCodimConfig high;
  s = add_command(app, "width-highcodim", "Width certificates through posed separators", common);
  s->add_option("--seeds", high.seeds);
  s->add_option("--target", high.target, "(2 pi)^2 sqrt(2) area of the default sphere");
  s->add_option("--res", high.res);
  s->add_option("--foam-seed", high.foam_seed);
  s->add_option("--pose-budget", high.pose_budget);
  s->add_option("--mesh-samples", high.mesh_samples);
  s->add_option("--mesh", high.mesh);
  s->add_option("--certificate", high.certificate);
  s->callback([&] {
    high.seed = common.seed;
    run = [&] { return run_width_highcodim(high); };
  });

  Codim1Config codim1;
  s = add_command(app, "width-codim1", "Three-plane width certificates for surfaces", common);
  s->add_option("--mesh", codim1.mesh);
  s->add_option("--meshes", codim1.meshes);
  s->add_option("--voxel-res", codim1.voxel_res);
  s->add_option("--sweep-res", codim1.sweep_res);
  s->add_option("--samples", codim1.samples);
  s->add_option("--certificate", codim1.certificate);
  s->callback([&] {
    codim1.seed = common.seed;
    run = [&] { return run_width_codim1(codim1); };
  });

  EssentialConfig ess;
  s = add_command(app, "essential-curve", "Essential curve inside a cube", common);
  s->add_option("--mesh", ess.mesh);
  s->add_option("--side", ess.side, "Cube side (<= 0: 4 sqrt(3 area))");
  s->add_option("--certificate", ess.certificate);
  s->callback([&] {
    ess.seed = common.seed;
    run = [&] { return run_essential_curve(ess); };
  });

  GenMeshConfig gen;
  s = add_command(app, "gen-mesh", "Generate a test mesh", common);
  s->add_option("--kind", gen.kind)->check(CLI::IsMember({"icosphere", "torus", "perturbed-sphere"}));
  s->add_option("--radius", gen.radius);
  s->add_option("--subdivisions", gen.subdivisions);
  s->add_option("--major", gen.major);
  s->add_option("--minor", gen.minor);
  s->add_option("--nu", gen.nu);
  s->add_option("--nv", gen.nv);
  s->add_option("--amplitude", gen.amplitude);
  s->add_option("--scale", gen.scale);
  s->add_option("--out", gen.out);
  s->callback([&] {
    gen.seed = common.seed;
    run = [&] { return run_gen_mesh(gen); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kPrecondition;
  }
  if (threads > 0) set_max_threads(threads);

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    code = emit(run(), common);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    code = kPrecondition;
  } catch (const FalsificationError& e) {
    std::cerr << "falsification: " << e.what() << '\n';
    code = kFalsification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kOther;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed " << secs << " s\n";
  return code;
}
