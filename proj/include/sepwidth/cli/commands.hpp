#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sepwidth/cli/report.hpp"

namespace sepwidth::cli {

// Every runner fills a Report and returns it; hard-check failures are
// recorded in the report, precondition and falsification errors propagate
// as exceptions.

struct LemmasConfig {
  int n = 0;                  // 0: every N in 1..5
  int trials = 100;
  std::uint64_t seed = 0;
};
Report run_lemmas(const LemmasConfig& c);

struct FoamSweepConfig {
  int n = 2;                  // 0: every N in 1..4
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
};
Report run_foam_sweep(const FoamSweepConfig& c);

struct FoamUnionConfig {
  int n = 2;
  int res = 256;
  int seeds = 200;
  std::uint64_t seed = 0;
  double lambda = 0.0;        // <= 0: chosen from a ratio sweep
  std::size_t samples = 200000;  // sweep and calibration samples
  double slack = 0.15;        // calibration slack on the boundary bound
  bool measure_report_only = false;
};
Report run_foam_union(const FoamUnionConfig& c);

struct KinematicConfig {
  int trials = 100;
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
};
Report run_kinematic(const KinematicConfig& c);

struct AvoidConfig {
  int meshes = 50;
  std::uint64_t seed = 0;
};
Report run_avoid(const AvoidConfig& c);

struct TowerConfig {
  int res = 96;
  double lambda = 0.0;        // <= 0: chosen from a ratio sweep
  int levels = 2;
  std::size_t pose_samples = 256;
  std::size_t queries = 10000;
  std::uint64_t foam_seed = 1;
  std::uint64_t seed = 0;
  std::size_t samples = 200000;
};
Report run_tower(const TowerConfig& c);

struct HighCodimConfig {
  int seeds = 20;
  double target = 0.95;       // (2 pi)^2 sqrt 2 area
  int res = 96;
  std::uint64_t foam_seed = 1;
  std::uint64_t seed = 0;
  std::size_t pose_budget = 256;
  std::size_t mesh_samples = 2000;
  std::string mesh;           // empty: icosphere
  std::string certificate;    // output path for the first certificate
};
Report run_width_highcodim(const HighCodimConfig& c);

struct Codim1Config {
  std::string mesh;           // empty: `meshes` generated meshes
  int meshes = 100;
  int voxel_res = 64;
  int sweep_res = 64;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string certificate;
};
Report run_width_codim1(const Codim1Config& c);

struct EssentialConfig {
  std::string mesh;           // empty: torus of revolution rescaled to area 1/3 - eps
  double side = 0.0;          // <= 0: 4 sqrt(3 area)
  std::uint64_t seed = 0;
  std::string certificate;
};
Report run_essential_curve(const EssentialConfig& c);

struct GenMeshConfig {
  std::string kind = "icosphere";  // icosphere | torus | perturbed-sphere
  double radius = 1.0;
  int subdivisions = 4;
  double major = 2.0, minor = 0.5;
  int nu = 64, nv = 32;
  double amplitude = 0.2;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};
Report run_gen_mesh(const GenMeshConfig& c);

}  // namespace sepwidth::cli
