#include "sepwidth/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sepwidth/cli/certificates.hpp"
#include "sepwidth/cli/generators.hpp"
#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/foam/sweep.hpp"
#include "sepwidth/foam/union_process.hpp"
#include "sepwidth/geom/io.hpp"
#include "sepwidth/geom/mesh.hpp"
#include "sepwidth/hyperwidth/essential.hpp"
#include "sepwidth/hyperwidth/width.hpp"
#include "sepwidth/kinsep/avoid.hpp"
#include "sepwidth/kinsep/highcodim.hpp"
#include "sepwidth/kinsep/kinematic.hpp"
#include "sepwidth/kinsep/nerve.hpp"
#include "sepwidth/kinsep/pose.hpp"
#include "sepwidth/kinsep/tower.hpp"
#include "sepwidth/sgnperm/averages.hpp"

namespace sepwidth::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) { return format_double(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

Check hard(std::string name, double value, Compare cmp, double bound, double tol, double se,
           std::string basis) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.compare = cmp;
  c.bound = bound;
  c.tol = tol;
  c.se = se;
  c.basis = std::move(basis);
  return c;
}

Check report_only(Check c) {
  c.role = Role::kReportOnly;
  return c;
}

geom::TriMesh with_area(const geom::TriMesh& m, double area) {
  return geom::scaled(m, std::sqrt(area / geom::mesh_area(m)));
}

// Thin torus of revolution with a seeded random orientation, major/minor
// ratio in [4, 20).
geom::TriMesh random_torus(Rng& rng) {
  const double ratio = rng.uniform(4.0, 20.0);
  geom::TriMesh t = torus(1.0, 1.0 / ratio, 96, 12);
  const Vec3 axis = normalized(Vec3{rng.normal(), rng.normal(), rng.normal()});
  const double angle = rng.uniform(0.0, kPi);
  const double c = std::cos(angle), s = std::sin(angle);
  return geom::transformed(t, [&](const Vec3& p) {
    return p * c + cross(axis, p) * s + axis * (dot(axis, p) * (1.0 - c));
  });
}

Vec3 random_shift(Rng& rng) { return {rng.uniform(), rng.uniform(), rng.uniform()}; }

geom::TriMesh load_closed(const std::string& path) {
  geom::TriMesh m = geom::load_mesh(path);
  if (!geom::is_closed(m)) throw PreconditionError(path + ": mesh is not closed");
  return m;
}

double sweep_lambda(int n, int res, std::size_t samples, std::uint64_t seed, Report& r) {
  const auto grid = foam::default_lambda_grid();
  const auto curve = foam::ratio_sweep(n, grid, samples, seed);
  const int best = curve.best_complement(foam::lambda_floor(res));
  if (best < 0) throw SearchExhausted("no admissible lambda above sin(pi/R)");
  const auto& rec = curve.records[static_cast<std::size_t>(best)];
  r.value("lambda.chosen_from", std::string("sweep"));
  r.value("lambda.blob_ratio", rec.ratio_complement.value);
  r.value("lambda.blob_ratio_se", rec.ratio_complement.se);
  return rec.lambda;
}

}  // namespace

// ---------------------------------------------------------------------------

Report run_lemmas(const LemmasConfig& c) {
  Report r("lemmas");
  r.config("n", c.n);
  r.config("trials", c.trials);
  r.config("seed", c.seed);
  if (c.n < 0 || c.n > 8) throw PreconditionError("lemmas: n must be in 1..8 (0 for 1..5)");
  if (c.trials < 1) throw PreconditionError("lemmas: trials must be positive");
  std::vector<int> dims;
  if (c.n == 0) {
    dims = {1, 2, 3, 4, 5};
  } else {
    dims = {c.n};
  }
  auto& t = r.table("trials", {"n", "trial", "m", "abs_dot", "sq_dot", "projection", "sq_projection",
                               "abs_det", "sq_det"});
  for (int n : dims) {
    Rng rng(c.seed, static_cast<std::uint64_t>(n));
    double dev_dot = 0, dev_proj = 0, dev_det = 0;
    double ex_dot = -1, ex_proj = -1, ex_det = -1;
    for (int trial = 0; trial < c.trials; ++trial) {
      const auto a = sgnperm::random_unit_vector(n, rng);
      const auto b = sgnperm::random_unit_vector(n, rng);
      const auto d = sgnperm::dot_averages(a, b);
      dev_dot = std::max(dev_dot, std::abs(d.sq_dot - 1.0 / n));
      ex_dot = std::max(ex_dot, d.abs_dot - 1.0 / std::sqrt(n));
      for (int m = 1; m <= n; ++m) {
        const auto L = sgnperm::random_subspace(n, m, rng);
        const auto p = sgnperm::projection_averages(b, L);
        dev_proj = std::max(dev_proj, std::abs(p.sq_length - static_cast<double>(m) / n));
        ex_proj = std::max(ex_proj, p.length - std::sqrt(static_cast<double>(m) / n));
        const auto A = sgnperm::random_subspace(n, m, rng);
        const auto B = sgnperm::random_subspace(n, m, rng);
        const auto j = sgnperm::jacobian_averages(A, B);
        const double cnm = sgnperm::binomial(n, m);
        dev_det = std::max(dev_det, std::abs(j.sq_det - 1.0 / cnm));
        ex_det = std::max(ex_det, j.abs_det - 1.0 / std::sqrt(cnm));
        t.add({num(n), num(trial), num(m), num(d.abs_dot), num(d.sq_dot), num(p.length),
               num(p.sq_length), num(j.abs_det), num(j.sq_det)});
      }
    }
    const std::string k = "n" + std::to_string(n) + ".";
    r.check(hard(k + "sq_dot_identity", dev_dot, Compare::kLt, 0.0, 1e-9, 0.0, "exact"));
    r.check(hard(k + "sq_projection_identity", dev_proj, Compare::kLt, 0.0, 1e-9, 0.0, "exact"));
    r.check(hard(k + "sq_det_identity", dev_det, Compare::kLt, 0.0, 1e-9, 0.0, "exact"));
    r.check(hard(k + "abs_dot_excess", ex_dot, Compare::kLe, 0.0, 1e-12, 0.0, "bound"));
    r.check(hard(k + "projection_excess", ex_proj, Compare::kLe, 0.0, 1e-12, 0.0, "bound"));
    r.check(hard(k + "abs_det_excess", ex_det, Compare::kLe, 0.0, 1e-12, 0.0, "bound"));
  }
  return r;
}

// ---------------------------------------------------------------------------

Report run_foam_sweep(const FoamSweepConfig& c) {
  Report r("foam-sweep");
  r.config("n", c.n);
  r.config("samples", static_cast<std::uint64_t>(c.samples));
  r.config("seed", c.seed);
  if (c.n < 0 || c.n > 6) throw PreconditionError("foam-sweep: n must be in 1..6 (0 for 1..4)");
  std::vector<int> dims;
  if (c.n == 0) {
    dims = {1, 2, 3, 4};
  } else {
    dims = {c.n};
  }
  const auto grid = foam::default_lambda_grid();
  auto& t = r.table("curve", {"n", "lambda", "area", "area_se", "volume", "volume_se", "ratio", "ratio_se",
                              "ratio_min", "ratio_min_se", "ratio_complement", "ratio_complement_se",
                              "band_hits", "degenerate"});
  for (int n : dims) {
    const auto curve = foam::ratio_sweep(n, grid, c.samples, derive_seed(c.seed, static_cast<std::uint64_t>(n)));
    for (const auto& rec : curve.records) {
      t.add({num(n), num(rec.lambda), num(rec.area.value), num(rec.area.se), num(rec.volume.value),
             num(rec.volume.se), num(rec.ratio.value), num(rec.ratio.se), num(rec.ratio_min.value),
             num(rec.ratio_min.se), num(rec.ratio_complement.value), num(rec.ratio_complement.se),
             num(rec.band_hits), std::string(rec.degenerate ? "1" : "0")});
    }
    const std::string k = "n" + std::to_string(n) + ".";
    r.value(k + "band", curve.band);
    const int best = curve.best_ratio();
    if (best < 0) throw SearchExhausted("foam-sweep: no lambda with vol(Omega) <= 1/2 for n=" + std::to_string(n));
    const auto& rec = curve.records[static_cast<std::size_t>(best)];
    r.value(k + "best_lambda", rec.lambda);
    r.check(hard(k + "min_ratio", rec.ratio.value, Compare::kLe, foam::foam_bound(n), 0.0, rec.ratio.se, "mc"));
    const int alt = curve.best_ratio_min();
    if (alt >= 0) {
      const auto& a = curve.records[static_cast<std::size_t>(alt)];
      r.value(k + "min_ratio_min", a.ratio_min.value);
      r.value(k + "min_ratio_min_se", a.ratio_min.se);
      r.value(k + "min_ratio_min_lambda", a.lambda);
    }
    // The foam beats the cubic lattice (2N) only once N > pi^2.
    r.value(k + "foam_bound", foam::foam_bound(n));
    r.value(k + "cubic_bound", 2.0 * n);
    r.value(k + "foam_beats_cubic", foam::foam_bound(n) < 2.0 * n);
  }
  return r;
}

// ---------------------------------------------------------------------------

Report run_foam_union(const FoamUnionConfig& c) {
  Report r("foam-union");
  r.config("n", c.n);
  r.config("res", c.res);
  r.config("seeds", c.seeds);
  r.config("seed", c.seed);
  r.config("lambda", c.lambda);
  r.config("samples", static_cast<std::uint64_t>(c.samples));
  r.config("slack", c.slack);
  r.config("measure_report_only", std::string(c.measure_report_only ? "true" : "false"));
  if (c.seeds < 1) throw PreconditionError("foam-union: seeds must be positive");
  const double lambda = c.lambda > 0 ? c.lambda : sweep_lambda(c.n, c.res, c.samples, derive_seed(c.seed, 0), r);
  r.value("lambda", lambda);
  const auto cal = foam::calibrate_boundary(c.n, lambda, c.res, c.samples, derive_seed(c.seed, 1));
  r.value("calibration.factor", cal.factor);
  r.value("calibration.mc_area", cal.mc_area);
  r.value("calibration.mc_area_se", cal.mc_area_se);
  r.value("calibration.raster_area", cal.raster_area);
  r.value("dilation_cells", 1);

  foam::UnionOptions opt;
  opt.calibration = cal.factor;
  auto& t = r.table("runs", {"run", "separated", "steps", "facets", "boundary_measure", "regions",
                             "max_region_extent", "region_winding", "free_components", "max_free_extent",
                             "free_winding", "unowned_cells"});
  int separated = 0, max_extent = 0, winding = 0;
  double sum = 0, sum2 = 0;
  for (int s = 0; s < c.seeds; ++s) {
    foam::FoamState st;
    try {
      st = foam::union_process(c.n, lambda, c.res, derive_seed(c.seed, 100 + static_cast<std::uint64_t>(s)), opt);
    } catch (const foam::SeparationFailure& e) {
      st = e.state();
    }
    if (st.separated) ++separated;
    max_extent = std::max({max_extent, st.max_region_extent, st.max_free_extent});
    if (st.any_region_winding || st.any_free_winding) ++winding;
    sum += st.boundary_measure;
    sum2 += st.boundary_measure * st.boundary_measure;
    t.add({num(s), std::string(st.separated ? "1" : "0"), num(st.steps), num(st.facets),
           num(st.boundary_measure), num(st.regions), num(st.max_region_extent),
           std::string(st.any_region_winding ? "1" : "0"), num(st.free_components), num(st.max_free_extent),
           std::string(st.any_free_winding ? "1" : "0"), num(st.unowned_cells)});
  }
  const double k = c.seeds;
  const double mean = sum / k;
  const double var = c.seeds > 1 ? std::max(0.0, (sum2 - k * mean * mean) / (k - 1)) : 0.0;
  const double se = std::sqrt(var / k);
  r.check(hard("separated_fraction", separated / k, Compare::kEq, 1.0, 0.0, 0.0, "count"));
  r.check(hard("max_extent", max_extent, Compare::kLt, c.res, 0.0, 0.0, "count"));
  r.check(hard("winding_runs", winding, Compare::kEq, 0.0, 0.0, 0.0, "count"));
  Check m = hard("boundary_mean", mean, Compare::kLe, foam::foam_bound(c.n) * (1.0 + c.slack), 0.0, se, "mc");
  r.check(c.measure_report_only ? report_only(m) : m);
  r.value("boundary_mean_vs_foam_bound", mean / foam::foam_bound(c.n));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

geom::Triangle unit_triangle(Rng& rng) {
  auto pt = [&] { return Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}; };
  geom::Triangle t{pt(), pt(), pt()};
  const double s = 1.0 / std::sqrt(t.area());
  const Vec3 o = t.a;
  return {o, o + (t.b - o) * s, o + (t.c - o) * s};
}

geom::TriMesh single(const geom::Triangle& t) {
  geom::TriMesh m;
  m.vertices = {t.a, t.b, t.c};
  m.triangles = {{0, 1, 2}};
  return m;
}

geom::Triangle posed_triangle(const geom::Triangle& t, const kinsep::Pose& p) {
  return {p.apply(t.a), p.apply(t.b), p.apply(t.c)};
}

}  // namespace

Report run_kinematic(const KinematicConfig& c) {
  Report r("kinematic");
  r.config("trials", c.trials);
  r.config("samples", static_cast<std::uint64_t>(c.samples));
  r.config("seed", c.seed);
  if (c.trials < 1) throw PreconditionError("kinematic: trials must be positive");
  Rng rng(c.seed, 0);
  auto& t = r.table("trials", {"trial", "length_exact", "length_mc", "length_se", "count_exact", "count_mc",
                               "count_se", "length_average", "count_average"});
  double z_len = 0, z_cnt = 0, ex_len = -1, ex_cnt = -1;
  for (int trial = 0; trial < c.trials; ++trial) {
    const auto a = unit_triangle(rng);
    const auto b = posed_triangle(unit_triangle(rng), kinsep::random_pose(rng));
    const double exact = kinsep::flat_length_integral(a, b);
    const auto est = kinsep::shift_integral_length(single(a), single(b), c.samples,
                                                   derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(trial)));
    z_len = std::max(z_len, std::abs(est.value - exact) / std::max(est.se, 1e-300));

    const Vec3 d = normalized(Vec3{rng.normal(), rng.normal(), rng.normal()});
    const Vec3 o{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    kinsep::SegmentSet seg;
    seg.segments.push_back({o, o + d});
    const double cexact = kinsep::flat_count_integral(a, seg.segments[0]);
    const auto cest = kinsep::shift_integral_count(single(a), seg, c.samples,
                                                   derive_seed(c.seed, 5000 + static_cast<std::uint64_t>(trial)));
    z_cnt = std::max(z_cnt, std::abs(cest.value - cexact) / std::max(cest.se, 1e-300));

    // Unit areas and unit length: the bounds are sqrt(2/3) and 1/sqrt(3).
    const double lavg = kinsep::flat_length_average(a, b);
    const double cavg = kinsep::flat_count_average(a, seg.segments[0]);
    ex_len = std::max(ex_len, lavg - std::sqrt(2.0 / 3.0) * a.area() * b.area());
    ex_cnt = std::max(ex_cnt, cavg - a.area() * norm(d) / std::sqrt(3.0));
    t.add({num(trial), num(exact), num(est.value), num(est.se), num(cexact), num(cest.value), num(cest.se),
           num(lavg), num(cavg)});
  }
  // Max standardized deviation over the trials against 4 SE.
  r.check(hard("length_oracle_max_z", z_len, Compare::kLe, 4.0, 0.0, 0.0, "mc"));
  r.check(hard("count_oracle_max_z", z_cnt, Compare::kLe, 4.0, 0.0, 0.0, "mc"));
  r.check(hard("length_average_excess", ex_len, Compare::kLe, 0.0, 1e-9, 0.0, "exact"));
  r.check(hard("count_average_excess", ex_cnt, Compare::kLe, 0.0, 1e-9, 0.0, "exact"));
  return r;
}

// ---------------------------------------------------------------------------

Report run_avoid(const AvoidConfig& c) {
  Report r("avoid");
  r.config("meshes", c.meshes);
  r.config("seed", c.seed);
  if (c.meshes < 1) throw PreconditionError("avoid: meshes must be positive");
  auto& t = r.table("meshes", {"mesh", "kind", "area", "found", "draws", "rejected", "degenerate",
                               "bad_fraction", "recount_hits"});
  int found = 0;
  std::size_t recount = 0;
  for (int i = 0; i < c.meshes; ++i) {
    Rng rng(c.seed, static_cast<std::uint64_t>(i));
    const bool sphere = i % 2 == 0;
    geom::TriMesh m = sphere ? perturbed_sphere(1.0, 3, 0.3, rng.next()) : random_torus(rng);
    m = with_area(m, rng.uniform(0.05, 0.55));
    m = geom::translated(m, random_shift(rng));
    kinsep::AvoidResult res;
    try {
      res = kinsep::coordinate_subspace_avoid(m, derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(i)));
    } catch (const SearchExhausted&) {
      res.found = false;
    }
    std::size_t hits = 0;
    if (res.found) {
      ++found;
      bool degenerate = false;
      hits = kinsep::axis_line_hits(m, res.t, &degenerate);
      if (degenerate) ++hits;
      recount += hits;
    }
    t.add({num(i), std::string(sphere ? "sphere" : "torus"), num(geom::mesh_area(m)),
           std::string(res.found ? "1" : "0"), num(res.draws), num(res.rejected), num(res.degenerate),
           num(res.bad_fraction), num(hits)});
  }
  r.check(hard("found_fraction", found / static_cast<double>(c.meshes), Compare::kEq, 1.0, 0.0, 0.0, "count"));
  r.check(hard("recount_hits", static_cast<double>(recount), Compare::kEq, 0.0, 0.0, 0.0, "count"));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

foam::FoamState foam_for(int res, double lambda, std::uint64_t foam_seed, std::size_t samples, std::uint64_t seed,
                         Report& r) {
  const double lam = lambda > 0 ? lambda : sweep_lambda(3, res, samples, derive_seed(seed, 0), r);
  r.value("foam.lambda", lam);
  foam::UnionOptions opt;
  opt.calibration_samples = samples;
  auto f = foam::union_process(3, lam, res, foam_seed, opt);
  r.value("foam.steps", f.steps);
  r.value("foam.calibration", f.calibration);
  r.value("foam.boundary_measure", f.boundary_measure);
  if (!f.separated) throw SearchExhausted("foam did not separate");
  return f;
}

}  // namespace

Report run_tower(const TowerConfig& c) {
  Report r("tower");
  r.config("res", c.res);
  r.config("lambda", c.lambda);
  r.config("levels", c.levels);
  r.config("pose_samples", static_cast<std::uint64_t>(c.pose_samples));
  r.config("queries", static_cast<std::uint64_t>(c.queries));
  r.config("foam_seed", c.foam_seed);
  r.config("seed", c.seed);
  r.config("samples", static_cast<std::uint64_t>(c.samples));
  if (c.levels < 0 || c.levels > 2) throw PreconditionError("tower: levels must be in 0..2");
  const auto f = foam_for(c.res, c.lambda, c.foam_seed, c.samples, c.seed, r);
  const auto tower = kinsep::build_tower(f, c.levels, c.pose_samples, derive_seed(c.seed, 1));
  auto& t = r.table("levels", {"m", "measure", "calibrated", "bound", "within_bound", "candidates",
                               "degenerate_candidates", "candidate_mean", "candidate_se", "chosen"});
  for (const auto& lv : tower.levels) {
    t.add({num(lv.m), num(lv.measure), num(lv.calibrated), num(lv.bound), std::string(lv.within_bound ? "1" : "0"),
           num(lv.candidates), num(lv.degenerate_candidates), num(lv.candidate_mean), num(lv.candidate_se),
           num(lv.chosen)});
    // The per-cell bound is an expectation; misses are legitimate.
    r.check(report_only(hard("level" + std::to_string(lv.m) + ".measure", lv.measure, Compare::kLe, lv.bound, 0.0,
                             0.0, "bound")));
  }
  std::size_t failures = 0;
  kinsep::check_containment(tower, 1e-9, &failures);
  r.check(hard("containment_failures", static_cast<double>(failures), Compare::kEq, 0.0, 0.0, 0.0, "count"));

  Rng qr(c.seed, 2);
  std::vector<Vec3> queries(c.queries);
  for (auto& q : queries) q = random_shift(qr);
  const auto nm = kinsep::nerve_map(tower, queries);
  r.value("nerve.vertices", static_cast<std::uint64_t>(nm.complex.vertices.size()));
  r.value("nerve.simplices", static_cast<std::uint64_t>(nm.complex.simplices.size()));
  r.value("nerve.dimension", nm.complex.dimension());
  r.check(hard("nerve.sup_displacement", nm.sup_displacement, Compare::kLt, 1.0, 0.0, 0.0, "exact"));
  r.check(hard("nerve.copies_distinct", nm.complex.copies_distinct() ? 1.0 : 0.0, Compare::kEq, 1.0, 0.0, 0.0,
               "count"));
  return r;
}

// ---------------------------------------------------------------------------

Report run_width_highcodim(const HighCodimConfig& c) {
  Report r("width-highcodim");
  r.config("seeds", c.seeds);
  r.config("target", c.target);
  r.config("res", c.res);
  r.config("foam_seed", c.foam_seed);
  r.config("seed", c.seed);
  r.config("pose_budget", static_cast<std::uint64_t>(c.pose_budget));
  r.config("mesh_samples", static_cast<std::uint64_t>(c.mesh_samples));
  r.config("mesh", c.mesh);
  if (c.seeds < 1) throw PreconditionError("width-highcodim: seeds must be positive");
  const double norm_const = 4.0 * kPi * kPi * std::sqrt(2.0);
  geom::TriMesh base;
  if (c.mesh.empty()) {
    if (!(c.target > 0 && c.target < 1)) throw PreconditionError("width-highcodim: target must be in (0, 1)");
    base = with_area(icosphere(1.0, 3), c.target / norm_const);
  } else {
    base = load_closed(c.mesh);
  }
  r.value("mesh.area", geom::mesh_area(base));
  r.value("mesh.normalized_area", norm_const * geom::mesh_area(base));

  const auto f = foam_for(c.res, 0.0, c.foam_seed, 200000, c.seed, r);
  const auto tower = kinsep::build_tower(f, 1, c.pose_budget, derive_seed(c.seed, 1));
  r.value("tower.level1_measure", tower.levels.at(1).measure);

  kinsep::HighCodimOptions opt;
  opt.pose_budget = c.pose_budget;
  opt.mesh_samples = c.mesh_samples;
  auto& t = r.table("runs", {"run", "success", "route", "separator_poses", "separator_mean_mass",
                             "separator_mean_se", "separator_bound", "copies_poses", "copies_mean_mass",
                             "copies_mean_se", "copies_bound", "sup_displacement"});
  int successes = 0, contradictions = 0;
  double max_sup = 0;
  bool saved = false;
  for (int s = 0; s < c.seeds; ++s) {
    Rng rng(c.seed, 100 + static_cast<std::uint64_t>(s));
    const auto mesh = c.mesh.empty() ? geom::translated(base, random_shift(rng)) : base;
    const auto res = kinsep::width_pipeline_highcodim(mesh, tower, derive_seed(c.seed, 200 + static_cast<std::uint64_t>(s)), opt);
    const auto& a = res.separator_route;
    const auto& b = res.copies_route;
    if (a.contradicts_bound) ++contradictions;
    if (b.contradicts_bound) ++contradictions;
    if (res.success) {
      ++successes;
      max_sup = std::max(max_sup, res.certificate.sup_displacement);
      if (!saved && !c.certificate.empty()) {
        save_width_certificate(c.certificate, res.certificate);
        saved = true;
      }
    }
    t.add({num(s), std::string(res.success ? "1" : "0"), res.success ? res.certificate.route : std::string("none"),
           num(a.poses_tried), num(a.mean_mass), num(a.mean_mass_se), num(a.averaging_bound), num(b.poses_tried),
           num(b.mean_mass), num(b.mean_mass_se), num(b.averaging_bound),
           num(res.success ? res.certificate.sup_displacement : 0.0)});
  }
  r.check(report_only(hard("success_rate", successes / static_cast<double>(c.seeds), Compare::kGe, 0.9, 0.0, 0.0,
                           "empirical")));
  r.check(hard("bound_contradictions", contradictions, Compare::kEq, 0.0, 0.0, 0.0, "count"));
  r.check(hard("max_sup_displacement", max_sup, Compare::kLt, 1.0, 0.0, 0.0, "exact"));
  r.value("successes", successes);
  return r;
}

// ---------------------------------------------------------------------------

Report run_width_codim1(const Codim1Config& c) {
  Report r("width-codim1");
  r.config("mesh", c.mesh);
  r.config("meshes", c.meshes);
  r.config("voxel_res", c.voxel_res);
  r.config("sweep_res", c.sweep_res);
  r.config("samples", static_cast<std::uint64_t>(c.samples));
  r.config("seed", c.seed);
  if (c.mesh.empty() && c.meshes < 1) throw PreconditionError("width-codim1: meshes must be positive");
  if (c.voxel_res < 2) throw PreconditionError("width-codim1: voxel_res must be at least 2");
  const int count = c.mesh.empty() ? c.meshes : 1;
  const geom::TriMesh user = c.mesh.empty() ? geom::TriMesh{} : load_closed(c.mesh);

  auto& t = r.table("meshes", {"mesh", "kind", "area", "l", "cubes", "pieces", "ties", "max_cube_area",
                               "min_facet_fraction", "max_delta_grid", "x_length", "y_length", "pair_hits",
                               "same_cube_failures", "jittered", "sup_displacement"});
  double max_cube_area = 0, min_facet = 1, max_delta = 0, max_sup_ratio = 0, max_l_error = 0;
  std::size_t iso_failures = 0, pair_hits = 0, same_cube = 0, ties = 0;
  std::size_t iso_pieces = 0, vacuous = 0, point_failures = 0;
  double min_margin = 1;
  bool saved = false;
  for (int i = 0; i < count; ++i) {
    Rng rng(c.seed, static_cast<std::uint64_t>(i));
    std::string kind = "file";
    geom::TriMesh m = user;
    if (c.mesh.empty()) {
      const bool sphere = i % 2 == 0;
      kind = sphere ? "sphere" : "torus";
      m = sphere ? perturbed_sphere(1.0, 3, 0.3, rng.next()) : random_torus(rng);
      m = geom::scaled(m, rng.uniform(0.2, 3.0));
      m = geom::translated(m, random_shift(rng) * 3.0);
    }
    hyperwidth::Codim1Result res;
    try {
      res = hyperwidth::width_certificate_codim1(m, c.voxel_res, c.sweep_res,
                                                 derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(i)),
                                                 c.samples);
    } catch (const FalsificationError& e) {
      throw FalsificationError("width-codim1 mesh " + std::to_string(i) + " (" + kind + "): " + e.what());
    }
    const auto& d = *res.decomposition;
    max_cube_area = std::max(max_cube_area, d.max_cube_area);
    min_facet = std::min(min_facet, d.min_facet_fraction);
    max_delta = std::max(max_delta, d.max_delta_grid);
    if (!d.isoperimetric_ok) ++iso_failures;
    ties += d.ties;
    iso_pieces += d.isoperimetric_pieces;
    vacuous += d.vacuous_pieces;
    point_failures += d.point_failures;
    min_margin = std::min(min_margin, d.min_facet_margin);
    const std::size_t hits = res.T.pair_hits[0] + res.T.pair_hits[1] + res.T.pair_hits[2];
    pair_hits += hits;
    same_cube += res.same_cube_failures;
    max_sup_ratio = std::max(max_sup_ratio, res.certificate.sup_displacement / res.l);
    const double l_expect = std::sqrt(3.0 * res.area) * (1.0 + hyperwidth::kLatticeMargin);
    max_l_error = std::max(max_l_error, std::abs(res.l - l_expect) / l_expect);
    if (!saved && !c.certificate.empty()) {
      save_width_certificate(c.certificate, res.certificate);
      saved = true;
    }
    t.add({num(i), kind, num(res.area), num(res.l), num(d.cubes), num(d.pieces), num(d.ties), num(d.max_cube_area),
           num(d.min_facet_fraction), num(d.max_delta_grid), num(res.T.x_length), num(res.T.y_length), num(hits),
           num(res.same_cube_failures), num(res.jittered), num(res.certificate.sup_displacement)});
  }
  r.value("epsilon", hyperwidth::kLatticeMargin);
  r.value("ties", static_cast<std::uint64_t>(ties));
  r.value("max_delta_grid", max_delta);
  r.value("isoperimetric.pieces", static_cast<std::uint64_t>(iso_pieces));
  r.value("isoperimetric.vacuous_pieces", static_cast<std::uint64_t>(vacuous));
  r.check(report_only(hard("isoperimetric_point_failures", static_cast<double>(point_failures), Compare::kEq, 0.0,
                           0.0, 0.0, "count")));
  r.check(hard("min_facet_margin", min_margin, Compare::kGe, 0.0, 0.0, 0.0, "count"));
  r.check(hard("max_cube_area", max_cube_area, Compare::kLt, 1.0 / 3.0, 0.0, 0.0, "exact"));
  r.check(hard("min_facet_fraction", min_facet, Compare::kGt, 0.5, 0.0, 0.0, "count"));
  r.check(hard("isoperimetric_failures", static_cast<double>(iso_failures), Compare::kEq, 0.0, 0.0, 0.0, "count"));
  r.check(hard("pair_hits", static_cast<double>(pair_hits), Compare::kEq, 0.0, 0.0, 0.0, "count"));
  r.check(hard("same_cube_failures", static_cast<double>(same_cube), Compare::kEq, 0.0, 0.0, 0.0, "count"));
  r.check(hard("max_sup_over_l", max_sup_ratio, Compare::kLe, 1.0, 0.0, 0.0, "exact"));
  r.check(hard("l_relative_error", max_l_error, Compare::kLe, 0.0, 1e-12, 0.0, "exact"));
  return r;
}

// ---------------------------------------------------------------------------

Report run_essential_curve(const EssentialConfig& c) {
  Report r("essential-curve");
  r.config("mesh", c.mesh);
  r.config("side", c.side);
  r.config("seed", c.seed);
  const bool user = !c.mesh.empty();
  geom::TriMesh m = user ? load_closed(c.mesh) : with_area(torus(1.0, 0.35, 48, 24), 1.0 / 3.0 - 1e-3);
  const double area = geom::mesh_area(m);
  const double side = c.side > 0 ? c.side : 4.0 * std::sqrt(3.0 * area);
  r.value("area", area);
  r.value("side", side);
  const auto res = hyperwidth::essential_curve_in_cube(m, side, c.seed);
  r.value("betti1", res.betti1);
  r.value("euler", static_cast<std::int64_t>(res.euler));
  r.value("components", res.components);
  r.value("cubes_scanned", static_cast<std::uint64_t>(res.cubes_scanned));
  r.value("refined_triangles", static_cast<std::uint64_t>(res.refined_triangles));
  const bool found = res.certificate.has_value();
  bool verified = false;
  if (found) {
    const auto& cert = *res.certificate;
    verified = cert.rank_verified;
    r.value("cycle_edges", static_cast<std::uint64_t>(cert.edges.size()));
    // Recheck on the refined mesh, independent of the search.
    verified = verified && !hyperwidth::z2_is_boundary(res.refined, cert.edges);
    if (!c.certificate.empty()) save_curve_certificate(c.certificate, cert);
  }
  Check f = hard("found", found ? 1.0 : 0.0, Compare::kEq, 1.0, 0.0, 0.0, "count");
  Check v = hard("rank_verified", verified ? 1.0 : 0.0, Compare::kEq, 1.0, 0.0, 0.0, "count");
  r.check(user ? report_only(f) : f);
  r.check(user ? report_only(v) : v);
  return r;
}

// ---------------------------------------------------------------------------

Report run_gen_mesh(const GenMeshConfig& c) {
  Report r("gen-mesh");
  r.config("kind", c.kind);
  r.config("scale", c.scale);
  r.config("seed", c.seed);
  r.config("out", c.out);
  if (!(c.scale > 0)) throw PreconditionError("gen-mesh: scale must be positive");
  geom::TriMesh m;
  double analytic = 0;
  if (c.kind == "icosphere") {
    r.config("radius", c.radius);
    r.config("subdivisions", c.subdivisions);
    m = icosphere(c.radius, c.subdivisions);
    analytic = 4.0 * kPi * c.radius * c.radius;
  } else if (c.kind == "torus") {
    r.config("major", c.major);
    r.config("minor", c.minor);
    r.config("nu", c.nu);
    r.config("nv", c.nv);
    m = torus(c.major, c.minor, c.nu, c.nv);
    analytic = 4.0 * kPi * kPi * c.major * c.minor;
  } else if (c.kind == "perturbed-sphere") {
    r.config("radius", c.radius);
    r.config("subdivisions", c.subdivisions);
    r.config("amplitude", c.amplitude);
    m = perturbed_sphere(c.radius, c.subdivisions, c.amplitude, c.seed);
  } else {
    throw PreconditionError("gen-mesh: unknown kind '" + c.kind + "'");
  }
  if (c.scale != 1.0) m = geom::scaled(m, c.scale);
  analytic *= c.scale * c.scale;
  const double area = geom::mesh_area(m);
  r.value("vertices", static_cast<std::uint64_t>(m.vertices.size()));
  r.value("triangles", static_cast<std::uint64_t>(m.triangles.size()));
  r.value("area", area);
  r.value("euler", static_cast<std::int64_t>(geom::euler_characteristic(m)));
  r.check(hard("closed", geom::is_closed(m) ? 1.0 : 0.0, Compare::kEq, 1.0, 0.0, 0.0, "count"));
  if (analytic > 0) {
    r.value("analytic_area", analytic);
    r.check(hard("area_relative_error", std::abs(area - analytic) / analytic, Compare::kLe, 0.01, 0.0, 0.0,
                 "exact"));
  }
  if (!c.out.empty()) geom::save_mesh(c.out, m);
  return r;
}

}  // namespace sepwidth::cli
