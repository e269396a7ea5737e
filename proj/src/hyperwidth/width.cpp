#include "sepwidth/hyperwidth/width.hpp"

#include <algorithm>
#include <cmath>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/tolerances.hpp"

namespace sepwidth::hyperwidth {

DecompositionSummary summarize(const CubeDecomposition& dec) {
  DecompositionSummary s;
  s.cubes = dec.cubes.size();
  s.jitter_attempts = dec.jitter_attempts;
  const double l2 = dec.side * dec.side;
  for (const auto& c : dec.cubes) {
    s.max_cube_area = std::max(s.max_cube_area, c.area / l2);
    s.pieces += c.pieces.size();
    for (const auto& p : c.pieces) s.ties += p.tie ? 1 : 0;
    const auto g = good_component(c);
    s.min_facet_fraction = std::min(s.min_facet_fraction, g.min_facet_fraction);
    s.max_delta_grid = std::max(s.max_delta_grid, g.delta_grid);
    s.isoperimetric_ok = s.isoperimetric_ok && g.isoperimetric_ok;
    for (const auto& iso : g.isoperimetric) {
      ++s.isoperimetric_pieces;
      if (iso.delta >= 1.0) ++s.vacuous_pieces;
      if (iso.area < 4.0 * iso.volume * (1.0 - iso.volume)) ++s.point_failures;
    }
    for (int f = 0; f < kFacets; ++f) {
      const auto k = static_cast<std::size_t>(f);
      s.min_facet_margin = std::min(s.min_facet_margin, g.facet_fraction[k] - 0.5 - g.facet_error[k]);
    }
    s.max_u_components = std::max(s.max_u_components, g.u_components);
  }
  return s;
}

Codim1Result width_certificate_codim1(const geom::TriMesh& mesh, int voxel_res, int sweep_res,
                                      std::uint64_t seed, std::size_t samples) {
  if (mesh.empty()) throw PreconditionError("width_certificate_codim1: empty mesh");
  mesh.validate();
  if (!geom::is_closed(mesh)) throw PreconditionError("width_certificate_codim1: mesh is not closed");
  Codim1Result out;
  out.area = geom::mesh_area(mesh);
  if (!(out.area > 0.0)) throw PreconditionError("width_certificate_codim1: mesh has zero area");
  out.l = std::sqrt(3.0 * out.area) * (1.0 + kLatticeMargin);

  Vec3 origin;
  if (voxel_res > 0) {
    const auto dec = decompose(mesh, out.l, voxel_res, derive_seed(seed, 0));
    origin = dec.origin;
    out.decomposition = summarize(dec);
  } else {
    Rng rng(seed, 0);
    const double j = tol::kJitter * out.l;
    origin = {rng.uniform(0.0, j), rng.uniform(0.0, j), rng.uniform(0.0, j)};
  }
  out.T = three_plane_T(mesh, sweep_res, out.l, origin);

  auto& cert = out.certificate;
  cert.route = "three-plane";
  cert.target_dimension = 1;
  cert.mesh_scale = out.l;
  cert.claimed_bound = out.l;
  Rng rng(seed, 1);
  std::vector<Vec3> points = mesh.vertices;
  const auto extra = geom::sample_surface(mesh, samples, rng);
  points.insert(points.end(), extra.begin(), extra.end());
  cert.sample_map.reserve(points.size());
  for (const auto& x : points) {
    const auto r = retraction_phi(out.T, x);
    if (r.jitters > 0) ++out.jittered;
    if (!in_closed_cube(out.T, r.cube, x) || !in_closed_cube(out.T, r.cube, r.point)) ++out.same_cube_failures;
    cert.sample_map.emplace_back(x, r.point);
  }
  cert.finalize();
  return out;
}

}  // namespace sepwidth::hyperwidth
