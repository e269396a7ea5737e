#pragma once

#include <cstdint>

#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::cli {

/// Subdivided icosahedron projected to the sphere. radius > 0,
/// 0 <= subdivisions <= 7.
geom::TriMesh icosphere(double radius, int subdivisions, const Vec3& center = {});

/// Torus of revolution about the z axis, major radius R > minor radius r > 0,
/// nu segments around the axis and nv around the tube (both >= 3).
geom::TriMesh torus(double major, double minor, int nu, int nv, const Vec3& center = {});

/// Icosphere whose radius is modulated by a smooth seeded random function,
/// radius * (1 + amplitude * g(direction)) with |g| <= 1. amplitude in
/// [0, 0.5); amplitude 0 gives exactly the icosphere.
geom::TriMesh perturbed_sphere(double radius, int subdivisions, double amplitude,
                               std::uint64_t seed, const Vec3& center = {});

}  // namespace sepwidth::cli
