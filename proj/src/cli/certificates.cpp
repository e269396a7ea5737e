#include "sepwidth/cli/certificates.hpp"

#include <fstream>
#include <ostream>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"

namespace sepwidth::cli {

namespace {

void point(std::ostream& out, const Vec3& p) {
  out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z);
}

}  // namespace

void write_width_certificate(std::ostream& out, const kinsep::WidthCertificate& cert) {
  out << "width-certificate\n";
  out << "route " << cert.route << '\n';
  out << "target_dimension " << cert.target_dimension << '\n';
  out << "mesh_scale " << format_double(cert.mesh_scale) << '\n';
  out << "claimed_bound " << format_double(cert.claimed_bound) << '\n';
  out << "sup_displacement " << format_double(cert.sup_displacement) << '\n';
  out << "vertices " << cert.nerve.vertices.size() << '\n';
  for (const auto& v : cert.nerve.vertices) {
    out << v.copy << ' ' << v.region << ' ' << v.translate[0] << ' ' << v.translate[1] << ' ' << v.translate[2]
        << ' ';
    point(out, v.point);
    out << '\n';
  }
  out << "simplices " << cert.nerve.simplices.size() << '\n';
  for (const auto& s : cert.nerve.simplices) {
    out << s.size();
    for (int v : s) out << ' ' << v;
    out << '\n';
  }
  out << "samples " << cert.sample_map.size() << '\n';
  for (const auto& [x, y] : cert.sample_map) {
    point(out, x);
    out << ' ';
    point(out, y);
    out << '\n';
  }
}

void write_curve_certificate(std::ostream& out, const hyperwidth::CurveCertificate& cert) {
  out << "curve-certificate\n";
  out << "side " << format_double(cert.side) << '\n';
  out << "cube_lo ";
  point(out, cert.cube.lo);
  out << "\ncube_hi ";
  point(out, cert.cube.hi);
  out << "\npairing ";
  for (auto b : cert.pairing) out << static_cast<int>(b);
  out << "\nrank_verified " << (cert.rank_verified ? 1 : 0) << '\n';
  out << "cycle " << cert.cycle.size() << '\n';
  for (const auto& p : cert.cycle) {
    point(out, p);
    out << '\n';
  }
  out << "edges " << cert.edges.size() << '\n';
  for (const auto& [a, b] : cert.edges) out << a << ' ' << b << '\n';
}

void save_width_certificate(const std::string& path, const kinsep::WidthCertificate& cert) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  write_width_certificate(f, cert);
}

void save_curve_certificate(const std::string& path, const hyperwidth::CurveCertificate& cert) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  write_curve_certificate(f, cert);
}

}  // namespace sepwidth::cli
