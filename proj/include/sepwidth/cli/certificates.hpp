#pragma once

#include <iosfwd>
#include <string>

#include "sepwidth/hyperwidth/essential.hpp"
#include "sepwidth/kinsep/certificate.hpp"

namespace sepwidth::cli {

// Text formats. Width certificates: a `width-certificate` line, header
// fields `key value`, then `vertices K` with lines `copy region tx ty tz x y z`,
// `simplices S` with lines `k v1 .. vk`, and `samples P` with lines
// `x y z fx fy fz`. Curve certificates: `curve-certificate`, header fields,
// `cycle n` with lines `x y z`, and `edges n` with lines `i j` (refined-mesh
// vertex indices). Doubles use the shortest round-trip form.
void write_width_certificate(std::ostream& out, const kinsep::WidthCertificate& cert);
void write_curve_certificate(std::ostream& out, const hyperwidth::CurveCertificate& cert);
void save_width_certificate(const std::string& path, const kinsep::WidthCertificate& cert);
void save_curve_certificate(const std::string& path, const hyperwidth::CurveCertificate& cert);

}  // namespace sepwidth::cli
