#include "sepwidth/kinsep/certificate.hpp"

#include <algorithm>

namespace sepwidth::kinsep {

void WidthCertificate::finalize() {
  sup_displacement = 0.0;
  for (const auto& [x, y] : sample_map) sup_displacement = std::max(sup_displacement, linf(x - y));
}

}  // namespace sepwidth::kinsep
