#pragma once

#include "sepwidth/kernels/kernels.hpp"

namespace sepwidth::kernels {

const KernelTable& scalar_table();
#if defined(SEPWIDTH_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace sepwidth::kernels
