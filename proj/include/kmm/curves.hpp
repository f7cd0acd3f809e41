//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>

namespace kmm {

/// Shortest decimal that round-trips typical model values (up to 15
/// significant digits, no trailing zeros).
std::string format_number(double v);

/// n,alg,arith_count,relative_to_kmm for n = 2, 4, ..., n_max.
std::string arith_count_csv(std::uint64_t d = 64, unsigned n_max = 64);

/// w_in,alg,roof for w_in = 1..2 w_m on precision-scalable MM2 and KMM2 arrays.
std::string multiplier_roof_csv(unsigned w_m = 8);

/// w_in,alg,relative_roof,levels for w_in = step, 2 step, ..., w_max. The
/// relative roof is baseline area over architecture area at equal X and Y.
/// `w_m` is the narrowest unit the level selection may still split.
std::string area_roof_csv(unsigned X = 64, unsigned Y = 64, unsigned p = 4, unsigned w_m = 4,
                          unsigned step = 8, unsigned w_max = 64);

}  // namespace kmm
