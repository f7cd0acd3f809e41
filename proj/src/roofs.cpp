//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/roofs.hpp"

#include "kmm/bitmat.hpp"
#include "kmm/errors.hpp"

#include <string>

namespace kmm {

unsigned recursion_depth(unsigned w_in, unsigned w_m) {
  if (w_in == 0 || w_m == 0) {
    throw ConfigError("widths must be at least 1 bit");
  }
  return ceil_log2((w_in + w_m - 1) / w_m);
}

double efficiency_roof(RoofAlgorithm alg, unsigned r) {
  if (alg == RoofAlgorithm::MM) {
    return 1.0;
  }
  double roof = 1.0;
  for (unsigned i = 0; i < r; ++i) {
    roof = roof * 4.0 / 3.0;
  }
  return roof;
}

RoofModel roof_model(RoofAlgorithm alg, unsigned w_in, unsigned w_m) {
  const unsigned r = recursion_depth(w_in, w_m);
  return {alg, r, efficiency_roof(alg, r)};
}

const char* to_string(PsMode mode) {
  switch (mode) {
    case PsMode::MM:
      return "MM";
    case PsMode::KMM2:
      return "KMM2";
    case PsMode::MM2:
      return "MM2";
  }
  return "?";
}

unsigned reads_per_tile(PsMode mode) {
  switch (mode) {
    case PsMode::MM:
      return 1;
    case PsMode::KMM2:
      return 3;
    case PsMode::MM2:
      return 4;
  }
  return 0;
}

PsMode select_ps_mode(unsigned w_in, unsigned w_m, bool karatsuba) {
  if (w_m < 2) {
    throw ConfigError("multiplier width must be at least 2 bits");
  }
  if (w_in == 0 || w_in > 2 * w_m) {
    throw WidthError("input width " + std::to_string(w_in) + " is outside [1, " +
                     std::to_string(2 * w_m) + "] for " + std::to_string(w_m) +
                     "-bit multipliers");
  }
  if (w_in <= w_m) {
    return PsMode::MM;
  }
  if (karatsuba && w_in <= 2 * w_m - 2) {
    return PsMode::KMM2;
  }
  return PsMode::MM2;
}

double ps_roof(unsigned w_in, unsigned w_m, bool karatsuba) {
  return select_ps_mode(w_in, w_m, karatsuba) == PsMode::KMM2
             ? efficiency_roof(RoofAlgorithm::KMM, 1)
             : 1.0;
}

}  // namespace kmm
