//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

namespace kmm {

enum class RoofAlgorithm { MM, KMM };

/// ceil(log2(ceil(w_in / w_m))): digit-splitting levels needed to fit w_in-bit
/// operands on w_m-bit multipliers.
unsigned recursion_depth(unsigned w_in, unsigned w_m);

/// Effective w_m-bit multiplies per multiplier per cycle at best: 1 for the
/// conventional algorithm, (4/3)^r with r Karatsuba levels.
double efficiency_roof(RoofAlgorithm alg, unsigned r);

struct RoofModel {
  RoofAlgorithm algorithm;
  unsigned r;
  double roof;
};

RoofModel roof_model(RoofAlgorithm alg, unsigned w_in, unsigned w_m);

/// Operating modes of a precision-scalable array.
enum class PsMode {
  MM,    // operands fit the multipliers; one read per tile
  KMM2,  // one Karatsuba level on (w_m - 1)-bit digits; three reads
  MM2,   // four w_m-bit digit products; four reads
};

const char* to_string(PsMode mode);
unsigned reads_per_tile(PsMode mode);

/// MM for w_in <= w_m. Above that, a Karatsuba-capable array uses KMM2 up to
/// 2 w_m - 2 and MM2 up to 2 w_m; a conventional one always uses MM2.
/// Throws WidthError outside [1, 2 w_m].
PsMode select_ps_mode(unsigned w_in, unsigned w_m, bool karatsuba);

/// Roof of a precision-scalable array in the mode chosen for w_in.
double ps_roof(unsigned w_in, unsigned w_m, bool karatsuba);

}  // namespace kmm
