//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/curves.hpp"

#include "kmm/area.hpp"
#include "kmm/complexity.hpp"
#include "kmm/roofs.hpp"

#include <iomanip>
#include <sstream>

namespace kmm {

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string arith_count_csv(std::uint64_t d, unsigned n_max) {
  std::ostringstream os;
  os << "n,alg,arith_count,relative_to_kmm\n";
  for (unsigned n = 2; n <= n_max; n *= 2) {
    const double kmm = arith_counts(ArithAlgorithm::KMM, n, d);
    for (auto alg : {ArithAlgorithm::MM, ArithAlgorithm::KSMM, ArithAlgorithm::KMM}) {
      const double count = arith_counts(alg, n, d);
      os << n << "," << to_string(alg) << "," << format_number(count) << ","
         << format_number(count / kmm) << "\n";
    }
  }
  return os.str();
}

std::string multiplier_roof_csv(unsigned w_m) {
  std::ostringstream os;
  os << "w_in,alg,roof\n";
  for (unsigned w = 1; w <= 2 * w_m; ++w) {
    os << w << ",MM2," << format_number(ps_roof(w, w_m, false)) << "\n";
    os << w << ",KMM2," << format_number(ps_roof(w, w_m, true)) << "\n";
  }
  return os.str();
}

std::string area_roof_csv(unsigned X, unsigned Y, unsigned p, unsigned w_m, unsigned step,
                          unsigned w_max) {
  std::ostringstream os;
  os << "w_in,alg,relative_roof,levels\n";
  for (unsigned w = step; w <= w_max; w += step) {
    const double base = area_mm1_mxu(X, Y, w, p).total_au;
    const auto ksmm = select_ksmm_levels(w, w_m, X, Y, p);
    const auto kmm = select_kmm_levels(w, w_m, X, Y, p);
    os << w << ",MM,1,0\n";
    os << w << ",KSMM," << format_number(base / ksmm.area.total_au) << "," << ksmm.levels << "\n";
    os << w << ",KMM," << format_number(base / kmm.area.total_au) << "," << kmm.levels << "\n";
  }
  return os.str();
}

}  // namespace kmm
