//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/sim/config.hpp"

#include "kmm/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kmm::sim {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(std::string_view key, const std::string& value) {
  std::uint64_t v = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || value.empty()) {
    throw ParseError("'" + std::string(key) + "' expects a non-negative integer, got '" + value +
                     "'");
  }
  return v;
}

unsigned parse_small(std::string_view key, const std::string& value) {
  const auto v = parse_uint(key, value);
  if (v > 1u << 20) {
    throw ParseError("'" + std::string(key) + "' is out of range: " + value);
  }
  return static_cast<unsigned>(v);
}

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::BaselineMM1:
      return "baseline";
    case Variant::FixedKMM:
      return "fixed-kmm";
    case Variant::PrecisionScalableKMM:
      return "ps-kmm";
    case Variant::PrecisionScalableMM2:
      return "ps-mm2";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::BaselineMM1, Variant::FixedKMM, Variant::PrecisionScalableKMM,
                 Variant::PrecisionScalableMM2}) {
    if (name == to_string(v)) {
      return v;
    }
  }
  throw ParseError("unknown variant '" + std::string(name) +
                   "' (expected baseline, fixed-kmm, ps-kmm or ps-mm2)");
}

void MxuConfig::validate() const {
  if (X == 0 || Y == 0) {
    throw ConfigError("array dimensions X and Y must be at least 1");
  }
  if (X > 4096 || Y > 4096) {
    throw ConfigError("array dimensions above 4096 are not supported");
  }
  if (w_m < 2) {
    throw ConfigError("multiplier width w_m must be at least 2");
  }
  // Tile results and the external accumulator are held in 128-bit words.
  const unsigned limit = (variant == Variant::PrecisionScalableKMM ||
                          variant == Variant::PrecisionScalableMM2)
                             ? 24
                             : 32;
  if (w_m > limit) {
    throw ConfigError("multiplier width w_m=" + std::to_string(w_m) + " exceeds " +
                      std::to_string(limit) + " for variant " + to_string(variant));
  }
  if (p == 0) {
    throw ConfigError("group size p must be at least 1");
  }
}

Dims parse_dims(std::string_view text) {
  Dims d;
  std::size_t* fields[] = {&d.M, &d.K, &d.N};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto end = i < 2 ? text.find('x', start) : text.size();
    if (end == std::string_view::npos) {
      throw ParseError("dims must look like MxKxN, got '" + std::string(text) + "'");
    }
    const std::string part(text.substr(start, end - start));
    const auto v = parse_uint("dims", part);
    if (v == 0) {
      throw ParseError("dims must be positive, got '" + std::string(text) + "'");
    }
    *fields[i] = v;
    start = end + 1;
  }
  return d;
}

std::string format_dims(const Dims& d) {
  return std::to_string(d.M) + "x" + std::to_string(d.K) + "x" + std::to_string(d.N);
}

TileSchedule make_schedule(PsMode mode, unsigned w_m) {
  TileSchedule s{mode, 0, {}};
  switch (mode) {
    case PsMode::MM:
      s.passes.push_back({"C", Operand::Whole, Operand::Whole, {{+1, 0}}});
      break;
    case PsMode::KMM2: {
      const unsigned h = w_m - 1;
      s.split = h;
      s.passes.push_back({"C1", Operand::High, Operand::High, {{+1, 2 * h}, {-1, h}}});
      s.passes.push_back({"Cs", Operand::Sum, Operand::Sum, {{+1, h}}});
      s.passes.push_back({"C0", Operand::Low, Operand::Low, {{+1, 0}, {-1, h}}});
      break;
    }
    case PsMode::MM2:
      s.split = w_m;
      s.passes.push_back({"C1", Operand::High, Operand::High, {{+1, 2 * w_m}}});
      s.passes.push_back({"C10", Operand::High, Operand::Low, {{+1, w_m}}});
      s.passes.push_back({"C01", Operand::Low, Operand::High, {{+1, w_m}}});
      s.passes.push_back({"C0", Operand::Low, Operand::Low, {{+1, 0}}});
      break;
  }
  return s;
}

SimSpec parse_sim_config(std::string_view text) {
  SimSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "variant") {
      spec.mxu.variant = parse_variant(value);
    } else if (key == "X" || key == "x") {
      spec.mxu.X = parse_small(key, value);
    } else if (key == "Y" || key == "y") {
      spec.mxu.Y = parse_small(key, value);
    } else if (key == "w_m") {
      spec.mxu.w_m = parse_small(key, value);
    } else if (key == "w_in") {
      spec.w_in = parse_small(key, value);
    } else if (key == "p") {
      spec.mxu.p = parse_small(key, value);
    } else if (key == "pipeline_latency") {
      spec.mxu.pipeline_latency = parse_small(key, value);
    } else if (key == "dims") {
      spec.dims = parse_dims(value);
    } else if (key == "seed") {
      spec.seed = parse_uint(key, value);
    } else {
      throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  spec.mxu.validate();
  return spec;
}

SimSpec read_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sim_config(buf.str());
}

}  // namespace kmm::sim
