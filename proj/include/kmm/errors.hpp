//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace kmm {

/// Base class for every error raised by the library. Each subclass names the
/// invariant that was violated so the CLI can report it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bit-slice was requested on a matrix narrower than two bits.
class InvalidSplitError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree (A.cols != B.rows, or mismatched element-wise shapes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit the declared bitwidth of its carrier.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Operand width is not accepted by the target datapath (simulator inputs).
class WidthError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination (non-power-of-two digit count, bad geometry...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix or configuration text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An instrumented run produced an intermediate that overflowed the width it
/// is accounted at. This signals a bug, never bad user input.
class WidthViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kmm
