// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace unlearn_lab {

/// Base class for every error raised by the library.
class LabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix or vector contains NaN/Inf.
class InvalidMatrix : public LabError {
 public:
  using LabError::LabError;
};

class SvdFailure : public LabError {
 public:
  using LabError::LabError;
};

/// Least-squares residual exceeds the consistency tolerance.
class InconsistentSystem : public LabError {
 public:
  using LabError::LabError;
};

class DimensionMismatch : public LabError {
 public:
  using LabError::LabError;
};

/// More samples than features; the interpolation regime does not hold.
class RegimeViolation : public LabError {
 public:
  using LabError::LabError;
};

/// An operation was asked for a feature layout it does not support.
class LayoutMismatch : public LabError {
 public:
  using LabError::LabError;
};

class ProvenanceMismatch : public LabError {
 public:
  using LabError::LabError;
};

/// Gradient descent produced a non-finite loss even after step-size halving.
class Divergence : public LabError {
 public:
  using LabError::LabError;
};

class ConfigError : public LabError {
 public:
  using LabError::LabError;
};

}  // namespace unlearn_lab
