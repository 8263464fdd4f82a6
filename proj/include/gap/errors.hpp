// Copyright 2026 The gapmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gap {

/// Base class for every error raised by the library. The CLI maps these
/// to exit code 3 (numeric error) unless noted otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AsymmetryExceeded : public Error {
 public:
  explicit AsymmetryExceeded(double deviation)
      : Error("matrix is not Hermitian: max |M_ij - conj(M_ji)| = " +
              std::to_string(deviation)),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NonFinite : public Error {
 public:
  NonFinite() : Error("matrix or vector has a NaN/inf entry") {}
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  explicit NotPositive(double eigenvalue)
      : Error("operator is not positive: eigenvalue " +
              std::to_string(eigenvalue)),
        eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class TraceNotOne : public Error {
 public:
  explicit TraceNotOne(double trace)
      : Error("density operator trace is " + std::to_string(trace) +
              ", expected 1") {}
};

class EmptySupport : public Error {
 public:
  EmptySupport() : Error("no eigenvalue exceeds the support cutoff") {}
};

class OffSupport : public Error {
 public:
  explicit OffSupport(double residual)
      : Error("vector leaves the support subspace: residual norm " +
              std::to_string(residual)) {}
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("cannot project the zero vector onto the sphere") {}
};

class DimMismatch : public Error {
 public:
  DimMismatch(long expected, long got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class EmptyBatch : public Error {
 public:
  EmptyBatch() : Error("estimator needs more samples") {}
};

class NotOnSphere : public Error {
 public:
  explicit NotOnSphere(double norm)
      : Error("sample is not a unit vector: norm " + std::to_string(norm)) {}
};

class TailBoundTooLoose : public Error {
 public:
  using Error::Error;
};

class NonzeroMean : public Error {
 public:
  NonzeroMean() : Error("GAP construction needs a mean-zero Gaussian") {}
};

/// Malformed input files (wrong length arrays, bad headers, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gap
