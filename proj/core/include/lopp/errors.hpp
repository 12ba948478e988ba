// Copyright 2026 The lopp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOPP_ERRORS_HPP
#define LOPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lopp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values (bad probabilities, out-of-range parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operand sizes that do not fit together (modes, patterns, matrices).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonSquare : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class DimensionTooLarge : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class MismatchedTotals : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class BadModeIndex : public DimensionMismatch {
 public:
  using DimensionMismatch::DimensionMismatch;
};

class NotUnitary : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class RowsNotOrthonormal : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ZeroProbabilityPattern : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class BadParameters : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DegenerateTheta : public BadParameters {
 public:
  using BadParameters::BadParameters;
};

class BadDistributionShape : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace lopp

#endif  // LOPP_ERRORS_HPP
