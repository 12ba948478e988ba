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

#ifndef LOPP_PERMANENT_HPP
#define LOPP_PERMANENT_HPP

#include <complex>

#include <Eigen/Dense>

#include "lopp/fock.hpp"

namespace lopp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest dimension accepted by permanent().
inline constexpr int kMaxPermanentDimension = 30;
/// Largest dimension accepted by permanent_naive().
inline constexpr int kMaxNaiveDimension = 10;

/// Permanent via Ryser's formula with Gray-code subset ordering, O(2^n n).
///
/// The subset loop is cut into a fixed number of contiguous Gray-code blocks
/// whose partial sums are reduced in block order, so the result does not
/// depend on `threads`. The empty matrix has permanent 1.
///
/// Throws NonSquare or DimensionTooLarge (n > 30).
Complex permanent(const ComplexMatrix& m, int threads = 1);

/// Sum over all permutations. Reference implementation for n <= 10.
Complex permanent_naive(const ComplexMatrix& m);

/// Builds base[n, s]: row j repeated row_reps[j] times, column i repeated
/// col_reps[i] times.
ComplexMatrix expand_with_multiplicity(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                       const PhotonConfig& col_reps);

/// per(base[row_reps, col_reps]) without materialising the expanded matrix.
///
/// Sums over assignments of columns to row copies, one column at a time,
/// with states counting the copies of each row already used. Cost is
/// prod(reps + 1) * total * rows on whichever side is cheaper. Free of the
/// cancellation in Ryser's alternating sum, so small permanents keep their
/// relative accuracy.
///
/// Throws DimensionMismatch when the rep vectors do not match the base shape
/// and MismatchedTotals when their sums differ.
Complex permanent_with_multiplicity(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                    const PhotonConfig& col_reps);

struct PermanentEstimate {
  Complex value;
  /// per(|base|[row_reps, col_reps]); the rounding error of `value` is at
  /// most about total * 2^-53 times this.
  double magnitude = 0.0;
};

/// permanent_with_multiplicity together with the permanent of the entrywise
/// absolute values, from the same pass. Same errors.
PermanentEstimate permanent_with_bound(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                       const PhotonConfig& col_reps);

}  // namespace lopp

#endif  // LOPP_PERMANENT_HPP
