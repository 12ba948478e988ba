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

#include "lopp/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "lopp/errors.hpp"

namespace lopp {

namespace {

// Ryser terms from Gray-code positions [begin, end). Position k visits the
// subset whose bitmask is k ^ (k >> 1).
Complex ryser_block(const ComplexMatrix& m, std::uint64_t begin, std::uint64_t end) {
  const int n = static_cast<int>(m.rows());
  ComplexVector row_sums = ComplexVector::Zero(n);
  std::uint64_t gray = begin ^ (begin >> 1);
  for (int j = 0; j < n; ++j) {
    if (gray & (std::uint64_t{1} << j)) row_sums += m.col(j);
  }

  auto term = [&](std::uint64_t subset) {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    return (std::popcount(subset) % 2 == 0) ? prod : -prod;
  };

  Complex sum = 0.0;
  if (gray != 0) sum += term(gray);
  for (std::uint64_t k = begin + 1; k < end; ++k) {
    const int bit = std::countr_zero(k);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    gray ^= mask;
    if (gray & mask) {
      row_sums += m.col(bit);
    } else {
      row_sums -= m.col(bit);
    }
    sum += term(gray);
  }
  return sum;
}

// per(A[n, s]) = prod n_j! * sum over maps f from the expanded columns to
// the rows, with row j hit n_j times, of prod_c A[f(c), c]. The sum is built
// one column at a time over states "copies of each row used so far". Every
// term is a genuine product of entries, so tiny permanents keep their
// relative accuracy. The same recursion on |A| gives per(|A|[n, s]).
PermanentEstimate assignment_sum(const ComplexMatrix& a, const std::vector<int>& row_reps,
                                 const std::vector<int>& col_reps) {
  const std::size_t rows = row_reps.size();
  std::vector<std::size_t> stride(rows);
  std::size_t states = 1;
  for (std::size_t j = 0; j < rows; ++j) {
    stride[j] = states;
    states *= static_cast<std::size_t>(row_reps[j]) + 1;
  }
  std::vector<Complex> cur(states, Complex{0.0});
  std::vector<Complex> next(states);
  std::vector<double> cur_abs(states, 0.0);
  std::vector<double> next_abs(states);
  cur[0] = 1.0;
  cur_abs[0] = 1.0;
  for (std::size_t c = 0; c < col_reps.size(); ++c) {
    for (int copy = 0; copy < col_reps[c]; ++copy) {
      std::fill(next.begin(), next.end(), Complex{0.0});
      std::fill(next_abs.begin(), next_abs.end(), 0.0);
      for (std::size_t s = 0; s < states; ++s) {
        if (cur_abs[s] == 0.0) continue;
        for (std::size_t j = 0; j < rows; ++j) {
          const int used = static_cast<int>((s / stride[j]) % (row_reps[j] + 1));
          if (used == row_reps[j]) continue;
          next[s + stride[j]] += cur[s] * a(j, c);
          next_abs[s + stride[j]] += cur_abs[s] * std::abs(a(j, c));
        }
      }
      cur.swap(next);
      cur_abs.swap(next_abs);
    }
  }
  double factorials = 1.0;
  for (int r : row_reps) {
    for (int k = 2; k <= r; ++k) factorials *= k;
  }
  return {factorials * cur[states - 1], factorials * cur_abs[states - 1]};
}

double log_product_size(const std::vector<int>& reps) {
  double s = 0.0;
  for (int r : reps) s += std::log(static_cast<double>(r) + 1.0);
  return s;
}

}  // namespace

Complex permanent(const ComplexMatrix& m, int threads) {
  if (m.rows() != m.cols()) {
    throw NonSquare("permanent: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPermanentDimension) {
    throw DimensionTooLarge("permanent: dimension " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxPermanentDimension));
  }
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);

  const std::uint64_t positions = std::uint64_t{1} << n;
  const std::uint64_t blocks = n >= 14 ? 64 : 1;
  const std::uint64_t block_size = positions / blocks;

  std::vector<Complex> partial(blocks, Complex{0.0});
  const int workers = std::clamp<int>(threads, 1, static_cast<int>(blocks));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      partial[b] = ryser_block(m, b * block_size, (b + 1) * block_size);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) {
          partial[b] = ryser_block(m, b * block_size, (b + 1) * block_size);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  Complex sum = 0.0;
  for (const auto& p : partial) sum += p;
  return (n % 2 == 0) ? sum : -sum;
}

Complex permanent_naive(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquare("permanent_naive: matrix is not square");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxNaiveDimension) throw DimensionTooLarge("permanent_naive: dimension too large");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

ComplexMatrix expand_with_multiplicity(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                       const PhotonConfig& col_reps) {
  if (static_cast<Eigen::Index>(row_reps.size()) != base.rows() ||
      static_cast<Eigen::Index>(col_reps.size()) != base.cols()) {
    throw DimensionMismatch("expand_with_multiplicity: rep vectors do not match base shape");
  }
  if (row_reps.total() != col_reps.total()) {
    throw MismatchedTotals("expand_with_multiplicity: row and column totals differ");
  }
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < row_reps.size(); ++j) rows.insert(rows.end(), row_reps[j], j);
  for (std::size_t i = 0; i < col_reps.size(); ++i) cols.insert(cols.end(), col_reps[i], i);
  ComplexMatrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = base(rows[r], cols[c]);
  }
  return out;
}

PermanentEstimate permanent_with_bound(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                       const PhotonConfig& col_reps) {
  if (static_cast<Eigen::Index>(row_reps.size()) != base.rows() ||
      static_cast<Eigen::Index>(col_reps.size()) != base.cols()) {
    throw DimensionMismatch("permanent: rep vectors do not match base shape");
  }
  const int total = row_reps.total();
  if (total != col_reps.total()) {
    throw MismatchedTotals("permanent: row total " + std::to_string(total) +
                           " != column total " + std::to_string(col_reps.total()));
  }
  if (total == 0) return {1.0, 1.0};

  std::vector<Eigen::Index> used_rows;
  std::vector<Eigen::Index> used_cols;
  std::vector<int> rreps;
  std::vector<int> creps;
  for (std::size_t j = 0; j < row_reps.size(); ++j) {
    if (row_reps[j] > 0) {
      used_rows.push_back(j);
      rreps.push_back(row_reps[j]);
    }
  }
  for (std::size_t i = 0; i < col_reps.size(); ++i) {
    if (col_reps[i] > 0) {
      used_cols.push_back(i);
      creps.push_back(col_reps[i]);
    }
  }
  ComplexMatrix sub(used_rows.size(), used_cols.size());
  for (std::size_t r = 0; r < used_rows.size(); ++r) {
    for (std::size_t c = 0; c < used_cols.size(); ++c) sub(r, c) = base(used_rows[r], used_cols[c]);
  }

  // per(A[n, s]) = per(A^T[s, n]); keep the states on the side with fewer.
  if (log_product_size(creps) < log_product_size(rreps)) {
    return assignment_sum(sub.transpose(), creps, rreps);
  }
  return assignment_sum(sub, rreps, creps);
}

Complex permanent_with_multiplicity(const ComplexMatrix& base, const PhotonConfig& row_reps,
                                    const PhotonConfig& col_reps) {
  return permanent_with_bound(base, row_reps, col_reps).value;
}

}  // namespace lopp
