/*
 * Copyright 2026 The pfcurves Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pfcurves/matrix.hpp"

namespace pfcurves {

/// Largest size handled by first-row expansion; above it the Pfaffian is
/// computed by skew-congruent elimination.
inline constexpr std::size_t kPfaffianExpansionLimit = 8;

/// Calls `visit(pairs, sign)` once per perfect matching of {0, ..., n-1}.
/// Matchings are listed as pairs (i_l, j_l) with i_1 < i_2 < ... and
/// i_l < j_l; `sign` is the sign of the permutation (i_1 j_1 i_2 j_2 ...).
/// Returns the number of matchings visited, (n-1)!! for even n, 0 for odd n.
template <typename Visitor>
std::size_t for_each_pairing(std::size_t n, Visitor&& visit) {
  if (n % 2 != 0) return 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> used(n, false);
  std::size_t count = 0;

  auto sign_of = [&]() {
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (const auto& [i, j] : pairs) {
      perm.push_back(i);
      perm.push_back(j);
    }
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  };

  auto recurse = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      ++count;
      visit(std::as_const(pairs), sign_of());
      return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(first, j);
      self(self);
      pairs.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return count;
}

/// The defining signed sum over all perfect matchings. Exponential; kept
/// as an independent cross-check for small sizes.
inline Rat pfaffian_by_pairings(const SkewMatQ& a) {
  Rat total = 0;
  for_each_pairing(a.size(), [&](const auto& pairs, int sign) {
    Rat term = sign;
    for (const auto& [i, j] : pairs) term *= a(i, j);
    total += term;
  });
  if (a.size() % 2 != 0) return 0;
  return total;
}

namespace detail {

inline Rat pfaffian_expand(const SkewMatQ& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1;
  if (idx.size() % 2 != 0) return 0;
  if (idx.size() == 2) return a(idx[0], idx[1]);
  const std::size_t first = idx.front();
  Rat total = 0;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const Rat& entry = a(first, idx[k]);
    if (entry == 0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    const Rat sub = pfaffian_expand(a, rest);
    if (k % 2 == 1) {
      total += entry * sub;
    } else {
      total -= entry * sub;
    }
  }
  return total;
}

// Reduces A to block-diagonal form by congruences with unit-triangular
// matrices (which leave the Pfaffian unchanged) plus index swaps (each
// flips the sign).
inline Rat pfaffian_eliminate(MatQ m) {
  const std::size_t n = m.rows();
  Rat result = 1;
  auto swap_index = [&](std::size_t p, std::size_t q) {
    for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(q, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, p), m(i, q));
  };
  // index t += c * index s, applied to rows and columns
  auto add_index = [&](std::size_t t, std::size_t s, const Rat& c) {
    for (std::size_t j = 0; j < n; ++j) m(t, j) += c * m(s, j);
    for (std::size_t i = 0; i < n; ++i) m(i, t) += c * m(i, s);
  };
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && m(k, p) == 0) ++p;
    if (p == n) return 0;
    if (p != k + 1) {
      swap_index(k + 1, p);
      result = -result;
    }
    const Rat pivot = m(k, k + 1);
    result *= pivot;
    for (std::size_t i = k + 2; i < n; ++i) {
      if (m(k, i) != 0) add_index(i, k + 1, -m(k, i) / pivot);
      if (m(k + 1, i) != 0) add_index(i, k, m(k + 1, i) / pivot);
    }
  }
  return result;
}

}  // namespace detail

/// Pfaffian of a skew-symmetric matrix: 0 for odd size, 1 for the empty
/// matrix, and pf(A)^2 = det(A) in general.
inline Rat pfaffian(const SkewMatQ& a) {
  const std::size_t n = a.size();
  if (n % 2 != 0) return 0;
  if (n == 0) return 1;
  if (n <= kPfaffianExpansionLimit) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return detail::pfaffian_expand(a, idx);
  }
  return detail::pfaffian_eliminate(a.matrix());
}

/// Validating overload for raw matrices; rejects anything that is not skew.
inline Rat pfaffian(const MatQ& m) { return pfaffian(SkewMatQ(m)); }

/// Pfaffian of A with the listed rows and columns deleted. Duplicates in
/// `removed` are ignored; indices must be in range.
inline Rat pfaffian_minor(const SkewMatQ& a, std::span<const std::size_t> removed) {
  std::vector<bool> drop(a.size(), false);
  for (auto r : removed) {
    if (r >= a.size()) throw std::out_of_range("pfaffian_minor: index out of range");
    drop[r] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!drop[i]) keep.push_back(i);
  return pfaffian(a.principal(keep));
}

inline Rat pfaffian_minor(const SkewMatQ& a, std::initializer_list<std::size_t> removed) {
  return pfaffian_minor(a, std::span<const std::size_t>(removed.begin(), removed.size()));
}

}  // namespace pfcurves
