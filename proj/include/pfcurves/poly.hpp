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
#include <utility>
#include <vector>

#include "pfcurves/rational.hpp"

namespace pfcurves {

/// Dense univariate polynomial over Q; coefficient k multiplies z^k.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class UniPoly {
 public:
  UniPoly() = default;

  explicit UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rat& c) { return UniPoly(std::vector<Rat>{c}); }

  /// z - root
  static UniPoly linear_factor(const Rat& root) { return UniPoly(std::vector<Rat>{-root, Rat(1)}); }

  bool is_zero() const { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Rat>& coefficients() const { return coeffs_; }

  Rat coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }

  Rat operator()(const Rat& t) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rat> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<long>(k);
    return UniPoly(std::move(out));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }

  UniPoly& operator*=(const Rat& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rat& c) { return a *= c; }
  friend UniPoly operator*(const Rat& c, UniPoly a) { return a *= c; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

}  // namespace pfcurves
