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

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfcurves {

/// Exact rational scalar. Always kept in canonical form (gcd 1, positive
/// denominator); every constructor path below calls canonicalize().
using Rat = mpq_class;

/// Coordinate vector over Q.
using Vec = std::vector<Rat>;

/// Thrown when textual or JSON input cannot be turned into a library value.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" (optional leading '-'). Rejects anything else,
/// including a zero denominator and the point at infinity.
inline Rat parse_rat(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const std::string s(text);
  if (s == "inf" || s == "-inf" || s == "infinity" || s == "∞") {
    throw ParseError("point at infinity is not accepted; re-coordinate so every marking is affine");
  }
  const auto slash = s.find('/');
  auto is_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t k = (part.front() == '-' || part.front() == '+') ? 1 : 0;
    if (k == part.size()) return false;
    for (; k < part.size(); ++k) {
      if (part[k] < '0' || part[k] > '9') return false;
    }
    return true;
  };
  const std::string_view num_part = std::string_view(s).substr(0, slash);
  if (!is_int(num_part)) throw ParseError("malformed rational literal: '" + s + "'");
  mpz_class num(std::string(num_part.front() == '+' ? num_part.substr(1) : num_part), 10);
  mpz_class den = 1;
  if (slash != std::string::npos) {
    const std::string_view den_part = std::string_view(s).substr(slash + 1);
    if (!is_int(den_part) || den_part.front() == '-' || den_part.front() == '+') {
      throw ParseError("malformed rational literal: '" + s + "'");
    }
    den = mpz_class(std::string(den_part), 10);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  }
  return make_rat(num, den);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Floor of a rational as a 64-bit integer; throws if it does not fit.
inline std::int64_t floor_to_int(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("value does not fit in 64 bits");
  return q.get_si();
}

inline bool is_zero_vector(const Vec& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

inline Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec scaled(const Vec& v, const Rat& c) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

/// Rescales so the first nonzero coordinate is 1. Zero vectors pass through.
inline Vec normalize_leading(Vec v) {
  for (const auto& x : v) {
    if (x != 0) {
      const Rat lead = x;
      for (auto& y : v) y /= lead;
      break;
    }
  }
  return v;
}

inline Vec parse_vec(const std::vector<std::string>& items) {
  Vec out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_rat(s));
  return out;
}

}  // namespace pfcurves
