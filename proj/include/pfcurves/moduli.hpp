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
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfcurves/rational.hpp"

namespace pfcurves {

/// dim X - K_X . beta + m - 3, the expected dimension of M_{0,m}(X, beta).
inline std::int64_t expected_dim(std::int64_t dim_x, std::int64_t minus_k_dot_beta, std::int64_t m) {
  return dim_x + minus_k_dot_beta + m - 3;
}

enum class CoveringKind { ProjectiveSpace, Quadric };

struct BoundPair {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  friend bool operator==(const BoundPair&, const BoundPair&) = default;
};

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// Lower and upper bounds on the minimal rational m-connecting degree of
/// P^n or of the n-dimensional quadric.
inline BoundPair covering_bounds(CoveringKind kind, std::int64_t n, std::int64_t m) {
  if (n < 2) throw std::invalid_argument("covering_bounds: n must be >= 2");
  if (m < 2) throw std::invalid_argument("covering_bounds: m must be >= 2");
  if (kind == CoveringKind::ProjectiveSpace) {
    return {m - 1 - detail::floor_div(2 * (m - 2), n + 1), m - 1 - detail::floor_div(m - 1, n + 1)};
  }
  if (m == 2) return {2, 2};
  return {m - 1 - detail::floor_div(m - 3, n), m - 1};
}

/// Number of bisecant lines to a smooth degree-d genus-g curve in V5:
/// C(d-2, 2) - 3g.
inline std::int64_t bisecant_count(std::int64_t d, std::int64_t g) {
  if (d < 2) throw std::invalid_argument("bisecant_count: d must be >= 2");
  return (d - 2) * (d - 3) / 2 - 3 * g;
}

/// Divisor class a*H - sum b_i E_i on a del Pezzo surface of degree delta,
/// viewed as the blow-up of P^2 in 9 - delta points.
class DPClass {
 public:
  DPClass(int delta, Rat a, std::vector<Rat> b) : delta_(delta), a_(std::move(a)), b_(std::move(b)) {
    if (delta_ < 1 || delta_ > 8) throw std::invalid_argument("del Pezzo degree must lie in [1, 8]");
    if (b_.size() != static_cast<std::size_t>(9 - delta_)) {
      throw std::invalid_argument("class on a degree-" + std::to_string(delta_) + " surface needs " +
                                  std::to_string(9 - delta_) + " exceptional coefficients");
    }
  }

  static DPClass anticanonical(int delta) { return DPClass(delta, 3, std::vector<Rat>(9 - delta, Rat(1))); }
  static DPClass canonical(int delta) { return DPClass(delta, -3, std::vector<Rat>(9 - delta, Rat(-1))); }

  /// Parses "delta:a:b1,b2,...".
  static DPClass parse(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("class must look like delta:a:b1,b2,...");
    int delta = 0;
    try {
      std::size_t used = 0;
      delta = std::stoi(text.substr(0, c1), &used);
      if (used != c1) throw ParseError("bad delta");
    } catch (const std::logic_error&) {
      throw ParseError("class: malformed degree in '" + text + "'");
    }
    const Rat a = parse_rat(text.substr(c1 + 1, c2 - c1 - 1));
    std::vector<Rat> b;
    const std::string rest = text.substr(c2 + 1);
    if (!rest.empty()) {
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) b.push_back(parse_rat(item));
    }
    try {
      return DPClass(delta, a, std::move(b));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  std::string str() const {
    std::string s = std::to_string(delta_) + ":" + to_string(a_) + ":";
    for (std::size_t i = 0; i < b_.size(); ++i) s += (i ? "," : "") + to_string(b_[i]);
    return s;
  }

  int delta() const { return delta_; }
  const Rat& a() const { return a_; }
  const std::vector<Rat>& b() const { return b_; }
  Rat b_sum() const {
    Rat s = 0;
    for (const auto& x : b_) s += x;
    return s;
  }

  friend DPClass operator+(const DPClass& x, const DPClass& y) {
    check_same(x, y);
    std::vector<Rat> b(x.b_.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = x.b_[i] + y.b_[i];
    return DPClass(x.delta_, x.a_ + y.a_, std::move(b));
  }
  friend DPClass operator-(const DPClass& x, const DPClass& y) {
    check_same(x, y);
    std::vector<Rat> b(x.b_.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = x.b_[i] - y.b_[i];
    return DPClass(x.delta_, x.a_ - y.a_, std::move(b));
  }
  friend bool operator==(const DPClass&, const DPClass&) = default;

  static void check_same(const DPClass& x, const DPClass& y) {
    if (x.delta_ != y.delta_) throw std::invalid_argument("classes live on del Pezzo surfaces of different degree");
  }

 private:
  int delta_;
  Rat a_;
  std::vector<Rat> b_;
};

/// Intersection pairing a a' - sum b_i b_i'.
inline Rat dp_pair(const DPClass& x, const DPClass& y) {
  DPClass::check_same(x, y);
  Rat s = x.a() * y.a();
  for (std::size_t i = 0; i < x.b().size(); ++i) s -= x.b()[i] * y.b()[i];
  return s;
}

/// Arithmetic genus (C^2 + C.K) / 2 + 1.
inline Rat dp_genus(const DPClass& c) {
  return (dp_pair(c, c) + dp_pair(c, DPClass::canonical(c.delta()))) / 2 + 1;
}

enum class ConePosition { NotNef, NefNotAmple, Ample };

inline std::string to_string(ConePosition p) {
  switch (p) {
    case ConePosition::NotNef: return "NotNef";
    case ConePosition::NefNotAmple: return "NefNotAmple";
    case ConePosition::Ample: return "Ample";
  }
  return "NotNef";
}

/// Nef/ample test for delta in {5,...,8}, by pairing with the curves that
/// span the cone of curves:
///   delta >= 7: a >= b and every b_i >= 0 (b = sum of the b_i);
///   delta 5, 6: every b_i >= 0 and a >= b_i + b_j for i != j.
/// Ample iff the same inequalities hold strictly.
inline ConePosition dp_cone_position(const DPClass& c) {
  const int delta = c.delta();
  if (delta < 5 || delta > 8) throw std::invalid_argument("cone description is only available for delta in {5,6,7,8}");
  const Rat& a = c.a();
  const auto& b = c.b();
  bool nef = true;
  bool strict = true;
  auto check = [&](const Rat& lhs, const Rat& rhs) {
    if (lhs < rhs) nef = false;
    if (!(lhs > rhs)) strict = false;
  };
  for (const auto& bi : b) check(bi, Rat(0));
  if (delta >= 7) {
    check(a, c.b_sum());
  } else {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) check(a, b[i] + b[j]);
  }
  if (!nef) return ConePosition::NotNef;
  return strict ? ConePosition::Ample : ConePosition::NefNotAmple;
}

/// 3a >= 2b.
inline bool dp_t2009_condition(const DPClass& c) { return 3 * c.a() >= 2 * c.b_sum(); }

/// floor((2 delta - 9) d / 2) + 1, for delta >= 5.
inline std::int64_t dp_m_d(std::int64_t delta, std::int64_t d) {
  if (delta < 5 || delta > 8) throw std::invalid_argument("dp_m_d: delta must lie in [5, 8]");
  if (d < 1) throw std::invalid_argument("dp_m_d: d must be >= 1");
  return detail::floor_div((2 * delta - 9) * d, 2) + 1;
}

/// Marked-point bookkeeping when a curve class d*beta on the surface is
/// pushed down to the plane.
struct P2Reduction {
  std::int64_t p2_degree = 0;
  std::int64_t total_marks = 0;
  /// Blow-up centre index (1-based) for each forced marking, centre i
  /// repeated d * b_i times.
  std::vector<std::size_t> base_points;
  friend bool operator==(const P2Reduction&, const P2Reduction&) = default;
};

inline P2Reduction dp_reduce_to_p2(const DPClass& c, std::int64_t d, std::int64_t m) {
  if (d < 0 || m < 0) throw std::invalid_argument("dp_reduce_to_p2: d and m must be non-negative");
  if (!is_integer(c.a())) throw std::invalid_argument("dp_reduce_to_p2: class must be integral");
  P2Reduction r;
  r.p2_degree = d * floor_to_int(c.a());
  std::int64_t marks = m;
  for (std::size_t i = 0; i < c.b().size(); ++i) {
    const Rat& bi = c.b()[i];
    if (!is_integer(bi) || bi < 0) throw std::invalid_argument("dp_reduce_to_p2: exceptional coefficients must be non-negative integers");
    const std::int64_t times = d * floor_to_int(bi);
    marks += times;
    for (std::int64_t t = 0; t < times; ++t) r.base_points.push_back(i + 1);
  }
  r.total_marks = marks;
  return r;
}

/// The twenty roots of the degree-5 lattice: +-(e_i - e_j) and
/// +-(h - e_i - e_j - e_k), written as (a; b) classes.
inline std::vector<DPClass> dp5_roots() {
  std::vector<DPClass> roots;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      std::vector<Rat> b(4, Rat(0));
      b[i] = -1;  // +e_i means b_i = -1
      b[j] = 1;
      roots.emplace_back(5, 0, std::move(b));
    }
  for (std::size_t skip = 0; skip < 4; ++skip)
    for (int sign : {1, -1}) {
      std::vector<Rat> b(4, Rat(sign));
      b[skip] = 0;
      roots.emplace_back(5, sign, std::move(b));
    }
  return roots;
}

/// The ten lines of the degree-5 surface: e_i and h - e_i - e_j.
inline std::vector<DPClass> dp5_lines() {
  std::vector<DPClass> lines;
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Rat> b(4, Rat(0));
    b[i] = -1;
    lines.emplace_back(5, 0, std::move(b));
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      std::vector<Rat> b(4, Rat(0));
      b[i] = 1;
      b[j] = 1;
      lines.emplace_back(5, 1, std::move(b));
    }
  return lines;
}

inline bool dp5_is_root(const DPClass& alpha) {
  return alpha.delta() == 5 && dp_pair(alpha, alpha) == -2 && dp_pair(alpha, DPClass::canonical(5)) == 0;
}

/// Intersection numbers of the quintic class C = alpha - K with the ten
/// lines, sorted ascending.
inline std::vector<Rat> dp5_quintic_table(const DPClass& alpha) {
  if (alpha.delta() != 5) throw std::invalid_argument("dp5_quintic_table: root must live on the degree-5 surface");
  if (!dp5_is_root(alpha)) throw std::invalid_argument("dp5_quintic_table: class is not a root (needs alpha^2 = -2, alpha.K = 0)");
  const DPClass c = alpha - DPClass::canonical(5);
  std::vector<Rat> values;
  for (const auto& line : dp5_lines()) values.push_back(dp_pair(c, line));
  std::sort(values.begin(), values.end());
  return values;
}

/// Value -> multiplicity.
inline std::map<std::int64_t, std::size_t> multiset_counts(const std::vector<Rat>& values) {
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& v : values) ++counts[floor_to_int(v)];
  return counts;
}

}  // namespace pfcurves
