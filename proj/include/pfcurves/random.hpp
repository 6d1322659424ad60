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

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "pfcurves/rational.hpp"

namespace pfcurves {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under master seed `seed`. Streams depend only on
/// the pair, never on the order in which they are requested.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Box from which "general" rational values are drawn: numerators in
/// [-bound, bound], denominators in [1, max(bound, 1)].
struct SampleBox {
  std::int64_t bound = 1'000'000;
};

/// Explicit generator state owned by the caller. mt19937_64 output is fixed
/// by the standard, and the integer mapping below avoids the
/// implementation-defined std distributions, so draws are identical on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
  }

  Rat rational(const SampleBox& box) {
    const std::int64_t num = uniform_int(-box.bound, box.bound);
    const std::int64_t den = uniform_int(1, box.bound < 1 ? 1 : box.bound);
    return make_rat(static_cast<long>(num), static_cast<long>(den));
  }

  Rat nonzero_rational(const SampleBox& box) {
    Rat r = rational(box);
    while (r == 0) r = rational(box);
    return r;
  }

  Vec vector(std::size_t n, const SampleBox& box) {
    Vec v(n);
    for (auto& x : v) x = rational(box);
    return v;
  }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pfcurves
