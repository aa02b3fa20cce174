// Copyright 2026 The SPA-P Toolkit Authors
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

#ifndef SPAP_RNG_HPP_
#define SPAP_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace spap {

// Seeded generator with hand-rolled draw helpers so that identical seeds
// reproduce identical streams regardless of the standard library in use
// (std::uniform_int_distribution and std::shuffle are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform draw from [0, n), n >= 1, rejection-sampled to avoid modulo bias.
  int below(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return static_cast<int>(r % un);
  }

  // Uniform draw from [lo, hi], inclusive.
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[below(i + 1)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace spap

#endif  // SPAP_RNG_HPP_
