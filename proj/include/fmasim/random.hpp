// Copyright 2026 The fmasim Authors.
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


// Portable Gaussian noise. std::normal_distribution is implementation
// defined, so traces would differ between standard libraries; this generator
// pairs the fully specified mt19937_64 engine with a fixed Box-Muller
// transform and is identified by kAlgorithm in scenario files.

#ifndef FMASIM_RANDOM_HPP_
#define FMASIM_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace fmasim {

class GaussianNoise {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/box-muller/v1";

  GaussianNoise(std::uint64_t seed, double mean, double stddev)
      : engine_(seed), mean_(mean), stddev_(stddev) {}

  double operator()() { return mean_ + stddev_ * standard(); }

  double mean() const { return mean_; }
  double stddev() const { return stddev_; }

 private:
  // Uniform in (0, 1] from the top 53 bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double standard() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::mt19937_64 engine_;
  double mean_;
  double stddev_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fmasim

#endif  // FMASIM_RANDOM_HPP_
