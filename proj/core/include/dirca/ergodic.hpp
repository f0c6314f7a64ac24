#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dirca/cylinder.hpp"
#include "dirca/window.hpp"

namespace dirca {

struct OrbitStats {
  std::optional<std::uint64_t> seed;
  ActionIndex direction;
  std::int64_t N = 0;
  // hits[t-1] = #{k < t : Phi^{(km,kn)} x in B}; empty when not recorded.
  std::vector<std::uint32_t> hits;
  std::uint64_t final_hits = 0;
  double mu_b = 0;
  double final_average = 0;
  double final_deviation = 0;

  // A_t = hits[t-1] / t
  double average(std::int64_t t) const { return static_cast<double>(hits.at(static_cast<std::size_t>(t - 1))) / static_cast<double>(t); }
};

// Coordinates of x read by the first N orbit points.
Interval orbit_support(const ActionIndex& direction, const Cylinder& b, std::int64_t N,
                       const LocalRule& rule);

// Running averages of 1_B along k -> Phi^{(km,kn)} x, k = 0..N-1. The orbit is
// advanced by T^m then sigma^n per term; a = 2 runs on packed rows.
// Throws WindowTooSmall naming the required interval.
OrbitStats birkhoff_average(const WindowConfig& x, const ActionIndex& direction, const Cylinder& b,
                            std::int64_t N, const LocalRule& rule, bool keep_running = true);

struct OrbitFrequencyReport {
  double tolerance = 0;
  std::vector<OrbitStats> per_seed;
  std::size_t within = 0;
  double pass_fraction = 0;
};

// One sampled configuration per seed, covering orbit_support.
OrbitFrequencyReport orbit_frequency_report(std::span<const std::uint64_t> seeds,
                                            const ActionIndex& direction, const Cylinder& b,
                                            std::int64_t N, const LocalRule& rule,
                                            double tolerance = 0.01, bool keep_running = false);

}  // namespace dirca
