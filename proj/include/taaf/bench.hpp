// Copyright 2026 The TAAF Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Single-threaded evaluation throughput for catalog entries and TAAF nodes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <functional>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/gradcheck.hpp"
#include "taaf/rng.hpp"
#include "taaf/taaf.hpp"

namespace taaf {

struct BenchRecord {
  std::string subject;
  std::size_t n_evals = 0;
  std::size_t repeats = 0;
  double median_evals_per_sec = 0.0;
  double coefficient_of_variation = 0.0;
  double checksum = 0.0;
  std::string timestamp;
};

using BenchSubject = std::variant<CatalogSubject, TaafNode>;

inline constexpr std::size_t kMinBenchEvals = 100000;
inline constexpr std::size_t kMinBenchRepeats = 3;

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::vector<double> bench_inputs(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform(-4.0, 4.0);
  return xs;
}

template <class F>
double sweep(const F& f, const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += f(x);
  return sum;
}

template <class F>
BenchRecord run_bench(std::string name, const F& f, std::size_t n_evals, std::size_t repeats,
                      std::uint64_t seed) {
  if (n_evals < kMinBenchEvals) throw InvalidArgumentError("bench: n_evals must be >= 100000");
  if (repeats < kMinBenchRepeats) throw InvalidArgumentError("bench: repeats must be >= 3");
  const std::vector<double> xs = bench_inputs(n_evals, seed);

  BenchRecord rec;
  rec.subject = std::move(name);
  rec.n_evals = n_evals;
  rec.repeats = repeats;
  rec.checksum = sweep(f, xs);  // warm-up, untimed

  std::vector<double> rates;
  rates.reserve(repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const double sum = sweep(f, xs);
    const auto t1 = std::chrono::steady_clock::now();
    if (!(sum == rec.checksum || (std::isnan(sum) && std::isnan(rec.checksum)))) {
      throw NumericalError("bench: checksum changed between repeats for " + rec.subject);
    }
    const double secs = std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
    rates.push_back(static_cast<double>(n_evals) / secs);
  }

  std::vector<double> sorted = rates;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  rec.median_evals_per_sec = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const double mean = std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(m);
  double var = 0.0;
  for (double v : rates) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m);
  rec.coefficient_of_variation = std::sqrt(var) / mean;
  rec.timestamp = utc_timestamp();
  return rec;
}

}  // namespace detail

inline BenchRecord bench(const BenchSubject& subject, std::size_t n_evals, std::size_t repeats,
                         std::uint64_t seed = 42) {
  if (const auto* c = std::get_if<CatalogSubject>(&subject)) {
    const BoundActivation f(c->id, c->fixed);
    return detail::run_bench(c->id, [&](double x) { return f.value(x); }, n_evals, repeats, seed);
  }
  const auto& node = std::get<TaafNode>(subject);
  const BoundTaaf g(node);
  return detail::run_bench(detail::describe_node(node), [&](double x) { return g.value(x); },
                           n_evals, repeats, seed);
}

// Records sorted by median rate, fastest first; ties keep input order.
inline std::vector<BenchRecord> compare(const std::vector<BenchSubject>& subjects,
                                        std::size_t n_evals, std::size_t repeats,
                                        std::uint64_t seed = 42) {
  if (subjects.size() < 2) throw InvalidArgumentError("compare needs at least two subjects");
  // Resolve every subject before timing anything.
  for (const auto& s : subjects) {
    if (const auto* c = std::get_if<CatalogSubject>(&s)) {
      (void)BoundActivation(c->id, c->fixed);
    } else {
      (void)BoundTaaf(std::get<TaafNode>(s));
    }
  }
  std::vector<BenchRecord> out;
  for (const auto& s : subjects) out.push_back(bench(s, n_evals, repeats, seed));
  std::stable_sort(out.begin(), out.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return a.median_evals_per_sec > b.median_evals_per_sec;
  });
  return out;
}

}  // namespace taaf
