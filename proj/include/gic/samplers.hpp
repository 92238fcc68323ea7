#pragma once

// Synthetic point samples of standard shapes, reproducible from a seed.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "gic/core/point_cloud.hpp"

namespace gic::samplers {

inline constexpr std::uint64_t kDefaultSeed = 20130611;

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline void add_noise(PointCloud& cloud, double sigma, std::mt19937_64& rng) {
  if (!(sigma > 0.0)) return;
  std::normal_distribution<double> g(0.0, sigma);
  PointCloud out(cloud.dim());
  std::vector<double> row(cloud.dim());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t k = 0; k < cloud.dim(); ++k) row[k] = cloud[i][k] + g(rng);
    out.push_back(row);
  }
  cloud = std::move(out);
}

}  // namespace detail

// Uniform angles on a circle, optional Gaussian noise per coordinate.
inline PointCloud circle(std::size_t n, double radius = 1.0, double noise = 0.0,
                         std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, detail::kTwoPi);
  PointCloud cloud(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = t(rng);
    cloud.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  detail::add_noise(cloud, noise, rng);
  return cloud;
}

// Uniform by area on the planar annulus r_in <= |x| <= r_out.
inline PointCloud annulus(std::size_t n, double r_in, double r_out, double noise = 0.0,
                          std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, detail::kTwoPi);
  std::uniform_real_distribution<double> s(r_in * r_in, r_out * r_out);
  PointCloud cloud(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = t(rng);
    const double r = std::sqrt(s(rng));
    cloud.push_back({r * std::cos(a), r * std::sin(a)});
  }
  detail::add_noise(cloud, noise, rng);
  return cloud;
}

// Uniform on the sphere of the given radius in R^3; with `fibonacci`, the
// deterministic golden-angle spiral instead.
inline PointCloud sphere(std::size_t n, double radius = 1.0, bool fibonacci = false, double noise = 0.0,
                         std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  PointCloud cloud(3);
  if (fibonacci) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      const double r = std::sqrt(1.0 - z * z);
      const double a = golden * static_cast<double>(i);
      cloud.push_back({radius * r * std::cos(a), radius * r * std::sin(a), radius * z});
    }
  } else {
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      double x, y, z, len;
      do {
        x = g(rng);
        y = g(rng);
        z = g(rng);
        len = std::sqrt(x * x + y * y + z * z);
      } while (len < 1e-12);
      cloud.push_back({radius * x / len, radius * y / len, radius * z / len});
    }
  }
  detail::add_noise(cloud, noise, rng);
  return cloud;
}

// Uniform by area on the torus of revolution with radii R > r, axis z.
inline PointCloud torus(std::size_t n, double big_r = 1.0, double small_r = 0.4, double noise = 0.0,
                        std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, detail::kTwoPi);
  std::uniform_real_distribution<double> accept(0.0, 1.0);
  PointCloud cloud(3);
  while (cloud.size() < n) {
    const double u = t(rng);
    const double v = t(rng);
    const double w = big_r + small_r * std::cos(v);
    if (accept(rng) * (big_r + small_r) > w) continue;
    cloud.push_back({w * std::cos(u), w * std::sin(u), small_r * std::sin(v)});
  }
  detail::add_noise(cloud, noise, rng);
  return cloud;
}

// Klein bottle in R^4: ((R + r cos v) cos u, (R + r cos v) sin u,
// r sin v cos(u/2), r sin v sin(u/2)), u, v uniform in [0, 2 pi).
inline PointCloud klein_bottle(std::size_t n, double big_r = 1.0, double small_r = 0.4, double noise = 0.0,
                               std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, detail::kTwoPi);
  PointCloud cloud(4);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = t(rng);
    const double v = t(rng);
    const double w = big_r + small_r * std::cos(v);
    cloud.push_back({w * std::cos(u), w * std::sin(u), small_r * std::sin(v) * std::cos(u / 2.0),
                     small_r * std::sin(v) * std::sin(u / 2.0)});
  }
  detail::add_noise(cloud, noise, rng);
  return cloud;
}

}  // namespace gic::samplers
