#pragma once

#include <cmath>
#include <random>

#include "contractive/disc.hpp"
#include "contractive/selfmap.hpp"

namespace test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(7);
  return g;
}

inline double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline contractive::Complex random_point(double rmax) {
  return std::polar(rmax * std::sqrt(uniform()), contractive::kTwoPi * uniform());
}

inline contractive::SelfMap random_blaschke(int degree, double rmax) {
  std::vector<contractive::Complex> zeros;
  for (int i = 0; i < degree; ++i) zeros.push_back(random_point(rmax));
  return contractive::SelfMap::blaschke(zeros, uniform());
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace test
