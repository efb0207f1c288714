#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace htprox {

using Vec = std::vector<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

}  // namespace htprox
