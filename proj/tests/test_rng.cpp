#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "htprox/rng.hpp"

using namespace htprox;

TEST_CASE("equal seed and stream reproduce bit for bit") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 2000; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(42, 7);
  RngStream d(42, 7);
  for (int i = 0; i < 2000; ++i) CHECK(c.normal() == d.normal());
}

TEST_CASE("distinct streams and seeds diverge") {
  RngStream a(42, 1);
  RngStream b(42, 2);
  RngStream c(43, 1);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto ua = a.next_u64();
    if (ua == b.next_u64()) ++same_ab;
    if (ua == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("uniform01 stays strictly inside the unit interval") {
  RngStream rng(1, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(std::isfinite(std::log(lo)));
  const double se = 1.0 / std::sqrt(12.0 * n);
  CHECK(std::fabs(sum / n - 0.5) < 4.0 * se);
}

TEST_CASE("normal moments") {
  RngStream rng(5, 3);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(std::fabs(s1 / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::fabs(s4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
}

TEST_CASE("accessors report identity") {
  RngStream rng(11, kBootstrapStreamBase + 4);
  CHECK(rng.seed() == 11);
  CHECK(rng.stream_id() == kBootstrapStreamBase + 4);
}

TEST_CASE("auxiliary stream bases are disjoint") {
  CHECK(kBootstrapStreamBase < kInitStreamBase);
  CHECK(kInitStreamBase < kMomentStreamBase);
}
