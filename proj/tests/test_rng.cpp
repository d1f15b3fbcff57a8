#include <cmath>
#include <set>

#include "doctest.h"
#include "qineq/rng.hpp"

using namespace qineq;

TEST_CASE("uniforms are in the open unit interval") {
  const CounterRng rng(42);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
}

TEST_CASE("extreme bit patterns stay inside (0,1)") {
  CHECK((static_cast<double>(0) + 0.5) * 0x1.0p-52 > 0.0);
  CHECK((static_cast<double>(~0ULL >> 12) + 0.5) * 0x1.0p-52 < 1.0);
}

TEST_CASE("counter access is random access") {
  const CounterRng rng(7);
  const double u5 = rng.uniform(5);
  for (int i = 0; i < 5; ++i) (void)rng.uniform(i);
  CHECK(rng.uniform(5) == u5);
  CHECK(CounterRng(7).bits(123) == rng.bits(123));
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t n : {50, 100, 500})
    for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(replicate_seed(1, n, i));
  CHECK(keys.size() == 3000);
  CHECK(replicate_seed(1, 50, 0) != replicate_seed(2, 50, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
}

TEST_CASE("replicate seeds do not depend on other sample sizes") {
  static_assert(replicate_seed(9, 100, 3) == derive_seed(derive_seed(9, 100), 3));
  CHECK(replicate_seed(9, 100, 3) == replicate_seed(9, 100, 3));
}
