#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "nullcount/big.h"
#include "nullcount/combinatorics.h"

using nullcount::BigCount;
using nullcount::binomial;
using nullcount::bpow;
using nullcount::surjections;

namespace {

// Enumerate all functions [n] -> [m] and count the onto ones.
BigCount onto_by_enumeration(int n, int m) {
  if (n == 0) return m == 0 ? 1 : 0;
  if (m == 0) return 0;
  BigCount count = 0;
  std::vector<int> f(n, 0);
  for (;;) {
    std::vector<bool> hit(m, false);
    for (int x : f) hit[x] = true;
    bool onto = true;
    for (int j = 0; j < m; ++j) onto = onto && hit[j];
    if (onto) ++count;
    int i = 0;
    while (i < n && f[i] == m - 1) f[i++] = 0;
    if (i == n) break;
    ++f[i];
  }
  return count;
}

}  // namespace

TEST_CASE("binomial matches Pascal's rule") {
  for (unsigned long n = 1; n <= 20; ++n) {
    for (unsigned long k = 1; k < n; ++k) {
      REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("binomial edge cases") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(52, 5) == 2598960);
}

TEST_CASE("surjections match enumeration") {
  for (int n = 0; n <= 7; ++n) {
    for (int m = 0; m <= 7; ++m) {
      INFO("n=" << n << " m=" << m);
      CHECK(surjections(n, m) == onto_by_enumeration(n, m));
    }
  }
}

TEST_CASE("surjection edge cases") {
  CHECK(surjections(0, 0) == 1);
  CHECK(surjections(3, 0) == 0);
  CHECK(surjections(2, 3) == 0);
  CHECK(surjections(3, 3) == 6);
  CHECK(surjections(4, 2) == 14);
}

TEST_CASE("surjections resolve powers by image size") {
  for (unsigned long n = 0; n <= 12; ++n) {
    for (unsigned long d = 1; d <= 12; ++d) {
      BigCount sum = 0;
      for (unsigned long m = 0; m <= d; ++m) {
        sum += binomial(d, m) * surjections(n, m);
      }
      INFO("n=" << n << " d=" << d);
      CHECK(sum == bpow(d, n));
    }
  }
}

TEST_CASE("bpow") {
  CHECK(bpow(2, 10) == 1024);
  CHECK(bpow(10, 0) == 1);
  CHECK(bpow(0, 0) == 1);
  CHECK(bpow(0, 3) == 0);
  CHECK(bpow(BigCount(3), 4) == 81);
  CHECK(nullcount::decimal(bpow(10, 30)) == "1000000000000000000000000000000");
}
