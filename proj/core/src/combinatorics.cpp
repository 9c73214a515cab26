#include "nullcount/combinatorics.h"

namespace nullcount {

BigCount binomial(unsigned long n, unsigned long k) {
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigCount surjections(unsigned long n, unsigned long m) {
  if (m == 0) return n == 0 ? 1 : 0;
  if (m > n) return 0;
  BigCount total = 0;
  for (unsigned long i = 0; i < m; ++i) {
    BigCount term = binomial(m, i) * bpow(m - i, n);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace nullcount
