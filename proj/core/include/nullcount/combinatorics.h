#pragma once

#include "nullcount/big.h"

namespace nullcount {

BigCount binomial(unsigned long n, unsigned long k);

// Number of surjections from an n-set onto an m-set:
//   surj(n, m) = sum_{i=0}^{m-1} (-1)^i C(m, i) (m - i)^n
// with surj(0, 0) = 1. Satisfies sum_m C(d, m) surj(n, m) = d^n.
BigCount surjections(unsigned long n, unsigned long m);

}  // namespace nullcount
