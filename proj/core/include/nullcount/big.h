#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nullcount {

// Counts grow like d^n, so every counting interface returns exact
// arbitrary-precision integers.
using BigCount = mpz_class;

BigCount bpow(const BigCount& base, unsigned long exp);
BigCount bpow(unsigned long base, unsigned long exp);

// Decimal rendering; JSON output uses this instead of native numbers.
std::string decimal(const BigCount& value);

// True when value fits in an unsigned 64-bit integer.
bool fits_u64(const BigCount& value);
std::uint64_t to_u64(const BigCount& value);

}  // namespace nullcount
