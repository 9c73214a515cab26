#include "nullcount/big.h"

#include <limits>

#include "nullcount/errors.h"

namespace nullcount {

BigCount bpow(const BigCount& base, unsigned long exp) {
  BigCount out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

BigCount bpow(unsigned long base, unsigned long exp) {
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

std::string decimal(const BigCount& value) { return value.get_str(); }

bool fits_u64(const BigCount& value) {
  if (sgn(value) < 0) return false;
  return mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigCount& value) {
  if (!fits_u64(value)) fail(errc::resource, "count exceeds 64 bits");
  std::uint64_t low = mpz_get_ui(value.get_mpz_t());
  if (sizeof(unsigned long) >= 8) return low;
  BigCount high = value >> 32;
  return (static_cast<std::uint64_t>(mpz_get_ui(high.get_mpz_t())) << 32) |
         (low & 0xffffffffu);
}

}  // namespace nullcount
