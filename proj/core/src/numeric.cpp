#include "hsdp/numeric.hpp"

#include <stdexcept>

namespace hsdp {

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) at each step
  }
  return result;
}

std::string to_string(const Rational& value) {
  std::string s = boost::multiprecision::numerator(value).str();
  if (boost::multiprecision::denominator(value) != 1) {
    s += '/';
    s += boost::multiprecision::denominator(value).str();
  }
  return s;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double to_double(const BigInt& value) { return value.convert_to<double>(); }

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("integer product overflow");
  return out;
}

long long checked_add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("integer sum overflow");
  return out;
}

}  // namespace hsdp
