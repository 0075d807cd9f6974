#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hsdp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; 0 when k < 0 or k > n.
BigInt binomial(long long n, long long k);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);
double to_double(const BigInt& value);

/// a*b and a+b with overflow detection; throw std::overflow_error.
long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);

}  // namespace hsdp
