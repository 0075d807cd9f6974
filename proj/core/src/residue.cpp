#include "hsdp/residue.hpp"

#include <stdexcept>
#include <string>

namespace hsdp {

ResidueRing::ResidueRing(long long modulus) : modulus_(modulus) {
  if (modulus < 3 || modulus % 2 == 0)
    throw std::invalid_argument("residue ring needs an odd modulus >= 3, got " +
                                std::to_string(modulus));
  half_scale_ = (modulus + 1) / 2;
}

long long ResidueRing::reduce(long long x) const noexcept {
  long long r = x % modulus_;
  return r < 0 ? r + modulus_ : r;
}

long long ResidueRing::add(long long a, long long b) const noexcept {
  return reduce(reduce(a) + reduce(b));
}

long long ResidueRing::sub(long long a, long long b) const noexcept {
  return reduce(reduce(a) - reduce(b));
}

long long ResidueRing::half(long long a, long long b) const noexcept {
  // (v+1)/2 doubles back to 1 mod v, so this is the unique solution x of
  // 2x = a+b.  Reduce first so the product stays well inside 64 bits.
  return reduce(add(a, b) * half_scale_ % modulus_);
}

}  // namespace hsdp
