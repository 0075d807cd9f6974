#pragma once

namespace hsdp {

/// Integers modulo an odd v >= 3.  Oddness makes doubling invertible, so the
/// half-sum (a+b)/2 is a single well-defined residue.
class ResidueRing {
 public:
  explicit ResidueRing(long long modulus);

  long long modulus() const noexcept { return modulus_; }

  /// Reduces any signed value into [0, v).
  long long reduce(long long x) const noexcept;

  long long add(long long a, long long b) const noexcept;
  long long sub(long long a, long long b) const noexcept;

  /// The unique x with 2x = a+b (mod v), computed as (a+b)*(v+1)/2 mod v.
  long long half(long long a, long long b) const noexcept;

  friend bool operator==(const ResidueRing&, const ResidueRing&) = default;

 private:
  long long modulus_;
  long long half_scale_;  // (v+1)/2, the inverse of 2 mod v
};

}  // namespace hsdp
