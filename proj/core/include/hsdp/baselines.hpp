#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hsdp/design.hpp"
#include "hsdp/numeric.hpp"

namespace hsdp {

/// Parameters of one reference scheme at (K, t, L).  When the scheme's
/// limitation clause fails, `applicable` is false and `reason` carries the
/// violated clause.
struct BaselineResult {
  std::string scheme;
  bool applicable = false;
  std::string reason;
  BigInt subpacketization;  // F (0 when inapplicable)
  double subpacketization_approx = 0.0;
  long long sum_dof = 0;  // g (0 when inapplicable)
  Rational memory_ratio;  // t/K
};

/// Grouping scheme: F = (t+L)/gcd(m, L-m) * C(K/m, t/m) for m < L, or
/// F = C(K/L, t/L) for m = L; sum-DoF t+L.
BaselineResult ywcc1(long long users, long long t, long long antennas, long long m);
/// Minimum-F configuration of ywcc1 over m in [1, L].
BaselineResult ywcc1_best(long long users, long long t, long long antennas);

/// Full-multicast regime: F = K, sum-DoF t+L, needs t+L >= K.
BaselineResult ywcc2(long long users, long long t, long long antennas);

/// F = (t+L)/beta * C(K/beta, (t+L)/beta) with beta = gcd(K, t, L); sum-DoF t+L.
BaselineResult npr(long long users, long long t, long long antennas);

/// Cyclic scheme with sum-DoF 2L; F is 2LK, LK or K by the parity of K-t and
/// whether L divides K.
BaselineResult wcc(long long users, long long t, long long antennas);

/// Concatenation scheme: with y = (t+L) mod (K-t+L), sum-DoF
/// 2L*floor((t+L)/(K-t+L)) plus y (when L <= y < 2L) or 2L (when y >= 2L);
/// F = g*K/beta^2.  y < L matches no row.
BaselineResult ctwwl(long long users, long long t, long long antennas);

/// One comparison row.  Our rows carry scheme == "HSDP" and are computed end
/// to end through construct/verify/lift/verify, not from formulas.
struct SweepRow {
  std::string scheme;
  long long users = 0;
  long long antennas = 0;
  long long t = 0;
  Rational memory_ratio;
  BigInt subpacketization;
  double subpacketization_approx = 0.0;
  long long sum_dof = 0;
  bool applicable = false;
  std::string reason;
};

/// A sweep point: either a bare memory parameter t for baseline-only rows,
/// or one of our design points (modulus must equal `users`).
using SweepPoint = std::variant<long long, DesignPoint>;

std::vector<SweepRow> compare_sweep(long long users, long long antennas,
                                    const std::vector<SweepPoint>& points);

/// Columns: scheme,K,L,t,M_over_N,F_exact,F_float,g,applicable,reason.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace hsdp
