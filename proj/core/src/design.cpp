#include "hsdp/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hsdp/errors.hpp"

namespace hsdp {

int minimal_tail(int antennas) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be positive");
  int r = 1;
  while ((1LL << r) < antennas) ++r;
  return r;
}

bool is_feasible(int antennas, int tail_length,
                 const std::vector<long long>& block_dims, long long modulus) {
  if (modulus < 3 || modulus % 2 == 0)
    throw std::invalid_argument("modulus must be odd and >= 3");
  return packing_radius(antennas, tail_length, block_dims) <= (modulus - 1) / 2;
}

long long DesignPoint::block_count() const {
  long long b = 1;
  for (long long m : block_dims) b = checked_mul(b, m);
  return b;
}

long long DesignPoint::block_size() const {
  const int total = static_cast<int>(block_dims.size()) + tail_length;
  if (total > 62) throw std::overflow_error("block size out of range");
  return 1LL << total;
}

long long DesignPoint::stars() const {
  return modulus - checked_mul(block_count(), block_size());
}

long long DesignPoint::symbols() const { return checked_mul(block_count(), modulus); }

Rational DesignPoint::memory_ratio() const { return Rational(stars(), modulus); }

ConstructionParams DesignPoint::construction() const {
  return ConstructionParams{antennas, tail_length, block_dims, modulus};
}

DesignPoint closed_form_point(int antennas, long long q, int n,
                              std::optional<int> tail) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int r = tail.value_or(minimal_tail(antennas));
  if ((1LL << r) < antennas)
    throw std::invalid_argument("need antennas <= 2^tail");
  const long long scale = (1LL << (r + 2)) - 2LL * antennas - 1;  // 2^{r+2}-2L-1
  const long long denom = (1LL << (r + 1)) - antennas;            // 2^{r+1}-L
  const long long numer = checked_mul(scale, q);
  if (numer % denom != 0)
    throw NonIntegralBlockDim("(2^{r+2}-2L-1)q = " + std::to_string(numer) +
                              " is not divisible by 2^{r+1}-L = " +
                              std::to_string(denom));
  DesignPoint point;
  point.antennas = antennas;
  point.tail_length = r;
  point.block_dims.assign(static_cast<std::size_t>(n - 1), q);
  point.block_dims.push_back(numer / denom);
  long long v = scale;
  for (int i = 0; i < n; ++i) v = checked_mul(v, 1 + 2 * q);
  point.modulus = v;
  if (!is_feasible(antennas, r, point.block_dims, v))
    throw std::logic_error("closed-form point unexpectedly infeasible");
  return point;
}

DesignPoint power_of_two_point(int tail, long long q, int n) {
  if (tail < 1 || tail > 40) throw std::invalid_argument("tail out of range");
  const long long antennas = 1LL << tail;
  return closed_form_point(static_cast<int>(antennas), q, n, tail);
}

namespace {

/// Integer n-th root test: returns x >= 1 with x^n == value, or 0.
long long exact_root(long long value, int n) {
  if (value < 1) return 0;
  const long long guess =
      std::llround(std::pow(static_cast<double>(value), 1.0 / n));
  for (long long x = std::max<long long>(1, guess - 2); x <= guess + 2; ++x) {
    long long p = 1;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (p > value / x) {
        ok = false;
        break;
      }
      p *= x;
    }
    if (ok && p == value) return x;
  }
  return 0;
}

void search_rec(long long modulus, int antennas, int tail, int n,
                std::vector<long long>& dims, int depth, long long& best_product,
                std::vector<long long>& best_dims) {
  if (depth == n) {
    long long product = 1;
    for (long long m : dims) product = checked_mul(product, m);
    if (product > best_product) {  // first hit in lexicographic order wins ties
      best_product = product;
      best_dims = dims;
    }
    return;
  }
  for (long long m = 1; m <= (modulus - 1) / 2; ++m) {
    dims[depth] = m;
    for (int i = depth + 1; i < n; ++i) dims[i] = 1;
    // The radius grows strictly with every dimension, so once this prefix
    // fails with all-ones suffix no larger value of m can recover.
    if (!is_feasible(antennas, tail, dims, modulus)) break;
    search_rec(modulus, antennas, tail, n, dims, depth + 1, best_product,
               best_dims);
  }
  dims[depth] = 1;
}

}  // namespace

SearchReport search_best(long long modulus, int antennas, int n,
                         std::optional<int> tail) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int r = tail.value_or(minimal_tail(antennas));
  std::vector<long long> dims(static_cast<std::size_t>(n), 1);
  if (!is_feasible(antennas, r, dims, modulus))
    throw NoFeasiblePoint("even all-ones dimensions exceed modulus " +
                          std::to_string(modulus) + " for L=" +
                          std::to_string(antennas) + " r=" + std::to_string(r) +
                          " n=" + std::to_string(n));
  long long best_product = 0;
  std::vector<long long> best_dims;
  search_rec(modulus, antennas, r, n, dims, 0, best_product, best_dims);

  SearchReport report;
  report.best =
      DesignPoint{antennas, r, std::move(best_dims), modulus};

  // If the modulus has the closed-form shape scale*(1+2q)^n, report the
  // closed form's product for the gap comparison.
  const long long scale = (1LL << (r + 2)) - 2LL * antennas - 1;
  const long long denom = (1LL << (r + 1)) - antennas;
  if (modulus % scale == 0) {
    long long root = exact_root(modulus / scale, n);
    if (root >= 3 && root % 2 == 1) {
      const long long q = (root - 1) / 2;
      if (checked_mul(scale, q) % denom == 0) {
        long long product = scale * q / denom;
        for (int i = 0; i < n - 1; ++i) product = checked_mul(product, q);
        report.closed_form_product = product;
      }
    }
  }
  return report;
}

}  // namespace hsdp
