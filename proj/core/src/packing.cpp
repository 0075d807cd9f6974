#include "hsdp/packing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hsdp/errors.hpp"
#include "hsdp/numeric.hpp"

namespace hsdp {

namespace {

void check_recursion_inputs(int antennas, int tail_length,
                            const std::vector<long long>& block_dims) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be positive");
  if (tail_length < 1) throw std::invalid_argument("tail length must be positive");
  if (tail_length > 40) throw std::invalid_argument("tail length out of range");
  if ((1LL << tail_length) < antennas)
    throw std::invalid_argument("need antennas <= 2^tail, got L=" +
                                std::to_string(antennas) + " r=" +
                                std::to_string(tail_length));
  if (block_dims.empty())
    throw std::invalid_argument("need at least one block dimension");
  for (long long m : block_dims)
    if (m < 1) throw std::invalid_argument("block dimensions must be positive");
}

}  // namespace

std::vector<long long> basis_weights(int antennas, int tail_length,
                                     const std::vector<long long>& block_dims) {
  check_recursion_inputs(antennas, tail_length, block_dims);
  const int n = static_cast<int>(block_dims.size());
  const int r = tail_length;
  if (r == 1 && antennas != 2)
    throw DegenerateRecursion(
        "tail length 1 leaves the last weight self-referential unless L = 2 "
        "(got L = " + std::to_string(antennas) + "); raise the tail length");

  std::vector<long long> f(n + r);
  f[0] = block_dims[0];
  long long prefix = f[0];  // sum of f(1..i)
  for (int i = 2; i <= n; ++i) {
    f[i - 1] = checked_mul(block_dims[i - 1], checked_add(checked_mul(2, prefix), 1));
    prefix = checked_add(prefix, f[i - 1]);
  }
  // Tail: m_{n+1..n+r} are all 1, so beyond the first tail step each weight
  // simply doubles; the very last one additionally absorbs (2^r - L) copies
  // of the first tail weight.
  const long long mn = block_dims[n - 1];
  for (int i = n + 1; i <= n + r - 1; ++i) {
    f[i - 1] = (i == n + 1) ? checked_mul(mn + 1, f[n - 1] / mn)
                            : checked_mul(2, f[i - 2]);
  }
  {
    const int i = n + r;
    long long base = (r == 1) ? checked_mul(mn + 1, f[n - 1] / mn)
                              : checked_mul(2, f[i - 2]);
    long long extra = (r == 1) ? 0
                               : checked_mul((1LL << r) - antennas, f[n]);
    f[i - 1] = checked_add(base, extra);
  }
  return f;
}

std::vector<long long> basis_elements(int antennas, int tail_length,
                                      const std::vector<long long>& block_dims) {
  std::vector<long long> x = basis_weights(antennas, tail_length, block_dims);
  for (std::size_t i = 0; i < block_dims.size(); ++i) x[i] /= block_dims[i];
  return x;
}

long long packing_radius(int antennas, int tail_length,
                         const std::vector<long long>& block_dims) {
  long long sum = 0;
  for (long long w : basis_weights(antennas, tail_length, block_dims))
    sum = checked_add(sum, w);
  long long closed = packing_radius_closed_form(antennas, tail_length, block_dims);
  if (sum != closed)
    throw std::logic_error("weight-sum radius " + std::to_string(sum) +
                           " disagrees with closed form " + std::to_string(closed));
  return sum;
}

long long packing_radius_closed_form(int antennas, int tail_length,
                                     const std::vector<long long>& block_dims) {
  check_recursion_inputs(antennas, tail_length, block_dims);
  if (tail_length == 1 && antennas != 2)
    throw DegenerateRecursion("tail length 1 requires L = 2");
  const int n = static_cast<int>(block_dims.size());
  const long long p = (1LL << (tail_length + 1)) - antennas;
  const long long back = 1 + block_dims[n - 1];
  // head = sum_{i=1}^{n-1} m_i * prod_{j=i+1}^{n-1} (1 + 2 m_j)
  long long head = 0;
  for (int i = 0; i + 1 < n; ++i) {
    long long term = block_dims[i];
    for (int j = i + 1; j + 1 < n; ++j)
      term = checked_mul(term, checked_add(1, checked_mul(2, block_dims[j])));
    head = checked_add(head, term);
  }
  const long long pb = checked_mul(p, back);
  return checked_add(checked_mul(checked_add(checked_mul(2, pb), -1), head), pb - 1);
}

Hsdp construct_hsdp(const ConstructionParams& params) {
  const int n = static_cast<int>(params.block_dims.size());
  const int r = params.tail_length;
  const long long radius = packing_radius(params.antennas, r, params.block_dims);
  if (params.modulus < 2 * radius + 1)
    throw ModulusTooSmall("modulus " + std::to_string(params.modulus) +
                          " < " + std::to_string(2 * radius + 1) +
                          " needed by these dimensions");
  ResidueRing ring(params.modulus);
  std::vector<long long> x = basis_elements(params.antennas, r, params.block_dims);

  long long block_count = 1;
  for (long long m : params.block_dims) block_count = checked_mul(block_count, m);
  const std::size_t block_size = std::size_t{1} << (n + r);

  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(block_count));
  std::vector<long long> a(n, 1);  // current dimension vector, odometer order
  for (long long bi = 0; bi < block_count; ++bi) {
    Block block;
    block.reserve(block_size);
    for (std::size_t mask = 0; mask < block_size; ++mask) {
      long long value = 0;
      for (int i = 0; i < n + r; ++i) {
        const long long coeff = (i < n) ? a[i] : 1;
        const long long term = coeff * x[i];
        value += (mask >> i & 1) ? term : -term;
      }
      block.push_back(ring.reduce(value));
    }
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw std::logic_error("constructed block has a repeated residue");
    blocks.push_back(std::move(block));
    // advance the odometer, last coordinate fastest
    for (int i = n - 1; i >= 0; --i) {
      if (a[i] < params.block_dims[i]) {
        ++a[i];
        break;
      }
      a[i] = 1;
    }
  }
  return Hsdp{ring, std::move(blocks), params.antennas};
}

const HalfSumEntry* HsdpVerifyReport::find(std::size_t block,
                                           long long element) const noexcept {
  for (const HalfSumEntry& e : entries)
    if (e.block == block && e.element == element) return &e;
  return nullptr;
}

HsdpVerifyReport verify_hsdp(const Hsdp& candidate) {
  const ResidueRing& ring = candidate.ring;
  HsdpVerifyReport report;
  report.antennas = candidate.antennas;

  // Residue -> number of blocks owning it (set semantics per block).
  std::unordered_map<long long, long long> owners;
  std::vector<long long> duplicates;
  for (const Block& block : candidate.blocks) {
    std::unordered_set<long long> seen;
    for (long long d : block) {
      long long res = ring.reduce(d);
      if (!seen.insert(res).second) {
        duplicates.push_back(res);
        continue;
      }
      if (++owners[res] == 2) duplicates.push_back(res);
    }
  }
  std::sort(duplicates.begin(), duplicates.end());
  duplicates.erase(std::unique(duplicates.begin(), duplicates.end()),
                   duplicates.end());
  report.duplicates = std::move(duplicates);
  report.disjoint = report.duplicates.empty();

  for (std::size_t bi = 0; bi < candidate.blocks.size(); ++bi) {
    const Block& block = candidate.blocks[bi];
    for (long long d : block) {
      HalfSumEntry entry;
      entry.block = bi;
      entry.element = ring.reduce(d);
      std::unordered_set<long long> sums;
      for (long long dp : block) {
        if (dp == d) continue;
        sums.insert(ring.half(d, dp));
      }
      entry.half_sums.assign(sums.begin(), sums.end());
      std::sort(entry.half_sums.begin(), entry.half_sums.end());
      for (long long s : entry.half_sums) {
        auto it = owners.find(s);
        if (it != owners.end()) {
          entry.count += it->second;
          entry.collisions.push_back(s);
        }
      }
      report.max_count = std::max(report.max_count, entry.count);
      report.entries.push_back(std::move(entry));
    }
  }
  report.half_sum_ok = report.max_count < candidate.antennas;
  return report;
}

}  // namespace hsdp
