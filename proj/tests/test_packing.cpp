#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "hsdp/errors.hpp"
#include "hsdp/packing.hpp"

using namespace hsdp;

namespace {

const std::vector<long long> kGoldenBlock115 = {
    9, 11, 19, 21, 39, 41, 49, 51, 64, 66, 74, 76, 94, 96, 104, 106};

/// Every (tail, antennas, dims) combination with small entries; skips the
/// degenerate tail-1 cases.  When minimal_tail_only is set, only pairs with
/// 2^{r-1} < antennas <= 2^r are produced (the regime the construction is
/// sound in; see the excess-tail test below).
template <typename Fn>
void for_small_params(int max_tail, int max_n, long long max_m, bool minimal_tail_only,
                      Fn&& fn) {
  for (int r = 1; r <= max_tail; ++r) {
    for (int antennas = 1; antennas <= (1 << r); ++antennas) {
      if (r == 1 && antennas != 2) continue;
      if (minimal_tail_only && r > 1 && antennas <= (1 << (r - 1))) continue;
      std::vector<long long> dims;
      auto recurse = [&](auto&& self, int depth) -> void {
        if (depth > 0) fn(antennas, r, dims);
        if (depth == max_n) return;
        for (long long m = 1; m <= max_m; ++m) {
          dims.push_back(m);
          self(self, depth + 1);
          dims.pop_back();
        }
      };
      recurse(recurse, 0);
    }
  }
}

}  // namespace

TEST_CASE("basis weights reproduce the worked example") {
  CHECK(basis_weights(4, 2, {2, 2}) == std::vector<long long>{2, 10, 15, 30});
  CHECK(basis_elements(4, 2, {2, 2}) == std::vector<long long>{1, 5, 15, 30});
}

TEST_CASE("tail of length one only works with two antennas") {
  CHECK(basis_weights(2, 1, {1}) == std::vector<long long>{1, 2});
  CHECK_THROWS_AS(basis_weights(1, 1, {1}), DegenerateRecursion);
  // three antennas do not fit a tail of one at all
  CHECK_THROWS_AS(basis_weights(3, 1, {1}), std::invalid_argument);
  CHECK_THROWS_AS(basis_weights(0, 2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(basis_weights(2, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(basis_weights(2, 1, {0}), std::invalid_argument);
}

TEST_CASE("packing radius golden values") {
  CHECK(packing_radius(4, 2, {2, 2}) == 57);
  CHECK(packing_radius(2, 1, {1}) == 3);
  CHECK(packing_radius_closed_form(4, 2, {2, 2}) == 57);
}

TEST_CASE("weight-sum radius equals the closed form exhaustively") {
  long long checked = 0;
  for_small_params(3, 3, 4, false,
                   [&](int antennas, int r, const std::vector<long long>& dims) {
    long long sum = 0;
    for (long long w : basis_weights(antennas, r, dims)) sum += w;
    CHECK(sum == packing_radius_closed_form(antennas, r, dims));
    ++checked;
  });
  CHECK(checked > 1000);
}

TEST_CASE("construction reproduces the 115-element golden packing") {
  Hsdp packing = construct_hsdp({4, 2, {2, 2}, 115});
  REQUIRE(packing.block_count() == 4);
  REQUIRE(packing.block_size() == 16);
  CHECK(packing.blocks[0] == kGoldenBlock115);
  // lexicographic generator order: (1,1), (1,2), (2,1), (2,2)
  CHECK(packing.blocks[1].front() == 4);
  CHECK(packing.blocks[2].front() == 8);
  CHECK(packing.blocks[3].front() == 3);
  CHECK(verify_hsdp(packing).pass());
}

TEST_CASE("construction rejects a too-small modulus") {
  CHECK_THROWS_AS(construct_hsdp({4, 2, {2, 2}, 113}), ModulusTooSmall);
  CHECK_NOTHROW(construct_hsdp({4, 2, {2, 2}, 115}));
}

TEST_CASE("verification accepts the two-block packing mod 11") {
  Hsdp packing = test::example2_packing();
  HsdpVerifyReport report = verify_hsdp(packing);
  CHECK(report.pass());
  CHECK(report.disjoint);
  CHECK(report.max_count == 1);
  const HalfSumEntry* entry = report.find(0, 1);
  REQUIRE(entry != nullptr);
  CHECK(entry->half_sums == std::vector<long long>{0, 7, 8});
  CHECK(entry->collisions == std::vector<long long>{8});
  CHECK(entry->count == 1);

  packing.antennas = 1;
  CHECK_FALSE(verify_hsdp(packing).pass());
}

TEST_CASE("verification counts the worked maximum of three hits") {
  Hsdp packing = construct_hsdp({4, 2, {2, 2}, 115});
  HsdpVerifyReport report = verify_hsdp(packing);
  CHECK(report.pass());
  CHECK(report.max_count == 3);
  // 51 = 1 + 5 + 15 + 30 sits in the first block; its half-sums hit 6, 21, 36
  const HalfSumEntry* entry = report.find(0, 51);
  REQUIRE(entry != nullptr);
  CHECK(entry->count == 3);
  CHECK(entry->collisions == std::vector<long long>{6, 21, 36});
}

TEST_CASE("verification flags overlapping or repeated residues") {
  ResidueRing ring(11);
  Hsdp overlapping{ring, {{1, 2, 4, 10}, {4, 6, 8, 9}}, 2};
  HsdpVerifyReport report = verify_hsdp(overlapping);
  CHECK_FALSE(report.disjoint);
  CHECK(report.duplicates == std::vector<long long>{4});
  CHECK_FALSE(report.pass());

  Hsdp repeated{ring, {{1, 12}}, 2};  // 12 reduces to 1
  CHECK_FALSE(verify_hsdp(repeated).disjoint);
}

TEST_CASE("construction is sound across the minimal-tail grid") {
  long long built = 0;
  for_small_params(3, 2, 3, true,
                   [&](int antennas, int r, const std::vector<long long>& dims) {
    const long long v = 2 * packing_radius(antennas, r, dims) + 1;
    Hsdp packing = construct_hsdp({antennas, r, dims, v});
    HsdpVerifyReport report = verify_hsdp(packing);
    CHECK(report.pass());
    CHECK(report.max_count <= antennas - 1);

    // every constructed residue distinct across the whole family
    std::set<long long> all;
    for (const Block& block : packing.blocks)
      for (long long d : block) all.insert(d);
    CHECK(all.size() == packing.block_count() * packing.block_size());
    ++built;
  });
  CHECK(built > 80);
}

TEST_CASE("an excess tail can break the half-sum bound") {
  // Three antennas with an r = 3 tail: the element 25 = 1+2+4+18 forms
  // half-sums 23, 21, 19 with its block mates 21, 17, 13, and all three land
  // back in the block.  Soundness is a minimal-tail guarantee.
  Hsdp packing = construct_hsdp({3, 3, {1}, 51});
  HsdpVerifyReport report = verify_hsdp(packing);
  CHECK_FALSE(report.pass());
  CHECK(report.max_count == 3);

  // a single antenna has no working tail at all: the first element pairs
  // within its own block regardless of the modulus
  Hsdp bumped = construct_hsdp({1, 2, {1}, 27});
  CHECK_FALSE(verify_hsdp(bumped).pass());

  // excess tail is not always fatal, which is why construct and verify
  // stay separate steps
  Hsdp loose = construct_hsdp({2, 2, {1}, 23});
  CHECK(verify_hsdp(loose).pass());
}

TEST_CASE("fast verifier agrees with the definition-level oracle") {
  std::mt19937_64 rng(7);
  auto check_agreement = [](const Hsdp& packing) {
    HsdpVerifyReport fast = verify_hsdp(packing);
    test::NaiveHsdpResult naive = test::naive_verify_hsdp(packing);
    CHECK(fast.disjoint == naive.disjoint);
    CHECK(fast.max_count == naive.max_count);
    CHECK(fast.pass() == naive.pass(packing.antennas));
  };
  check_agreement(test::example2_packing());
  check_agreement(construct_hsdp({4, 2, {2, 2}, 115}));
  for (int trial = 0; trial < 25; ++trial) {
    // random small candidates, valid or not
    long long v = 11 + 2 * static_cast<long long>(rng() % 30);
    ResidueRing ring(v);
    std::vector<Block> blocks(1 + rng() % 3);
    for (Block& block : blocks) {
      std::set<long long> elements;
      while (elements.size() < 3 + rng() % 3)
        elements.insert(static_cast<long long>(rng() % v));
      block.assign(elements.begin(), elements.end());
    }
    check_agreement(Hsdp{ring, blocks, static_cast<int>(1 + rng() % 4)});
  }
}

TEST_CASE("larger modulus only relaxes the construction") {
  Hsdp snug = construct_hsdp({2, 1, {2}, 2 * packing_radius(2, 1, {2}) + 1});
  Hsdp roomy = construct_hsdp({2, 1, {2}, 2 * packing_radius(2, 1, {2}) + 21});
  CHECK(verify_hsdp(snug).pass());
  CHECK(verify_hsdp(roomy).pass());
  CHECK(snug.block_count() == roomy.block_count());
}
