#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "hsdp/design.hpp"
#include "hsdp/errors.hpp"
#include "hsdp/mapda.hpp"

using namespace hsdp;

TEST_CASE("minimal tail is the smallest power-of-two cover") {
  CHECK(minimal_tail(1) == 1);
  CHECK(minimal_tail(2) == 1);
  CHECK(minimal_tail(3) == 2);
  CHECK(minimal_tail(4) == 2);
  CHECK(minimal_tail(5) == 3);
  CHECK(minimal_tail(8) == 3);
  CHECK(minimal_tail(9) == 4);
}

TEST_CASE("feasibility golden values") {
  CHECK(is_feasible(4, 2, {2, 2}, 115));
  CHECK_FALSE(is_feasible(4, 2, {2, 2}, 113));
  CHECK(is_feasible(4, 2, {1, 1}, 1000001));
  CHECK_THROWS_AS(is_feasible(4, 2, {2, 2}, 114), std::invalid_argument);
  CHECK_THROWS_AS(is_feasible(1, 1, {1}, 11), DegenerateRecursion);
}

TEST_CASE("closed-form point reproduces the 567-user instance") {
  DesignPoint point = closed_form_point(4, 4, 2);
  CHECK(point.modulus == 567);
  CHECK(point.tail_length == 2);
  CHECK(point.block_dims == std::vector<long long>{4, 7});
  CHECK(point.block_count() == 28);
  CHECK(point.block_size() == 16);
  CHECK(point.stars() == 119);
  CHECK(point.symbols() == 15876);
  CHECK(point.memory_ratio() == Rational(17, 81));
  CHECK(is_feasible(point.antennas, point.tail_length, point.block_dims, point.modulus));
}

TEST_CASE("closed-form point reproduces the 75-user instance") {
  DesignPoint point = closed_form_point(2, 2, 2);
  CHECK(point.modulus == 75);
  CHECK(point.block_dims == std::vector<long long>{2, 3});
  CHECK(point.block_count() == 6);
  CHECK(point.block_size() == 8);
  CHECK(point.memory_ratio() == Rational(27, 75));
}

TEST_CASE("non-integral last dimension is rejected") {
  CHECK_THROWS_AS(closed_form_point(4, 1, 2), NonIntegralBlockDim);
  CHECK_THROWS_AS(power_of_two_point(2, 1, 1), NonIntegralBlockDim);
}

TEST_CASE("power-of-two specialisation agrees with the general closed form") {
  DesignPoint direct = power_of_two_point(1, 2, 2);
  CHECK(direct.antennas == 2);
  CHECK(direct.modulus == 75);
  CHECK(direct.memory_ratio() == Rational(9, 25));
  CHECK(direct.block_size() == 8);

  for (int r = 1; r <= 3; ++r)
    for (long long q = 1; q <= 6; ++q)
      for (int n = 1; n <= 3; ++n) {
        DesignPoint a, b;
        bool threw_a = false, threw_b = false;
        try {
          a = power_of_two_point(r, q, n);
        } catch (const NonIntegralBlockDim&) {
          threw_a = true;
        }
        try {
          b = closed_form_point(1 << r, q, n);
        } catch (const NonIntegralBlockDim&) {
          threw_b = true;
        }
        CHECK(threw_a == threw_b);
        if (!threw_a) {
          CHECK(a.modulus == b.modulus);
          CHECK(a.block_dims == b.block_dims);
          CHECK(a.memory_ratio() == b.memory_ratio());
        }
      }
}

TEST_CASE("memory ratio identity holds for the closed form") {
  // 1 - b*g/v == 1 - 2^r (2q)^n / ((2^{r+1}-L)(1+2q)^n), exact rationals
  for (int antennas = 2; antennas <= 8; ++antennas)
    for (long long q = 1; q <= 6; ++q)
      for (int n = 1; n <= 4; ++n) {
        DesignPoint point;
        try {
          point = closed_form_point(antennas, q, n);
        } catch (const NonIntegralBlockDim&) {
          continue;
        }
        const int r = point.tail_length;
        Rational twoq_pow = 1, base = Rational(2 * q, 1 + 2 * q);
        for (int i = 0; i < n; ++i) twoq_pow *= base;
        Rational expected = 1 - Rational(1LL << r, (1LL << (r + 1)) - antennas) * twoq_pow;
        CHECK(point.memory_ratio() == expected);
      }
}

TEST_CASE("search reproduces the frozen exhaustive results") {
  SearchReport r115 = search_best(115, 4, 2, 2);
  CHECK(r115.best.block_dims == std::vector<long long>{2, 2});
  CHECK(r115.best.block_count() == 4);

  SearchReport r115n1 = search_best(115, 4, 1, 2);
  CHECK(r115n1.best.block_dims == std::vector<long long>{13});

  SearchReport r75 = search_best(75, 2, 2, 1);
  CHECK(r75.best.block_dims == std::vector<long long>{2, 3});
  CHECK(r75.best.block_count() == 6);
  REQUIRE(r75.closed_form_product.has_value());
  CHECK(*r75.closed_form_product == 6);

  SearchReport r567 = search_best(567, 4, 2);
  CHECK(r567.best.block_dims == std::vector<long long>{4, 7});
  REQUIRE(r567.closed_form_product.has_value());
  CHECK(*r567.closed_form_product == 28);
}

TEST_CASE("search fails cleanly when nothing fits") {
  CHECK_THROWS_AS(search_best(3, 2, 2, 1), NoFeasiblePoint);
}

TEST_CASE("search never loses to unpruned enumeration") {
  // independent oracle: every vector up to the hard bound, feasibility
  // checked only at the leaves, no pruning anywhere
  auto brute = [](long long v, int antennas, int n, int tail) {
    std::vector<long long> dims(static_cast<std::size_t>(n), 1);
    long long best = 0;
    std::vector<long long> best_dims;
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == n) {
        if (!is_feasible(antennas, tail, dims, v)) return;
        long long product = 1;
        for (long long m : dims) product *= m;
        if (product > best) {
          best = product;
          best_dims = dims;
        }
        return;
      }
      for (long long m = 1; m <= (v - 1) / 2; ++m) {
        dims[static_cast<std::size_t>(depth)] = m;
        self(self, depth + 1);
      }
      dims[static_cast<std::size_t>(depth)] = 1;
    };
    rec(rec, 0);
    return std::pair{best, best_dims};
  };
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    // at least 57: every (L <= 4, n <= 2) combination is feasible from there
    long long v = 57 + 2 * static_cast<long long>(rng() % 40);
    int antennas = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 2);
    SearchReport fast = search_best(v, antennas, n);
    auto [best, dims] = brute(v, antennas, n, minimal_tail(antennas));
    CHECK(fast.best.block_count() == best);
    CHECK(fast.best.block_dims == dims);
  }
}

TEST_CASE("search dominates the closed form for every matching modulus") {
  // all closed-form moduli up to 1200 with up to three dimensions
  long long combos = 0;
  for (int antennas = 2; antennas <= 8; ++antennas) {
    const int tail = minimal_tail(antennas);
    const long long scale = (1LL << (tail + 2)) - 2LL * antennas - 1;
    long long smallest = scale * 3;
    for (int n = 1; n <= 3 && smallest <= 1200; ++n, smallest *= 3) {
      for (long long q = 1;; ++q) {
        long long v = scale;
        for (int i = 0; i < n; ++i) v *= 1 + 2 * q;
        if (v > 1200) break;
        DesignPoint point;
        try {
          point = closed_form_point(antennas, q, n);
        } catch (const NonIntegralBlockDim&) {
          continue;
        }
        SearchReport report = search_best(v, antennas, n);
        REQUIRE(report.closed_form_product.has_value());
        CHECK(*report.closed_form_product == point.block_count());
        CHECK(report.best.block_count() >= point.block_count());
        ++combos;
      }
    }
  }
  CHECK(combos > 100);
}

TEST_CASE("enlarging the modulus never shrinks the best product") {
  long long previous = 0;
  for (long long v = 21; v <= 101; v += 2) {
    SearchReport report = search_best(v, 2, 2);
    CHECK(report.best.block_count() >= previous);
    previous = report.best.block_count();
  }
}

TEST_CASE("emitted points survive the full pipeline with exact parameters") {
  std::vector<DesignPoint> points = {
      closed_form_point(2, 2, 2), closed_form_point(4, 4, 2),
      search_best(115, 4, 2).best, search_best(85, 2, 1).best};
  for (const DesignPoint& point : points) {
    Hsdp packing = construct_hsdp(point.construction());
    CHECK(verify_hsdp(packing).pass());
    Mapda array = build_mapda(packing);
    CHECK(verify_mapda(array).pass());
    SchemeParams params = scheme_params(array);
    CHECK(params.memory_ratio == point.memory_ratio());
    CHECK(params.sum_dof == Rational(point.block_size()));
    CHECK(params.symbols == point.symbols());
    CHECK(params.stars == point.stars());
  }
}
