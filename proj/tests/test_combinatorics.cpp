#include <doctest.h>

#include <algorithm>
#include <set>

#include "luinv/combinatorics.hpp"
#include "oracles.hpp"

using namespace luinv;

TEST_SUITE("combinatorics") {
  TEST_CASE("weyl dimension agrees with a tableau count") {
    const std::vector<std::vector<int>> shapes = {{2, 2}, {1, 1, 1, 1}, {3, 3}, {2, 2, 2}, {2, 2, 1, 1},
                                                  {2, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}, {3, 1}, {2}};
    for (const auto& shape : shapes) {
      for (int n = static_cast<int>(shape.size()); n <= 7; ++n) {
        CAPTURE(n);
        CHECK(weyl_dimension(Partition(shape), n) == oracle::ssyt_count(shape, n));
      }
    }
  }

  TEST_CASE("worked dimensions") {
    CHECK(weyl_dimension(Partition{2, 2}, 4) == 20);
    CHECK(weyl_dimension(Partition{3, 3}, 6) == 490);
    CHECK(weyl_dimension(Partition{2, 2, 2}, 6) == 175);
    CHECK(weyl_dimension(Partition{2, 2, 1, 1}, 6) == 189);
    CHECK(weyl_dimension(Partition{2, 1, 1, 1, 1}, 6) == 35);
    CHECK(weyl_dimension(Partition{2}, 3) == 6);
    CHECK_THROWS_WITH(weyl_dimension(Partition{1, 1, 1}, 2), doctest::Contains("partition exceeds dimension"));
  }

  TEST_CASE("sym power dimension counts multisets of subsets") {
    for (int n = 2; n <= 7; ++n) {
      for (int k = 1; k <= std::min(n, 3); ++k) {
        for (int m = 1; m <= 3; ++m) {
          const std::uint64_t subsets = k_subsets(n, k).size();
          // multisets of size m from `subsets` items, counted directly
          std::uint64_t direct = 0;
          std::vector<std::uint64_t> pick(static_cast<std::size_t>(m), 0);
          std::function<void(int, std::uint64_t)> go = [&](int pos, std::uint64_t from) {
            if (pos == m) {
              ++direct;
              return;
            }
            for (std::uint64_t v = from; v < subsets; ++v) go(pos + 1, v);
          };
          go(0, 0);
          CHECK(sym_power_dimension(n, k, m) == direct);
        }
      }
    }
    CHECK(sym_power_dimension(6, 3, 2) == 210);
  }

  TEST_CASE("dimension identity for two fermions squared") {
    for (int n = 4; n <= 8; ++n) {
      CHECK(weyl_dimension(Partition{2, 2}, n) + weyl_dimension(Partition{1, 1, 1, 1}, n) ==
            sym_power_dimension(n, 2, 2));
    }
  }

  TEST_CASE("binomial and multinomial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(multinomial({1, 1, 1}) == 6);
    CHECK(multinomial({2, 1}) == 3);
    CHECK(multinomial({3}) == 1);
  }

  TEST_CASE("k subsets are lexicographic and complete") {
    const auto subs = k_subsets(5, 3);
    CHECK(subs.size() == 10);
    CHECK(std::is_sorted(subs.begin(), subs.end()));
    CHECK(subs.front() == std::vector<int>{1, 2, 3});
    CHECK(subs.back() == std::vector<int>{3, 4, 5});
    std::vector<std::vector<int>> streamed;
    for_each_k_subset(5, 3, [&](std::span<const int> s) { streamed.emplace_back(s.begin(), s.end()); });
    CHECK(streamed == subs);
  }

  TEST_CASE("permutation sign matches inversion parity") {
    std::vector<int> p = {1, 2, 3, 4, 5};
    do {
      CHECK(permutation_sign(p) == oracle::inversion_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  TEST_CASE("distinct arrangements by enumeration") {
    for (const std::vector<int>& e : std::vector<std::vector<int>>{{2, 2, 0, 0}, {3, 2, 1, 0, 0, 0}, {1, 1, 1, 1, 1, 1}, {2, 1, 1, 0}}) {
      std::vector<int> s = e;
      std::sort(s.begin(), s.end());
      std::set<std::vector<int>> seen;
      do seen.insert(s);
      while (std::next_permutation(s.begin(), s.end()));
      CHECK(distinct_arrangements(e) == seen.size());
    }
  }

  TEST_CASE("dominance order") {
    CHECK(dominance_compare({2, 2, 0, 0}, {1, 1, 1, 1}) == Dominance::greater);
    CHECK(dominance_compare({1, 1, 1, 1}, {2, 1, 1, 0}) == Dominance::less);
    CHECK(dominance_compare({2, 2}, {2, 2}) == Dominance::equal);
    CHECK(dominance_compare({3, 0, 0, 3}, {2, 2, 2, 0}) == Dominance::incomparable);
  }

  TEST_CASE("partition basics") {
    const Partition p{3, 3, 0};
    CHECK(p.length() == 2);
    CHECK(p.size() == 6);
    CHECK(p.to_string() == "3,3");
    CHECK(p == Partition{3, 3});
    CHECK(Partition::rectangle(2, 3) == Partition{2, 2, 2});
    CHECK(WeightVector{2, 1, 1, 0}.is_dominant());
    CHECK_FALSE(WeightVector{1, 2}.is_dominant());
  }
}
