#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "lenz/errors.hpp"
#include "lenz/formulas.hpp"

using namespace lenz;

namespace {

// Independent oracle: best achievable count over all partitions of n into at
// most p circle classes, enumerated directly (no deviation window tricks).
long long oracle_unit_even(int p, int n) {
    std::vector<int> sizes;
    long long best = -1;
    // enumerate all partitions of n into <= p nonincreasing parts
    auto rec = [&](auto&& self, int remaining, int parts_left, int cap) -> void {
        if (parts_left == 0) {
            if (remaining != 0) return;
            long long pairs = 0, singles = 0, bonus = 0;
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                for (std::size_t j = i + 1; j < sizes.size(); ++j)
                    pairs += static_cast<long long>(sizes[i]) * sizes[j];
                if (sizes[i] > 0) {
                    singles += sizes[i] - 1;  // within-class unit pairs: m-1 or m
                    if (sizes[i] % 4 == 0) ++bonus;
                }
            }
            best = std::max(best, pairs + singles + bonus);
            return;
        }
        for (int s = std::min(remaining, cap); s >= 0; --s) {
            sizes.push_back(s);
            self(self, remaining - s, parts_left - 1, s);
            sizes.pop_back();
        }
    };
    rec(rec, n, p, n);
    return best;
}

long long binom2(long long m) { return m * (m - 1) / 2; }

// Turán oracle: complete p-partite graph on balanced parts.
long long oracle_turan(int p, int n) {
    long long total = binom2(n);
    for (int i = 0; i < p; ++i) {
        const long long part = n / p + (i < n % p ? 1 : 0);
        total -= binom2(part);
    }
    return total;
}

} // namespace

TEST_CASE("turan edge counts") {
    CHECK(turan_edges(2, 4) == 4);
    CHECK(turan_edges(3, 6) == 12);
    CHECK(turan_edges(3, 33) == 363);
    CHECK(turan_edges(4, 10) == 37);
    for (int p = 2; p <= 6; ++p)
        for (int n = 0; n <= 120; ++n) CHECK(turan_edges(p, n) == oracle_turan(p, n));
    CHECK(turan_edges(1, 5) == 0);  // one part, no cross pairs
    CHECK_THROWS_AS(turan_edges(0, 5), InvalidInput);
    CHECK_THROWS_AS(turan_edges(2, -1), InvalidInput);
}

TEST_CASE("unit maximum, even dimensions >= 6") {
    // frozen reference values (independently recomputed by partition search)
    CHECK(unit_formula_even(6, 33).value == 393);
    CHECK(unit_formula_even(6, 24).value == 216);
    CHECK(unit_formula_even(6, 27).value == 267);
    CHECK(unit_formula_even(8, 16).value == 112);  // 96 cross + 12 chords + 4 square bonuses

    SUBCASE("case labels track the residue band") {
        CHECK(unit_formula_even(6, 33).case_label == "3p<=r<=4p-1 (r=9)");
        CHECK(unit_formula_even(6, 13).case_label == "0<=r<=p-1 (r=1)");
        CHECK(unit_formula_even(6, 16).case_label == "p<=r<=3p-1 (r=4)");
    }

    SUBCASE("matches exhaustive partition oracle") {
        for (int n = 0; n <= 60; ++n) {
            CHECK(unit_formula_even(6, n).value == oracle_unit_even(3, n));
            CHECK(unit_formula_even(8, n).value == oracle_unit_even(4, n));
        }
        for (int n = 0; n <= 40; ++n)
            CHECK(unit_formula_even(10, n).value == oracle_unit_even(5, n));
    }

    SUBCASE("rejects bad dimensions") {
        CHECK_THROWS_AS(unit_formula_even(5, 10), InvalidInput);
        CHECK_THROWS_AS(unit_formula_even(4, 10), InvalidInput);
        CHECK_THROWS_AS(unit_formula_even(7, 10), InvalidInput);
    }
}

TEST_CASE("unit maximum, dimension 4") {
    // t_2(n) + n when 8 | n or 10 | n, else one less
    CHECK(unit_formula_d4(8).value == 16 + 8);
    CHECK(unit_formula_d4(10).value == 25 + 10);
    CHECK(unit_formula_d4(9).value == 20 + 8);
    CHECK(unit_formula_d4(40).value == 400 + 40);
    CHECK_FALSE(unit_formula_d4(8).asymptotic_only);
    for (int n = 5; n <= 200; ++n) {
        const long long expect =
            turan_edges(2, n) + n - ((n % 8 == 0 || n % 10 == 0) ? 0 : 1);
        CHECK(unit_formula_d4(n).value == expect);
    }
    CHECK_THROWS_AS(unit_formula_d4(4), InvalidInput);
}

TEST_CASE("diameter maximum across dimensions") {
    CHECK(diam_formula(4, 7).value == 16);
    CHECK(diam_formula(4, 8).value == 21);
    CHECK(diam_formula(4, 9).value == 26);
    CHECK(diam_formula(5, 8).value == 24);
    CHECK(diam_formula(6, 9).value == 30);
    CHECK(diam_formula(7, 12).value == 54);
    CHECK(diam_formula(8, 200).value == turan_edges(4, 200) + 4);
    CHECK(diam_formula(9, 20).value == turan_edges(4, 20) + 5 + 4 - 1);

    SUBCASE("domain: n >= d") {
        CHECK_THROWS_AS(diam_formula(7, 6), InvalidInput);
        CHECK_THROWS_AS(diam_formula(4, 3), InvalidInput);
        CHECK_NOTHROW(diam_formula(7, 7));
    }
    SUBCASE("d=4 parity correction") {
        for (int n = 4; n <= 100; ++n) {
            const long long base = turan_edges(2, n) + (n + 1) / 2 + 1;
            CHECK(diam_formula(4, n).value == base - (n % 4 == 3 ? 1 : 0));
        }
    }
}

TEST_CASE("unit partition optimizer agrees with the closed form") {
    for (int d : {6, 8, 10}) {
        for (int n = 0; n <= 150; ++n) {
            const PartitionPlan plan = optimize_unit_partition_even(d, n);
            CHECK(plan.value == unit_formula_even(d, n).value);
            CHECK(std::accumulate(plan.sizes.begin(), plan.sizes.end(), std::int64_t{0}) == n);
            CHECK(std::is_sorted(plan.sizes.begin(), plan.sizes.end()));
        }
    }
}

TEST_CASE("optimizer tie-break is the lexicographically smallest plan") {
    // at n=33, d=6 both (10,11,12) and (11,11,11) achieve 393; 12 = 4*3 earns
    // the divisibility bonus that offsets the lost cross pair
    const PartitionPlan plan = optimize_unit_partition_even(6, 33);
    CHECK(plan.value == 393);
    CHECK(plan.sizes == std::vector<std::int64_t>({10, 11, 12}));
}

TEST_CASE("diameter split optimizer for dimension 4") {
    const DiamSplitD4 seven = optimize_diam_split_d4(7);
    CHECK(seven.value == 16);
    const DiamSplitD4 eight = optimize_diam_split_d4(8);
    CHECK(eight.value == 21);
    CHECK(eight.n1 == 5);
    for (int n = 6; n <= 300; ++n) {
        const DiamSplitD4 split = optimize_diam_split_d4(n);
        CHECK(split.n1 + split.n2 == n);
        CHECK(split.value == diam_formula(4, n).value);
        CHECK(split.n1 % 2 == 1);  // an odd star size is always optimal
        CHECK(split.n1 >= 3);
        CHECK(split.n2 >= 2);
    }
    CHECK_THROWS_AS(optimize_diam_split_d4(5), InvalidInput);
}

TEST_CASE("monotonicity in n") {
    for (int n = 6; n < 300; ++n) {
        CHECK(unit_formula_even(6, n + 1).value > unit_formula_even(6, n).value);
        CHECK(diam_formula(5, n + 1).value > diam_formula(5, n).value);
        CHECK(diam_formula(6, n + 1).value > diam_formula(6, n).value);
    }
}
