#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lenz {

/// A closed-form extremal value together with the case of the formula that
/// produced it.  `asymptotic_only` is true when the value is the exact
/// optimum of the orthogonal-circle construction family but is only known to
/// be the global maximum for all sufficiently large n.
struct FormulaResult {
    std::int64_t value = 0;
    std::string case_label;
    bool asymptotic_only = false;
};

/// Number of edges of the complete p-partite graph on n vertices with class
/// sizes as equal as possible (the Turan graph T_p(n)).  p >= 1, n >= 0.
[[nodiscard]] std::int64_t turan_edges(int p, std::int64_t n);

/// Maximum number of unit distances among n points in even dimension d >= 6.
/// Closed form over the residue r = n mod 2d, with p = d/2:
///   t_p(n) + n - r        for 0 <= r <= p-1,
///   t_p(n) + n - p        for p <= r <= 3p-1,
///   t_p(n) + n - 2d + r   for 3p <= r <= 4p-1.
/// Throws InvalidInput unless d is even, d >= 6, n >= 0.
[[nodiscard]] FormulaResult unit_formula_even(int d, std::int64_t n);

/// Maximum number of unit distances among n points in dimension 4 (n >= 5):
/// t_2(n) + n when 8 | n or 10 | n, else t_2(n) + n - 1.
[[nodiscard]] FormulaResult unit_formula_d4(std::int64_t n);

/// Maximum number of diameter pairs among n points in dimension d >= 4
/// (n >= d).  With p = floor(d/2):
///   d = 4:       t_2(n) + ceil(n/2) + 1, minus 1 when n == 3 (mod 4)
///   d = 5:       t_2(n) + n
///   even d >= 6: t_p(n) + p
///   odd  d >= 7: t_p(n) + ceil(n/p) + p - 1
[[nodiscard]] FormulaResult diam_formula(int d, std::int64_t n);

/// Optimal class sizes for the unit-distance maximum in even d >= 6.
struct PartitionPlan {
    std::vector<std::int64_t> sizes;  // ascending; sizes.size() == p
    std::int64_t value = 0;           // cross pairs + per-class unit pairs
};

/// Exhaustively maximize  sum_{i<j} n_i n_j + n - p + #{i : 4 | n_i}  over
/// compositions n_1 + ... + n_p = n (p = d/2), the exact unit count of the
/// orthogonal-circle construction with class sizes n_i.  Returns the
/// lexicographically smallest optimal plan (sizes ascending).  The search is
/// restricted to |n_i - n/p| <= 2d and pruned by the quadratic-loss bound;
/// this provably contains every optimum.
[[nodiscard]] PartitionPlan optimize_unit_partition_even(int d, std::int64_t n);

/// Optimal split for the dimension-4 diameter maximum.
struct DiamSplitD4 {
    std::int64_t n1 = 0;  // polygon class, always odd at the returned optimum
    std::int64_t n2 = 0;
    std::int64_t value = 0;  // n1*n2 + n1 + (n1 odd ? 1 : 0)
};

/// Maximize n1*n2 + n1 + [n1 odd] over n1 + n2 = n, n1 >= 3, n2 >= 2,
/// returning the smallest optimal n1 (which is always odd).  n >= 6.
[[nodiscard]] DiamSplitD4 optimize_diam_split_d4(std::int64_t n);

} // namespace lenz
