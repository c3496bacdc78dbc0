#include "lenz/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lenz/errors.hpp"

namespace lenz {

namespace {

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

} // namespace

std::int64_t turan_edges(int p, std::int64_t n) {
    if (p < 1) throw InvalidInput("turan_edges: p must be >= 1, got " + std::to_string(p));
    if (n < 0) throw InvalidInput("turan_edges: n must be >= 0, got " + std::to_string(n));
    const std::int64_t q = n / p, s = n % p;
    // complement of s classes of q+1 and p-s classes of q
    return choose2(n) - s * choose2(q + 1) - (p - s) * choose2(q);
}

FormulaResult unit_formula_even(int d, std::int64_t n) {
    if (d < 6 || d % 2 != 0)
        throw InvalidInput("unit_formula_even: d must be even and >= 6, got " + std::to_string(d));
    if (n < 0)
        throw InvalidInput("unit_formula_even: n must be >= 0, got " + std::to_string(n));
    const int p = d / 2;
    const std::int64_t r = n % (2 * d);
    const std::int64_t t = turan_edges(p, n);
    FormulaResult out;
    out.asymptotic_only = true;
    if (r <= p - 1) {
        out.value = t + n - r;
        out.case_label = "0<=r<=p-1 (r=" + std::to_string(r) + ")";
    } else if (r <= 3 * p - 1) {
        out.value = t + n - p;
        out.case_label = "p<=r<=3p-1 (r=" + std::to_string(r) + ")";
    } else {
        out.value = t + n - 2 * d + r;
        out.case_label = "3p<=r<=4p-1 (r=" + std::to_string(r) + ")";
    }
    return out;
}

FormulaResult unit_formula_d4(std::int64_t n) {
    if (n < 5)
        throw InvalidInput("unit_formula_d4: n must be >= 5, got " + std::to_string(n));
    FormulaResult out;
    out.asymptotic_only = false;
    const std::int64_t t = turan_edges(2, n);
    if (n % 8 == 0 || n % 10 == 0) {
        out.value = t + n;
        out.case_label = "8|n or 10|n";
    } else {
        out.value = t + n - 1;
        out.case_label = "neither 8|n nor 10|n";
    }
    return out;
}

FormulaResult diam_formula(int d, std::int64_t n) {
    if (d < 4)
        throw InvalidInput("diam_formula: d must be >= 4, got " + std::to_string(d));
    if (n < d)
        throw InvalidInput("diam_formula: n must be >= d, got n=" + std::to_string(n) +
                           " for d=" + std::to_string(d));
    FormulaResult out;
    out.asymptotic_only = true;
    if (d == 4) {
        const std::int64_t base = turan_edges(2, n) + ceil_div(n, 2);
        if (n % 4 == 3) {
            out.value = base;
            out.case_label = "d=4, n=3 (mod 4)";
        } else {
            out.value = base + 1;
            out.case_label = "d=4, n!=3 (mod 4)";
        }
    } else if (d == 5) {
        out.value = turan_edges(2, n) + n;
        out.case_label = "d=5";
    } else if (d % 2 == 0) {
        const int p = d / 2;
        out.value = turan_edges(p, n) + p;
        out.case_label = "even d>=6";
    } else {
        const int p = (d - 1) / 2;
        out.value = turan_edges(p, n) + ceil_div(n, p) + p - 1;
        out.case_label = "odd d>=7";
    }
    return out;
}

namespace {

// Exact unit count of the orthogonal-circle construction for class sizes
// n_1..n_p: cross pairs + (n - p + #{n_i divisible by 4}).  Empty classes
// contribute 0 - 1 + 1 = 0, so the formula is uniform.
std::int64_t plan_value(const std::vector<std::int64_t>& sizes, std::int64_t n) {
    std::int64_t sum_sq = 0, div4 = 0;
    for (std::int64_t s : sizes) {
        sum_sq += s * s;
        if (s % 4 == 0) ++div4;
    }
    const std::int64_t cross = (n * n - sum_sq) / 2;
    return cross + n - static_cast<std::int64_t>(sizes.size()) + div4;
}

} // namespace

PartitionPlan optimize_unit_partition_even(int d, std::int64_t n) {
    if (d < 6 || d % 2 != 0)
        throw InvalidInput("optimize_unit_partition_even: d must be even and >= 6");
    if (n < 0)
        throw InvalidInput("optimize_unit_partition_even: n must be >= 0");
    const int p = d / 2;
    const std::int64_t q = n / p, s = n % p;

    // Deviations e_i = n_i - q.  A balanced plan scores cross_balanced with a
    // bonus k >= 0, and the bonus is at most p, so any optimum satisfies
    // sum e_i^2 <= s + 2p (quadratic loss beyond that can never be repaid).
    // Enumerate nondecreasing e-vectors inside the |e_i| <= 2d window with
    // that budget (small slack added), which provably contains every optimum.
    const std::int64_t budget = s + 2 * p + 8;
    const std::int64_t win = 2 * d;

    PartitionPlan best;
    best.value = -1;
    std::vector<std::int64_t> cur(p);

    auto rec = [&](auto&& self, int i, std::int64_t rem, std::int64_t lo,
                   std::int64_t sq_used) -> void {
        if (i == p - 1) {
            const std::int64_t e = rem;
            if (e < lo || e > win || e < -q) return;
            if (sq_used + e * e > budget) return;
            cur[p - 1] = q + e;
            const std::int64_t v = plan_value(cur, n);
            if (v > best.value ||
                (v == best.value && !best.sizes.empty() &&
                 std::lexicographical_compare(cur.begin(), cur.end(),
                                              best.sizes.begin(), best.sizes.end()))) {
                best.value = v;
                best.sizes = cur;
            }
            return;
        }
        for (std::int64_t e = std::max(lo, -q); e <= win; ++e) {
            const std::int64_t sq = sq_used + e * e;
            if (sq > budget) {
                if (e > 0) break;  // squares only grow from here
                continue;
            }
            cur[i] = q + e;
            self(self, i + 1, rem - e, e, sq);
        }
    };
    rec(rec, 0, s, -win, 0);
    return best;
}

DiamSplitD4 optimize_diam_split_d4(std::int64_t n) {
    if (n < 6)
        throw InvalidInput("optimize_diam_split_d4: n must be >= 6, got " + std::to_string(n));
    DiamSplitD4 best;
    best.value = -1;
    for (std::int64_t n1 = 3; n1 <= n - 2; ++n1) {
        const std::int64_t n2 = n - n1;
        const std::int64_t v = n1 * n2 + n1 + (n1 % 2 == 1 ? 1 : 0);
        if (v > best.value) {
            best.n1 = n1;
            best.n2 = n2;
            best.value = v;
        }
    }
    return best;
}

} // namespace lenz
