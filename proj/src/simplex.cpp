#include "prefswap/detail/simplex.hpp"

#include <stdexcept>

namespace prefswap::detail {

// Phase-1: minimize the sum of artificial variables for
//   [A | I] (xi, a)^T = b,  xi, a >= 0,
// where rows are sign-flipped so b >= 0. The target is reachable iff the
// optimum is zero. Bland's rule (smallest eligible index, smallest basic
// index on ties) rules out cycling.
std::optional<std::vector<Rational>> nonnegative_combination(
    const std::vector<std::vector<long long>>& columns,
    const std::vector<long long>& target) {
    const std::size_t d = target.size();
    const std::size_t m = columns.size();
    for (const auto& col : columns) {
        if (col.size() != d) throw std::invalid_argument("column dimension mismatch");
    }

    std::vector<std::vector<Rational>> tab(d, std::vector<Rational>(m + d, Rational(0)));
    std::vector<Rational> rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
        const int sign = target[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) tab[i][j] = Rational(sign * columns[j][i]);
        tab[i][m + i] = Rational(1);
        rhs[i] = Rational(sign * target[i]);
    }

    // Reduced costs under the all-artificial basis: structural columns get
    // minus their column sum, artificials zero.
    std::vector<Rational> zrow(m + d, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        Rational sum(0);
        for (std::size_t i = 0; i < d; ++i) sum += tab[i][j];
        zrow[j] = -sum;
    }

    std::vector<std::size_t> basis(d);
    for (std::size_t i = 0; i < d; ++i) basis[i] = m + i;

    for (;;) {
        std::size_t enter = m + d;
        for (std::size_t j = 0; j < m + d; ++j) {
            if (zrow[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == m + d) break;  // optimal

        std::size_t leave = d;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < d; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = rhs[i] / tab[i][enter];
            if (leave == d || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == d) throw std::logic_error("phase-1 objective unbounded");

        const Rational pivot = tab[leave][enter];
        for (auto& v : tab[leave]) v /= pivot;
        rhs[leave] /= pivot;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            const Rational f = tab[i][enter];
            for (std::size_t j = 0; j < m + d; ++j) tab[i][j] -= f * tab[leave][j];
            rhs[i] -= f * rhs[leave];
        }
        if (zrow[enter] != 0) {
            const Rational f = zrow[enter];
            for (std::size_t j = 0; j < m + d; ++j) zrow[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Rational residue(0);
    for (std::size_t i = 0; i < d; ++i) {
        if (basis[i] >= m) residue += rhs[i];
    }
    if (residue != 0) return std::nullopt;

    std::vector<Rational> xi(m, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (basis[i] < m) xi[basis[i]] = rhs[i];
    }
    return xi;
}

}  // namespace prefswap::detail
