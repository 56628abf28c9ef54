#include "rderange/derangements.hpp"

#include <mutex>
#include <stdexcept>

namespace rderange {

Int DerangementTable::r_derangement(unsigned r, unsigned n) {
    {
        std::shared_lock lock(mutex_);
        if (r < rows_.size() && n < rows_[r].size()) return rows_[r][n];
    }
    std::unique_lock lock(mutex_);
    extend_unlocked(r, n);
    return rows_[r][n];
}

Int DerangementTable::reduced(unsigned r, unsigned n) {
    if (r < 1) throw std::invalid_argument("reduced: requires r >= 1");
    if (n < r) throw std::invalid_argument("reduced: requires n >= r");
    Int d = r_derangement(r, n);
    return exact_quotient(d, falling_factorial(Int(n), r), "C_r(n)");
}

void DerangementTable::extend(unsigned r, unsigned n) {
    std::unique_lock lock(mutex_);
    extend_unlocked(r, n);
}

long DerangementTable::max_index(unsigned r) const {
    std::shared_lock lock(mutex_);
    if (r >= rows_.size()) return -1;
    return static_cast<long>(rows_[r].size()) - 1;
}

std::vector<Int> DerangementTable::row_copy(unsigned r) const {
    std::shared_lock lock(mutex_);
    if (r >= rows_.size()) return {};
    return rows_[r];
}

void DerangementTable::seed_row(unsigned r, const std::vector<Int>& values) {
    std::unique_lock lock(mutex_);
    if (rows_.size() <= r) rows_.resize(r + 1);
    if (values.size() < rows_[r].size())
        throw std::invalid_argument("seed_row: shorter than existing row");
    rows_[r] = values;
}

void DerangementTable::extend_unlocked(unsigned r, unsigned n) {
    if (rows_.size() <= r) rows_.resize(r + 1);

    auto& d0 = rows_[0];
    if (d0.empty()) d0.emplace_back(1);
    if (n >= 1 && d0.size() < 2) d0.emplace_back(0);
    for (unsigned m = d0.size(); m <= n; ++m) d0.push_back((m - 1) * (d0[m - 1] + d0[m - 2]));

    for (unsigned rr = 1; rr <= r; ++rr) {
        auto& row = rows_[rr];
        const auto& below = rows_[rr - 1];
        for (unsigned m = row.size(); m <= n; ++m) {
            if (m < rr) {
                row.emplace_back(0);
                continue;
            }
            Int v = rr * below[m - 1];
            if (m >= 2) v += (m - 1) * row[m - 2];
            v += (m + rr - 1) * row[m - 1];
            row.push_back(std::move(v));
        }
    }
}

Int r_derangement_closed(unsigned r, unsigned n) {
    if (r < 1) throw std::invalid_argument("r_derangement_closed: requires r >= 1");
    if (n < r) throw std::invalid_argument("r_derangement_closed: requires n >= r");
    // sum_{j=r}^{n} C(j, r) (n)_j (-1)^{n-j}, accumulated from j = n downward
    // so the leading (largest) terms enter first.
    std::vector<Int> fall(n + 1);  // fall[j] = n!/(n-j)!
    fall[0] = 1;
    for (unsigned j = 1; j <= n; ++j) fall[j] = fall[j - 1] * (n - j + 1);
    Int acc = 0;
    for (unsigned j = n;; --j) {
        Int term = binomial(static_cast<unsigned long>(j), r) * fall[j];
        if ((n - j) % 2 == 0)
            acc += term;
        else
            acc -= term;
        if (j == r) break;
    }
    return acc;
}

Int r_derangement_convolution(DerangementTable& table, unsigned r, unsigned s, unsigned n) {
    if (s < 1 || s > r) throw std::invalid_argument("r_derangement_convolution: split outside [1, r]");
    if (n < r) throw std::invalid_argument("r_derangement_convolution: requires n >= r");
    table.extend(r - s, n - s);
    Int acc = 0;
    Int ff = 1;  // n!/(n-j)! = (n)_j
    for (unsigned j = 1; j <= n; ++j) {
        ff *= n - j + 1;
        if (j < s) continue;
        acc += binomial(static_cast<unsigned long>(j - 1), s - 1) * ff *
               table.r_derangement(r - s, n - j);
    }
    return acc;
}

Int r_derangement_lift(DerangementTable& table, unsigned r, unsigned n) {
    if (n < 1) throw std::invalid_argument("r_derangement_lift: requires n >= 1");
    Int num = (Int(n) - r) * table.r_derangement(r, n) + n * table.r_derangement(r, n - 1);
    return exact_quotient(num, Int(r + 1), "D_{r+1}(n) lift");
}

Int lah(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k == 0) {
        if (n == 0) return 1;
        throw std::invalid_argument("lah: k = 0 with n > 0");
    }
    return exact_quotient(factorial(n), factorial(k), "L(n,k)") * binomial(n - 1, k - 1);
}

bool lah_identity_check(DerangementTable& table, unsigned r, unsigned n) {
    if (n < r || n < 1) throw std::invalid_argument("lah_identity_check: requires n >= max(r, 1)");
    Int lhs = factorial(r + 1) * lah(n, r + 1);
    Int rhs = 0;
    table.extend(r, n);
    for (unsigned k = 1; k <= n; ++k)
        rhs += binomial(static_cast<unsigned long>(n), k) * k * table.r_derangement(r, n - k);
    return lhs == rhs;
}

Int pnr_count(unsigned r, unsigned n) {
    if (n < r) throw std::invalid_argument("pnr_count: requires n >= r");
    return exact_quotient(factorial(n), factorial(r), "P_{n,r}") * falling_factorial(Int(n), r);
}

Rat fixed_point_expectation(DerangementTable& table, unsigned r, unsigned n) {
    if (n <= r) throw std::invalid_argument("fixed_point_expectation: requires n > r");
    Int num = 0;
    table.extend(r, n);
    for (unsigned k = 1; k <= n; ++k)
        num += binomial(static_cast<unsigned long>(n), k) * k * table.r_derangement(r, n - k);
    Rat e(num, pnr_count(r, n));
    e.canonicalize();
    return e;
}

}  // namespace rderange
