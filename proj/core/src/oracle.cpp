#include "rderange/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rderange {

namespace {

bool admissible(const std::vector<unsigned char>& perm, unsigned r) {
    const unsigned m = static_cast<unsigned>(perm.size());
    for (unsigned i = 0; i < m; ++i)
        if (perm[i] == i) return false;
    // Walk the cycle of each distinguished letter, marking visited letters.
    // Cycles are disjoint, so a distinguished letter already marked shares an
    // earlier distinguished cycle.
    std::vector<bool> visited(m, false);
    for (unsigned s = 0; s < r; ++s) {
        if (visited[s]) return false;
        unsigned x = s;
        do {
            visited[x] = true;
            x = perm[x];
        } while (x != s);
    }
    return true;
}

}  // namespace

Int oracle_count(unsigned r, unsigned n, unsigned cap) {
    if (n + r > cap) throw std::invalid_argument("oracle_count: n + r above enumeration cap");
    std::vector<unsigned char> perm(n + r);
    std::iota(perm.begin(), perm.end(), static_cast<unsigned char>(0));
    unsigned long count = 0;
    do {
        if (admissible(perm, r)) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Int(count);
}

}  // namespace rderange
