#ifndef OGC_RATIONAL_HPP
#define OGC_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

#include "ogc/errors.hpp"

namespace ogc {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p" or "p/q"; exact, no floating point.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw StructuralError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline int sign_pow(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// Parity sign of a permutation given as images 0..n-1.
inline int perm_sign(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(p[j]);
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

/// Sign of the permutation sorting `word` into ascending order.
/// Entries must be distinct.
inline int sort_sign(std::vector<int> word) {
    int s = 1;
    for (size_t i = 0; i + 1 < word.size(); ++i)
        for (size_t j = 0; j + 1 < word.size() - i; ++j)
            if (word[j] > word[j + 1]) {
                std::swap(word[j], word[j + 1]);
                s = -s;
            }
    return s;
}

/// Sign relating two orderings of the same set: target = sign * source as wedge words.
inline int relative_order_sign(const std::vector<int>& source, const std::vector<int>& target) {
    if (source.size() != target.size()) throw StructuralError("relative_order_sign: size mismatch");
    std::vector<int> pos;
    pos.resize(0);
    // perm[i] = position in source of target[i]
    std::vector<int> perm(target.size());
    for (size_t i = 0; i < target.size(); ++i) {
        int p = -1;
        for (size_t j = 0; j < source.size(); ++j)
            if (source[j] == target[i]) { p = static_cast<int>(j); break; }
        if (p < 0) throw StructuralError("relative_order_sign: not a reordering");
        perm[i] = p;
    }
    return perm_sign(perm);
}

} // namespace ogc

#endif
