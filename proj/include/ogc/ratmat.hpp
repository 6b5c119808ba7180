#ifndef OGC_RATMAT_HPP
#define OGC_RATMAT_HPP

#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "ogc/rational.hpp"

namespace ogc {

using SparseVec = std::map<int, Rat>;

/// Exact sparse matrix over the rationals, coordinate storage, no explicit zeros.
struct SparseRationalMatrix {
    int rows = 0, cols = 0;
    std::map<std::pair<int, int>, Rat> entries;

    SparseRationalMatrix() = default;
    SparseRationalMatrix(int r, int c) : rows(r), cols(c) {}

    void add(int r, int c, const Rat& v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw StructuralError("matrix index out of range");
        Rat vv = v;
        vv.canonicalize();
        if (vv == 0) return;
        auto key = std::make_pair(r, c);
        auto it = entries.find(key);
        if (it == entries.end()) {
            entries.emplace(key, vv);
        } else {
            it->second += vv;
            if (it->second == 0) entries.erase(it);
        }
    }

    Rat get(int r, int c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? Rat(0) : it->second;
    }

    size_t nnz() const { return entries.size(); }
    bool is_zero() const { return entries.empty(); }

    static SparseRationalMatrix identity(int n) {
        SparseRationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.add(i, i, 1);
        return m;
    }

    SparseRationalMatrix multiply(const SparseRationalMatrix& other) const {
        if (cols != other.rows) throw StructuralError("matrix dimension mismatch in multiply");
        SparseRationalMatrix out(rows, other.cols);
        std::vector<std::vector<std::pair<int, Rat>>> right_rows(other.rows);
        for (auto& [rc, v] : other.entries) right_rows[rc.first].push_back({rc.second, v});
        for (auto& [rc, v] : entries)
            for (auto& [c2, v2] : right_rows[rc.second]) out.add(rc.first, c2, v * v2);
        return out;
    }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (auto& [rc, v] : entries) {
            auto it = x.find(rc.second);
            if (it == x.end()) continue;
            Rat& acc = y[rc.first];
            acc += v * it->second;
            if (acc == 0) y.erase(rc.first);
        }
        return y;
    }
};

/// Exact rank by fraction-free (Bareiss) elimination over scaled integer rows,
/// Markowitz pivot selection with deterministic (row, col) tie-break.
inline int rank(const SparseRationalMatrix& m) {
    const int R = m.rows, C = m.cols;
    std::vector<std::map<int, Int>> row(R);
    for (auto& [rc, v] : m.entries) row[rc.first][rc.second] = v.get_num();
    for (int i = 0; i < R; ++i) {
        Int l = 1;
        for (auto& [rc, v] : m.entries)
            if (rc.first == i) l = lcm(l, v.get_den());
        if (l != 1)
            for (auto& [rc, v] : m.entries)
                if (rc.first == i) row[i][rc.second] = Int(v.get_num() * (l / v.get_den()));
    }

    std::vector<char> row_done(R, 0), col_done(C, 0);
    std::vector<int> col_count(C, 0);
    Int prev_pivot = 1;
    int rk = 0;
    while (true) {
        for (int c = 0; c < C; ++c) col_count[c] = 0;
        for (int r = 0; r < R; ++r) {
            if (row_done[r]) continue;
            for (auto& [c, v] : row[r])
                if (!col_done[c] && v != 0) ++col_count[c];
        }
        long best_cost = -1;
        int pr = -1, pc = -1;
        for (int r = 0; r < R; ++r) {
            if (row_done[r]) continue;
            long nr = 0;
            for (auto& [c, v] : row[r])
                if (!col_done[c] && v != 0) ++nr;
            if (nr == 0) continue;
            for (auto& [c, v] : row[r]) {
                if (col_done[c] || v == 0) continue;
                long cost = (nr - 1) * (col_count[c] - 1);
                if (best_cost < 0 || cost < best_cost ||
                    (cost == best_cost && std::make_pair(r, c) < std::make_pair(pr, pc))) {
                    best_cost = cost;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr < 0) break;
        ++rk;
        Int piv = row[pr][pc];
        for (int r = 0; r < R; ++r) {
            if (row_done[r] || r == pr) continue;
            Int f = 0;
            auto it = row[r].find(pc);
            if (it != row[r].end()) f = it->second;
            std::map<int, Int> updated;
            std::set<int> cols_touched;
            for (auto& [c, v] : row[r])
                if (!col_done[c]) cols_touched.insert(c);
            if (f != 0)
                for (auto& [c, v] : row[pr])
                    if (!col_done[c]) cols_touched.insert(c);
            for (int c : cols_touched) {
                if (c == pc) continue;
                Int a = 0, b = 0;
                auto ia = row[r].find(c);
                if (ia != row[r].end()) a = ia->second;
                auto ib = row[pr].find(c);
                if (ib != row[pr].end()) b = ib->second;
                Int num = piv * a - f * b;
                if (num == 0) continue;
                Int q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev_pivot.get_mpz_t());
                updated[c] = q;
            }
            row[r] = std::move(updated);
        }
        row_done[pr] = 1;
        col_done[pc] = 1;
        prev_pivot = piv;
    }
    return rk;
}

/// Row echelon store over the rationals with full back-reduction.
/// Used for relation spans, kernel computation and quotient coordinates.
class Echelon {
public:
    /// Reduces v by the stored rows; the residual has zeros at all pivots.
    SparseVec reduce(SparseVec v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            auto it = v.find(pivots_[i]);
            if (it == v.end()) continue;
            Rat f = it->second;
            for (auto& [c, w] : rows_[i]) {
                Rat& acc = v[c];
                acc -= f * w;
                if (acc == 0) v.erase(c);
            }
        }
        return v;
    }

    /// Adds the span of v. Returns true iff v was independent of the store.
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int p = v.begin()->first;
        Rat lead = v.begin()->second;
        for (auto& [c, w] : v) w /= lead;
        for (size_t i = 0; i < rows_.size(); ++i) {
            auto it = rows_[i].find(p);
            if (it == rows_[i].end()) continue;
            Rat f = it->second;
            for (auto& [c, w] : v) {
                Rat& acc = rows_[i][c];
                acc -= f * w;
                if (acc == 0) rows_[i].erase(c);
            }
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<int>& pivots() const { return pivots_; }
    const std::vector<SparseVec>& rows() const { return rows_; }

private:
    std::vector<SparseVec> rows_;
    std::vector<int> pivots_;
};

/// Exact kernel basis; each vector satisfies M x = 0.
inline std::vector<SparseVec> kernel_basis(const SparseRationalMatrix& m) {
    Echelon ech;
    std::vector<SparseVec> rows(m.rows);
    for (auto& [rc, v] : m.entries) rows[rc.first][rc.second] = v;
    for (auto& r : rows) ech.insert(r);
    std::set<int> pivot_cols(ech.pivots().begin(), ech.pivots().end());
    std::vector<SparseVec> out;
    for (int c = 0; c < m.cols; ++c) {
        if (pivot_cols.count(c)) continue;
        SparseVec x;
        x[c] = 1;
        // back-substitute pivots: rows are fully reduced, so each pivot row
        // determines the pivot coordinate directly
        for (size_t i = 0; i < ech.rows().size(); ++i) {
            auto it = ech.rows()[i].find(c);
            if (it != ech.rows()[i].end()) x[ech.pivots()[i]] = -it->second;
        }
        out.push_back(std::move(x));
    }
    return out;
}

/// Witness w with M w = v, or nullopt when v is not in the image.
inline std::optional<SparseVec> image_membership(const SparseRationalMatrix& m, const SparseVec& v) {
    for (auto& [c, val] : v)
        if (c < 0 || c >= m.rows) throw StructuralError("vector dimension mismatch");
    // echelonize columns of M augmented with v, tracking combinations
    std::vector<SparseVec> col(m.cols);
    for (auto& [rc, val] : m.entries) col[rc.second][rc.first] = val;

    std::vector<SparseVec> basis;      // reduced columns
    std::vector<SparseVec> combo;      // expression of each reduced column in m's columns
    std::vector<int> pivots;
    auto reduce_pair = [&](SparseVec vec, SparseVec expr) {
        for (size_t i = 0; i < basis.size(); ++i) {
            auto it = vec.find(pivots[i]);
            if (it == vec.end()) continue;
            Rat f = it->second;
            for (auto& [r, w] : basis[i]) {
                Rat& acc = vec[r];
                acc -= f * w;
                if (acc == 0) vec.erase(r);
            }
            for (auto& [j, w] : combo[i]) {
                Rat& acc = expr[j];
                acc -= f * w;
                if (acc == 0) expr.erase(j);
            }
        }
        return std::make_pair(std::move(vec), std::move(expr));
    };
    for (int j = 0; j < m.cols; ++j) {
        SparseVec e;
        e[j] = 1;
        auto [vec, expr] = reduce_pair(col[j], std::move(e));
        if (vec.empty()) continue;
        Rat lead = vec.begin()->second;
        for (auto& [r, w] : vec) w /= lead;
        for (auto& [jj, w] : expr) w /= lead;
        pivots.push_back(vec.begin()->first);
        basis.push_back(std::move(vec));
        combo.push_back(std::move(expr));
    }
    auto [res, expr] = reduce_pair(v, SparseVec{});
    if (!res.empty()) return std::nullopt;
    SparseVec w;
    for (auto& [j, c] : expr) {
        if (c == 0) continue;
        w[j] = -c;
    }
    return w;
}

/// dim ker(d_k) - rank(d_{k+1}); requires d_k * d_{k+1} = 0 exactly.
inline int betti(const SparseRationalMatrix& d_k, const SparseRationalMatrix& d_k_plus_1) {
    if (d_k.cols != d_k_plus_1.rows) throw StructuralError("betti: dimension mismatch");
    if (!d_k.multiply(d_k_plus_1).is_zero()) throw InvariantError("betti: composition of boundaries is nonzero");
    return d_k.cols - rank(d_k) - rank(d_k_plus_1);
}

/// Exact determinant (dense Gaussian elimination over the rationals).
inline Rat determinant(const SparseRationalMatrix& m) {
    if (m.rows != m.cols) throw StructuralError("determinant of non-square matrix");
    int n = m.rows;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
    for (auto& [rc, v] : m.entries) a[rc.first][rc.second] = v;
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) return Rat(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rat f = a[r][c] / a[c][c];
            for (int cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

/// Coordinate text format: "rows cols nnz" header then "row col value" lines,
/// values printed as exact rationals.
inline void write_matrix(std::ostream& os, const SparseRationalMatrix& m) {
    os << m.rows << " " << m.cols << " " << m.nnz() << "\n";
    for (auto& [rc, v] : m.entries) os << rc.first << " " << rc.second << " " << to_string(v) << "\n";
}

inline SparseRationalMatrix read_matrix(std::istream& is) {
    int r, c;
    size_t n;
    if (!(is >> r >> c >> n)) throw StructuralError("bad matrix header");
    SparseRationalMatrix m(r, c);
    for (size_t i = 0; i < n; ++i) {
        int rr, cc;
        std::string val;
        if (!(is >> rr >> cc >> val)) throw StructuralError("bad matrix entry");
        m.add(rr, cc, parse_rat(val));
    }
    return m;
}

} // namespace ogc

#endif
