#ifndef KH_LINALG_HPP
#define KH_LINALG_HPP

#include <vector>

#include "kh/rings.hpp"

namespace kh {

template <class T>
using Dense = std::vector<std::vector<T>>;

/// Rank over a field by Gaussian elimination; destroys its argument.
template <class F>
int gauss_rank(Dense<F> m) {
    int rank = 0;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t piv = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[piv]);
        F inv = RingTraits<F>::inverse(m[static_cast<size_t>(rank)][c]);
        for (size_t j = c; j < cols; ++j)
            m[static_cast<size_t>(rank)][j] = m[static_cast<size_t>(rank)][j] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || m[r][c].is_zero()) continue;
            F f = m[r][c];
            for (size_t j = c; j < cols; ++j)
                m[r][j] = m[r][j] - f * m[static_cast<size_t>(rank)][j];
        }
        ++rank;
    }
    return rank;
}

/// Row space kept in reduced echelon form; supports incremental joins.
template <class F>
class Subspace {
public:
    explicit Subspace(size_t ambient) : ambient_(ambient) {}

    size_t ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    /// Reduce v against the basis; returns true (and grows) when independent.
    bool insert(std::vector<F> v) {
        reduce(v);
        size_t lead = leading(v);
        if (lead == ambient_) return false;
        F inv = RingTraits<F>::inverse(v[lead]);
        for (auto& x : v) x = x * inv;
        // back-substitute into existing rows
        for (auto& row : rows_)
            if (!row[lead].is_zero()) {
                F f = row[lead];
                for (size_t j = 0; j < ambient_; ++j) row[j] = row[j] - f * v[j];
            }
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(), [&](const auto& a, const auto& b) {
            return leading_of(a) < leading_of(b);
        });
        return true;
    }
    void insert_all(const Subspace& other) {
        for (const auto& row : other.rows_) insert(row);
    }
    bool contains(std::vector<F> v) const {
        reduce(v);
        return leading(v) == ambient_;
    }
    const std::vector<std::vector<F>>& basis() const { return rows_; }

private:
    size_t ambient_;
    std::vector<std::vector<F>> rows_;

    size_t leading(const std::vector<F>& v) const { return leading_of(v); }
    static size_t leading_of(const std::vector<F>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return i;
        return v.size();
    }
    void reduce(std::vector<F>& v) const {
        for (const auto& row : rows_) {
            size_t lead = leading_of(row);
            if (lead < v.size() && !v[lead].is_zero()) {
                F f = v[lead];
                for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * row[j];
            }
        }
    }
};

/// Kernel basis of a dense matrix over a field (columns = domain).
template <class F>
std::vector<std::vector<F>> kernel_basis(Dense<F> m, size_t cols) {
    size_t rows = m.size();
    // Row-reduce, track pivot columns.
    std::vector<size_t> pivot_col;
    int rank = 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t piv = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[piv]);
        F inv = RingTraits<F>::inverse(m[static_cast<size_t>(rank)][c]);
        for (size_t j = 0; j < cols; ++j)
            m[static_cast<size_t>(rank)][j] = m[static_cast<size_t>(rank)][j] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || m[r][c].is_zero()) continue;
            F f = m[r][c];
            for (size_t j = 0; j < cols; ++j)
                m[r][j] = m[r][j] - f * m[static_cast<size_t>(rank)][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<F>> out;
    F one = RingTraits<F>::from_int(1);
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> v(cols, RingTraits<F>::from_int(0));
        v[fc] = one;
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m[r][fc];
        out.push_back(std::move(v));
    }
    return out;
}

// ---- Euclidean rings -------------------------------------------------------

template <class E>
struct EuclideanTraits;

template <>
struct EuclideanTraits<BigInt> {
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        BigInt::divmod(a, b, q, r);
    }
    /// Strictly smaller Euclidean norm.
    static bool norm_less(const BigInt& a, const BigInt& b) { return a.abs() < b.abs(); }
    static BigInt normalize_unit(const BigInt& a) { return a.is_negative() ? -a : a; }
    static std::string to_string(const BigInt& a) { return a.to_string(); }
    static bool is_unit(const BigInt& a) { return a.is_one() || (-a).is_one(); }
};
template <>
struct EuclideanTraits<PolyZ2t> {
    static void divmod(const PolyZ2t& a, const PolyZ2t& b, PolyZ2t& q, PolyZ2t& r) {
        PolyZ2t::divmod(a, b, q, r);
    }
    static bool norm_less(const PolyZ2t& a, const PolyZ2t& b) { return a.degree() < b.degree(); }
    static PolyZ2t normalize_unit(const PolyZ2t& a) { return a; }
    static std::string to_string(const PolyZ2t& a) { return a.to_string(); }
    static bool is_unit(const PolyZ2t& a) { return a.degree() == 0; }
};

/// Smith normal form over a Euclidean domain. Returns the diagonal entries
/// (nonzero invariant factors, divisibility-normalized, unit-normalized).
/// Pivoting picks the minimal-norm entry to limit coefficient blowup.
template <class E>
std::vector<E> smith_normal_form(Dense<E> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<E> diag;
    size_t r = 0;
    while (r < rows && r < cols) {
        // find minimal-norm nonzero pivot in the submatrix
        size_t pi = rows, pj = cols;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = r; j < cols; ++j)
                if (!m[i][j].is_zero() &&
                    (pi == rows || EuclideanTraits<E>::norm_less(m[i][j], m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[r], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][r], m[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][r].is_zero()) continue;
                E q, rem;
                EuclideanTraits<E>::divmod(m[i][r], m[r][r], q, rem);
                for (size_t j = r; j < cols; ++j) m[i][j] = m[i][j] - q * m[r][j];
                if (!m[i][r].is_zero()) {
                    std::swap(m[r], m[i]);  // smaller-norm remainder becomes pivot
                    clean = false;
                }
            }
            for (size_t j = r + 1; j < cols; ++j) {
                if (m[r][j].is_zero()) continue;
                E q, rem;
                EuclideanTraits<E>::divmod(m[r][j], m[r][r], q, rem);
                for (size_t i = r; i < rows; ++i) m[i][j] = m[i][j] - m[i][r] * q;
                if (!m[r][j].is_zero()) {
                    for (size_t i = r; i < rows; ++i) std::swap(m[i][r], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(m[r][r]);
        ++r;
    }
    // divisibility chain d1 | d2 | ... via pairwise gcd absorption
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            // gcd(diag[i], diag[j]) replaces diag[i]; lcm goes to diag[j]
            E a = diag[i], b = diag[j];
            E g = a;
            E x = b;
            while (!x.is_zero()) {
                E q, rem;
                EuclideanTraits<E>::divmod(g, x, q, rem);
                g = x;
                x = rem;
            }
            if (!g.is_zero()) {
                E q1, r1;
                EuclideanTraits<E>::divmod(a * b, g, q1, r1);
                diag[i] = g;
                diag[j] = q1;
            }
        }
    for (auto& d : diag) d = EuclideanTraits<E>::normalize_unit(d);
    return diag;
}

} // namespace kh

#endif
