#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbg/errors.hpp"

namespace qbg {

// Exact integer vectors/matrices. Everything in the library is integral:
// root and coroot coordinates, pairings, lengths, Mobius values.
using IntVec = std::vector<int>;

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
    check_internal(a.size() == b.size(), "vec_add: size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
    check_internal(a.size() == b.size(), "vec_sub: size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec vec_neg(const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec vec_scale(int c, const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline long long vec_dot(const IntVec& a, const IntVec& b) {
    check_internal(a.size() == b.size(), "vec_dot: size mismatch");
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (long long)a[i] * b[i];
    return s;
}

inline bool vec_is_zero(const IntVec& a) {
    for (int x : a)
        if (x != 0) return false;
    return true;
}

inline std::string vec_to_string(const IntVec& a) {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + "]";
}

struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<int> a; // row-major

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

    int& at(int r, int c) { return a[(size_t)r * cols + c]; }
    int at(int r, int c) const { return a[(size_t)r * cols + c]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMat from_rows(const std::vector<IntVec>& rows_in) {
        check_input(!rows_in.empty(), "matrix needs at least one row");
        IntMat m((int)rows_in.size(), (int)rows_in[0].size());
        for (int r = 0; r < m.rows; ++r) {
            check_input((int)rows_in[r].size() == m.cols, "ragged matrix rows");
            for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
        }
        return m;
    }

    IntVec apply(const IntVec& v) const {
        check_internal((int)v.size() == cols, "matrix apply: size mismatch");
        IntVec r(rows, 0);
        for (int i = 0; i < rows; ++i) {
            long long s = 0;
            for (int j = 0; j < cols; ++j) s += (long long)at(i, j) * v[j];
            r[i] = (int)s;
        }
        return r;
    }

    IntMat mul(const IntMat& o) const {
        check_internal(cols == o.rows, "matrix mul: size mismatch");
        IntMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                int aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline size_t hash_combine(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct IntVecHash {
    size_t operator()(const IntVec& v) const {
        size_t h = 1469598103934665603ULL;
        for (int x : v) h = hash_combine(h, std::hash<int>()(x));
        return h;
    }
};

} // namespace qbg
