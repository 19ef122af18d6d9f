#pragma once

#include <unordered_map>
#include <vector>

#include "qbg/affine.hpp"
#include "qbg/cartan.hpp"
#include "qbg/intvec.hpp"

namespace qbg::testing {

// Orthogonal realizations used only by tests, to pin named-type data against
// classical coordinates. Rows are the simple (co)root vectors in R^3.
//
//   C3: alpha1 = e1-e2, alpha2 = e2-e3, alpha3 = 2e3 (long);
//       coroots e1-e2, e2-e3, e3.
//   B3: alpha1 = e1-e2, alpha2 = e2-e3, alpha3 = e3 (short);
//       coroots e1-e2, e2-e3, 2e3.
inline const std::vector<IntVec> kC3RootBasis = {{1, -1, 0}, {0, 1, -1}, {0, 0, 2}};
inline const std::vector<IntVec> kC3CorootBasis = {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}};
inline const std::vector<IntVec> kB3RootBasis = {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}};
inline const std::vector<IntVec> kB3CorootBasis = {{1, -1, 0}, {0, 1, -1}, {0, 0, 2}};

inline IntVec embed(const std::vector<IntVec>& basis, const IntVec& coords) {
    IntVec out(basis[0].size(), 0);
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j) out[j] += coords[i] * basis[i][j];
    return out;
}

// Brute-force oracle for the affine group: the ball {x : l(x) <= radius} built
// by breadth-first search over the generators s_0..s_n, so depths are
// word-metric lengths independent of the closed length formula. Covers are
// found definitionally (length gap one, quotient an affine reflection) and the
// Bruhat order is their transitive closure, independent of the lifting
// recursion under test.
struct AffineBall {
    const AffineWeyl& aff;
    int radius;
    std::vector<AffineElement> elems; // BFS order, so depths are non-decreasing
    std::vector<int> depths;
    std::unordered_map<AffineElement, int, AffineElementHash> index;
    std::vector<std::vector<int>> covers_in; // covers_in[y] = indices of x with x covered by y
    std::vector<std::vector<char>> down;     // down[y][x] = (elems[x] <= elems[y])

    AffineBall(const AffineWeyl& g, int r) : aff(g), radius(r) {
        elems.push_back(g.one());
        depths.push_back(0);
        index.emplace(g.one(), 0);
        for (size_t head = 0; head < elems.size(); ++head) {
            AffineElement z = elems[head];
            int d = depths[head];
            if (d == radius) continue;
            for (int i = 0; i <= g.rank(); ++i) {
                AffineElement nz = g.rmul_simple(z, i);
                if (index.count(nz)) continue;
                index.emplace(nz, (int)elems.size());
                elems.push_back(nz);
                depths.push_back(d + 1);
            }
        }
        build_order();
    }

    int find(const AffineElement& x) const {
        auto it = index.find(x);
        return it == index.end() ? -1 : it->second;
    }

private:
    void build_order() {
        int n = (int)elems.size();
        covers_in.assign(n, {});
        down.assign(n, std::vector<char>(n, 0));
        std::vector<std::vector<int>> by_depth(radius + 1);
        for (int i = 0; i < n; ++i) by_depth[depths[i]].push_back(i);
        for (int yi = 0; yi < n; ++yi) {
            down[yi][yi] = 1;
            if (depths[yi] == 0) continue;
            for (int xi : by_depth[depths[yi] - 1]) {
                if (!aff.reflection_between(elems[xi], elems[yi])) continue;
                covers_in[yi].push_back(xi);
                for (int a = 0; a < n; ++a) down[yi][a] |= down[xi][a];
            }
        }
    }
};

} // namespace qbg::testing
