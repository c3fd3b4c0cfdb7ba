#include "twistvol/partition_kernel.hpp"

#include <vector>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr int kMaxDim = 6;

int pair_index(int dim, int j, int k) {
    // position of (j,k), j<k, in lexicographic order
    return j * dim - j * (j + 1) / 2 + (k - j - 1);
}

void check(const GridTables& g) {
    if (g.dim < 1 || g.dim > kMaxDim) throw DimensionError("grid contraction: unsupported dimension");
    if (static_cast<int>(g.axis.size()) != g.dim ||
        static_cast<int>(g.cross.size()) != g.dim * (g.dim - 1) / 2)
        throw DimensionError("grid contraction: table count mismatch");
}

// Sum over axes level..dim-1 given the fixed indices of the earlier axes.
// Row `level` of scratch holds the axis weights times the cross factors to earlier axes.
cplx inner(const GridTables& g, int level, std::vector<int>& idx, std::vector<cplx>& scratch) {
    const int m = g.m;
    cplx* w = scratch.data() + static_cast<std::size_t>(level) * m;
    for (int i = 0; i < m; ++i) w[i] = g.axis[level][i];
    for (int j = 0; j < level; ++j) {
        const cplx* c = g.cross_table(j, level) + static_cast<std::size_t>(idx[j]) * m;
        for (int i = 0; i < m; ++i) w[i] *= c[i];
    }
    if (level == g.dim - 1) return pairwise_sum(w, m);
    std::vector<cplx> part(m);
    for (int i = 0; i < m; ++i) {
        idx[level] = i;
        part[i] = w[i] * inner(g, level + 1, idx, scratch);
    }
    return pairwise_sum(part.data(), m);
}

}  // namespace

const cplx* GridTables::cross_table(int j, int k) const {
    return cross[pair_index(dim, j, k)].data();
}

cplx pairwise_sum(const cplx* v, std::size_t n) {
    if (n <= 8) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

cplx contract_serial(const GridTables& g) {
    check(g);
    const int D = g.dim, m = g.m;
    std::vector<int> idx(kMaxDim, 0);
    cplx total = 0.0;
    std::size_t count = 1;
    for (int j = 0; j < D; ++j) count *= static_cast<std::size_t>(m);
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t r = flat;
        for (int j = D - 1; j >= 0; --j) {
            idx[j] = static_cast<int>(r % m);
            r /= m;
        }
        cplx term = 1.0;
        for (int j = 0; j < D; ++j) term *= g.axis[j][idx[j]];
        for (int j = 0; j < D; ++j)
            for (int k = j + 1; k < D; ++k)
                term *= g.cross_table(j, k)[static_cast<std::size_t>(idx[j]) * m + idx[k]];
        total += term;
    }
    return total;
}

cplx contract_parallel(const GridTables& g) {
    check(g);
    const int m = g.m;
    if (g.dim == 1) return pairwise_sum(g.axis[0].data(), m);
    std::vector<cplx> partial(m);
#pragma omp parallel
    {
        std::vector<int> idx(kMaxDim, 0);
        std::vector<cplx> scratch(static_cast<std::size_t>(g.dim) * m);
#pragma omp for schedule(static)
        for (int i = 0; i < m; ++i) {
            idx[0] = i;
            partial[i] = g.axis[0][i] * inner(g, 1, idx, scratch);
        }
    }
    return pairwise_sum(partial.data(), m);
}

}  // namespace twistvol
