#pragma once

#include <complex>
#include <vector>

namespace twistvol {

using cplx = std::complex<double>;

// Tensor-product sum  sum_{i_0..i_{D-1}} prod_j axis[j][i_j] * prod_{j<k} cross(j,k)[i_j, i_k].
// Every axis uses the same number of points m. Cross tables are row-major m x m.
struct GridTables {
    int dim = 0;
    int m = 0;
    std::vector<std::vector<cplx>> axis;
    std::vector<std::vector<cplx>> cross;  // pair (j,k), j<k, in lexicographic order

    const cplx* cross_table(int j, int k) const;
};

// Reference implementation: one flat loop over the full multi-index.
cplx contract_serial(const GridTables& g);

// OpenMP over the first axis, then a fixed pairwise reduction of the per-index partial sums.
cplx contract_parallel(const GridTables& g);

// Pairwise sum in a fixed association order.
cplx pairwise_sum(const cplx* v, std::size_t n);

}  // namespace twistvol
