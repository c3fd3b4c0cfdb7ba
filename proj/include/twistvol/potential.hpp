#pragma once

#include <vector>

#include "twistvol/solver.hpp"

namespace twistvol {

// One dilogarithm term  coeff * i * Li2(-exp(sign * y[axis])).
struct DilogTerm {
    double coeff;
    int axis;
    int sign;
};

std::vector<DilogTerm> potential_terms(const TwistKnotSpec& spec);

// Open band: Im y_j in (-pi, 0) for positive tetrahedra, (0, pi) for negative ones.
bool in_band(const TwistKnotSpec& spec, const VectorXc& y);

cplx potential_S(const TwistKnotSpec& spec, const VectorXc& y);
// Same function written with the inverted dilogarithms.
cplx potential_S_rewritten(const TwistKnotSpec& spec, const VectorXc& y);
VectorXc grad_S(const TwistKnotSpec& spec, const VectorXc& y);
MatrixXc hess_S(const TwistKnotSpec& spec, const VectorXc& y);

}  // namespace twistvol
