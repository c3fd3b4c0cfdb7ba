#pragma once

#include <complex>

namespace twistvol {

using cplx = std::complex<double>;

struct QdilogParams {
    double b = 1.0;
    double contour_radius = 1.5707963267948966;  // pi/2
    double truncation_tol = 1e-16;
    // Re y above this threshold is evaluated through the inversion relation
    double inversion_threshold = 6.0;
    bool use_inversion = true;

    static QdilogParams from_b(double b);
    static QdilogParams from_hbar(double hbar);
    double hbar() const;
};

// Root b in (0, 1] of b / (1 + b^2) = sqrt(hbar).
double b_from_hbar(double hbar);

// Log Phi_b(y / (2 pi b)), defined for |Im y| < pi (1 + b^2) when b <= 1.
cplx log_phi_scaled(cplx y, const QdilogParams& params);

cplx log_phi_b(cplx z, const QdilogParams& params);
cplx phi_b(cplx z, const QdilogParams& params);

// Half-width of the analyticity strip in z, 1 / (2 sqrt(hbar)).
double strip_halfwidth(double b);

}  // namespace twistvol
