#pragma once

#include <cstdint>
#include <vector>

#include "spinchaos/lyapunov.hpp"

namespace spinchaos {

/// Fit of the near-separatrix cusp lambda_p(J) = lambda_A + C / log|dJ|.
struct CuspFit {
    double lambda_A = 0.0;
    double C = 0.0;
    double r_squared = 0.0;
    double side_asymmetry = 0.0;   // |intercept(dJ<0) - intercept(dJ>0)|
    std::vector<double> delta_J;   // scan grid (signed)
    std::vector<double> lambda;    // measured exponents
    std::vector<double> residuals; // against the pooled fit, fitted points only
    double fit_cutoff = 0.0;       // |dJ| values above this are excluded from the fit
};

struct CuspScanOptions {
    int L = 10;
    double fit_cutoff = 1e-2;
    BenettinOptions benettin;
    int jobs = 0;
};

/// Measures lambda_p on a grid of distances dJ from the separatrix and fits
/// the cusp law. Points whose orbits fail to close propagate NoClosureError.
CuspFit cusp_scan(double h, const std::vector<double>& delta_J_grid,
                  const CuspScanOptions& options = {});

/// Appendix-style scalings of the one-spin orbit near the separatrix.
struct SeparatrixScalings {
    // |dS|_min = a |dJ|^p, per side
    double p_rotation = 0.0;
    double p_libration = 0.0;
    double a_rotation = 0.0;
    double a_libration = 0.0;
    // T = C2 - slope * log|dJ|; slope -> s / lambda_S with s = 1 (rot), 2 (lib)
    double period_slope_rotation = 0.0;
    double period_slope_libration = 0.0;
    std::vector<double> delta_J;
    std::vector<double> min_distance;
    std::vector<double> period;
};

SeparatrixScalings separatrix_scalings(double h, const std::vector<double>& delta_J_grid,
                                       const OrbitOptions& orbit_options = {});

} // namespace spinchaos
