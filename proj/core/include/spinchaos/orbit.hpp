#pragma once

#include <vector>

#include "spinchaos/fixed_point.hpp"
#include "spinchaos/hamiltonian.hpp"

namespace spinchaos {

/// One-spin closed trajectory of H_p: samples, period, energy and class.
struct PeriodicOrbit {
    std::vector<double> times;
    std::vector<Vec3> samples;   // completed by the refined closure point at t = period
    double period = 0.0;
    double energy = 0.0;         // H_p along the orbit
    OrbitClass orbit_class = OrbitClass::Libration;

    /// Smallest distance from the orbit to `point`, with quadratic refinement
    /// between samples.
    double min_distance_to(const Vec3& point) const;
};

struct OrbitOptions {
    double dt = 1e-3;
    double t_max = 1e4;          // no-closure horizon
    double r_close = 1e-7;       // first-return ball radius
    int sample_stride = 1;       // steps between stored samples
};

/// Integrates the one-spin dynamics from S0 and detects the period as the
/// first return into the r_close ball around S0 with matching velocity
/// direction; the crossing time is refined by interpolation. Throws
/// NoClosureError when the trajectory fails to close within t_max, which
/// signals proximity to the separatrix.
PeriodicOrbit periodic_orbit(const HamiltonianParams& params, const Vec3& S0,
                             const OrbitOptions& options = {});

} // namespace spinchaos
