#pragma once

#include <vector>

#include "spinchaos/hamiltonian.hpp"

namespace spinchaos {

/// Critical point of the one-spin Hamiltonian H_p restricted to the unit sphere.
struct CriticalPoint {
    enum class Type { Minimum, Maximum, Saddle };

    Vec3 orientation;
    double energy = 0.0;
    double multiplier = 0.0;   // Lagrange multiplier mu = S . grad(H_p)
    double hess_low = 0.0;     // tangent-plane Hessian eigenvalues, ascending
    double hess_high = 0.0;
    Type type = Type::Minimum;
};

/// Unstable fixed point in the middle of the separatrix: the saddle of H_p
/// whose energy vanishes at J = J*(h).
struct FixedPoint {
    Vec3 orientation;          // S*
    double J = 0.0;            // coupling at which the saddle energy is zero
    double h = 1.0;
    double energy = 0.0;       // saddle energy at this (J, h); ~0 at J = J*
    double hess_low = 0.0;
    double hess_high = 0.0;

    /// Norm of the sphere-restricted gradient of H_p at the stored orientation.
    double gradient_norm(const HamiltonianParams& params) const;
};

/// All critical points of H_p on the sphere, found by constrained Newton
/// iteration from a 32x16 grid of (phi, theta) starts and deduplicated.
std::vector<CriticalPoint> critical_points(const HamiltonianParams& params);

/// Saddle of H_p with energy closest to zero. Throws BracketError when the
/// parameters admit no saddle at all (small J: only a maximum and a minimum).
CriticalPoint separatrix_saddle(const HamiltonianParams& params);

/// Saddle energy E_s(J, h); the side of E_s an orbit energy falls on decides
/// its libration/rotation class.
double saddle_energy(const HamiltonianParams& params);

struct SeparatrixResult {
    double J_star = 0.0;
    FixedPoint fixed_point;
};

/// Root of E_s(J, h) = 0 in J, located by bisection over `bracket` to
/// tolerance `tol`. For h = 1 this gives J* = 1.1504059085.
SeparatrixResult find_separatrix_J(double h, double lo = 0.5, double hi = 2.0,
                                   double tol = 1e-10);

enum class OrbitClass { Libration, Rotation, Separatrix };

/// Classifies a one-spin orbit of energy E: Separatrix when |E - E_s| < 1e-10,
/// otherwise by which side of E_s the energy falls on. The disconnected
/// (rotation) side is derived from the saddle geometry, not hard-coded: the
/// two lobes of the figure-8 each enclose their own extremum.
OrbitClass classify_orbit(const HamiltonianParams& params, double E);

/// Axis connecting the two extrema enclosed by the separatrix lobes; rotation
/// orbits keep a definite sign of S . axis while librations visit both sides.
Vec3 separatrix_axis(const HamiltonianParams& params);

} // namespace spinchaos
