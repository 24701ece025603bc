#pragma once

#include <vector>

#include "spinchaos/errors.hpp"
#include "spinchaos/vec3.hpp"

namespace spinchaos {

/// Couplings of the periodic anisotropic XY chain in a tilted in-plane field,
///
///   H = -sum_i (J Sx_i Sx_{i+1} + 2J Sy_i Sy_{i+1}) + sum_i h (Sx_i + Sy_i),
///
/// with site L+1 identified with site 1. Time is measured in units of 1/h.
struct HamiltonianParams {
    double J = 0.0;
    double h = 1.0;
    int L = 2;

    void validate() const {
        if (L < 2) throw InvalidParameterError("chain length must satisfy L >= 2");
        if (!(h > 0.0)) throw InvalidParameterError("field constant h must be positive");
        if (!std::isfinite(J)) throw InvalidParameterError("coupling J must be finite");
    }
};

/// Classical chain configuration: one unit 3-vector per site plus the current time.
struct SpinChainState {
    std::vector<Vec3> spins;
    double time = 0.0;

    int size() const { return static_cast<int>(spins.size()); }

    /// All spins along +z; the initial condition for the periodic trajectories.
    static SpinChainState all_up(int L) { return uniform(L, {0.0, 0.0, 1.0}); }

    static SpinChainState uniform(int L, const Vec3& direction) {
        SpinChainState s;
        s.spins.assign(static_cast<std::size_t>(L), direction.normalized());
        return s;
    }

    /// Largest deviation of any spin length from 1.
    double max_norm_error() const {
        double worst = 0.0;
        for (const auto& s : spins) worst = std::max(worst, std::abs(s.norm() - 1.0));
        return worst;
    }
};

/// Local field H_i acting on spin i (1-based site index, periodic wrap):
///   ( -J (Sx_{i-1} + Sx_{i+1}) + h, -2J (Sy_{i-1} + Sy_{i+1}) + h, 0 ).
/// This equals the gradient of the Hamiltonian with respect to S_i.
Vec3 local_field(const SpinChainState& state, int site, const HamiltonianParams& params);

/// Total energy of the chain with periodic boundary.
double energy(const SpinChainState& state, const HamiltonianParams& params);

/// Equation-of-motion right-hand side, dS_i/dt = H_i x S_i for every site.
/// Each output vector is tangent to the sphere at its site.
void derivative(const SpinChainState& state, const HamiltonianParams& params,
                std::vector<Vec3>& out);

std::vector<Vec3> derivative(const SpinChainState& state, const HamiltonianParams& params);

/// One-spin Hamiltonian governing the translationally invariant trajectories:
///   H_p(S) = -J Sx^2 - 2J Sy^2 + h (Sx + Sy).
double onespin_energy(const Vec3& s, const HamiltonianParams& params);

/// Gradient of H_p; also the local field of a uniform chain configuration.
Vec3 onespin_field(const Vec3& s, const HamiltonianParams& params);

/// One-spin equation of motion dS/dt = grad(H_p) x S.
inline Vec3 onespin_derivative(const Vec3& s, const HamiltonianParams& params) {
    return cross(onespin_field(s, params), s);
}

} // namespace spinchaos
