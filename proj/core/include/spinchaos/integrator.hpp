#pragma once

#include <functional>
#include <vector>

#include "spinchaos/hamiltonian.hpp"

namespace spinchaos {

/// Receives (time, state) samples every `stride_steps` integrator steps
/// (and always the initial state).
struct Observer {
    int stride_steps = 1;
    std::function<void(const SpinChainState&)> sink;
};

/// Classical 4th-order Runge-Kutta stepper for the full chain. Every spin is
/// renormalized to unit length after each step, which keeps norm drift flat on
/// runs of 1e6+ time units.
class Rk4Integrator {
public:
    explicit Rk4Integrator(HamiltonianParams params) : params_(params) { params_.validate(); }

    const HamiltonianParams& params() const { return params_; }

    /// Advance by a single step of size dt.
    void step(SpinChainState& state, double dt);

    /// Advance by `duration` in steps of dt, feeding observers along the way.
    /// Throws NumericBlowupError if any component stops being finite.
    void integrate(SpinChainState& state, double duration, double dt,
                   const std::vector<Observer>& observers = {});

private:
    HamiltonianParams params_;
    std::vector<Vec3> k1_, k2_, k3_, k4_;
    SpinChainState work_;
};

/// RK4 stepper for the one-spin dynamics generated by H_p. Uniform chain
/// configurations stay uniform, so the translationally invariant trajectories
/// reduce exactly to this system.
class OnespinIntegrator {
public:
    explicit OnespinIntegrator(HamiltonianParams params) : params_(params) {}

    const HamiltonianParams& params() const { return params_; }

    Vec3 step(const Vec3& s, double dt) const;

private:
    HamiltonianParams params_;
};

} // namespace spinchaos
