#include "spinchaos/integrator.hpp"

#include <cmath>
#include <string>

namespace spinchaos {

namespace {

inline void axpy(std::vector<Vec3>& out, const std::vector<Vec3>& base,
                 const std::vector<Vec3>& slope, double factor) {
    const std::size_t n = base.size();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + factor * slope[i];
}

} // namespace

void Rk4Integrator::step(SpinChainState& state, double dt) {
    derivative(state, params_, k1_);
    work_.time = state.time;

    axpy(work_.spins, state.spins, k1_, 0.5 * dt);
    derivative(work_, params_, k2_);

    axpy(work_.spins, state.spins, k2_, 0.5 * dt);
    derivative(work_, params_, k3_);

    axpy(work_.spins, state.spins, k3_, dt);
    derivative(work_, params_, k4_);

    const double w = dt / 6.0;
    const std::size_t n = state.spins.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 s = state.spins[i];
        s += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        s.normalize();
        state.spins[i] = s;
    }
    state.time += dt;
}

void Rk4Integrator::integrate(SpinChainState& state, double duration, double dt,
                              const std::vector<Observer>& observers) {
    if (!(dt > 0.0)) throw InvalidParameterError("integration step dt must be positive");
    if (duration < 0.0) throw InvalidParameterError("integration duration must be nonnegative");

    for (const auto& obs : observers)
        if (obs.sink) obs.sink(state);

    const long long steps = static_cast<long long>(std::llround(duration / dt));
    for (long long n = 1; n <= steps; ++n) {
        step(state, dt);
        if (!std::isfinite(state.spins[0].x) || !std::isfinite(state.spins[0].z))
            throw NumericBlowupError("non-finite state at t=" + std::to_string(state.time));
        for (const auto& obs : observers) {
            if (obs.sink && n % obs.stride_steps == 0) obs.sink(state);
        }
    }
}

Vec3 OnespinIntegrator::step(const Vec3& s, double dt) const {
    const Vec3 k1 = onespin_derivative(s, params_);
    const Vec3 k2 = onespin_derivative(s + (0.5 * dt) * k1, params_);
    const Vec3 k3 = onespin_derivative(s + (0.5 * dt) * k2, params_);
    const Vec3 k4 = onespin_derivative(s + dt * k3, params_);
    Vec3 out = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.normalize();
    return out;
}

} // namespace spinchaos
