#include "spinchaos/hamiltonian.hpp"

namespace spinchaos {

Vec3 local_field(const SpinChainState& state, int site, const HamiltonianParams& params) {
    const int L = state.size();
    const int i = site - 1;
    const Vec3& prev = state.spins[static_cast<std::size_t>((i + L - 1) % L)];
    const Vec3& next = state.spins[static_cast<std::size_t>((i + 1) % L)];
    return {-params.J * (prev.x + next.x) + params.h,
            -2.0 * params.J * (prev.y + next.y) + params.h,
            0.0};
}

double energy(const SpinChainState& state, const HamiltonianParams& params) {
    const int L = state.size();
    double bond = 0.0;
    double field = 0.0;
    for (int i = 0; i < L; ++i) {
        const Vec3& s = state.spins[static_cast<std::size_t>(i)];
        const Vec3& n = state.spins[static_cast<std::size_t>((i + 1) % L)];
        bond += params.J * (s.x * n.x + 2.0 * s.y * n.y);
        field += params.h * (s.x + s.y);
    }
    return -bond + field;
}

void derivative(const SpinChainState& state, const HamiltonianParams& params,
                std::vector<Vec3>& out) {
    const int L = state.size();
    out.resize(static_cast<std::size_t>(L));
    const double J = params.J;
    const double twoJ = 2.0 * params.J;
    const double h = params.h;
    for (int i = 0; i < L; ++i) {
        const Vec3& prev = state.spins[static_cast<std::size_t>(i == 0 ? L - 1 : i - 1)];
        const Vec3& next = state.spins[static_cast<std::size_t>(i == L - 1 ? 0 : i + 1)];
        const Vec3& s = state.spins[static_cast<std::size_t>(i)];
        const double hx = -J * (prev.x + next.x) + h;
        const double hy = -twoJ * (prev.y + next.y) + h;
        out[static_cast<std::size_t>(i)] = {hy * s.z, -hx * s.z, hx * s.y - hy * s.x};
    }
}

std::vector<Vec3> derivative(const SpinChainState& state, const HamiltonianParams& params) {
    std::vector<Vec3> out;
    derivative(state, params, out);
    return out;
}

double onespin_energy(const Vec3& s, const HamiltonianParams& params) {
    return -params.J * s.x * s.x - 2.0 * params.J * s.y * s.y + params.h * (s.x + s.y);
}

Vec3 onespin_field(const Vec3& s, const HamiltonianParams& params) {
    return {-2.0 * params.J * s.x + params.h, -4.0 * params.J * s.y + params.h, 0.0};
}

} // namespace spinchaos
