#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "spinchaos/fixed_point.hpp"
#include "spinchaos/orbit.hpp"

using namespace spinchaos;

TEST_CASE("separatrix smoke") {
    const auto sep = find_separatrix_J(1.0);
    std::printf("J* = %.10f  S* = (%.6f, %.6f, %.6f)  E_s = %.3e  hess = (%.4f, %.4f)\n",
                sep.J_star, sep.fixed_point.orientation.x, sep.fixed_point.orientation.y,
                sep.fixed_point.orientation.z, sep.fixed_point.energy,
                sep.fixed_point.hess_low, sep.fixed_point.hess_high);
    CHECK(sep.J_star == doctest::Approx(1.1504059085).epsilon(1e-6));
    const double lamS = std::sqrt(-sep.fixed_point.hess_low * sep.fixed_point.hess_high);
    std::printf("one-spin saddle exponent sqrt(-ab) = %.6f\n", lamS);
}

TEST_CASE("orbit smoke") {
    HamiltonianParams lib{0.79, 1.0, 2};
    auto o1 = periodic_orbit(lib, {0, 0, 1});
    std::printf("J=0.79: T=%.6f E=%.3e class=%d  nsamp=%zu\n", o1.period, o1.energy,
                int(o1.orbit_class), o1.samples.size());
    CHECK(o1.orbit_class == OrbitClass::Libration);

    HamiltonianParams rot{1.76, 1.0, 2};
    auto o2 = periodic_orbit(rot, {0, 0, 1});
    std::printf("J=1.76: T=%.6f E=%.3e class=%d\n", o2.period, o2.energy, int(o2.orbit_class));
    CHECK(o2.orbit_class == OrbitClass::Rotation);

    HamiltonianParams free{0.0, 1.0, 2};
    auto o3 = periodic_orbit(free, {0, 0, 1});
    std::printf("J=0: T=%.6f (expect %.6f)\n", o3.period, 2 * 3.14159265358979 / std::sqrt(2.0));
    CHECK(o3.period == doctest::Approx(6.28318530718 / std::sqrt(2.0)).epsilon(1e-6));
}
