#include "spinchaos/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinchaos/integrator.hpp"

namespace spinchaos {

namespace {

// Advance from s over an interval shorter than one nominal step.
Vec3 substep(const OnespinIntegrator& stepper, Vec3 s, double span, double dt) {
    if (span <= 0.0) return s;
    const int n = std::max(1, static_cast<int>(std::ceil(span / dt)));
    const double h = span / n;
    for (int i = 0; i < n; ++i) s = stepper.step(s, h);
    return s;
}

} // namespace

double PeriodicOrbit::min_distance_to(const Vec3& point) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = distance(samples[i], point);
        if (d < best) { best = d; arg = i; }
    }
    if (arg == 0 || arg + 1 >= samples.size()) return best;
    // Parabola through three squared distances around the discrete minimum.
    const double d0 = (samples[arg - 1] - point).squared_norm();
    const double d1 = (samples[arg] - point).squared_norm();
    const double d2 = (samples[arg + 1] - point).squared_norm();
    const double denom = d0 - 2.0 * d1 + d2;
    if (denom <= 0.0) return best;
    const double offset = 0.5 * (d0 - d2) / denom;
    const double dmin2 = d1 - 0.125 * (d0 - d2) * (d0 - d2) / denom;
    if (std::abs(offset) <= 1.0 && dmin2 > 0.0) return std::sqrt(dmin2);
    return best;
}

PeriodicOrbit periodic_orbit(const HamiltonianParams& params, const Vec3& S0,
                             const OrbitOptions& options) {
    const Vec3 start = S0.normalized();
    const OnespinIntegrator stepper(params);
    const Vec3 v0 = onespin_derivative(start, params);
    const double v0_norm = v0.norm();
    if (v0_norm < 1e-14) throw NoClosureError("initial point is a fixed point of H_p");

    PeriodicOrbit orbit;
    orbit.energy = onespin_energy(start, params);
    orbit.orbit_class = classify_orbit(params, orbit.energy);

    const double dt = options.dt;
    // Closest-approach detection only arms once the trajectory has left the
    // neighbourhood of S0 by more than a couple of step lengths.
    const double escape = std::max(100.0 * options.r_close, 4.0 * v0_norm * dt);

    Vec3 prev2 = start, prev1 = start, cur = start;
    double d_prev1 = 0.0, d_cur = 0.0;
    bool armed = false;
    double t = 0.0;
    long long step_count = 0;

    orbit.times.push_back(0.0);
    orbit.samples.push_back(start);

    while (t < options.t_max) {
        prev2 = prev1;
        prev1 = cur;
        const double d_prev2 = d_prev1;
        d_prev1 = d_cur;
        cur = stepper.step(cur, dt);
        t = dt * static_cast<double>(++step_count);
        d_cur = distance(cur, start);

        if (step_count % options.sample_stride == 0) {
            orbit.times.push_back(t);
            orbit.samples.push_back(cur);
        }

        if (!armed) {
            if (d_cur > escape) armed = true;
            continue;
        }
        if (step_count < 3 || !(d_prev1 <= d_prev2 && d_prev1 <= d_cur)) continue;
        if (d_prev1 > escape) continue;

        // Local minimum of the distance around t - dt: refine the time of the
        // closest approach by bisection on f(tau) = (S - S0) . v, starting
        // from the state two steps back.
        const double t_lo = t - 2.0 * dt;
        const double t_hi = t;
        const Vec3 base = prev2;
        const auto align = [&](double tau) {
            const Vec3 s = substep(stepper, base, tau - t_lo, dt);
            return dot(s - start, onespin_derivative(s, params));
        };
        double lo = t_lo, hi = t_hi;
        double flo = align(lo);
        if (flo > 0.0) continue;  // not an approaching-receding pair
        for (int it = 0; it < 60 && hi - lo > 1e-14 * std::max(1.0, t); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = align(mid);
            if (fmid <= 0.0) { lo = mid; flo = fmid; } else { hi = mid; }
        }
        const double t_star = 0.5 * (lo + hi);
        const Vec3 s_star = substep(stepper, base, t_star - t_lo, dt);
        const double d_star = distance(s_star, start);
        if (d_star < options.r_close) {
            const Vec3 v_star = onespin_derivative(s_star, params);
            if (dot(v_star, v0) > 0.5 * v_star.norm() * v0_norm) {
                orbit.period = t_star;
                if (orbit.times.back() > t_star) {
                    while (!orbit.times.empty() && orbit.times.back() > t_star) {
                        orbit.times.pop_back();
                        orbit.samples.pop_back();
                    }
                }
                orbit.times.push_back(t_star);
                orbit.samples.push_back(s_star);
                return orbit;
            }
        }
    }
    throw NoClosureError("no closure within t_max=" + std::to_string(options.t_max) +
                         " at J=" + std::to_string(params.J));
}

} // namespace spinchaos
