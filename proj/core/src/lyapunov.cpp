#include "spinchaos/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinchaos/fit.hpp"
#include "spinchaos/integrator.hpp"
#include "spinchaos/parallel.hpp"
#include "spinchaos/rng.hpp"

namespace spinchaos {

namespace {

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(Rng& rng) {
    // Polar Box-Muller on explicit uniforms keeps the stream portable.
    for (;;) {
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = 2.0 * uniform01(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

Vec3 random_unit_vector(Rng& rng) {
    Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
    return v.normalized();
}

std::vector<Vec3> random_direction_3L(int L, Rng& rng) {
    std::vector<Vec3> d(static_cast<std::size_t>(L));
    double n2 = 0.0;
    for (auto& v : d) {
        v = {gaussian(rng), gaussian(rng), gaussian(rng)};
        n2 += v.squared_norm();
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : d) v *= inv;
    return d;
}

double deviation_norm(const SpinChainState& a, const SpinChainState& b) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < a.spins.size(); ++i)
        n2 += (a.spins[i] - b.spins[i]).squared_norm();
    return std::sqrt(n2);
}

class PeriodicReference final : public ReferenceTrajectory {
public:
    PeriodicReference(const HamiltonianParams& params, const Vec3& S0)
        : stepper_(params), spin_(S0.normalized()) {
        state_.spins.assign(static_cast<std::size_t>(params.L), spin_);
    }

    void advance(double span, double dt) override {
        const long long steps = static_cast<long long>(std::llround(span / dt));
        for (long long i = 0; i < steps; ++i) spin_ = stepper_.step(spin_, dt);
        std::fill(state_.spins.begin(), state_.spins.end(), spin_);
        state_.time += span;
    }

    const SpinChainState& state() const override { return state_; }

private:
    OnespinIntegrator stepper_;
    Vec3 spin_;
    SpinChainState state_;
};

class ErgodicReference final : public ReferenceTrajectory {
public:
    ErgodicReference(const HamiltonianParams& params, std::uint64_t seed)
        : integrator_(params), state_(random_energy_shell_state(params, 0.0, seed)) {}

    void advance(double span, double dt) override { integrator_.integrate(state_, span, dt); }
    const SpinChainState& state() const override { return state_; }

private:
    Rk4Integrator integrator_;
    SpinChainState state_;
};

class FixedPointReference final : public ReferenceTrajectory {
public:
    FixedPointReference(const HamiltonianParams& params, const Vec3& S_star) {
        state_.spins.assign(static_cast<std::size_t>(params.L), S_star.normalized());
    }
    void advance(double span, double /*dt*/) override { state_.time += span; }
    const SpinChainState& state() const override { return state_; }

private:
    SpinChainState state_;
};

} // namespace

TangentDeviation TangentDeviation::between(const SpinChainState& twin, const SpinChainState& ref) {
    TangentDeviation d;
    d.delta.resize(twin.spins.size());
    double n2 = 0.0;
    for (std::size_t i = 0; i < twin.spins.size(); ++i) {
        d.delta[i] = twin.spins[i] - ref.spins[i];
        n2 += d.delta[i].squared_norm();
    }
    d.norm = std::sqrt(n2);
    return d;
}

std::unique_ptr<ReferenceTrajectory> make_periodic_reference(const HamiltonianParams& params,
                                                             const Vec3& S0) {
    return std::make_unique<PeriodicReference>(params, S0);
}

std::unique_ptr<ReferenceTrajectory> make_ergodic_reference(const HamiltonianParams& params,
                                                            std::uint64_t seed) {
    return std::make_unique<ErgodicReference>(params, seed);
}

std::unique_ptr<ReferenceTrajectory> make_fixed_point_reference(const HamiltonianParams& params,
                                                                const Vec3& S_star) {
    return std::make_unique<FixedPointReference>(params, S_star);
}

SpinChainState random_energy_shell_state(const HamiltonianParams& params, double target_energy,
                                         std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const int L = params.L;

    const auto sample = [&]() {
        SpinChainState s;
        s.spins.resize(static_cast<std::size_t>(L));
        for (auto& v : s.spins) v = random_unit_vector(rng);
        return s;
    };

    // Draw a pair of configurations straddling the target energy.
    SpinChainState below, above;
    bool have_below = false, have_above = false;
    for (int attempt = 0; attempt < 10000 && !(have_below && have_above); ++attempt) {
        SpinChainState s = sample();
        const double e = energy(s, params);
        if (e < target_energy && !have_below) { below = s; have_below = true; }
        if (e >= target_energy && !have_above) { above = s; have_above = true; }
    }
    if (!(have_below && have_above))
        throw BracketError("could not bracket the target energy shell");

    // Per-site slerp between the two configurations; the mixing parameter is
    // bisected until the energy matches the shell.
    const auto mix = [&](double t) {
        SpinChainState s;
        s.spins.resize(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i) {
            const Vec3& a = below.spins[static_cast<std::size_t>(i)];
            const Vec3& b = above.spins[static_cast<std::size_t>(i)];
            const double c = std::clamp(dot(a, b), -1.0, 1.0);
            const double ang = std::acos(c);
            Vec3 v;
            if (ang < 1e-12) {
                v = a;
            } else {
                const double sa = std::sin((1.0 - t) * ang) / std::sin(ang);
                const double sb = std::sin(t * ang) / std::sin(ang);
                v = sa * a + sb * b;
            }
            s.spins[static_cast<std::size_t>(i)] = v.normalized();
        }
        return s;
    };

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = energy(mix(mid), params);
        if (e < target_energy) lo = mid; else hi = mid;
        if (hi - lo < 1e-16) break;
    }
    SpinChainState out = mix(0.5 * (lo + hi));
    out.time = 0.0;
    return out;
}

LyapunovRun benettin(ReferenceTrajectory& reference, ReferenceKind kind,
                     const HamiltonianParams& params, const BenettinOptions& options) {
    params.validate();
    const int L = params.L;
    const double sqrtL = std::sqrt(static_cast<double>(L));
    const double d0 = options.d0 > 0.0 ? options.d0 : 1e-8 * sqrtL;
    const double blowup = options.blowup_fraction * sqrtL;

    Rng rng = make_rng(options.seed);
    auto direction = random_direction_3L(L, rng);

    Rk4Integrator twin_integrator(params);
    SpinChainState twin = reference.state();
    for (int i = 0; i < L; ++i) {
        twin.spins[static_cast<std::size_t>(i)] += d0 * direction[static_cast<std::size_t>(i)];
        twin.spins[static_cast<std::size_t>(i)].normalize();
    }

    LyapunovRun run;
    run.kind = kind;
    run.T_R = options.T_R;
    run.seed = options.seed;
    run.d0 = deviation_norm(twin, reference.state());

    double sum_logs = 0.0;
    TangentDeviation dev;
    for (int m = 1; m <= options.max_resets; ++m) {
        reference.advance(options.T_R, options.dt);
        twin_integrator.integrate(twin, options.T_R, options.dt);

        dev = TangentDeviation::between(twin, reference.state());
        if (!(dev.norm > 0.0) || !std::isfinite(dev.norm))
            throw NumericBlowupError("deviation vanished or became non-finite");
        if (dev.norm > blowup)
            throw DeviationBlowupError("|dS| = " + std::to_string(dev.norm) +
                                       " exceeded the linear-response bound; shorten T_R");

        const double stretch = std::log(dev.norm / run.d0);
        run.log_stretches.push_back(stretch);
        sum_logs += stretch;
        run.running_mean.push_back(sum_logs / (static_cast<double>(m) * options.T_R));

        // Reset: rescale the deviation back to d0 preserving its direction.
        const double scale = run.d0 / dev.norm;
        const auto& ref_state = reference.state();
        for (int i = 0; i < L; ++i) {
            twin.spins[static_cast<std::size_t>(i)] =
                ref_state.spins[static_cast<std::size_t>(i)] +
                scale * dev.delta[static_cast<std::size_t>(i)];
            twin.spins[static_cast<std::size_t>(i)].normalize();
        }

        if (options.adaptive && m >= options.min_resets) {
            const int lookback = std::max(1, m / 5);
            const double prev = run.running_mean[static_cast<std::size_t>(m - 1 - lookback)];
            const double cur = run.running_mean.back();
            const double scale_ref = std::max({std::abs(cur), std::abs(prev), 1e-6});
            if (std::abs(cur - prev) < options.adaptive_rel_tol * scale_ref) break;
        }
    }

    run.M = static_cast<int>(run.log_stretches.size());
    const auto stats = batch_means(run.log_stretches, 10);
    run.lambda = stats.mean / options.T_R;
    run.stderr_lambda = stats.stderr_mean / options.T_R;

    run.lyapunov_vector = dev.delta;
    double n2 = 0.0;
    for (const auto& v : run.lyapunov_vector) n2 += v.squared_norm();
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : run.lyapunov_vector) v *= inv;
    return run;
}

LyapunovRun benettin(ReferenceKind kind, const HamiltonianParams& params,
                     const BenettinOptions& options) {
    std::unique_ptr<ReferenceTrajectory> ref;
    switch (kind) {
        case ReferenceKind::Periodic:
            ref = make_periodic_reference(params);
            break;
        case ReferenceKind::Ergodic:
            ref = make_ergodic_reference(params, splitmix64(options.seed ^ 0x5eedULL));
            break;
        case ReferenceKind::FixedPointRef: {
            const auto sep = find_separatrix_J(params.h);
            ref = make_fixed_point_reference(params, sep.fixed_point.orientation);
            break;
        }
    }
    return benettin(*ref, kind, params, options);
}

StabilityCertificate stability_certificate(const HamiltonianParams& params,
                                           const std::vector<double>& T_R_grid,
                                           const BenettinOptions& base_options,
                                           int jobs) {
    if (T_R_grid.size() < 3)
        throw InvalidParameterError("stability certificate needs >= 3 reset times");

    StabilityCertificate cert;
    cert.table.resize(T_R_grid.size());
    parallel_for(T_R_grid.size(), jobs, [&](std::size_t i) {
        BenettinOptions opt = base_options;
        opt.T_R = T_R_grid[i];
        opt.adaptive = false;
        opt.seed = sub_seed(base_options.seed, i);
        const auto run = benettin(ReferenceKind::Periodic, params, opt);
        cert.table[i] = {opt.T_R, run.lambda, run.stderr_lambda};
    });

    double lambda_max = 0.0;
    for (const auto& p : cert.table) lambda_max = std::max(lambda_max, std::abs(p.lambda));
    if (lambda_max < 1e-6) {
        cert.verdict = StabilityVerdict::Stable;
        return cert;
    }

    // Unstable: lambda(T_R) flat within two standard errors.
    double wsum = 0.0, w = 0.0, sigma_max = 0.0;
    for (const auto& p : cert.table) {
        const double wi = 1.0 / std::max(p.stderr_lambda * p.stderr_lambda, 1e-12);
        wsum += wi * p.lambda;
        w += wi;
        sigma_max = std::max(sigma_max, p.stderr_lambda);
    }
    const double pooled = wsum / w;
    bool flat = true;
    for (const auto& p : cert.table) {
        const double tol = 2.0 * std::max(p.stderr_lambda, sigma_max);
        if (std::abs(p.lambda - pooled) > tol) { flat = false; break; }
    }
    if (flat && pooled > 0.0) {
        cert.verdict = StabilityVerdict::Unstable;
        cert.flat_lambda = pooled;
        return cert;
    }

    // Stable: lambda(T_R) = c log(T_R) / T_R.
    std::vector<double> x(cert.table.size()), y(cert.table.size());
    for (std::size_t i = 0; i < cert.table.size(); ++i) {
        x[i] = std::log(cert.table[i].T_R) / cert.table[i].T_R;
        y[i] = cert.table[i].lambda;
    }
    const auto fit = fit_proportional(x, y);
    cert.decay_coefficient = fit.c;
    cert.decay_r_squared = fit.r_squared;
    if (fit.r_squared > 0.95) {
        cert.verdict = StabilityVerdict::Stable;
        return cert;
    }
    cert.verdict = StabilityVerdict::Inconclusive;
    return cert;
}

FixedPointExponent fixed_point_exponent(const HamiltonianParams& params, const Vec3& S_star,
                                        const std::vector<double>& d0_scales, double dt,
                                        std::uint64_t seed) {
    params.validate();
    const int L = params.L;
    const double sqrtL = std::sqrt(static_cast<double>(L));
    const double d_stop = 1e-1 * sqrtL;

    FixedPointExponent result;
    result.d0_scales = d0_scales;

    SpinChainState fp;
    fp.spins.assign(static_cast<std::size_t>(L), S_star.normalized());

    // The separatrix instability develops entirely within the q = 0 subspace,
    // so the seed perturbation tilts every spin the same way; uniform
    // deviations stay uniform and the growth curves for different d0 collapse.
    Rng rng = make_rng(seed);
    const Vec3 common_dir{gaussian(rng), gaussian(rng), gaussian(rng)};

    for (std::size_t k = 0; k < d0_scales.size(); ++k) {
        const double d0 = d0_scales[k] * sqrtL;
        const Vec3 tilt = (d0 / sqrtL) * common_dir.normalized();

        SpinChainState state = fp;
        for (int i = 0; i < L; ++i) {
            state.spins[static_cast<std::size_t>(i)] += tilt;
            state.spins[static_cast<std::size_t>(i)].normalize();
        }

        Rk4Integrator integrator(params);
        std::vector<double> ts, ds;
        const int stride = 10;
        double t = 0.0;
        double d = deviation_norm(state, fp);
        ts.push_back(t);
        ds.push_back(d);
        const double t_limit = 1e4;
        while (d < d_stop && t < t_limit) {
            for (int s = 0; s < stride; ++s) integrator.step(state, dt);
            t += stride * dt;
            d = deviation_norm(state, fp);
            ts.push_back(t);
            ds.push_back(d);
        }
        if (d < d_stop) throw FitError("fixed-point deviation failed to grow");

        // Log-linear fit over the late-time window (last two decades).
        const double d_hi = d_stop;
        const double d_lo = d_hi * 1e-2;
        if (ds.front() > d_lo)
            throw FitError("growth window below two decades for d0 scale " +
                           std::to_string(d0_scales[k]));
        std::vector<double> fx, fy;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds[i] >= d_lo && ds[i] <= d_hi) {
                fx.push_back(ts[i]);
                fy.push_back(std::log(ds[i]));
            }
        }
        if (fx.size() < 10) throw FitError("too few samples in the growth window");
        const auto fit = fit_line(fx, fy);
        result.per_d0.push_back(fit.slope);
        result.growth_times.push_back(std::move(ts));
        result.growth_dists.push_back(std::move(ds));

        if (k == 0) {
            result.final_deviation.resize(static_cast<std::size_t>(L));
            double fn2 = 0.0;
            for (int i = 0; i < L; ++i) {
                result.final_deviation[static_cast<std::size_t>(i)] =
                    state.spins[static_cast<std::size_t>(i)] - fp.spins[static_cast<std::size_t>(i)];
                fn2 += result.final_deviation[static_cast<std::size_t>(i)].squared_norm();
            }
            const double fi = 1.0 / std::sqrt(fn2);
            for (auto& v : result.final_deviation) v *= fi;
        }
    }

    result.lambda_S = result.per_d0.front();
    return result;
}

} // namespace spinchaos
