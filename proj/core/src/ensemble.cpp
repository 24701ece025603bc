#include "spinchaos/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinchaos/fit.hpp"
#include "spinchaos/integrator.hpp"
#include "spinchaos/parallel.hpp"
#include "spinchaos/rng.hpp"

namespace spinchaos {

namespace {

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Sums values[lo, hi) pairwise; deterministic regardless of thread count.
double pairwise_sum(const std::vector<double>& values, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += values[i];
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(values, lo, mid) + pairwise_sum(values, mid, hi);
}

} // namespace

SpinChainState sample_quantum_imitation(double S, int L, std::uint64_t seed) {
    if (!(S > 0.0)) throw InvalidParameterError("imitated spin S must be positive");
    Rng rng = make_rng(seed);
    SpinChainState state;
    state.spins.resize(static_cast<std::size_t>(L));
    const double interval = 2.0 / (2.0 * S + 1.0);
    for (auto& spin : state.spins) {
        const double sz = 1.0 - interval * uniform01(rng);
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        const double sperp = std::sqrt(std::max(0.0, 1.0 - sz * sz));
        spin = {sperp * std::cos(phi), sperp * std::sin(phi), sz};
    }
    return state;
}

SpinChainState sample_perturbed_periodic(int L, double radius, std::uint64_t seed) {
    if (!(radius > 0.0)) throw InvalidParameterError("perturbation radius must be positive");
    Rng rng = make_rng(seed);
    SpinChainState state;
    state.spins.resize(static_cast<std::size_t>(L));
    for (auto& spin : state.spins) {
        const double r = radius * std::sqrt(uniform01(rng));
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        const double dx = r * std::cos(phi);
        const double dy = r * std::sin(phi);
        spin = {dx, dy, std::sqrt(1.0 - dx * dx - dy * dy)};
    }
    return state;
}

AveragedSeries ensemble_mean_s1z(const HamiltonianParams& params, const EnsembleSpec& spec,
                                 double duration, double sample_dt, double dt, int jobs) {
    params.validate();
    if (spec.members < 1) throw InvalidParameterError("ensemble needs at least one member");

    const int stride = std::max(1, static_cast<int>(std::llround(sample_dt / dt)));
    const std::size_t n_samples =
        static_cast<std::size_t>(std::llround(duration / dt)) / static_cast<std::size_t>(stride) +
        1;

    // Per-member series are kept so the reduction is a fixed-order pairwise
    // sum, independent of the thread schedule.
    std::vector<std::vector<double>> member_series(static_cast<std::size_t>(spec.members));
    parallel_for(static_cast<std::size_t>(spec.members), jobs, [&](std::size_t m) {
        const std::uint64_t mseed = sub_seed(spec.seed, m);
        SpinChainState state = spec.kind == EnsembleSpec::Kind::QuantumImitation
                                   ? sample_quantum_imitation(spec.spin_S, params.L, mseed)
                                   : sample_perturbed_periodic(params.L, spec.radius, mseed);
        auto& series = member_series[m];
        series.reserve(n_samples);
        Rk4Integrator integrator(params);
        Observer obs{stride, [&](const SpinChainState& s) { series.push_back(s.spins[0].z); }};
        integrator.integrate(state, duration, dt, {obs});
    });

    AveragedSeries avg;
    avg.members = spec.members;
    const std::size_t n = member_series.front().size();
    avg.times.resize(n);
    avg.mean.resize(n);
    avg.stderr_mean.resize(n);
    std::vector<double> column(static_cast<std::size_t>(spec.members));
    for (std::size_t i = 0; i < n; ++i) {
        avg.times[i] = static_cast<double>(i) * stride * dt;
        for (std::size_t m = 0; m < column.size(); ++m) column[m] = member_series[m][i];
        const double mean = pairwise_sum(column, 0, column.size()) / static_cast<double>(spec.members);
        avg.mean[i] = mean;
        if (spec.members > 1) {
            double ss = 0.0;
            for (double v : column) ss += (v - mean) * (v - mean);
            avg.stderr_mean[i] = std::sqrt(ss / (static_cast<double>(spec.members) *
                                                 (static_cast<double>(spec.members) - 1.0)));
        }
    }
    return avg;
}

OtocStyleResult otoc_style_exponent(const HamiltonianParams& params,
                                    const OtocStyleOptions& options) {
    EnsembleSpec spec;
    spec.kind = EnsembleSpec::Kind::PerturbedPeriodic;
    spec.radius = options.radius;
    spec.members = options.members;
    spec.seed = options.seed;

    OtocStyleResult result;
    result.series = ensemble_mean_s1z(params, spec, options.duration, options.sample_dt,
                                      options.dt, options.jobs);
    const auto& t = result.series.times;
    const auto& y = result.series.mean;

    // Successive maxima of mean S1z, refined through a parabola on the three
    // samples around each discrete maximum; these are the points of the
    // closest return to the initial orientation.
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] >= y[i - 1] && y[i] >= y[i + 1] && (y[i] > y[i - 1] || y[i] > y[i + 1])) {
            const double tm = parabola_vertex(t[i - 1], y[i - 1], t[i], y[i], t[i + 1], y[i + 1]);
            const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
            double ym = y[i];
            if (denom < 0.0)
                ym = y[i] - 0.125 * (y[i - 1] - y[i + 1]) * (y[i - 1] - y[i + 1]) / denom;
            result.maxima_times.push_back(tm);
            result.maxima_values.push_back(1.0 - ym);
        }
    }

    // Fit window in 1 - mean: [10 radius^2, 1e-2]. The early maxima scatter
    // (time discretisation vs true maxima) is excluded by requiring the
    // longest run of consecutive maxima with monotone growth, >= 4 long.
    const double lo = 10.0 * options.radius * options.radius;
    const double hi = 1e-2;
    std::size_t best_begin = 0, best_len = 0;
    std::size_t run_begin = 0, run_len = 0;
    for (std::size_t i = 0; i < result.maxima_times.size(); ++i) {
        const double v = result.maxima_values[i];
        const bool in_window = v >= lo && v <= hi;
        const bool increasing = run_len == 0 || v > result.maxima_values[i - 1];
        if (in_window && increasing) {
            if (run_len == 0) run_begin = i;
            ++run_len;
        } else {
            run_len = in_window ? 1 : 0;
            run_begin = i;
        }
        if (run_len > best_len) {
            best_len = run_len;
            best_begin = run_begin;
        }
    }
    if (best_len < 4) {
        result.growth = false;
        return result;
    }
    std::vector<double> fx, fy;
    for (std::size_t i = best_begin; i < best_begin + best_len; ++i) {
        fx.push_back(result.maxima_times[i]);
        fy.push_back(std::log(result.maxima_values[i]));
    }
    const auto fit = fit_line(fx, fy);
    if (fit.slope < 0.02) {
        result.growth = false;
        return result;
    }
    result.growth = true;
    result.slope = fit.slope;
    result.lambda = 0.5 * fit.slope;
    result.fit_window_lo = fx.front();
    result.fit_window_hi = fx.back();
    return result;
}

} // namespace spinchaos
