#include "spinchaos/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "spinchaos/errors.hpp"
#include "spinchaos/fit.hpp"

namespace spinchaos {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::mutex fftw_plan_mutex;

// DFT over sites of all three spin components; returns |.|^2 / L per bin.
template <typename GetVec>
std::vector<double> site_dft_intensity(int L, GetVec&& get) {
    std::vector<double> out(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) {
        std::complex<double> fx{}, fy{}, fz{};
        for (int m = 0; m < L; ++m) {
            // site index m+1 enters as e^{-i q (m+1)}; the overall phase
            // cancels in the modulus.
            const double phase = -two_pi * static_cast<double>(k) * static_cast<double>(m) /
                                 static_cast<double>(L);
            const std::complex<double> w{std::cos(phase), std::sin(phase)};
            const Vec3 v = get(m);
            fx += v.x * w;
            fy += v.y * w;
            fz += v.z * w;
        }
        out[static_cast<std::size_t>(k)] =
            (std::norm(fx) + std::norm(fy) + std::norm(fz)) / static_cast<double>(L);
    }
    return out;
}

} // namespace

double ModeGrid::q_of(int j) const {
    return two_pi * static_cast<double>(k_of(j)) / static_cast<double>(L);
}

void ModeIntensitySeries::push(double t, const SpinChainState& state) {
    if (grid.L == 0) grid.L = state.size();
    times.push_back(t);
    intensities.push_back(mode_intensities(state));
}

std::vector<double> ModeIntensitySeries::mode_series(int k) const {
    const int j = grid.index_of_k(k);
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = intensities[i][static_cast<std::size_t>(j)];
    return out;
}

std::vector<double> mode_intensities(const SpinChainState& state) {
    return site_dft_intensity(state.size(),
                              [&](int m) { return state.spins[static_cast<std::size_t>(m)]; });
}

LyapunovVectorSpectrum lyapunov_vector_spectrum(const std::vector<Vec3>& delta) {
    LyapunovVectorSpectrum sp;
    const int L = static_cast<int>(delta.size());
    sp.grid.L = L;
    sp.f = site_dft_intensity(L, [&](int m) { return delta[static_cast<std::size_t>(m)]; });
    int best = 0;
    for (int k = 1; k <= L / 2; ++k)
        if (sp.f[static_cast<std::size_t>(k)] > sp.f[static_cast<std::size_t>(best)]) best = k;
    sp.k_p = best;
    sp.q_p = two_pi * static_cast<double>(best) / static_cast<double>(L);
    return sp;
}

double LambdaOfLFit::q_p(int L) const {
    const double ratio = window.q0 * static_cast<double>(L) / two_pi;
    return two_pi * std::round(ratio) / static_cast<double>(L);
}

double LambdaOfLFit::predict(int L) const {
    const double q = q_p(L);
    return std::max(0.0, window.lambda_at(q));
}

LambdaOfLFit fit_lambda_of_L(const std::vector<std::pair<int, double>>& samples) {
    std::vector<std::pair<int, double>> positive;
    for (const auto& s : samples)
        if (s.second > 0.0) positive.push_back(s);
    if (positive.size() < 6)
        throw FitError("fit_lambda_of_L needs >= 6 samples with positive lambda_p");

    // The model is linear in (lambda_max, alpha) once q0 is fixed; scan q0 on
    // a fine grid and keep the best least-squares residual.
    const auto evaluate = [&](double q0, LambdaOfLFit& out) {
        double sxx = 0.0, sx = 0.0, sxy = 0.0, sy = 0.0;
        const double n = static_cast<double>(positive.size());
        for (const auto& [L, lam] : positive) {
            const double qp = two_pi * std::round(q0 * L / two_pi) / static_cast<double>(L);
            const double x = (q0 - qp) * (q0 - qp);
            sxx += x * x;
            sx += x;
            sxy += x * lam;
            sy += lam;
        }
        const double det = n * sxx - sx * sx;
        double lambda_max, alpha;
        if (std::abs(det) < 1e-30) {
            lambda_max = sy / n;
            alpha = 0.0;
        } else {
            // solve [n sx; sx sxx] [lambda_max; -alpha] = [sy; sxy]
            lambda_max = (sxx * sy - sx * sxy) / det;
            alpha = -(n * sxy - sx * sy) / det;
        }
        double ss = 0.0;
        for (const auto& [L, lam] : positive) {
            const double qp = two_pi * std::round(q0 * L / two_pi) / static_cast<double>(L);
            const double model = lambda_max - alpha * (q0 - qp) * (q0 - qp);
            ss += (lam - model) * (lam - model);
        }
        out.window = {q0, lambda_max, alpha, 0.0};
        out.residual_rms = std::sqrt(ss / n);
        return ss;
    };

    LambdaOfLFit best;
    double best_ss = std::numeric_limits<double>::infinity();
    constexpr int n_grid = 4000;
    for (int i = 1; i < n_grid; ++i) {
        const double q0 = std::numbers::pi * static_cast<double>(i) / n_grid;
        LambdaOfLFit trial;
        const double ss = evaluate(q0, trial);
        if (trial.window.alpha <= 0.0 || trial.window.lambda_max <= 0.0) continue;
        if (ss < best_ss) {
            best_ss = ss;
            best = trial;
        }
    }
    if (!std::isfinite(best_ss)) throw FitError("fit_lambda_of_L: no admissible window");
    if (best.residual_rms > 0.2 * best.window.lambda_max)
        throw FitError("fit_lambda_of_L: residual RMS exceeds 20% of lambda_max");
    return best;
}

MechanismAResult mechanism_A_criterion(int L, const std::vector<UnstableWindow>& windows) {
    MechanismAResult res;
    for (int k = 1; k <= L / 2; ++k) {
        const double q = two_pi * static_cast<double>(k) / static_cast<double>(L);
        double lambda = -1.0;
        int wi = -1;
        for (std::size_t w = 0; w < windows.size(); ++w) {
            if (!windows[w].contains(q)) continue;
            const double val = windows[w].lambda_at(q);
            if (val > lambda) {
                lambda = val;
                wi = static_cast<int>(w);
            }
        }
        if (wi >= 0) res.unstable.push_back({k, q, lambda, wi});
    }
    std::sort(res.unstable.begin(), res.unstable.end(),
              [](const UnstableMode& a, const UnstableMode& b) { return a.lambda > b.lambda; });
    res.operational = res.unstable.size() >= 2;
    return res;
}

ReducedBrillouin reduced_brillouin(int L, int n) {
    if (n <= 0 || n >= L) throw InvalidParameterError("reduced_brillouin needs 0 < n < L");
    ReducedBrillouin rb;
    rb.u = std::gcd(L, n);
    rb.Q_u = two_pi * static_cast<double>(rb.u) / static_cast<double>(L);
    rb.all_modes_couple = rb.u == 1;
    rb.groups.assign(static_cast<std::size_t>(rb.u), {});
    for (int k = 0; k < L; ++k)
        rb.groups[static_cast<std::size_t>(k % rb.u)].push_back(k);
    return rb;
}

FrequencySpectrum temporal_spectrum(const std::vector<double>& signal, double sample_dt,
                                    double t_start, double tukey_fraction) {
    const std::size_t n = signal.size();
    if (n < 16) throw InvalidParameterError("temporal_spectrum needs at least 16 samples");
    if (!(sample_dt > 0.0)) throw InvalidParameterError("sample_dt must be positive");

    std::vector<double> windowed(n);
    const double ramp = 0.5 * tukey_fraction * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        const double x = static_cast<double>(i);
        const double tail = static_cast<double>(n - 1) - x;
        if (ramp > 0.0 && x < ramp)
            w = 0.5 * (1.0 + std::cos(std::numbers::pi * (x / ramp - 1.0)));
        else if (ramp > 0.0 && tail < ramp)
            w = 0.5 * (1.0 + std::cos(std::numbers::pi * (tail / ramp - 1.0)));
        windowed[i] = signal[i] * w;
    }

    std::vector<std::complex<double>> out(n / 2 + 1);
    {
        std::scoped_lock lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), windowed.data(),
                                              reinterpret_cast<fftw_complex*>(out.data()),
                                              FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    FrequencySpectrum sp;
    sp.sample_dt = sample_dt;
    sp.t_start = t_start;
    sp.tukey_fraction = tukey_fraction;
    const double domega = two_pi / (static_cast<double>(n) * sample_dt);
    sp.omega.resize(out.size());
    sp.power.resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        sp.omega[i] = domega * static_cast<double>(i);
        sp.power[i] = std::norm(out[i]);
    }
    return sp;
}

std::optional<std::pair<double, double>> strongest_peak(const FrequencySpectrum& spectrum,
                                                        double omega_lo, double omega_hi,
                                                        double threshold_factor) {
    if (spectrum.power.size() < 4) return std::nullopt;
    std::vector<double> nonzero(spectrum.power.begin() + 1, spectrum.power.end());
    const double med = median(std::move(nonzero));
    const double threshold = threshold_factor * med;

    double best_power = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < spectrum.power.size(); ++i) {
        if (spectrum.omega[i] < omega_lo || spectrum.omega[i] > omega_hi) continue;
        const double p = spectrum.power[i];
        if (p <= threshold) continue;
        if (p < spectrum.power[i - 1] || p < spectrum.power[i + 1]) continue;
        if (p > best_power) {
            best_power = p;
            best = i;
        }
    }
    if (best == 0) return std::nullopt;
    const double omega = parabola_vertex(spectrum.omega[best - 1], spectrum.power[best - 1],
                                         spectrum.omega[best], spectrum.power[best],
                                         spectrum.omega[best + 1], spectrum.power[best + 1]);
    return std::make_pair(omega, best_power);
}

PeakPair peak_frequencies(const FrequencySpectrum& spectrum, double omega_p_hint) {
    PeakPair pair;
    const auto main_peak = strongest_peak(spectrum, 0.5 * omega_p_hint, 1.5 * omega_p_hint);
    if (!main_peak)
        throw PeakNotFoundError("no spectral peak near the periodic-orbit frequency");
    pair.omega0 = main_peak->first;
    pair.power0 = main_peak->second;

    const double omega_min = 3.0 * (spectrum.omega[1] - spectrum.omega[0]);
    const auto low_peak = strongest_peak(spectrum, omega_min, 0.25 * pair.omega0);
    if (!low_peak) throw PeakNotFoundError("no spectral peak in the low-frequency band");
    pair.omega1 = low_peak->first;
    pair.power1 = low_peak->second;
    return pair;
}

std::pair<double, double> h0_h1_split(const SpinChainState& state,
                                      const HamiltonianParams& params) {
    const int L = state.size();
    const double J0 = 2.0 * params.J / static_cast<double>(L);
    Vec3 M{};
    for (const auto& s : state.spins) M += s;
    const double H0 = -0.5 * (J0 * M.x * M.x + 2.0 * J0 * M.y * M.y) +
                      params.h * (M.x + M.y);

    // H_1 from its own definition: bond part of H plus half the double sum.
    double bond = 0.0;
    for (int i = 0; i < L; ++i) {
        const Vec3& s = state.spins[static_cast<std::size_t>(i)];
        const Vec3& n = state.spins[static_cast<std::size_t>((i + 1) % L)];
        bond += params.J * (s.x * n.x + 2.0 * s.y * n.y);
    }
    const double H1 = -bond + 0.5 * (J0 * M.x * M.x + 2.0 * J0 * M.y * M.y);
    return {H0, H1};
}

std::vector<ModeGrowthRate> growth_rate_ladder(const ModeIntensitySeries& series, int k_primary,
                                               double lambda_p, int max_harmonic) {
    if (series.times.size() < 16) throw FitError("growth_rate_ladder: series too short");
    const int L = series.grid.L;

    std::vector<ModeGrowthRate> ladder;
    for (int n = 1; n <= max_harmonic; ++n) {
        const int k = (k_primary * n) % L;
        if (k == 0) break;
        const auto F = series.mode_series(k);

        double f_max = 0.0;
        for (double v : F) f_max = std::max(f_max, v);

        // The exponential onset ends at the first approach to saturation, not
        // at the global maximum (the saturated regime keeps oscillating).
        std::size_t i_end = F.size() - 1;
        const double saturated = f_max * std::pow(10.0, -0.5);
        for (std::size_t i = 0; i < F.size(); ++i)
            if (F[i] >= saturated) { i_end = i; break; }

        // Noise level before the driven growth overtakes the linear seed; the
        // early samples of the series estimate it.
        std::vector<double> early(F.begin(), F.begin() + std::max<std::size_t>(4, F.size() / 20));
        const double noise = median(std::move(early));

        // Walk back from saturation to where the mode emerged from the floor.
        std::size_t i_start = 0;
        for (std::size_t j = i_end; j > 0; --j) {
            if (F[j - 1] < 30.0 * noise) { i_start = j; break; }
        }
        const double hi = f_max * std::pow(10.0, -1.5);

        std::vector<double> xs, ys;
        for (std::size_t i = i_start; i <= i_end; ++i) {
            if (F[i] > 0.0 && F[i] <= hi) {
                xs.push_back(series.times[i]);
                ys.push_back(std::log(F[i]));
            }
        }
        if (xs.size() < 5)
            throw FitError("too few growth samples for harmonic " + std::to_string(n));
        const auto fit = fit_line(xs, ys);
        ModeGrowthRate r;
        r.harmonic = n;
        r.k = k;
        r.rate = fit.slope;
        r.rate_over_2lambda = fit.slope / (2.0 * lambda_p);
        r.decades = (ys.back() - ys.front()) / std::numbers::ln10;
        if (r.decades < 3.0)
            throw FitError("growth window below 3 decades for harmonic " + std::to_string(n));
        ladder.push_back(r);
    }
    return ladder;
}

} // namespace spinchaos
