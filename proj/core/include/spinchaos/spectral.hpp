#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "spinchaos/hamiltonian.hpp"
#include "spinchaos/vec3.hpp"

namespace spinchaos {

/// Wave numbers allowed on a ring of L sites: q = 2 pi k / L with
/// k in (-L/2, L/2]. Index j of the stored arrays corresponds to k = k_of(j).
struct ModeGrid {
    int L = 0;

    int size() const { return L; }
    int k_of(int j) const { return j <= L / 2 ? j : j - L; }
    double q_of(int j) const;
    int index_of_k(int k) const { return ((k % L) + L) % L; }
};

/// Combined intensities F_q(t) of the spatial Fourier modes of all three spin
/// components: F_q = (1/L) |sum_m S_m e^{-i q m}|^2.
struct ModeIntensitySeries {
    ModeGrid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> intensities;  // [time][mode j], j = 0..L-1

    void push(double t, const SpinChainState& state);

    /// Time series of mode k (any integer, wrapped).
    std::vector<double> mode_series(int k) const;
};

/// Snapshot of F_q for all modes; index j runs over the DFT bins k = 0..L-1.
std::vector<double> mode_intensities(const SpinChainState& state);

/// Spatial Fourier spectrum f(q) of a Lyapunov vector plus the peak wave
/// number q_p = argmax over q >= 0 (the spectrum of a real vector is
/// symmetric, and exactly at the separatrix the peak sits at q = 0).
struct LyapunovVectorSpectrum {
    ModeGrid grid;
    std::vector<double> f;   // [mode j]
    double q_p = 0.0;
    int k_p = 0;
};

LyapunovVectorSpectrum lyapunov_vector_spectrum(const std::vector<Vec3>& delta);

/// Parabolic instability window lambda(q) = lambda_max - alpha (q - q0)^2 > 0.
struct UnstableWindow {
    double q0 = 0.0;
    double lambda_max = 0.0;
    double alpha = 0.0;
    double edge_margin = 0.0;   // optional +-dq allowance for cubic edge shifts

    double lambda_at(double q) const { return lambda_max - alpha * (q0 - q) * (q0 - q); }
    bool contains(double q) const {
        const double half = std::sqrt(lambda_max / alpha) + edge_margin;
        return std::abs(q - q0) < half;
    }
};

/// Fit of lambda_p(L) = lambda_max - alpha (q0 - round-nearest-allowed-q)^2.
struct LambdaOfLFit {
    UnstableWindow window;
    double residual_rms = 0.0;

    /// Predicted exponent; zero means Lyapunov stable.
    double predict(int L) const;
    /// The allowed wave number nearest to q0 for a chain of length L.
    double q_p(int L) const;
};

/// Least-squares fit of the three window parameters to (L, lambda_p) samples
/// with positive exponents. Throws FitError when fewer than 6 samples are
/// given or the residual RMS exceeds 20% of the fitted lambda_max.
LambdaOfLFit fit_lambda_of_L(const std::vector<std::pair<int, double>>& samples);

struct UnstableMode {
    int k = 0;
    double q = 0.0;
    double lambda = 0.0;
    int window_index = 0;
};

struct MechanismAResult {
    bool operational = false;
    std::vector<UnstableMode> unstable;   // sorted by lambda, descending
};

/// Mechanism A is operational iff at least two allowed q = 2 pi n / L fall
/// inside any of the supplied unstable windows.
MechanismAResult mechanism_A_criterion(int L, const std::vector<UnstableWindow>& windows);

struct ReducedBrillouin {
    int u = 0;         // gcd(L, n)
    double Q_u = 0.0;  // 2 pi u / L
    bool all_modes_couple = false;            // u == 1
    std::vector<std::vector<int>> groups;     // k values per backfolded class
};

/// Reduced Brillouin zone of the two-mode dynamics once the q_p = 2 pi n / L
/// mode has broken translational symmetry.
ReducedBrillouin reduced_brillouin(int L, int n);

/// Windowed power spectrum of a uniformly sampled signal.
struct FrequencySpectrum {
    std::vector<double> omega;   // angular frequencies >= 0
    std::vector<double> power;
    double sample_dt = 0.0;
    double t_start = 0.0;
    double tukey_fraction = 0.1;
};

FrequencySpectrum temporal_spectrum(const std::vector<double>& signal, double sample_dt,
                                    double t_start = 0.0, double tukey_fraction = 0.1);

struct PeakPair {
    double omega0 = 0.0;   // strongest peak near the periodic-orbit frequency
    double omega1 = 0.0;   // strongest peak below omega0 / 4
    double power0 = 0.0;
    double power1 = 0.0;
};

/// Locates the two characteristic frequencies of the nearly quasiperiodic
/// regime. Peaks must exceed 5x the median power; throws PeakNotFoundError
/// otherwise. omega_p_hint centres the omega0 search band [0.5, 1.5] omega_p.
PeakPair peak_frequencies(const FrequencySpectrum& spectrum, double omega_p_hint);

/// Strongest peak in [omega_lo, omega_hi] with quadratic sub-bin refinement.
std::optional<std::pair<double, double>> strongest_peak(const FrequencySpectrum& spectrum,
                                                        double omega_lo, double omega_hi,
                                                        double threshold_factor = 5.0);

/// Splits the chain energy into the integrable part H_0 (a function of the
/// total polarization M with J_0 = 2J/L) and the remainder H_1 = H - H_0,
/// both evaluated directly.
std::pair<double, double> h0_h1_split(const SpinChainState& state,
                                      const HamiltonianParams& params);

struct ModeGrowthRate {
    int harmonic = 0;        // n in q = n q_p
    int k = 0;
    double rate = 0.0;       // fitted d log F / dt
    double rate_over_2lambda = 0.0;
    double decades = 0.0;    // span of the fitted window
};

/// Log-linear growth rates of the harmonics F_{n q_p}(t) in their exponential
/// onset windows, reported as multiples of 2 lambda_p. Throws FitError when a
/// growth window spans fewer than 3 decades.
std::vector<ModeGrowthRate> growth_rate_ladder(const ModeIntensitySeries& series, int k_primary,
                                               double lambda_p, int max_harmonic = 3);

} // namespace spinchaos
