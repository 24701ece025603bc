#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "spinchaos/fixed_point.hpp"
#include "spinchaos/hamiltonian.hpp"
#include "spinchaos/orbit.hpp"

namespace spinchaos {

enum class ReferenceKind { Periodic, Ergodic, FixedPointRef };

/// Deviation between the twin and the reference trajectory.
struct TangentDeviation {
    std::vector<Vec3> delta;   // per-site 3-vectors of the 3L deviation
    double norm = 0.0;

    static TangentDeviation between(const SpinChainState& twin, const SpinChainState& ref);
};

/// One Benettin computation: reset history plus the converged exponent.
struct LyapunovRun {
    ReferenceKind kind = ReferenceKind::Periodic;
    double d0 = 0.0;
    double T_R = 0.0;
    int M = 0;
    std::vector<double> log_stretches;   // log(|dS(m T_R)| / d0)
    std::vector<double> running_mean;    // running estimate of lambda after each reset
    double lambda = 0.0;                 // mean(log_stretches) / T_R
    double stderr_lambda = 0.0;          // batch-means standard error
    std::vector<Vec3> lyapunov_vector;   // final deviation direction, unit 3L-norm
    std::uint64_t seed = 0;
};

struct BenettinOptions {
    double d0 = 0.0;          // <= 0 selects the default 1e-8 * sqrt(L)
    double T_R = 5.0;
    int max_resets = 1000;
    int min_resets = 50;
    bool adaptive = false;    // stop when the running mean settles (periodic scans)
    double adaptive_rel_tol = 0.005;  // over the last 20% of resets
    double dt = 1e-3;
    double blowup_fraction = 1e-2;    // error when |dS| > blowup_fraction * sqrt(L)
    std::uint64_t seed = 1;
};

/// Reference trajectory that the twin is measured against.
class ReferenceTrajectory {
public:
    virtual ~ReferenceTrajectory() = default;
    virtual void advance(double span, double dt) = 0;
    virtual const SpinChainState& state() const = 0;
};

/// Translationally invariant periodic reference: integrated as a single spin
/// and tiled, which keeps it on the uniform manifold exactly.
std::unique_ptr<ReferenceTrajectory> make_periodic_reference(const HamiltonianParams& params,
                                                             const Vec3& S0 = {0.0, 0.0, 1.0});

/// Generic reference on the E = 0 shell started from a seeded random state.
std::unique_ptr<ReferenceTrajectory> make_ergodic_reference(const HamiltonianParams& params,
                                                            std::uint64_t seed);

/// Constant reference at the unstable fixed point (all spins at S*).
std::unique_ptr<ReferenceTrajectory> make_fixed_point_reference(const HamiltonianParams& params,
                                                                const Vec3& S_star);

/// Random configuration on the E = `target` energy shell: two random states
/// with energies straddling the target are joined by per-site slerp and the
/// mixing parameter is bisected.
SpinChainState random_energy_shell_state(const HamiltonianParams& params, double target_energy,
                                         std::uint64_t seed);

/// Two-trajectory Benettin estimate of the largest Lyapunov exponent: the twin
/// starts at distance d0 in a random direction, is rescaled back to d0 every
/// T_R while preserving its direction, and the exponent is the mean log
/// stretch per unit time.
LyapunovRun benettin(ReferenceTrajectory& reference, ReferenceKind kind,
                     const HamiltonianParams& params, const BenettinOptions& options);

/// Convenience wrapper building the reference from `kind`.
LyapunovRun benettin(ReferenceKind kind, const HamiltonianParams& params,
                     const BenettinOptions& options);

enum class StabilityVerdict { Stable, Unstable, Inconclusive };

struct CertificatePoint {
    double T_R = 0.0;
    double lambda = 0.0;
    double stderr_lambda = 0.0;
};

struct StabilityCertificate {
    StabilityVerdict verdict = StabilityVerdict::Inconclusive;
    std::vector<CertificatePoint> table;
    double decay_coefficient = 0.0;   // c in lambda = c log(T_R)/T_R
    double decay_r_squared = 0.0;
    double flat_lambda = 0.0;         // pooled exponent when flat
};

/// Distinguishes a truly zero exponent from a small finite one: unstable
/// orbits give a T_R-independent lambda, stable ones decay as log(T_R)/T_R.
StabilityCertificate stability_certificate(const HamiltonianParams& params,
                                           const std::vector<double>& T_R_grid,
                                           const BenettinOptions& base_options,
                                           int jobs = 0);

struct FixedPointExponent {
    double lambda_S = 0.0;                 // from the smallest d0
    std::vector<double> per_d0;            // one exponent per supplied d0 scale
    std::vector<double> d0_scales;
    std::vector<std::vector<double>> growth_times;   // per d0: sample times
    std::vector<std::vector<double>> growth_dists;   // per d0: |S(t) - S*|
    std::vector<Vec3> final_deviation;     // unit 3L direction at the end of growth
};

/// Exponential growth rate of |S(t) - S*| around the unstable fixed point,
/// grown without resets from d0 * sqrt(L) up to 0.1 * sqrt(L) and fitted over
/// the last two decades. The supplied d0 scales must agree within 2%.
FixedPointExponent fixed_point_exponent(const HamiltonianParams& params, const Vec3& S_star,
                                        const std::vector<double>& d0_scales = {1e-6, 1e-5, 1e-4},
                                        double dt = 1e-3, std::uint64_t seed = 1);

} // namespace spinchaos
