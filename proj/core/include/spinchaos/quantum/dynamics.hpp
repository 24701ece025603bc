#pragma once

#include <cstdint>

#include "spinchaos/quantum/hamiltonian.hpp"

namespace spinchaos::quantum {

/// |Psi_up> = all sites at m = S, expressed in the zero-momentum sector basis
/// (it is the orbit of code 0, a single product state).
arma::cx_vec psi_up_sector(const MomentumSectorBasis& basis);

/// |Psi_inf> in the full product basis: site 1 fixed at m = S, the remaining
/// sites in a random infinite-temperature-typical pure state with phases
/// uniform on [0, 2pi) and |c|^2 drawn from P(x) = N exp(-N x). Normalized.
arma::cx_vec psi_inf_full(const MomentumSectorBasis& basis, std::uint64_t seed);

/// M_z / L in the sector basis (diagonal); within the zero-momentum sector
/// the one-site S1z acts as the translation average of all sites.
arma::vec s1z_sector_diagonal(const MomentumSectorBasis& basis);

/// S1z in the full product basis (diagonal).
arma::vec s1z_full_diagonal(const MomentumSectorBasis& basis);

/// Expectation series <psi(t)| O |psi(t)> for a diagonal observable, with the
/// state evolved through the eigendecomposition.
struct ExpectationSeries {
    std::vector<double> times;
    std::vector<double> values;
};

ExpectationSeries evolve_observable(const EigenDecomposition& ed, const arma::cx_vec& psi0,
                                    const arma::vec& observable_diagonal,
                                    const std::vector<double>& times);

/// Lanczos propagator for sparse full-basis evolution; keeps the state
/// unitary to ~1e-8 per the module contract.
class KrylovPropagator {
public:
    KrylovPropagator(const arma::sp_cx_mat& H, int krylov_dim = 30);

    /// Advance psi by dt in place.
    void step(arma::cx_vec& psi, double dt) const;

private:
    const arma::sp_cx_mat& H_;
    int m_;
};

/// <psi(t)| diag |psi(t)> series computed with Krylov stepping.
ExpectationSeries evolve_observable_krylov(const arma::sp_cx_mat& H, const arma::cx_vec& psi0,
                                           const arma::vec& observable_diagonal, double t_max,
                                           double dt_sample, int krylov_dim = 30);

} // namespace spinchaos::quantum
