#pragma once

#include <armadillo>
#include <complex>

#include "spinchaos/quantum/basis.hpp"

namespace spinchaos::quantum {

/// Parameters of the quantum chain. The reported coupling is the renormalized
/// Jt = J sqrt(S(S+1)), which makes quantum results at Jt comparable to the
/// classical chain at J = Jt; internally the Hamiltonian uses J = Jt / sqrt(S(S+1)).
struct QuantumParams {
    double S = 0.5;
    int L = 2;
    double J_tilde = 0.0;
    double h = 1.0;

    double bare_J() const { return J_tilde / std::sqrt(S * (S + 1.0)); }
};

/// Weighted sum of product-basis states reached by applying H to `code`,
/// reported as (code', amplitude) pairs (duplicates possible).
void apply_hamiltonian_terms(const MomentumSectorBasis& basis, const QuantumParams& params,
                             std::uint64_t code,
                             std::vector<std::pair<std::uint64_t, std::complex<double>>>& out);

/// Dense Hermitian Hamiltonian in the zero-momentum sector basis.
arma::cx_mat build_sector_hamiltonian(const MomentumSectorBasis& basis,
                                      const QuantumParams& params,
                                      int max_sector_dim = 20000);

/// Sparse Hamiltonian in the full product basis (for states that are not
/// translation invariant, and as an oracle for small instances).
arma::sp_cx_mat build_full_hamiltonian(const MomentumSectorBasis& basis,
                                       const QuantumParams& params);

/// Hamiltonian restricted to the reflection-even (or odd) subblock of the
/// zero-momentum sector; a single symmetry sector for level statistics.
arma::cx_mat build_parity_block_hamiltonian(const MomentumSectorBasis& basis,
                                            const QuantumParams& params, bool even);

struct EigenDecomposition {
    arma::vec energies;     // ascending
    arma::cx_mat vectors;   // columns
};

EigenDecomposition diagonalize(const arma::cx_mat& hamiltonian);

} // namespace spinchaos::quantum
