#include "spinchaos/quantum/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace spinchaos::quantum {

namespace {

// Ladder amplitudes for digit v (m = S - v): raising decreases v.
struct Ladders {
    std::vector<double> up;    // <m+1| S+ |m> for each digit
    std::vector<double> down;  // <m-1| S- |m>
};

Ladders make_ladders(double S, int d) {
    Ladders l;
    l.up.resize(static_cast<std::size_t>(d), 0.0);
    l.down.resize(static_cast<std::size_t>(d), 0.0);
    for (int v = 0; v < d; ++v) {
        const double m = S - v;
        l.up[static_cast<std::size_t>(v)] = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
        l.down[static_cast<std::size_t>(v)] = std::sqrt(S * (S + 1.0) - m * (m - 1.0));
    }
    return l;
}

} // namespace

void apply_hamiltonian_terms(const MomentumSectorBasis& basis, const QuantumParams& params,
                             std::uint64_t code,
                             std::vector<std::pair<std::uint64_t, std::complex<double>>>& out) {
    out.clear();
    const int L = basis.L();
    const int d = basis.local_dim();
    const double J = params.bare_J();
    static thread_local Ladders ladders;
    static thread_local double cached_S = -1.0;
    if (cached_S != basis.S()) {
        ladders = make_ladders(basis.S(), d);
        cached_S = basis.S();
    }

    std::vector<std::uint64_t> weight(static_cast<std::size_t>(L));
    std::uint64_t w = 1;
    for (int i = 0; i < L; ++i) {
        weight[static_cast<std::size_t>(i)] = w;
        w *= static_cast<std::uint64_t>(d);
    }

    const auto raise = [&](std::uint64_t base, int site, double& amp) -> std::uint64_t {
        const int cur = static_cast<int>((base / weight[static_cast<std::size_t>(site)]) %
                                         static_cast<std::uint64_t>(d));
        if (cur == 0) { amp = 0.0; return base; }
        amp *= ladders.up[static_cast<std::size_t>(cur)];
        return base - weight[static_cast<std::size_t>(site)];
    };
    const auto lower = [&](std::uint64_t base, int site, double& amp) -> std::uint64_t {
        const int cur = static_cast<int>((base / weight[static_cast<std::size_t>(site)]) %
                                         static_cast<std::uint64_t>(d));
        if (cur == d - 1) { amp = 0.0; return base; }
        amp *= ladders.down[static_cast<std::size_t>(cur)];
        return base + weight[static_cast<std::size_t>(site)];
    };

    // Bond terms: -J Sx Sx - 2J Sy Sy = (J/4)(S+S+ + S-S-) - (3J/4)(S+S- + S-S+).
    for (int i = 0; i < L; ++i) {
        const int j = (i + 1) % L;
        {
            double amp = 0.25 * J;
            std::uint64_t s = raise(code, i, amp);
            if (amp != 0.0) s = raise(s, j, amp);
            if (amp != 0.0) out.emplace_back(s, amp);
        }
        {
            double amp = 0.25 * J;
            std::uint64_t s = lower(code, i, amp);
            if (amp != 0.0) s = lower(s, j, amp);
            if (amp != 0.0) out.emplace_back(s, amp);
        }
        {
            double amp = -0.75 * J;
            std::uint64_t s = raise(code, i, amp);
            if (amp != 0.0) s = lower(s, j, amp);
            if (amp != 0.0) out.emplace_back(s, amp);
        }
        {
            double amp = -0.75 * J;
            std::uint64_t s = lower(code, i, amp);
            if (amp != 0.0) s = raise(s, j, amp);
            if (amp != 0.0) out.emplace_back(s, amp);
        }
    }

    // Field terms: h (Sx + Sy) = h (1 - i)/2 S+ + h (1 + i)/2 S-.
    const std::complex<double> cp = params.h * std::complex<double>(0.5, -0.5);
    const std::complex<double> cm = params.h * std::complex<double>(0.5, 0.5);
    for (int i = 0; i < L; ++i) {
        {
            double amp = 1.0;
            const std::uint64_t s = raise(code, i, amp);
            if (amp != 0.0) out.emplace_back(s, cp * amp);
        }
        {
            double amp = 1.0;
            const std::uint64_t s = lower(code, i, amp);
            if (amp != 0.0) out.emplace_back(s, cm * amp);
        }
    }
}

arma::cx_mat build_sector_hamiltonian(const MomentumSectorBasis& basis,
                                      const QuantumParams& params, int max_sector_dim) {
    const int dim = basis.sector_dim();
    if (dim > max_sector_dim)
        throw DimensionError("sector dimension " + std::to_string(dim) +
                             " exceeds the guard of " + std::to_string(max_sector_dim));

    arma::cx_mat H(dim, dim, arma::fill::zeros);
    std::vector<std::pair<std::uint64_t, std::complex<double>>> reached;
    for (int b = 0; b < dim; ++b) {
        const std::uint64_t rep = basis.representatives()[static_cast<std::size_t>(b)];
        const double Rb = static_cast<double>(basis.orbit_size(b));
        apply_hamiltonian_terms(basis, params, rep, reached);
        for (const auto& [code, amp] : reached) {
            const int a = basis.index_of_code(code);
            const double Ra = static_cast<double>(basis.orbit_size(a));
            H(a, b) += amp * std::sqrt(Rb / Ra);
        }
    }
    // Numerical symmetrization; the construction is Hermitian up to rounding.
    return 0.5 * (H + H.t());
}

arma::sp_cx_mat build_full_hamiltonian(const MomentumSectorBasis& basis,
                                       const QuantumParams& params) {
    const std::uint64_t dim = basis.full_dim();
    std::vector<std::pair<std::uint64_t, std::complex<double>>> reached;

    arma::umat locations(2, 0);
    arma::cx_vec values;
    std::vector<arma::uword> rows, cols;
    std::vector<std::complex<double>> vals;
    for (std::uint64_t b = 0; b < dim; ++b) {
        apply_hamiltonian_terms(basis, params, b, reached);
        for (const auto& [code, amp] : reached) {
            rows.push_back(static_cast<arma::uword>(code));
            cols.push_back(static_cast<arma::uword>(b));
            vals.push_back(amp);
        }
    }
    locations.set_size(2, vals.size());
    values.set_size(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        locations(0, i) = rows[i];
        locations(1, i) = cols[i];
        values(i) = vals[i];
    }
    return arma::sp_cx_mat(true, locations, values, dim, dim);
}

arma::cx_mat build_parity_block_hamiltonian(const MomentumSectorBasis& basis,
                                            const QuantumParams& params, bool even) {
    const arma::cx_mat H = build_sector_hamiltonian(basis, params);
    const auto blocks = parity_blocks(basis);
    const auto& elems = even ? blocks.even : blocks.odd;
    const int n = static_cast<int>(elems.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Columns of the parity-adapted combinations in the sector basis.
    arma::cx_mat U(basis.sector_dim(), n, arma::fill::zeros);
    for (int p = 0; p < n; ++p) {
        const auto& e = elems[static_cast<std::size_t>(p)];
        if (e.second < 0) {
            U(e.first, p) = 1.0;
        } else {
            U(e.first, p) = inv_sqrt2;
            U(e.second, p) = even ? inv_sqrt2 : -inv_sqrt2;
        }
    }
    return U.t() * H * U;
}

EigenDecomposition diagonalize(const arma::cx_mat& hamiltonian) {
    EigenDecomposition ed;
    if (!arma::eig_sym(ed.energies, ed.vectors, hamiltonian, "dc"))
        throw std::runtime_error("dense Hermitian diagonalization failed");
    return ed;
}

} // namespace spinchaos::quantum
