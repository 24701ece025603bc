#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spinchaos/errors.hpp"

namespace spinchaos::quantum {

/// Product basis of a periodic chain of L spins with local dimension d,
/// encoded as base-d integers: site i (0-based) is digit i, and digit value
/// v corresponds to m = S - v.
///
/// The zero-quasi-momentum sector is spanned by the translation orbits, one
/// normalized symmetric combination per orbit; the representative is the
/// smallest code in its orbit. Every orbit is compatible with k = 0.
class MomentumSectorBasis {
public:
    static MomentumSectorBasis build(double S, int L);

    double S() const { return S_; }
    int L() const { return L_; }
    int local_dim() const { return d_; }
    std::uint64_t full_dim() const { return full_dim_; }
    int sector_dim() const { return static_cast<int>(reps_.size()); }

    const std::vector<std::uint64_t>& representatives() const { return reps_; }
    int orbit_size(int index) const { return orbit_sizes_[static_cast<std::size_t>(index)]; }

    /// Sector index of the orbit containing `code`.
    int index_of_code(std::uint64_t code) const;

    /// One-site translation (site i -> site i+1, cyclic).
    std::uint64_t translate(std::uint64_t code) const;
    /// Spatial reflection (site i -> site L+1-i): digit reversal.
    std::uint64_t reflect(std::uint64_t code) const;
    /// Smallest code in the translation orbit of `code`.
    std::uint64_t orbit_min(std::uint64_t code) const;

    int digit(std::uint64_t code, int site) const {
        for (int i = 0; i < site; ++i) code /= static_cast<std::uint64_t>(d_);
        return static_cast<int>(code % static_cast<std::uint64_t>(d_));
    }
    double m_of_digit(int v) const { return S_ - static_cast<double>(v); }

    /// Total z-projection sum_i m_i of a product state.
    double total_mz(std::uint64_t code) const;

    /// Orbit count predicted by Burnside's lemma; test oracle for sector_dim.
    static std::uint64_t burnside_orbit_count(int local_dim, int L);

private:
    double S_ = 0.5;
    int L_ = 2;
    int d_ = 2;
    std::uint64_t full_dim_ = 0;
    std::vector<std::uint64_t> reps_;
    std::vector<int> orbit_sizes_;
    std::unordered_map<std::uint64_t, int> rep_index_;
};

/// Parity refinement of the zero-momentum sector: the chain Hamiltonian also
/// commutes with spatial reflection, and resolving it is what makes the
/// level-spacing statistics come out GOE-pure.
struct ParityBlocks {
    // Each entry of `even`/`odd` lists sector indices: self-reflective orbits
    // enter `even` alone, reflected pairs enter both blocks as (b, b').
    struct Element {
        int first = 0;
        int second = -1;  // -1 when self-reflective
    };
    std::vector<Element> even;
    std::vector<Element> odd;
};

ParityBlocks parity_blocks(const MomentumSectorBasis& basis);

} // namespace spinchaos::quantum
