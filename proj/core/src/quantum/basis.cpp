#include "spinchaos/quantum/basis.hpp"

#include <cmath>
#include <numeric>

namespace spinchaos::quantum {

MomentumSectorBasis MomentumSectorBasis::build(double S, int L) {
    const double twoS = 2.0 * S;
    if (!(S > 0.0) || std::abs(twoS - std::lround(twoS)) > 1e-12)
        throw InvalidParameterError("spin S must satisfy 2S integer >= 1");
    if (L < 2) throw InvalidParameterError("chain length must satisfy L >= 2");

    MomentumSectorBasis b;
    b.S_ = S;
    b.L_ = L;
    b.d_ = static_cast<int>(std::lround(twoS)) + 1;
    b.full_dim_ = 1;
    for (int i = 0; i < L; ++i) b.full_dim_ *= static_cast<std::uint64_t>(b.d_);

    for (std::uint64_t code = 0; code < b.full_dim_; ++code) {
        // Representative = smallest code in the orbit; count the orbit size.
        std::uint64_t rot = code;
        bool is_rep = true;
        int period = 0;
        for (int t = 1; t <= L; ++t) {
            rot = b.translate(rot);
            if (rot < code) { is_rep = false; break; }
            if (rot == code) { period = t; break; }
        }
        if (!is_rep) continue;
        b.rep_index_.emplace(code, static_cast<int>(b.reps_.size()));
        b.reps_.push_back(code);
        b.orbit_sizes_.push_back(period);
    }
    return b;
}

std::uint64_t MomentumSectorBasis::translate(std::uint64_t code) const {
    std::uint64_t top_weight = 1;
    for (int i = 0; i < L_ - 1; ++i) top_weight *= static_cast<std::uint64_t>(d_);
    const std::uint64_t top = code / top_weight;
    return (code % top_weight) * static_cast<std::uint64_t>(d_) + top;
}

std::uint64_t MomentumSectorBasis::reflect(std::uint64_t code) const {
    std::uint64_t out = 0;
    for (int i = 0; i < L_; ++i) {
        out = out * static_cast<std::uint64_t>(d_) + code % static_cast<std::uint64_t>(d_);
        code /= static_cast<std::uint64_t>(d_);
    }
    return out;
}

std::uint64_t MomentumSectorBasis::orbit_min(std::uint64_t code) const {
    std::uint64_t best = code;
    std::uint64_t rot = code;
    for (int t = 1; t < L_; ++t) {
        rot = translate(rot);
        if (rot < best) best = rot;
    }
    return best;
}

int MomentumSectorBasis::index_of_code(std::uint64_t code) const {
    const auto it = rep_index_.find(orbit_min(code));
    if (it == rep_index_.end())
        throw DimensionError("code outside the basis");
    return it->second;
}

double MomentumSectorBasis::total_mz(std::uint64_t code) const {
    double mz = 0.0;
    for (int i = 0; i < L_; ++i) {
        mz += m_of_digit(static_cast<int>(code % static_cast<std::uint64_t>(d_)));
        code /= static_cast<std::uint64_t>(d_);
    }
    return mz;
}

std::uint64_t MomentumSectorBasis::burnside_orbit_count(int local_dim, int L) {
    std::uint64_t total = 0;
    for (int j = 0; j < L; ++j) {
        const int g = std::gcd(j, L);
        std::uint64_t fixed = 1;
        for (int i = 0; i < g; ++i) fixed *= static_cast<std::uint64_t>(local_dim);
        total += fixed;
    }
    return total / static_cast<std::uint64_t>(L);
}

ParityBlocks parity_blocks(const MomentumSectorBasis& basis) {
    ParityBlocks blocks;
    std::vector<bool> done(static_cast<std::size_t>(basis.sector_dim()), false);
    for (int b = 0; b < basis.sector_dim(); ++b) {
        if (done[static_cast<std::size_t>(b)]) continue;
        const std::uint64_t rep = basis.representatives()[static_cast<std::size_t>(b)];
        const int partner = basis.index_of_code(basis.reflect(rep));
        done[static_cast<std::size_t>(b)] = true;
        if (partner == b) {
            blocks.even.push_back({b, -1});
        } else {
            done[static_cast<std::size_t>(partner)] = true;
            blocks.even.push_back({b, partner});
            blocks.odd.push_back({b, partner});
        }
    }
    return blocks;
}

} // namespace spinchaos::quantum
