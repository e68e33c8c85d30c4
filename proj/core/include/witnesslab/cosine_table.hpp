#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace witnesslab {

/// cos(2*pi*k/q) for k = 0..q-1, with the mirror symmetry k <-> q-k enforced
/// bit-exactly: entries above q/2 are copies of their mirrored partner, so
/// downstream rows built from the table inherit the symmetry exactly.
class CosineTable {
  public:
    explicit CosineTable(std::int64_t q) : q_(q), values_(static_cast<std::size_t>(q)) {
        const double two_pi = 2.0 * std::numbers::pi;
        for (std::int64_t k = 0; k <= q / 2; ++k)
            values_[static_cast<std::size_t>(k)] = std::cos(two_pi * static_cast<double>(k) / static_cast<double>(q));
        for (std::int64_t k = q / 2 + 1; k < q; ++k)
            values_[static_cast<std::size_t>(k)] = values_[static_cast<std::size_t>(q - k)];
    }

    std::int64_t q() const { return q_; }

    /// cos(2*pi*k/q), k already reduced to [0, q).
    double operator[](std::int64_t k) const { return values_[static_cast<std::size_t>(k)]; }

    /// cos(2*pi*(a*b)/q) for a, b in [0, q).
    double at_product(std::int64_t a, std::int64_t b) const {
        return values_[static_cast<std::size_t>(static_cast<__int128>(a) * b % q_)];
    }

  private:
    std::int64_t q_;
    std::vector<double> values_;
};

}  // namespace witnesslab
