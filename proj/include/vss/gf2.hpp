// gf2.hpp - linear systems over GF(2)
#ifndef VSS_GF2_HPP
#define VSS_GF2_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vss/bits.hpp"

namespace vss {

// System of XOR equations: each row is (coefficient mask over the unknowns, rhs bit).
struct Gf2System {
    std::size_t unknown_count = 0;
    std::vector<std::pair<BitVector, int>> rows;

    explicit Gf2System(std::size_t unknowns) : unknown_count(unknowns) {
        if (unknowns == 0) throw std::invalid_argument("Gf2System: need at least one unknown");
    }

    void add_row(BitVector coeffs, int rhs) {
        if (coeffs.width() != unknown_count)
            throw std::invalid_argument("Gf2System: coefficient width != unknown count");
        rows.emplace_back(std::move(coeffs), rhs & 1);
    }
};

// Gauss-Jordan elimination. Returns one satisfying assignment, or nullopt if
// the system is inconsistent.
//
// `pins` optionally gives a preferred value (0/1, or -1 for none) per unknown.
// Pivot columns are chosen among unpinned unknowns first, so a pinned unknown
// stays free whenever the rank allows it and then takes its pinned value;
// unpinned free unknowns default to 0. Every returned assignment is checked
// against the original rows by substitution.
inline std::optional<BitVector> gf2_solve(const Gf2System& sys, std::span<const int> pins = {}) {
    if (!pins.empty() && pins.size() != sys.unknown_count)
        throw std::invalid_argument("gf2_solve: pin list size != unknown count");

    const std::size_t n = sys.unknown_count;
    std::vector<BitVector> mat;
    std::vector<int> rhs;
    mat.reserve(sys.rows.size());
    for (const auto& [coeffs, b] : sys.rows) {
        mat.push_back(coeffs);
        rhs.push_back(b);
    }

    // Column elimination order: unpinned ascending, then pinned ascending.
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t c = 0; c < n; ++c)
        if (pins.empty() || pins[c] < 0) order.push_back(c);
    for (std::size_t c = 0; c < n; ++c)
        if (!pins.empty() && pins[c] >= 0) order.push_back(c);

    std::vector<std::size_t> pivot_col;  // per pivot row
    std::size_t rank = 0;
    for (std::size_t col : order) {
        std::size_t row = rank;
        while (row < mat.size() && mat[row].bit(col) == 0) ++row;
        if (row == mat.size()) continue;
        std::swap(mat[rank], mat[row]);
        std::swap(rhs[rank], rhs[row]);
        for (std::size_t r = 0; r < mat.size(); ++r) {
            if (r != rank && mat[r].bit(col)) {
                mat[r] ^= mat[rank];
                rhs[r] ^= rhs[rank];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (std::size_t r = rank; r < mat.size(); ++r)
        if (rhs[r]) return std::nullopt;  // row reduced to 0 = 1

    BitVector x(n);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t col : pivot_col) is_pivot[col] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c] && !pins.empty() && pins[c] > 0) x.set_bit(c, 1);
    for (std::size_t r = 0; r < rank; ++r) {
        int v = rhs[r];
        for (std::size_t c = 0; c < n; ++c)
            if (c != pivot_col[r] && mat[r].bit(c)) v ^= x.bit(c);
        x.set_bit(pivot_col[r], v);
    }

    for (const auto& [coeffs, b] : sys.rows) {
        int acc = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (coeffs.bit(c)) acc ^= x.bit(c);
        if (acc != b) throw std::logic_error("gf2_solve: substitution check failed");
    }
    return x;
}

}  // namespace vss

#endif  // VSS_GF2_HPP
