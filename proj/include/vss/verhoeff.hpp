// verhoeff.hpp - Verhoeff check digits over the dihedral group D5
#ifndef VSS_VERHOEFF_HPP
#define VSS_VERHOEFF_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "vss/bits.hpp"

namespace vss {
namespace verhoeff_detail {

// Cayley table of D5: rotations 0-4, reflections 5-9.
inline constexpr std::array<std::array<int, 10>, 10> d_table = {{
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
    {1, 2, 3, 4, 0, 6, 7, 8, 9, 5},
    {2, 3, 4, 0, 1, 7, 8, 9, 5, 6},
    {3, 4, 0, 1, 2, 8, 9, 5, 6, 7},
    {4, 0, 1, 2, 3, 9, 5, 6, 7, 8},
    {5, 9, 8, 7, 6, 0, 4, 3, 2, 1},
    {6, 5, 9, 8, 7, 1, 0, 4, 3, 2},
    {7, 6, 5, 9, 8, 2, 1, 0, 4, 3},
    {8, 7, 6, 5, 9, 3, 2, 1, 0, 4},
    {9, 8, 7, 6, 5, 4, 3, 2, 1, 0},
}};

// Group inverses: inv[j] is the k with d[j][k] = 0.
inline constexpr std::array<int, 10> inv_table = {0, 4, 3, 2, 1, 5, 6, 7, 8, 9};

// Position permutation; row i is the i-th iterate of row 1.
inline constexpr std::array<std::array<int, 10>, 8> perm_table = {{
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
    {1, 5, 7, 6, 2, 8, 3, 0, 9, 4},
    {5, 8, 0, 3, 7, 9, 6, 1, 4, 2},
    {8, 9, 1, 6, 0, 4, 3, 5, 2, 7},
    {9, 4, 5, 3, 1, 2, 6, 8, 7, 0},
    {4, 2, 8, 6, 5, 7, 3, 9, 0, 1},
    {2, 7, 9, 3, 8, 0, 6, 4, 1, 5},
    {7, 0, 4, 6, 9, 1, 3, 2, 5, 8},
}};

inline void check_digit_range(std::span<const int> digits) {
    for (int d : digits)
        if (d < 0 || d > 9) throw std::invalid_argument("verhoeff: digit out of [0,9]");
}

}  // namespace verhoeff_detail

// Check digit for a digit string (leftmost digit first): fold the D5 product
// over position-permuted digits right to left, starting at position 1 so the
// check digit itself will sit at position 0, then invert the fold.
inline int verhoeff_check_digit(std::span<const int> digits) {
    verhoeff_detail::check_digit_range(digits);
    int c = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        int digit = digits[digits.size() - 1 - k];
        c = verhoeff_detail::d_table[c][verhoeff_detail::perm_table[(k + 1) % 8][digit]];
    }
    return verhoeff_detail::inv_table[c];
}

inline int verhoeff_check_digit(std::initializer_list<int> digits) {
    return verhoeff_check_digit(std::span<const int>(digits.begin(), digits.size()));
}

// Validates a digit string whose last digit is the check digit.
inline bool verhoeff_validate(std::span<const int> digits_with_check) {
    verhoeff_detail::check_digit_range(digits_with_check);
    int c = 0;
    for (std::size_t k = 0; k < digits_with_check.size(); ++k) {
        int digit = digits_with_check[digits_with_check.size() - 1 - k];
        c = verhoeff_detail::d_table[c][verhoeff_detail::perm_table[k % 8][digit]];
    }
    return c == 0;
}

inline bool verhoeff_validate(std::initializer_list<int> digits) {
    return verhoeff_validate(std::span<const int>(digits.begin(), digits.size()));
}

// Decimal expansion, most significant digit first; 0 expands to {0}.
inline std::vector<int> decimal_digits(std::uint64_t value) {
    std::vector<int> out;
    do {
        out.push_back(static_cast<int>(value % 10));
        value /= 10;
    } while (value != 0);
    return {out.rbegin(), out.rend()};
}

// Control adapter: read x as the decimal digit string of its integer value,
// compute the check digit, return its low m bits MSB-first. A decimal digit
// needs at most 4 bits, hence m <= 4.
inline BitVector verhoeff_control(const BitVector& x, int m) {
    if (m < 1 || m > 4) throw std::invalid_argument("verhoeff_control: need 1 <= m <= 4");
    std::vector<int> digits = decimal_digits(from_bits(x));
    int check = verhoeff_check_digit(digits);
    return to_bits(static_cast<std::uint64_t>(check) & ((1u << m) - 1),
                   static_cast<std::size_t>(m));
}

}  // namespace vss

#endif  // VSS_VERHOEFF_HPP
