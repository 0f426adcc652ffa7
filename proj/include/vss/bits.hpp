// bits.hpp - fixed-width bit vectors, MSB-first everywhere
#ifndef VSS_BITS_HPP
#define VSS_BITS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vss {

// Ordered sequence of bits with a fixed width. Index 0 is the most
// significant bit; rendering and parsing are MSB-first, so the value 15
// at width 5 reads "01111". All combining operations require equal widths.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t width) : bits_(width, 0) {}

    static BitVector parse(std::string_view text) {
        BitVector v(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '0') continue;
            if (text[i] != '1') throw std::invalid_argument("BitVector::parse: expected only '0'/'1'");
            v.bits_[i] = 1;
        }
        return v;
    }

    std::size_t width() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    int bit(std::size_t i) const {
        if (i >= bits_.size()) throw std::out_of_range("BitVector::bit: index past width");
        return bits_[i];
    }

    void set_bit(std::size_t i, int value) {
        if (i >= bits_.size()) throw std::out_of_range("BitVector::set_bit: index past width");
        bits_[i] = value & 1;
    }

    void flip_bit(std::size_t i) {
        if (i >= bits_.size()) throw std::out_of_range("BitVector::flip_bit: index past width");
        bits_[i] ^= 1;
    }

    BitVector operator^(const BitVector& other) const {
        if (width() != other.width())
            throw std::invalid_argument("BitVector: xor of mismatched widths");
        BitVector out(width());
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
        return out;
    }

    BitVector& operator^=(const BitVector& other) { return *this = *this ^ other; }

    // Concatenation: this followed by other (other ends up least significant).
    BitVector concat(const BitVector& other) const {
        BitVector out(width() + other.width());
        std::size_t k = 0;
        for (std::uint8_t b : bits_) out.bits_[k++] = b;
        for (std::uint8_t b : other.bits_) out.bits_[k++] = b;
        return out;
    }

    std::pair<BitVector, BitVector> split(std::size_t left_width) const {
        if (left_width > width())
            throw std::invalid_argument("BitVector::split: left width past total width");
        BitVector left(left_width), right(width() - left_width);
        for (std::size_t i = 0; i < left_width; ++i) left.bits_[i] = bits_[i];
        for (std::size_t i = left_width; i < width(); ++i) right.bits_[i - left_width] = bits_[i];
        return {left, right};
    }

    std::string str() const {
        std::string s(width(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    // MSB-first byte packing; the final byte is zero-padded on the right,
    // so width 5 "01001" packs to the single byte 01001000.
    std::vector<std::uint8_t> pack_bytes() const {
        std::vector<std::uint8_t> out((width() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        return out;
    }

    int popcount() const {
        int c = 0;
        for (std::uint8_t b : bits_) c += b;
        return c;
    }

    bool operator==(const BitVector&) const = default;

private:
    std::vector<std::uint8_t> bits_;  // one bit per entry, index 0 = MSB
};

// MSB-first binary encoding of `value` at exactly `width` bits.
inline BitVector to_bits(std::uint64_t value, std::size_t width) {
    if (width == 0 || width > 64) throw std::invalid_argument("to_bits: width must be in [1,64]");
    if (width < 64 && value >= (std::uint64_t{1} << width))
        throw std::overflow_error("to_bits: value does not fit the requested width");
    BitVector v(width);
    for (std::size_t i = 0; i < width; ++i)
        v.set_bit(i, static_cast<int>((value >> (width - 1 - i)) & 1));
    return v;
}

// Inverse of to_bits. Only defined up to 64 bits.
inline std::uint64_t from_bits(const BitVector& v) {
    if (v.width() > 64) throw std::invalid_argument("from_bits: width past 64 bits");
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < v.width(); ++i) x = (x << 1) | static_cast<std::uint64_t>(v.bit(i));
    return x;
}

// Bitwise XOR fold over a nonempty span of equal-width vectors.
inline BitVector xor_combine(std::span<const BitVector> vs) {
    if (vs.empty()) throw std::invalid_argument("xor_combine: empty input");
    BitVector acc = vs.front();
    for (std::size_t i = 1; i < vs.size(); ++i) acc ^= vs[i];
    return acc;
}

inline BitVector xor_combine(std::initializer_list<BitVector> vs) {
    return xor_combine(std::span<const BitVector>(vs.begin(), vs.size()));
}

}  // namespace vss

#endif  // VSS_BITS_HPP
