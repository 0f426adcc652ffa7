// field.hpp - arithmetic in GF(p) for small primes
#ifndef VSS_FIELD_HPP
#define VSS_FIELD_HPP

#include <cstdint>
#include <mutex>
#include <set>
#include <span>
#include <stdexcept>

namespace vss {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace detail {
// Trial division once per distinct modulus; later constructions hit the cache.
inline void require_prime_modulus(std::uint32_t p) {
    static std::mutex mu;
    static std::set<std::uint32_t> verified;
    {
        std::scoped_lock lock(mu);
        if (verified.count(p)) return;
    }
    if (p >= (std::uint32_t{1} << 31))
        throw std::invalid_argument("field modulus must be below 2^31");
    if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime");
    std::scoped_lock lock(mu);
    verified.insert(p);
}
}  // namespace detail

// Residue mod a prime p < 2^31. Products of two residues fit in 64 bits,
// so all arithmetic reduces eagerly with no wider intermediates needed.
class FieldElement {
public:
    FieldElement(std::uint64_t value, std::uint32_t modulus) {
        detail::require_prime_modulus(modulus);
        p_ = modulus;
        v_ = static_cast<std::uint32_t>(value % modulus);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        return raw((std::uint64_t{v_} + o.v_) % p_, p_);
    }
    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        return raw((std::uint64_t{v_} + p_ - o.v_) % p_, p_);
    }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        return raw(std::uint64_t{v_} * o.v_ % p_, p_);
    }

    FieldElement pow(std::uint64_t e) const {
        std::uint64_t base = v_, acc = 1;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return raw(acc, p_);
    }

    // Fermat inverse; p is prime so a^(p-2) inverts any nonzero a.
    FieldElement inverse() const {
        if (v_ == 0) throw std::domain_error("FieldElement: inverse of zero");
        return pow(p_ - 2);
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    bool operator==(const FieldElement&) const = default;

private:
    static FieldElement raw(std::uint64_t v, std::uint32_t p) {
        FieldElement e;
        e.v_ = static_cast<std::uint32_t>(v);
        e.p_ = p;
        return e;
    }
    FieldElement() : v_(0), p_(2) {}
    void check_same(const FieldElement& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FieldElement: modulus mismatch");
    }

    std::uint32_t v_;
    std::uint32_t p_;
};

// Horner evaluation of sum coeffs[j] * x^j. Coefficients in ascending degree.
inline FieldElement gfp_eval_poly(std::span<const FieldElement> coeffs, const FieldElement& x) {
    if (coeffs.empty()) return FieldElement(0, x.modulus());
    for (const FieldElement& c : coeffs)
        if (c.modulus() != x.modulus())
            throw std::invalid_argument("gfp_eval_poly: modulus mismatch");
    FieldElement acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace vss

#endif  // VSS_FIELD_HPP
