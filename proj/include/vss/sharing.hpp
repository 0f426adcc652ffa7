// sharing.hpp - Shamir and KGH secret sharing plus the round combiners
#ifndef VSS_SHARING_HPP
#define VSS_SHARING_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "vss/access.hpp"
#include "vss/bits.hpp"
#include "vss/field.hpp"
#include "vss/rng.hpp"

namespace vss {

// Raised when a recovery attempt holds fewer shares than the scheme needs.
struct InsufficientSharesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One participant's secret part before any control part is attached.
struct PlainShare {
    ParticipantId owner = 0;
    BitVector secret_part;

    bool operator==(const PlainShare&) const = default;
};

// t-of-n Shamir sharing over GF(p) with evaluation points x_i = i.
// Share values are carried as width-l bit vectors, l = ceil(log2 p),
// so XOR combiners apply to them directly.
struct ShamirInstance {
    std::uint32_t p = 0;
    int t = 0;
    int n = 0;
    int l = 0;

    ShamirInstance(std::uint32_t prime, int threshold, int participants)
        : p(prime), t(threshold), n(participants) {
        detail_check();
        l = std::bit_width(p - 1);
    }

private:
    void detail_check() const {
        (void)FieldElement(0, p);  // validates primality and the p < 2^31 bound
        if (t < 1 || t > n) throw std::invalid_argument("ShamirInstance: need 1 <= t <= n");
        if (static_cast<std::uint64_t>(n) >= p)
            throw std::invalid_argument(
                "ShamirInstance: evaluation points exhausted (need n < p)");
    }
};

// n-of-n XOR sharing of a width-l secret.
struct KghInstance {
    int n = 0;
    int l = 0;

    KghInstance(int participants, int width) : n(participants), l(width) {
        if (n < 1) throw std::invalid_argument("KghInstance: need n >= 1");
        if (l < 1) throw std::invalid_argument("KghInstance: need l >= 1");
    }
};

using SchemeInstance = std::variant<ShamirInstance, KghInstance>;

inline int scheme_l(const SchemeInstance& scheme) {
    return std::visit([](const auto& s) { return s.l; }, scheme);
}
inline int scheme_n(const SchemeInstance& scheme) {
    return std::visit([](const auto& s) { return s.n; }, scheme);
}
// Minimum number of shares a recovery needs: t for Shamir, n for KGH.
inline int scheme_recovery_size(const SchemeInstance& scheme) {
    if (const auto* sh = std::get_if<ShamirInstance>(&scheme)) return sh->t;
    return std::get<KghInstance>(scheme).n;
}

// Shares of P_1..P_n from an explicit coefficient list: the polynomial is
// g(x) = secret + coeffs[0] x + coeffs[1] x^2 + ..., and P_i holds g(i).
inline std::vector<PlainShare> shamir_deal(std::uint32_t secret, const ShamirInstance& inst,
                                           std::span<const std::uint32_t> coefficients) {
    if (secret >= inst.p) throw std::invalid_argument("shamir_deal: secret not below p");
    if (coefficients.size() != static_cast<std::size_t>(inst.t - 1))
        throw std::invalid_argument("shamir_deal: need exactly t-1 coefficients");
    std::vector<FieldElement> poly;
    poly.emplace_back(secret, inst.p);
    for (std::uint32_t c : coefficients) {
        if (c >= inst.p) throw std::invalid_argument("shamir_deal: coefficient not below p");
        poly.emplace_back(c, inst.p);
    }
    std::vector<PlainShare> out;
    out.reserve(static_cast<std::size_t>(inst.n));
    for (int i = 1; i <= inst.n; ++i) {
        FieldElement y = gfp_eval_poly(poly, FieldElement(static_cast<std::uint32_t>(i), inst.p));
        out.push_back({i, to_bits(y.value(), static_cast<std::size_t>(inst.l))});
    }
    return out;
}

inline std::vector<PlainShare> shamir_deal(std::uint32_t secret, const ShamirInstance& inst,
                                           RandomSource& rng) {
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(inst.t - 1));
    for (std::uint32_t& c : coeffs) c = rng.field_value(inst.p);
    return shamir_deal(secret, inst, coeffs);
}

// Lagrange interpolation at x = 0 over the first t points in ascending owner
// order. Owners are the evaluation points.
inline FieldElement shamir_reconstruct(std::span<const PlainShare> points,
                                       const ShamirInstance& inst) {
    if (points.size() < static_cast<std::size_t>(inst.t))
        throw InsufficientSharesError("shamir_reconstruct: fewer than t shares");
    std::vector<PlainShare> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
              [](const PlainShare& a, const PlainShare& b) { return a.owner < b.owner; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].owner == pts[i - 1].owner)
            throw std::invalid_argument("shamir_reconstruct: duplicate participant id");
    pts.resize(static_cast<std::size_t>(inst.t));

    FieldElement acc(0, inst.p);
    for (const PlainShare& pi : pts) {
        FieldElement xi(static_cast<std::uint32_t>(pi.owner), inst.p);
        FieldElement term(from_bits(pi.secret_part), inst.p);
        for (const PlainShare& pk : pts) {
            if (pk.owner == pi.owner) continue;
            FieldElement xk(static_cast<std::uint32_t>(pk.owner), inst.p);
            term = term * xk / (xk - xi);
        }
        acc = acc + term;
    }
    return acc;
}

// XOR sharing: the first n-1 shares are random, the last closes the fold so
// the XOR of all n shares is the secret.
inline std::vector<PlainShare> kgh_deal(const BitVector& secret, const KghInstance& inst,
                                        RandomSource& rng) {
    if (static_cast<int>(secret.width()) != inst.l)
        throw std::invalid_argument("kgh_deal: secret width != l");
    std::vector<PlainShare> out;
    out.reserve(static_cast<std::size_t>(inst.n));
    BitVector fold = secret;
    for (int i = 1; i < inst.n; ++i) {
        BitVector part = rng.bits(secret.width());
        fold ^= part;
        out.push_back({i, std::move(part)});
    }
    out.push_back({inst.n, std::move(fold)});
    return out;
}

inline BitVector kgh_reconstruct(std::span<const PlainShare> shares, const KghInstance& inst) {
    if (shares.size() < static_cast<std::size_t>(inst.n))
        throw InsufficientSharesError("kgh_reconstruct: KGH needs all n shares");
    std::vector<BitVector> parts;
    parts.reserve(shares.size());
    std::vector<ParticipantId> seen;
    for (const PlainShare& s : shares) {
        seen.push_back(s.owner);
        parts.push_back(s.secret_part);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("kgh_reconstruct: duplicate participant id");
    return xor_combine(parts);
}

// Round combiner: C0/C1/C2 of the protocol. The XOR combiner folds any
// equal-width parts; the Lagrange combiner reconstructs over GF(p) and
// re-encodes the result at width l.
struct Combiner {
    enum class Kind { xor_fold, shamir_lagrange };

    Kind kind = Kind::xor_fold;
    std::optional<ShamirInstance> shamir;  // present iff kind == shamir_lagrange

    static Combiner xor_fold() { return Combiner{}; }
    static Combiner lagrange(const ShamirInstance& inst) {
        Combiner c;
        c.kind = Kind::shamir_lagrange;
        c.shamir = inst;
        return c;
    }
};

inline BitVector combine(const Combiner& c, std::span<const PlainShare> parts) {
    if (parts.empty()) throw std::invalid_argument("combine: empty input");
    if (c.kind == Combiner::Kind::xor_fold) {
        std::vector<BitVector> vs;
        vs.reserve(parts.size());
        for (const PlainShare& p : parts) vs.push_back(p.secret_part);
        return xor_combine(vs);
    }
    if (!c.shamir) throw std::invalid_argument("combine: lagrange combiner missing instance");
    FieldElement secret = shamir_reconstruct(parts, *c.shamir);
    return to_bits(secret.value(), static_cast<std::size_t>(c.shamir->l));
}

inline BitVector combine(const Combiner& c, std::initializer_list<PlainShare> parts) {
    return combine(c, std::span<const PlainShare>(parts.begin(), parts.size()));
}

}  // namespace vss

#endif  // VSS_SHARING_HPP
