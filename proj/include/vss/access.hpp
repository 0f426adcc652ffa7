// access.hpp - authorized sets, verification sets, verification structures
#ifndef VSS_ACCESS_HPP
#define VSS_ACCESS_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vss {

// Participants are numbered 1..n.
using ParticipantId = int;

namespace detail {
inline std::vector<ParticipantId> canonical_members(std::vector<ParticipantId> members) {
    if (members.empty()) throw std::invalid_argument("member set must be nonempty");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("member set has duplicates");
    if (members.front() < 1) throw std::invalid_argument("participant indices start at 1");
    return members;
}

inline bool is_subset(const std::vector<ParticipantId>& a, const std::vector<ParticipantId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// All k-subsets of `pool` in lexicographic order.
inline std::vector<std::vector<ParticipantId>> k_subsets(const std::vector<ParticipantId>& pool,
                                                         std::size_t k) {
    std::vector<std::vector<ParticipantId>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<ParticipantId> sub(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = pool[idx[i]];
        out.push_back(std::move(sub));
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + pool.size() - k) break;
            if (i == 0) return out;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

// A participant subset entitled to recover the secret.
struct AuthorizedSet {
    std::vector<ParticipantId> members;  // ascending, no duplicates

    explicit AuthorizedSet(std::vector<ParticipantId> m)
        : members(detail::canonical_members(std::move(m))) {}

    bool contains(ParticipantId pid) const {
        return std::binary_search(members.begin(), members.end(), pid);
    }
    std::size_t size() const { return members.size(); }
    bool operator==(const AuthorizedSet&) const = default;
};

// A participant subset whose shares are jointly tested in one round.
// When a parent is recorded, the set is a subset of that authorized set.
struct VerificationSet {
    std::vector<ParticipantId> members;  // ascending, no duplicates
    std::optional<AuthorizedSet> parent;

    explicit VerificationSet(std::vector<ParticipantId> m,
                             std::optional<AuthorizedSet> par = std::nullopt)
        : members(detail::canonical_members(std::move(m))), parent(std::move(par)) {
        if (parent && !detail::is_subset(members, parent->members))
            throw std::invalid_argument("verification set not contained in its parent");
    }

    bool contains(ParticipantId pid) const {
        return std::binary_search(members.begin(), members.end(), pid);
    }
    bool within(const AuthorizedSet& auth) const {
        return detail::is_subset(members, auth.members);
    }
    std::size_t size() const { return members.size(); }
};

// The set of all verification sets for a sharing instance. Member sets are
// deduplicated and kept in lexicographic order so iteration, dealing, and
// serialization are deterministic.
struct VerificationStructure {
    std::vector<VerificationSet> sets;
    int participant_count = 0;
    std::optional<int> verification_size;  // v, when uniform

    VerificationStructure(std::vector<VerificationSet> vsets, int n,
                          std::optional<int> v = std::nullopt)
        : participant_count(n), verification_size(v) {
        if (vsets.empty()) throw std::invalid_argument("verification structure must be nonempty");
        std::sort(vsets.begin(), vsets.end(), [](const auto& a, const auto& b) {
            return a.members < b.members;
        });
        for (auto& vs : vsets) {
            if (vs.members.back() > n)
                throw std::invalid_argument("verification set member past participant count");
            if (v && static_cast<int>(vs.size()) != *v)
                throw std::invalid_argument("verification set size != declared v");
            if (sets.empty() || sets.back().members != vs.members) sets.push_back(std::move(vs));
        }
    }

    std::size_t size() const { return sets.size(); }
};

// All t-subsets of {P_1..P_n}.
inline std::vector<AuthorizedSet> threshold_authorized_sets(int t, int n) {
    if (t < 1 || t > n) throw std::invalid_argument("threshold_authorized_sets: need 1 <= t <= n");
    std::vector<ParticipantId> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    std::vector<AuthorizedSet> out;
    for (auto& sub : detail::k_subsets(pool, static_cast<std::size_t>(t)))
        out.emplace_back(std::move(sub));
    return out;
}

// All v-subsets of an authorized set, each recording that set as parent.
inline std::vector<VerificationSet> verification_sets(const AuthorizedSet& auth, int v) {
    if (v < 1 || v > static_cast<int>(auth.size()))
        throw std::invalid_argument("verification_sets: need 1 <= v <= |authorized set|");
    std::vector<VerificationSet> out;
    for (auto& sub : detail::k_subsets(auth.members, static_cast<std::size_t>(v)))
        out.emplace_back(std::move(sub), auth);
    return out;
}

// Verification structure of a (v,t,n) scheme: the union of the v-subsets of
// every authorized t-subset, deduplicated by member set.
inline VerificationStructure build_vtn_structure(int v, int t, int n) {
    if (!(1 <= v && v <= t && t <= n))
        throw std::invalid_argument("build_vtn_structure: need 1 <= v <= t <= n");
    std::vector<VerificationSet> all;
    for (const AuthorizedSet& auth : threshold_authorized_sets(t, n))
        for (VerificationSet& vs : verification_sets(auth, v)) all.push_back(std::move(vs));
    return VerificationStructure(std::move(all), n, v);
}

// Number of verification sets inside `auth` that contain `pid`; this is the
// round count that compounds a share's validity probability.
inline int rounds_containing(const VerificationStructure& vs, const AuthorizedSet& auth,
                             ParticipantId pid) {
    if (!auth.contains(pid))
        throw std::invalid_argument("rounds_containing: participant not in the authorized set");
    int count = 0;
    for (const VerificationSet& set : vs.sets)
        if (set.within(auth) && set.contains(pid)) ++count;
    return count;
}

}  // namespace vss

#endif  // VSS_ACCESS_HPP
