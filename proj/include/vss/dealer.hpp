// dealer.hpp - extends plain shares with control parts
#ifndef VSS_DEALER_HPP
#define VSS_DEALER_HPP

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vss/access.hpp"
#include "vss/bits.hpp"
#include "vss/control.hpp"
#include "vss/gf2.hpp"
#include "vss/sharing.hpp"

namespace vss {

// s'_i: the secret part with the control part appended.
struct ExtendedShare {
    ParticipantId owner = 0;
    BitVector secret_part;
    BitVector control_part;

    BitVector payload() const { return secret_part.concat(control_part); }

    bool operator==(const ExtendedShare&) const = default;
};

inline BitVector append_control(const BitVector& s, const BitVector& c) { return s.concat(c); }

inline std::pair<BitVector, BitVector> split_extended(const BitVector& payload, int l, int m) {
    if (payload.width() != static_cast<std::size_t>(l) + static_cast<std::size_t>(m))
        throw std::invalid_argument("split_extended: payload width != l+m");
    return payload.split(static_cast<std::size_t>(l));
}

// direct: c_i = f(s_i) per share. constrained: solve the GF(2) system that
// makes every verification round consistent, pinning free unknowns to the
// direct values.
enum class DealingStrategy { direct, constrained };

inline const char* strategy_name(DealingStrategy s) {
    return s == DealingStrategy::direct ? "direct" : "constrained";
}

// Per-round combiner/control choice for one verification set, overriding the
// instance-wide triple. The dealer and the verifier must share one map.
struct RoundPolicy {
    ControlFunction f;
    Combiner c1;
    Combiner c2;
};

using PolicyOverrides = std::map<std::vector<ParticipantId>, RoundPolicy>;

// Constraint system unsatisfiable: no control assignment makes every listed
// verification set consistent. `conflicting` is minimal by inclusion.
struct DealFailure {
    std::vector<std::vector<ParticipantId>> conflicting;

    std::string message() const {
        std::string out = "dealing inconsistent; conflicting verification sets:";
        for (const auto& members : conflicting) {
            out += " {";
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(members[i]);
            }
            out += '}';
        }
        return out;
    }
};

using DealOutcome = std::variant<std::vector<ExtendedShare>, DealFailure>;

namespace detail {

struct ResolvedPolicy {
    const ControlFunction* f;
    const Combiner* c1;
    const Combiner* c2;
};

inline ResolvedPolicy resolve_policy(const std::vector<ParticipantId>& members,
                                     const ControlFunction& f, const Combiner& c1,
                                     const Combiner& c2, const PolicyOverrides& overrides) {
    auto it = overrides.find(members);
    if (it == overrides.end()) return {&f, &c1, &c2};
    return {&it->second.f, &it->second.c1, &it->second.c2};
}

// Constraint rows of one verification set: per output bit b,
// xor of c_i[b] over the members = f(C1-combined secret parts)[b].
inline void add_vsop_rows(Gf2System& sys, const VerificationSet& vsop,
                          const std::map<ParticipantId, std::size_t>& slot_of,
                          const std::vector<PlainShare>& shares, const ResolvedPolicy& pol,
                          int m) {
    std::vector<PlainShare> parts;
    parts.reserve(vsop.members.size());
    for (ParticipantId pid : vsop.members) parts.push_back(shares[slot_of.at(pid)]);
    BitVector target = (*pol.f)(combine(*pol.c1, parts));
    for (int b = 0; b < m; ++b) {
        BitVector coeffs(sys.unknown_count);
        for (ParticipantId pid : vsop.members)
            coeffs.set_bit(slot_of.at(pid) * static_cast<std::size_t>(m) +
                               static_cast<std::size_t>(b),
                           1);
        sys.add_row(std::move(coeffs), target.bit(static_cast<std::size_t>(b)));
    }
}

}  // namespace detail

// Attaches control parts to the given shares so that, for the constrained
// strategy, f(R_s) = R_c holds in every verification set of `vs`.
inline DealOutcome assign_controls(std::span<const PlainShare> input_shares,
                                   const VerificationStructure& vs, const ControlFunction& f,
                                   const Combiner& c1, const Combiner& c2,
                                   DealingStrategy strategy,
                                   const PolicyOverrides& overrides = {}) {
    std::vector<PlainShare> shares(input_shares.begin(), input_shares.end());
    if (shares.empty()) throw std::invalid_argument("assign_controls: no shares");
    std::sort(shares.begin(), shares.end(),
              [](const PlainShare& a, const PlainShare& b) { return a.owner < b.owner; });
    std::map<ParticipantId, std::size_t> slot_of;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (!slot_of.emplace(shares[i].owner, i).second)
            throw std::invalid_argument("assign_controls: duplicate share owner");
        if (shares[i].secret_part.width() != static_cast<std::size_t>(f.input_width()))
            throw std::invalid_argument("assign_controls: share width != f input width");
    }
    for (const VerificationSet& vsop : vs.sets)
        for (ParticipantId pid : vsop.members)
            if (!slot_of.count(pid))
                throw std::invalid_argument("assign_controls: no share for participant " +
                                            std::to_string(pid));
    const int m = f.output_width();

    std::vector<BitVector> direct_controls;
    direct_controls.reserve(shares.size());
    for (const PlainShare& s : shares) direct_controls.push_back(f(s.secret_part));

    auto package = [&](const std::vector<BitVector>& controls) {
        std::vector<ExtendedShare> out;
        out.reserve(shares.size());
        for (std::size_t i = 0; i < shares.size(); ++i)
            out.push_back({shares[i].owner, shares[i].secret_part, controls[i]});
        return out;
    };

    if (strategy == DealingStrategy::direct) return package(direct_controls);

    std::vector<detail::ResolvedPolicy> policies;
    policies.reserve(vs.sets.size());
    for (const VerificationSet& vsop : vs.sets) {
        detail::ResolvedPolicy pol = detail::resolve_policy(vsop.members, f, c1, c2, overrides);
        if (pol.c2->kind != Combiner::Kind::xor_fold)
            throw std::invalid_argument(
                "assign_controls: constrained dealing requires XOR control combiners");
        if (pol.f->output_width() != m || pol.f->input_width() != f.input_width())
            throw std::invalid_argument("assign_controls: override control widths differ");
        policies.push_back(pol);
    }

    const std::size_t unknowns = shares.size() * static_cast<std::size_t>(m);
    auto build_system = [&](const std::vector<std::size_t>& vsop_indices) {
        Gf2System sys(unknowns);
        for (std::size_t idx : vsop_indices)
            detail::add_vsop_rows(sys, vs.sets[idx], slot_of, shares, policies[idx], m);
        return sys;
    };

    std::vector<std::size_t> all_indices(vs.sets.size());
    for (std::size_t i = 0; i < all_indices.size(); ++i) all_indices[i] = i;

    std::vector<int> pins(unknowns);
    for (std::size_t i = 0; i < shares.size(); ++i)
        for (int b = 0; b < m; ++b)
            pins[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)] =
                direct_controls[i].bit(static_cast<std::size_t>(b));

    std::optional<BitVector> solution = gf2_solve(build_system(all_indices), pins);
    if (!solution) {
        // Greedy minimal conflicting subset: drop a set whenever the rest
        // stays inconsistent without it.
        std::vector<std::size_t> kept = all_indices;
        for (std::size_t probe = 0; probe < vs.sets.size(); ++probe) {
            std::vector<std::size_t> trial;
            for (std::size_t idx : kept)
                if (idx != probe) trial.push_back(idx);
            if (trial.size() < kept.size() && !gf2_solve(build_system(trial))) kept = trial;
        }
        DealFailure failure;
        for (std::size_t idx : kept) failure.conflicting.push_back(vs.sets[idx].members);
        return failure;
    }

    std::vector<BitVector> controls;
    controls.reserve(shares.size());
    for (std::size_t i = 0; i < shares.size(); ++i) {
        BitVector c(static_cast<std::size_t>(m));
        for (int b = 0; b < m; ++b)
            c.set_bit(static_cast<std::size_t>(b),
                      solution->bit(i * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)));
        controls.push_back(std::move(c));
    }

    // Construction soundness: every verification set must now satisfy
    // f(R_s) = R_c exactly.
    for (std::size_t idx = 0; idx < vs.sets.size(); ++idx) {
        const VerificationSet& vsop = vs.sets[idx];
        std::vector<PlainShare> secret_parts, control_parts;
        for (ParticipantId pid : vsop.members) {
            secret_parts.push_back(shares[slot_of.at(pid)]);
            control_parts.push_back({pid, controls[slot_of.at(pid)]});
        }
        BitVector want = (*policies[idx].f)(combine(*policies[idx].c1, secret_parts));
        BitVector got = combine(*policies[idx].c2, control_parts);
        if (want != got) throw std::logic_error("assign_controls: round check failed after solve");
    }
    return package(controls);
}

}  // namespace vss

#endif  // VSS_DEALER_HPP
