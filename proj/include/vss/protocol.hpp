// protocol.hpp - the verification protocol over extended shares
#ifndef VSS_PROTOCOL_HPP
#define VSS_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vss/access.hpp"
#include "vss/bits.hpp"
#include "vss/control.hpp"
#include "vss/dealer.hpp"
#include "vss/sharing.hpp"

namespace vss {

// One verification round: R_s and R_c are the combined secret and control
// parts; the round passes iff f(R_s) = R_c. total_r is R_s with R_c appended.
struct RoundResult {
    std::vector<ParticipantId> members;
    BitVector r_s;
    BitVector f_of_rs;
    BitVector r_c;
    BitVector total_r;
    bool pass = false;
};

struct ShareVerdict {
    int rounds_passed = 0;
    double validity_probability = 0.0;
};

// Aggregate of all rounds run for one authorized set. `suspects` is empty
// when every round passed.
struct ProtocolReport {
    std::vector<RoundResult> rounds;
    std::map<ParticipantId, ShareVerdict> per_share;
    bool all_pass = true;
    std::vector<ParticipantId> suspects;
};

// A share seen passing r rounds of an m-bit control is valid with
// probability 1 - 2^(-m*r), treating rounds as independent.
inline double validity_probability(int m, int r) {
    if (m < 1) throw std::invalid_argument("validity_probability: need m >= 1");
    if (r < 0) throw std::invalid_argument("validity_probability: need r >= 0");
    return 1.0 - std::ldexp(1.0, -m * r);
}

inline RoundResult run_round(std::span<const ExtendedShare> shares, const ControlFunction& f,
                             const Combiner& c1, const Combiner& c2) {
    if (shares.empty()) throw std::invalid_argument("run_round: no shares");
    std::vector<PlainShare> secret_parts, control_parts;
    RoundResult out;
    for (const ExtendedShare& s : shares) {
        out.members.push_back(s.owner);
        secret_parts.push_back({s.owner, s.secret_part});
        control_parts.push_back({s.owner, s.control_part});
    }
    std::sort(out.members.begin(), out.members.end());
    if (std::adjacent_find(out.members.begin(), out.members.end()) != out.members.end())
        throw std::invalid_argument("run_round: duplicate share owner");
    out.r_s = combine(c1, secret_parts);
    out.r_c = combine(c2, control_parts);
    out.f_of_rs = f(out.r_s);
    out.total_r = out.r_s.concat(out.r_c);
    out.pass = out.f_of_rs == out.r_c;
    return out;
}

namespace detail {
// Suspect heuristic: participants seen only in failing rounds; if none
// qualify, the intersection of the failing rounds; if that is empty too,
// their union.
inline std::vector<ParticipantId> suspect_set(const std::vector<RoundResult>& rounds) {
    std::map<ParticipantId, std::pair<int, int>> seen;  // pid -> (failed, passed)
    for (const RoundResult& r : rounds)
        for (ParticipantId pid : r.members)
            (r.pass ? seen[pid].second : seen[pid].first)++;

    std::vector<ParticipantId> only_failing;
    for (const auto& [pid, counts] : seen)
        if (counts.first > 0 && counts.second == 0) only_failing.push_back(pid);
    if (!only_failing.empty()) return only_failing;

    std::vector<ParticipantId> acc;
    bool first = true;
    for (const RoundResult& r : rounds) {
        if (r.pass) continue;
        if (first) {
            acc = r.members;
            first = false;
            continue;
        }
        std::vector<ParticipantId> next;
        std::set_intersection(acc.begin(), acc.end(), r.members.begin(), r.members.end(),
                              std::back_inserter(next));
        acc = std::move(next);
    }
    if (!acc.empty()) return acc;

    std::vector<ParticipantId> all;
    for (const RoundResult& r : rounds) {
        if (r.pass) continue;
        std::vector<ParticipantId> merged;
        std::set_union(all.begin(), all.end(), r.members.begin(), r.members.end(),
                       std::back_inserter(merged));
        all = std::move(merged);
    }
    return all;
}
}  // namespace detail

// Runs one round per verification set of `vs` contained in `auth`, in
// canonical order, then aggregates per-share verdicts. A member's round count
// r includes only passed rounds containing it.
inline ProtocolReport run_protocol(const AuthorizedSet& auth, const VerificationStructure& vs,
                                   std::span<const ExtendedShare> shares,
                                   const ControlFunction& f, const Combiner& c1,
                                   const Combiner& c2, const PolicyOverrides& overrides = {}) {
    std::map<ParticipantId, const ExtendedShare*> share_of;
    for (const ExtendedShare& s : shares) {
        if (!share_of.emplace(s.owner, &s).second)
            throw std::invalid_argument("run_protocol: duplicate share owner");
    }
    for (ParticipantId pid : auth.members)
        if (!share_of.count(pid))
            throw std::invalid_argument("run_protocol: missing share for participant " +
                                        std::to_string(pid));

    ProtocolReport report;
    for (const VerificationSet& vsop : vs.sets) {
        if (!vsop.within(auth)) continue;
        detail::ResolvedPolicy pol = detail::resolve_policy(vsop.members, f, c1, c2, overrides);
        std::vector<ExtendedShare> round_shares;
        for (ParticipantId pid : vsop.members) round_shares.push_back(*share_of.at(pid));
        RoundResult round = run_round(round_shares, *pol.f, *pol.c1, *pol.c2);
        report.all_pass = report.all_pass && round.pass;
        report.rounds.push_back(std::move(round));
    }

    for (ParticipantId pid : auth.members) {
        int passed = 0;
        for (const RoundResult& r : report.rounds)
            if (r.pass && std::binary_search(r.members.begin(), r.members.end(), pid)) ++passed;
        report.per_share[pid] = {passed, validity_probability(f.output_width(), passed)};
    }
    if (!report.all_pass) report.suspects = detail::suspect_set(report.rounds);
    return report;
}

// Verification verdict blocked recovery; the report explains which rounds
// failed.
struct VerificationFailed {
    ProtocolReport report;
};

struct RecoverSuccess {
    BitVector secret_bits;
    std::optional<ProtocolReport> report;  // present when verification ran
};

using RecoverOutcome = std::variant<RecoverSuccess, VerificationFailed>;

// Runs the verification protocol (unless told to skip) and then applies the
// scheme's own combiner C0 to the secret parts of `auth`.
inline RecoverOutcome recover_secret(const AuthorizedSet& auth,
                                     std::span<const ExtendedShare> shares,
                                     const SchemeInstance& scheme, bool require_verification,
                                     const VerificationStructure& vs, const ControlFunction& f,
                                     const Combiner& c1, const Combiner& c2,
                                     const PolicyOverrides& overrides = {}) {
    if (static_cast<int>(auth.size()) < scheme_recovery_size(scheme))
        throw InsufficientSharesError("recover_secret: authorized set smaller than the scheme's recovery size");

    std::optional<ProtocolReport> report;
    if (require_verification) {
        report = run_protocol(auth, vs, shares, f, c1, c2, overrides);
        if (!report->all_pass) return VerificationFailed{std::move(*report)};
    }

    std::vector<PlainShare> parts;
    for (const ExtendedShare& s : shares)
        if (auth.contains(s.owner)) parts.push_back({s.owner, s.secret_part});

    if (const auto* shamir = std::get_if<ShamirInstance>(&scheme)) {
        FieldElement secret = shamir_reconstruct(parts, *shamir);
        return RecoverSuccess{to_bits(secret.value(), static_cast<std::size_t>(shamir->l)),
                              std::move(report)};
    }
    const KghInstance& kgh = std::get<KghInstance>(scheme);
    return RecoverSuccess{kgh_reconstruct(parts, kgh), std::move(report)};
}

namespace detail {
inline std::string members_text(const std::vector<ParticipantId>& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(members[i]);
    }
    out += '}';
    return out;
}

inline std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}
}  // namespace detail

// Text form: one `round ...` line per round, one `share ...` line per member,
// and a `suspects ...` line only when some round failed.
inline std::string render_report(const ProtocolReport& report) {
    std::string out;
    for (const RoundResult& r : report.rounds) {
        out += "round " + detail::members_text(r.members) + " Rs=" + r.r_s.str() +
               " f=" + r.f_of_rs.str() + " Rc=" + r.r_c.str() + (r.pass ? " PASS" : " FAIL") +
               "\n";
    }
    for (const auto& [pid, verdict] : report.per_share) {
        out += "share " + std::to_string(pid) + " rounds=" + std::to_string(verdict.rounds_passed) +
               " p=" + detail::fixed6(verdict.validity_probability) + "\n";
    }
    if (!report.all_pass) {
        out += "suspects";
        for (ParticipantId pid : report.suspects) out += " " + std::to_string(pid);
        out += "\n";
    }
    return out;
}

}  // namespace vss

#endif  // VSS_PROTOCOL_HPP
