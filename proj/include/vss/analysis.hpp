// analysis.hpp - Monte-Carlo tamper injection against the analytic detection rate
#ifndef VSS_ANALYSIS_HPP
#define VSS_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
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
#include "vss/protocol.hpp"
#include "vss/rng.hpp"
#include "vss/sharing.hpp"

namespace vss {

enum class TamperKind { flip_random_bit, replace_random_share, identity };
enum class TamperTarget { secret_part, control_part, either };

struct TamperModel {
    TamperKind kind = TamperKind::replace_random_share;
    TamperTarget target = TamperTarget::either;
    std::vector<ParticipantId> victims;
};

struct DetectionEstimate {
    int m = 0;
    int trials = 0;
    int detected = 0;
    double rate = 0.0;
    double analytic = 0.0;
    double abs_error = 0.0;
};

// per_round: run one uniformly random round whose set intersects the victims.
// per_protocol: run every round of one authorized set (requires `auth` and a
// single victim); detection means any round failed.
enum class DetectionScope { per_round, per_protocol };

// Everything one trial needs: scheme, verification structure, control
// function, combiners, and dealing strategy. `auth` only matters for the
// per-protocol scope.
struct TrialConfig {
    SchemeInstance scheme;
    VerificationStructure structure;
    ControlFunction f;
    Combiner c1 = Combiner::xor_fold();
    Combiner c2 = Combiner::xor_fold();
    DealingStrategy strategy = DealingStrategy::constrained;
    std::optional<AuthorizedSet> auth;
};

namespace detail {

// Deals until the control assignment is consistent; the stream keeps
// advancing, so redraws stay deterministic under a fixed trial seed.
inline std::vector<ExtendedShare> deal_until_consistent(const TrialConfig& cfg,
                                                        RandomSource& rng) {
    while (true) {
        std::vector<PlainShare> plain;
        if (const auto* shamir = std::get_if<ShamirInstance>(&cfg.scheme)) {
            std::uint32_t secret = rng.field_value(shamir->p);
            plain = shamir_deal(secret, *shamir, rng);
        } else {
            const KghInstance& kgh = std::get<KghInstance>(cfg.scheme);
            plain = kgh_deal(rng.bits(static_cast<std::size_t>(kgh.l)), kgh, rng);
        }
        DealOutcome outcome =
            assign_controls(plain, cfg.structure, cfg.f, cfg.c1, cfg.c2, cfg.strategy);
        if (auto* shares = std::get_if<std::vector<ExtendedShare>>(&outcome))
            return std::move(*shares);
    }
}

inline void apply_tamper(ExtendedShare& share, const TamperModel& model, int l, int m,
                         RandomSource& rng) {
    BitVector payload = share.payload();
    switch (model.kind) {
        case TamperKind::identity:
            return;
        case TamperKind::flip_random_bit: {
            std::size_t index = 0;
            switch (model.target) {
                case TamperTarget::secret_part:
                    index = rng.below(static_cast<std::uint64_t>(l));
                    break;
                case TamperTarget::control_part:
                    index = static_cast<std::size_t>(l) + rng.below(static_cast<std::uint64_t>(m));
                    break;
                case TamperTarget::either:
                    index = rng.below(static_cast<std::uint64_t>(l + m));
                    break;
            }
            payload.flip_bit(index);
            break;
        }
        case TamperKind::replace_random_share: {
            BitVector replacement = payload;
            while (replacement == payload) replacement = rng.bits(payload.width());
            payload = replacement;
            break;
        }
    }
    auto [s, c] = split_extended(payload, l, m);
    share.secret_part = std::move(s);
    share.control_part = std::move(c);
}

}  // namespace detail

inline DetectionEstimate estimate_detection_rate(const TrialConfig& cfg, const TamperModel& model,
                                                 int trials, std::uint64_t seed,
                                                 DetectionScope scope = DetectionScope::per_round) {
    if (trials < 1) throw std::invalid_argument("estimate_detection_rate: need trials >= 1");
    if (model.kind != TamperKind::identity && model.victims.empty())
        throw std::invalid_argument("estimate_detection_rate: tamper model has no victims");
    const int l = cfg.f.input_width();
    const int m = cfg.f.output_width();

    auto touches_victims = [&](const VerificationSet& vsop) {
        return model.victims.empty() ||
               std::any_of(model.victims.begin(), model.victims.end(),
                           [&](ParticipantId pid) { return vsop.contains(pid); });
    };

    // Eligible rounds, plus the compounding exponent for per-protocol scope.
    std::vector<std::size_t> eligible;
    int analytic_rounds = 1;
    if (scope == DetectionScope::per_round) {
        for (std::size_t i = 0; i < cfg.structure.sets.size(); ++i)
            if (touches_victims(cfg.structure.sets[i])) eligible.push_back(i);
        if (eligible.empty())
            throw std::invalid_argument(
                "estimate_detection_rate: no verification set touches the victims");
    } else {
        if (!cfg.auth)
            throw std::invalid_argument(
                "estimate_detection_rate: per-protocol scope needs an authorized set");
        if (model.victims.size() != 1)
            throw std::invalid_argument(
                "estimate_detection_rate: per-protocol scope needs exactly one victim");
        analytic_rounds = rounds_containing(cfg.structure, *cfg.auth, model.victims.front());
        if (analytic_rounds == 0)
            throw std::invalid_argument(
                "estimate_detection_rate: no verification set touches the victims");
    }

    int detected = 0;
    for (int trial = 0; trial < trials; ++trial) {
        RandomSource rng = RandomSource::for_trial(seed, static_cast<std::uint64_t>(trial));
        std::vector<ExtendedShare> shares = detail::deal_until_consistent(cfg, rng);

        if (model.kind != TamperKind::identity) {
            ParticipantId victim = model.victims[rng.below(model.victims.size())];
            auto it = std::find_if(shares.begin(), shares.end(),
                                   [&](const ExtendedShare& s) { return s.owner == victim; });
            if (it == shares.end())
                throw std::invalid_argument("estimate_detection_rate: victim holds no share");
            detail::apply_tamper(*it, model, l, m, rng);
        }

        bool fail = false;
        if (scope == DetectionScope::per_round) {
            const VerificationSet& vsop = cfg.structure.sets[eligible[rng.below(eligible.size())]];
            std::vector<ExtendedShare> round_shares;
            for (const ExtendedShare& s : shares)
                if (vsop.contains(s.owner)) round_shares.push_back(s);
            fail = !run_round(round_shares, cfg.f, cfg.c1, cfg.c2).pass;
        } else {
            fail = !run_protocol(*cfg.auth, cfg.structure, shares, cfg.f, cfg.c1, cfg.c2).all_pass;
        }
        if (fail) ++detected;
    }

    DetectionEstimate est;
    est.m = m;
    est.trials = trials;
    est.detected = detected;
    est.rate = static_cast<double>(detected) / trials;
    est.analytic = 1.0 - std::ldexp(1.0, -m * analytic_rounds);
    est.abs_error = std::abs(est.rate - est.analytic);
    return est;
}

// One estimate per control width, each from a config built for that width.
inline std::vector<DetectionEstimate> sweep_m(
    const std::function<TrialConfig(int)>& config_for_m, std::span<const int> m_values,
    const TamperModel& model, int trials, std::uint64_t seed,
    DetectionScope scope = DetectionScope::per_round) {
    if (m_values.empty()) throw std::invalid_argument("sweep_m: no control widths");
    std::vector<DetectionEstimate> out;
    out.reserve(m_values.size());
    for (int m : m_values)
        out.push_back(estimate_detection_rate(config_for_m(m), model, trials, seed, scope));
    return out;
}

// Plain-text table, one row per estimate.
inline std::string render_estimate_table(std::span<const DetectionEstimate> estimates) {
    std::string out = "m trials detected rate analytic abs_error\n";
    for (const DetectionEstimate& e : estimates) {
        out += std::to_string(e.m) + " " + std::to_string(e.trials) + " " +
               std::to_string(e.detected) + " " + detail::fixed6(e.rate) + " " +
               detail::fixed6(e.analytic) + " " + detail::fixed6(e.abs_error) + "\n";
    }
    return out;
}

}  // namespace vss

#endif  // VSS_ANALYSIS_HPP
