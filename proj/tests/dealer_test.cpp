// dealer_test.cpp - control-part assignment, both strategies
#include <gtest/gtest.h>

#include <stdexcept>
#include <variant>
#include <vector>

#include "oracles.hpp"
#include "vss/dealer.hpp"
#include "vss/protocol.hpp"

using vss::assign_controls;
using vss::BitVector;
using vss::Combiner;
using vss::ControlFunction;
using vss::DealFailure;
using vss::DealingStrategy;
using vss::DealOutcome;
using vss::ExtendedShare;
using vss::ParticipantId;
using vss::PlainShare;
using vss::VerificationSet;
using vss::VerificationStructure;

namespace {
std::vector<PlainShare> walkthrough_shares() {
    // 3-of-4 over GF(31), secret 7, polynomial 7 + 5x + 3x^2.
    vss::ShamirInstance inst(31, 3, 4);
    std::vector<std::uint32_t> coeffs{5, 3};
    return vss::shamir_deal(7, inst, coeffs);
}

const std::vector<ExtendedShare>& shares_of(const DealOutcome& outcome) {
    return std::get<std::vector<ExtendedShare>>(outcome);
}

PlainShare ps(ParticipantId owner, const char* bits) {
    return {owner, BitVector::parse(bits)};
}
}  // namespace

TEST(AppendControl, GoldenConcatenations) {
    EXPECT_EQ(vss::append_control(BitVector::parse("01111"), BitVector::parse("1")).str(),
              "011111");
    EXPECT_EQ(vss::append_control(BitVector::parse("11101"), BitVector::parse("0")).str(),
              "111010");
}

TEST(SplitExtended, InvertsAppend) {
    auto [s, c] = vss::split_extended(BitVector::parse("100101"), 5, 1);
    EXPECT_EQ(s.str(), "10010");
    EXPECT_EQ(c.str(), "1");
    auto [s2, c2] = vss::split_extended(BitVector::parse("0111101"), 5, 2);
    EXPECT_EQ(s2.str(), "01111");
    EXPECT_EQ(c2.str(), "01");
    EXPECT_THROW(vss::split_extended(BitVector::parse("100101"), 5, 2), std::invalid_argument);
    EXPECT_THROW(vss::split_extended(BitVector::parse("100101"), 4, 1), std::invalid_argument);
}

TEST(ExtendedShare, PayloadConcatenatesParts) {
    ExtendedShare s{3, BitVector::parse("10010"), BitVector::parse("1")};
    EXPECT_EQ(s.payload().str(), "100101");
}

TEST(AssignControls, WalkthroughConstrained) {
    std::vector<PlainShare> shares = walkthrough_shares();
    VerificationStructure vs = vss::build_vtn_structure(2, 3, 4);
    ControlFunction f = ControlFunction::from_table(vss::example_table());
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    const auto& out = shares_of(outcome);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].payload().str(), "011111");
    EXPECT_EQ(out[1].payload().str(), "111010");
    EXPECT_EQ(out[2].payload().str(), "100101");
    EXPECT_EQ(out[3].payload().str(), "011011");
    for (std::size_t i = 0; i < out.size(); ++i)
        EXPECT_EQ(out[i].owner, static_cast<ParticipantId>(i + 1));
}

TEST(AssignControls, WalkthroughDirectAgrees) {
    // The example table was completed so that both strategies coincide here.
    std::vector<PlainShare> shares = walkthrough_shares();
    VerificationStructure vs = vss::build_vtn_structure(2, 3, 4);
    ControlFunction f = ControlFunction::from_table(vss::example_table());
    DealOutcome direct = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                         Combiner::xor_fold(), DealingStrategy::direct);
    DealOutcome constrained = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                              Combiner::xor_fold(), DealingStrategy::constrained);
    EXPECT_EQ(shares_of(direct), shares_of(constrained));
}

TEST(AssignControls, DirectAppliesFToEachShare) {
    std::vector<PlainShare> shares{ps(1, "00000"), ps(2, "10101"), ps(3, "11111")};
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction f = ControlFunction::verhoeff_digit(5, 3);
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::direct);
    for (const ExtendedShare& s : shares_of(outcome)) {
        EXPECT_EQ(s.control_part, f(s.secret_part));
        EXPECT_EQ(s.payload().width(), 8u);
    }
}

TEST(AssignControls, SingleRoundSystemsAreAlwaysSolvable) {
    vss::RandomSource rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PlainShare> shares;
        for (int i = 1; i <= 3; ++i) shares.push_back({i, rng.bits(5)});
        ControlFunction f = ControlFunction::from_tables(
            {vss::random_balanced_table(5, rng), vss::random_balanced_table(5, rng)});
        VerificationStructure vs({VerificationSet({1, 2, 3})}, 3);
        DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                              Combiner::xor_fold(),
                                              DealingStrategy::constrained);
        ASSERT_TRUE(std::holds_alternative<std::vector<ExtendedShare>>(outcome));
        EXPECT_TRUE(oracles::naive_round_pass(shares_of(outcome), f));
    }
}

TEST(AssignControls, LinearControlMakesStrategiesAgree) {
    // Parity commutes with XOR, so the direct controls already satisfy every
    // round and the constrained solver must land on exactly those values.
    vss::RandomSource rng(62);
    ControlFunction f = ControlFunction::from_table(vss::parity_table(5));
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.below(5));
        int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
        std::vector<PlainShare> shares;
        for (int i = 1; i <= n; ++i) shares.push_back({i, rng.bits(5)});
        VerificationStructure vs = vss::build_vtn_structure(v, t, n);
        DealOutcome direct = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                             Combiner::xor_fold(), DealingStrategy::direct);
        DealOutcome constrained =
            assign_controls(shares, vs, f, Combiner::xor_fold(), Combiner::xor_fold(),
                            DealingStrategy::constrained);
        ASSERT_TRUE(std::holds_alternative<std::vector<ExtendedShare>>(constrained));
        EXPECT_EQ(shares_of(direct), shares_of(constrained));
        for (const VerificationSet& vsop : vs.sets) {
            std::vector<ExtendedShare> round;
            for (const ExtendedShare& s : shares_of(constrained))
                if (vsop.contains(s.owner)) round.push_back(s);
            EXPECT_TRUE(oracles::naive_round_pass(round, f));
        }
    }
}

TEST(AssignControls, ConstrainedSatisfiesEveryRound) {
    vss::RandomSource rng(63);
    int solved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(rng.below(3));
        std::vector<PlainShare> shares;
        for (int i = 1; i <= n; ++i) shares.push_back({i, rng.bits(5)});
        ControlFunction f = ControlFunction::from_table(vss::random_balanced_table(5, rng));
        VerificationStructure vs = vss::build_vtn_structure(2, 3, n);
        DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                              Combiner::xor_fold(),
                                              DealingStrategy::constrained);
        if (!std::holds_alternative<std::vector<ExtendedShare>>(outcome)) continue;
        ++solved;
        for (const VerificationSet& vsop : vs.sets) {
            std::vector<ExtendedShare> round;
            for (const ExtendedShare& s : shares_of(outcome))
                if (vsop.contains(s.owner)) round.push_back(s);
            EXPECT_TRUE(oracles::naive_round_pass(round, f));
        }
    }
    EXPECT_GT(solved, 0);
}

TEST(AssignControls, InconsistentTriangleReportsAllThreeSets) {
    // A constant-one control makes each pair demand c_i xor c_j = 1; around a
    // triangle the three rows XOR to 0 = 1.
    std::vector<PlainShare> shares{ps(1, "00001"), ps(2, "00010"), ps(3, "00100")};
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction f = ControlFunction::from_table(vss::constant_table(5, 1));
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    ASSERT_TRUE(std::holds_alternative<DealFailure>(outcome));
    const DealFailure& failure = std::get<DealFailure>(outcome);
    EXPECT_EQ(failure.message(),
              "dealing inconsistent; conflicting verification sets: {1,2} {1,3} {2,3}");
}

TEST(AssignControls, ConflictReportIsMinimal) {
    // Triangle plus one satisfiable extra round: only the triangle survives
    // the minimization.
    std::vector<PlainShare> shares{ps(1, "00001"), ps(2, "00010"), ps(3, "00100"),
                                   ps(4, "01000")};
    std::vector<VerificationSet> sets{VerificationSet({1, 2}), VerificationSet({1, 3}),
                                      VerificationSet({2, 3}), VerificationSet({1, 4})};
    VerificationStructure vs(std::move(sets), 4);
    ControlFunction f = ControlFunction::from_table(vss::constant_table(5, 1));
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    ASSERT_TRUE(std::holds_alternative<DealFailure>(outcome));
    const DealFailure& failure = std::get<DealFailure>(outcome);
    EXPECT_EQ(failure.message(),
              "dealing inconsistent; conflicting verification sets: {1,2} {1,3} {2,3}");
}

TEST(AssignControls, DirectNeverFails) {
    std::vector<PlainShare> shares{ps(1, "00001"), ps(2, "00010"), ps(3, "00100")};
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction f = ControlFunction::from_table(vss::constant_table(5, 1));
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::direct);
    EXPECT_TRUE(std::holds_alternative<std::vector<ExtendedShare>>(outcome));
}

TEST(AssignControls, Deterministic) {
    std::vector<PlainShare> shares = walkthrough_shares();
    VerificationStructure vs = vss::build_vtn_structure(2, 3, 4);
    ControlFunction f = ControlFunction::from_table(vss::example_table());
    DealOutcome a = assign_controls(shares, vs, f, Combiner::xor_fold(), Combiner::xor_fold(),
                                    DealingStrategy::constrained);
    DealOutcome b = assign_controls(shares, vs, f, Combiner::xor_fold(), Combiner::xor_fold(),
                                    DealingStrategy::constrained);
    EXPECT_EQ(shares_of(a), shares_of(b));
}

TEST(AssignControls, UnconstrainedParticipantGetsDirectControl) {
    // Share 3 sits in no verification set; its pinned unknowns stay free and
    // take the direct value f(s_3).
    std::vector<PlainShare> shares{ps(1, "01111"), ps(2, "11101"), ps(3, "10010")};
    VerificationStructure vs({VerificationSet({1, 2})}, 3);
    ControlFunction f = ControlFunction::from_table(vss::example_table());
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    const auto& out = shares_of(outcome);
    EXPECT_EQ(out[2].control_part, f(BitVector::parse("10010")));
}

TEST(AssignControls, InputErrors) {
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction f = ControlFunction::from_table(vss::example_table());
    Combiner x = Combiner::xor_fold();

    std::vector<PlainShare> none;
    EXPECT_THROW(assign_controls(none, vs, f, x, x, DealingStrategy::direct),
                 std::invalid_argument);

    std::vector<PlainShare> dup{ps(1, "00001"), ps(1, "00010"), ps(3, "00100")};
    EXPECT_THROW(assign_controls(dup, vs, f, x, x, DealingStrategy::direct),
                 std::invalid_argument);

    std::vector<PlainShare> missing{ps(1, "00001"), ps(2, "00010")};
    try {
        assign_controls(missing, vs, f, x, x, DealingStrategy::direct);
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("no share for participant 3"), std::string::npos);
    }

    std::vector<PlainShare> narrow{ps(1, "0001"), ps(2, "0010"), ps(3, "0100")};
    EXPECT_THROW(assign_controls(narrow, vs, f, x, x, DealingStrategy::direct),
                 std::invalid_argument);

    std::vector<PlainShare> fine{ps(1, "00001"), ps(2, "00010"), ps(3, "00100")};
    Combiner lagrange = Combiner::lagrange(vss::ShamirInstance(31, 2, 3));
    EXPECT_THROW(assign_controls(fine, vs, f, x, lagrange, DealingStrategy::constrained),
                 std::invalid_argument);
}

TEST(AssignControls, PerRoundOverridesShapeTheSystem) {
    // Tree structure, base control = example table, round {1,3} overridden to
    // the all-zero control. Verification agrees only when both sides use the
    // same override map.
    std::vector<PlainShare> shares{ps(1, "00000"), ps(2, "01111"), ps(3, "10000")};
    VerificationStructure vs({VerificationSet({1, 2}), VerificationSet({1, 3})}, 3);
    ControlFunction base = ControlFunction::from_table(vss::example_table());
    Combiner x = Combiner::xor_fold();

    vss::PolicyOverrides overrides;
    overrides.emplace(std::vector<ParticipantId>{1, 3},
                      vss::RoundPolicy{ControlFunction::from_table(vss::constant_table(5, 0)),
                                       x, x});

    DealOutcome outcome =
        assign_controls(shares, vs, base, x, x, DealingStrategy::constrained, overrides);
    const auto& out = shares_of(outcome);

    vss::AuthorizedSet auth({1, 2, 3});
    vss::ProtocolReport with = vss::run_protocol(auth, vs, out, base, x, x, overrides);
    EXPECT_TRUE(with.all_pass);

    // Without the override the verifier tests f(10000) = 1 against the dealt
    // R_c of 0, so round {1,3} fails.
    vss::ProtocolReport without = vss::run_protocol(auth, vs, out, base, x, x);
    ASSERT_EQ(without.rounds.size(), 2u);
    EXPECT_TRUE(without.rounds[0].pass);
    EXPECT_FALSE(without.rounds[1].pass);
}

TEST(AssignControls, OverrideWidthMismatchRejected) {
    std::vector<PlainShare> shares{ps(1, "00001"), ps(2, "00010"), ps(3, "00100")};
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction base = ControlFunction::from_table(vss::example_table());
    Combiner x = Combiner::xor_fold();
    vss::PolicyOverrides overrides;
    overrides.emplace(
        std::vector<ParticipantId>{1, 2},
        vss::RoundPolicy{
            ControlFunction::from_tables({vss::parity_table(5), vss::parity_table(5)}), x, x});
    EXPECT_THROW(
        assign_controls(shares, vs, base, x, x, DealingStrategy::constrained, overrides),
        std::invalid_argument);
}

TEST(AssignControls, PayloadWidthIsSecretWidthPlusControlWidth) {
    std::vector<PlainShare> shares{ps(1, "00001"), ps(2, "00010"), ps(3, "00100")};
    VerificationStructure vs = vss::build_vtn_structure(2, 2, 3);
    ControlFunction f = ControlFunction::from_tables(
        {vss::parity_table(5), vss::parity_table(5), vss::parity_table(5)});
    DealOutcome outcome = assign_controls(shares, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    for (const ExtendedShare& s : shares_of(outcome)) {
        EXPECT_EQ(s.secret_part.width(), 5u);
        EXPECT_EQ(s.control_part.width(), 3u);
        EXPECT_EQ(s.payload().width(), 8u);
    }
}
