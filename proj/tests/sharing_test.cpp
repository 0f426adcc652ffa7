// sharing_test.cpp - Shamir and KGH sharing, reconstruction, combiners
#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "vss/sharing.hpp"

using vss::BitVector;
using vss::Combiner;
using vss::combine;
using vss::from_bits;
using vss::KghInstance;
using vss::ParticipantId;
using vss::PlainShare;
using vss::ShamirInstance;
using vss::to_bits;

namespace {
const std::vector<std::uint32_t> kCoeffs{5, 3};

std::vector<PlainShare> golden_shares() {
    ShamirInstance inst(31, 3, 4);
    return vss::shamir_deal(7, inst, kCoeffs);
}

std::vector<std::pair<int, std::uint32_t>> as_points(const std::vector<PlainShare>& shares) {
    std::vector<std::pair<int, std::uint32_t>> out;
    for (const PlainShare& s : shares)
        out.emplace_back(s.owner, static_cast<std::uint32_t>(from_bits(s.secret_part)));
    return out;
}
}  // namespace

TEST(ShamirInstance, Parameters) {
    ShamirInstance inst(31, 3, 4);
    EXPECT_EQ(inst.l, 5);
    EXPECT_EQ(ShamirInstance(251, 2, 3).l, 8);
    EXPECT_EQ(ShamirInstance(2, 1, 1).l, 1);
    EXPECT_THROW(ShamirInstance(30, 2, 3), std::invalid_argument);  // composite p
    EXPECT_THROW(ShamirInstance(31, 4, 3), std::invalid_argument);  // t > n
    EXPECT_THROW(ShamirInstance(31, 0, 3), std::invalid_argument);
    EXPECT_THROW(ShamirInstance(31, 3, 31), std::invalid_argument);  // n >= p
}

TEST(ShamirDeal, WorkedPolynomial) {
    std::vector<PlainShare> shares = golden_shares();
    ASSERT_EQ(shares.size(), 4u);
    EXPECT_EQ(shares[0].owner, 1);
    EXPECT_EQ(shares[0].secret_part.str(), "01111");
    EXPECT_EQ(shares[1].secret_part.str(), "11101");
    EXPECT_EQ(shares[2].secret_part.str(), "10010");
    EXPECT_EQ(shares[3].secret_part.str(), "01101");
}

TEST(ShamirDeal, ThresholdOneIsConstant) {
    ShamirInstance inst(31, 1, 4);
    for (const PlainShare& s : vss::shamir_deal(9, inst, {}))
        EXPECT_EQ(from_bits(s.secret_part), 9u);
}

TEST(ShamirDeal, InputErrors) {
    ShamirInstance inst(31, 3, 4);
    EXPECT_THROW(vss::shamir_deal(31, inst, kCoeffs), std::invalid_argument);
    EXPECT_THROW(vss::shamir_deal(7, inst, std::vector<std::uint32_t>{5}),
                 std::invalid_argument);
    EXPECT_THROW(vss::shamir_deal(7, inst, std::vector<std::uint32_t>{5, 31}),
                 std::invalid_argument);
}

TEST(ShamirReconstruct, WorkedSubsets) {
    ShamirInstance inst(31, 3, 4);
    std::vector<PlainShare> shares = golden_shares();
    std::vector<PlainShare> subset{shares[0], shares[1], shares[2]};
    EXPECT_EQ(vss::shamir_reconstruct(subset, inst).value(), 7u);
    subset = {shares[0], shares[1], shares[3]};
    EXPECT_EQ(vss::shamir_reconstruct(subset, inst).value(), 7u);
    subset = {shares[3], shares[2], shares[1]};  // order independent
    EXPECT_EQ(vss::shamir_reconstruct(subset, inst).value(), 7u);
    EXPECT_EQ(vss::shamir_reconstruct(shares, inst).value(), 7u);  // first t used
}

TEST(ShamirReconstruct, Errors) {
    ShamirInstance inst(31, 3, 4);
    std::vector<PlainShare> shares = golden_shares();
    std::vector<PlainShare> two{shares[0], shares[1]};
    EXPECT_THROW(vss::shamir_reconstruct(two, inst), vss::InsufficientSharesError);
    std::vector<PlainShare> dup{shares[0], shares[0], shares[1]};
    EXPECT_THROW(vss::shamir_reconstruct(dup, inst), std::invalid_argument);
}

TEST(ShamirReconstruct, RandomInstancesAgainstOracle) {
    vss::RandomSource rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint32_t p = rng.bit() ? 31 : 251;
        int t = 1 + static_cast<int>(rng.below(4));
        int n = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(7 - t)));
        ShamirInstance inst(p, t, n);
        std::uint32_t secret = rng.field_value(p);
        std::vector<PlainShare> shares = vss::shamir_deal(secret, inst, rng);

        std::vector<ParticipantId> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
        for (const auto& subset :
             vss::detail::k_subsets(pool, static_cast<std::size_t>(t))) {
            std::vector<PlainShare> picked;
            for (ParticipantId pid : subset)
                picked.push_back(shares[static_cast<std::size_t>(pid - 1)]);
            EXPECT_EQ(vss::shamir_reconstruct(picked, inst).value(), secret);
            EXPECT_EQ(oracles::lagrange_at_zero(as_points(picked), p), secret);
        }
    }
}

TEST(KghDeal, SingleParticipantHoldsTheSecret) {
    vss::RandomSource rng(42);
    KghInstance inst(1, 5);
    BitVector secret = BitVector::parse("01111");
    std::vector<PlainShare> shares = vss::kgh_deal(secret, inst, rng);
    ASSERT_EQ(shares.size(), 1u);
    EXPECT_EQ(shares[0].secret_part, secret);
}

TEST(KghDeal, LastShareClosesTheFold) {
    vss::RandomSource rng(43);
    KghInstance inst(2, 5);
    BitVector secret = BitVector::parse("01111");
    std::vector<PlainShare> shares = vss::kgh_deal(secret, inst, rng);
    ASSERT_EQ(shares.size(), 2u);
    EXPECT_EQ(shares[0].secret_part ^ shares[1].secret_part, secret);
    // The defining relation on the worked bit patterns: a first share of
    // 11101 forces the second share 10010.
    EXPECT_EQ(BitVector::parse("01111") ^ BitVector::parse("11101"),
              BitVector::parse("10010"));
}

TEST(KghDeal, XorOfAllSharesIsTheSecretRandomized) {
    vss::RandomSource rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.below(6));
        std::size_t l = 1 + rng.below(12);
        KghInstance inst(n, static_cast<int>(l));
        BitVector secret = rng.bits(l);
        std::vector<PlainShare> shares = vss::kgh_deal(secret, inst, rng);
        ASSERT_EQ(shares.size(), static_cast<std::size_t>(n));
        EXPECT_EQ(vss::kgh_reconstruct(shares, inst), secret);
        BitVector fold(l);
        for (const PlainShare& s : shares) fold ^= s.secret_part;
        EXPECT_EQ(fold, secret);
    }
}

TEST(KghReconstruct, Errors) {
    vss::RandomSource rng(45);
    KghInstance inst(3, 5);
    std::vector<PlainShare> shares = vss::kgh_deal(BitVector::parse("10110"), inst, rng);
    std::vector<PlainShare> partial{shares[0], shares[1]};
    EXPECT_THROW(vss::kgh_reconstruct(partial, inst), vss::InsufficientSharesError);
    std::vector<PlainShare> dup{shares[0], shares[0], shares[1]};
    EXPECT_THROW(vss::kgh_reconstruct(dup, inst), std::invalid_argument);
    EXPECT_THROW(vss::kgh_deal(BitVector::parse("011"), inst, rng), std::invalid_argument);
    EXPECT_THROW(KghInstance(0, 5), std::invalid_argument);
    EXPECT_THROW(KghInstance(3, 0), std::invalid_argument);
}

TEST(Combiner, XorFold) {
    Combiner c = Combiner::xor_fold();
    EXPECT_EQ(combine(c, {PlainShare{1, BitVector::parse("01111")},
                          PlainShare{2, BitVector::parse("11101")}})
                  .str(),
              "10010");
    EXPECT_EQ(combine(c, {PlainShare{2, BitVector::parse("11101")},
                          PlainShare{1, BitVector::parse("01111")}})
                  .str(),
              "10010");
    EXPECT_EQ(combine(c, {PlainShare{1, BitVector::parse("10110")}}).str(), "10110");
    EXPECT_THROW(combine(c, std::initializer_list<PlainShare>{}), std::invalid_argument);
}

TEST(Combiner, LagrangeRecoversAndReencodes) {
    ShamirInstance inst(31, 3, 4);
    Combiner c = Combiner::lagrange(inst);
    std::vector<PlainShare> shares = golden_shares();
    std::vector<PlainShare> subset{shares[0], shares[1], shares[2]};
    EXPECT_EQ(combine(c, subset).str(), "00111");
    subset = {shares[1], shares[2], shares[3]};
    EXPECT_EQ(combine(c, subset).str(), "00111");
    std::vector<PlainShare> two{shares[0], shares[1]};
    EXPECT_THROW(combine(c, two), vss::InsufficientSharesError);

    Combiner broken;
    broken.kind = Combiner::Kind::shamir_lagrange;
    EXPECT_THROW(combine(broken, subset), std::invalid_argument);
}

TEST(SchemeInstance, Helpers) {
    vss::SchemeInstance shamir = ShamirInstance(31, 3, 4);
    vss::SchemeInstance kgh = KghInstance(3, 5);
    EXPECT_EQ(vss::scheme_l(shamir), 5);
    EXPECT_EQ(vss::scheme_n(shamir), 4);
    EXPECT_EQ(vss::scheme_recovery_size(shamir), 3);
    EXPECT_EQ(vss::scheme_l(kgh), 5);
    EXPECT_EQ(vss::scheme_n(kgh), 3);
    EXPECT_EQ(vss::scheme_recovery_size(kgh), 3);
}
