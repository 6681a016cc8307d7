#include <gtest/gtest.h>

#include <cmath>

#include "qbasim/errors.hpp"
#include "qbasim/secparams.hpp"

using namespace qbasim;
using namespace qbasim::secparams;

namespace {

// Reference values from a 50-digit evaluation of the same formulas.
struct Frozen {
    double eps_gamma;
    double e_p;
    double e1_l;
    double h_l;
    double eps_for;
};

constexpr Frozen kTableInputs[] = {
    {1e-8, 0.035607224096556095, 0.11577488608858461, 82.580868013155014, 3.0969178011847379e-23},
    {1e-10, 0.035845539159702161, 0.13205560641526704, 59.051314549428836, 3.74999816805936e-16},
    {1e-12, 0.036054511921203801, 0.14747308977933684, 38.350358933327601, 6.3920422207925145e-10},
};

}  // namespace

TEST(BinaryEntropy, KnownValues) {
    EXPECT_EQ(h2(0.0), 0.0);
    EXPECT_EQ(h2(1.0), 0.0);
    EXPECT_DOUBLE_EQ(h2(0.5), 1.0);
    EXPECT_NEAR(h2(0.11), 0.49991595816452799564, 1e-15);
    EXPECT_NEAR(h2(0.0476), 0.27611309943652511313, 1e-15);
    EXPECT_THROW(h2(-0.1), DomainError);
    EXPECT_THROW(h2(1.5), DomainError);
    EXPECT_THROW(h2(std::nan("")), DomainError);
}

TEST(BinaryEntropy, SymmetricAndConcave) {
    for (double x = 0.01; x < 0.5; x += 0.01) {
        EXPECT_NEAR(h2(x), h2(1.0 - x), 1e-12);
        EXPECT_LT(h2(x), h2(x + 0.005));
        EXPECT_GE(h2(x), 0.5 * (h2(x - 0.01 < 0 ? 0 : x - 0.01) + h2(x + 0.01)));
    }
}

TEST(Fluctuation, FrozenValue) {
    EXPECT_NEAR(gamma(1e6, 1e6, 0.03, 1e-10), 0.0014359960034223262845, 1e-15);
}

TEST(Fluctuation, ShrinksWithSamplesAndGrowsWithConfidence) {
    EXPECT_GT(gamma(1e4, 1e4, 0.03, 1e-10), gamma(1e5, 1e5, 0.03, 1e-10));
    EXPECT_GT(gamma(1e5, 1e5, 0.03, 1e-12), gamma(1e5, 1e5, 0.03, 1e-10));
    EXPECT_GT(gamma(1e5, 1e5, 0.03, 1e-10), 0.0);
}

TEST(Fluctuation, DomainErrors) {
    EXPECT_THROW(gamma(0.5, 10, 0.1, 1e-10), DomainError);
    EXPECT_THROW(gamma(10, 10, 0.0, 1e-10), DomainError);
    EXPECT_THROW(gamma(10, 10, 1.0, 1e-10), DomainError);
    EXPECT_THROW(gamma(10, 10, 0.1, 0.0), DomainError);
    EXPECT_THROW(gamma(10, 10, 0.1, 1.0), DomainError);
    // Large eps with tiny samples drives the logarithm negative.
    EXPECT_THROW(gamma(1e6, 1e6, 0.5, 0.9), DomainError);
}

TEST(Bounds, TableInputsMatchHighPrecisionReference) {
    for (const auto& f : kTableInputs) {
        SecurityInputs in;
        in.eps_gamma = f.eps_gamma;
        const auto r = security_bounds(in);
        EXPECT_NEAR(r.e_p, f.e_p, 1e-12) << f.eps_gamma;
        EXPECT_NEAR(r.e1_l, f.e1_l, 1e-12) << f.eps_gamma;
        EXPECT_NEAR(r.h_l, f.h_l, 1e-8) << f.eps_gamma;
        EXPECT_NEAR(r.eps_for / f.eps_for, 1.0, 1e-8) << f.eps_gamma;
        EXPECT_NEAR(r.pr_guess * 896.0 / 4.0, r.eps_for, r.eps_for * 1e-12);
        EXPECT_EQ(r.eps_gamma, f.eps_gamma);
        EXPECT_FALSE(r.insecure);
    }
}

TEST(Bounds, RobustnessAndRepudiationTerms) {
    SecurityInputs in;
    in.eps_ec = 3e-9;
    const auto r = security_bounds(in);
    EXPECT_EQ(r.eps_rep, 0.0);
    EXPECT_DOUBLE_EQ(r.eps_rob, 6e-9);
    EXPECT_DOUBLE_EQ(r.eps_total, std::max(r.eps_for, r.eps_rob));
}

TEST(Bounds, EntropyGrowsWithBlockLength) {
    double previous = -1e300;
    double previous_eps = 2.0;
    for (double l : {128.0, 256.0, 512.0, 1024.0, 2048.0}) {
        SecurityInputs in;
        in.l = l;
        const auto r = security_bounds(in);
        EXPECT_GT(r.h_l, previous);
        EXPECT_LE(r.eps_for, previous_eps);
        previous = r.h_l;
        previous_eps = r.eps_for;
    }
}

TEST(Bounds, ForgeryBoundIsLinearInMessageLength) {
    SecurityInputs in;
    const auto base = security_bounds(in);
    in.m_len *= 2;
    const auto doubled = security_bounds(in);
    EXPECT_NEAR(doubled.log2_eps_for - base.log2_eps_for, 1.0, 1e-12);
    in.m_len = 0;
    EXPECT_EQ(security_bounds(in).eps_for, 0.0);
}

TEST(Bounds, EntropyFallsWithErrorRates) {
    SecurityInputs lo, hi;
    hi.e_x = 0.06;
    EXPECT_GT(security_bounds(lo).h_l, security_bounds(hi).h_l);
    hi = lo;
    hi.e_z = 0.05;
    EXPECT_GT(security_bounds(lo).h_l, security_bounds(hi).h_l);
}

TEST(Bounds, ClampsAndFlagsInsecure) {
    SecurityInputs in;
    in.e_x = 0.6;
    auto r = security_bounds(in);
    EXPECT_TRUE(r.clamped);
    EXPECT_TRUE(r.insecure);

    in = SecurityInputs{};
    in.e_z = 0.4995;
    r = security_bounds(in);
    EXPECT_EQ(r.e_p, 0.5);
    EXPECT_TRUE(r.clamped);
    EXPECT_TRUE(r.insecure);

    in = SecurityInputs{};
    in.l = 128;
    r = security_bounds(in);
    EXPECT_LT(r.h_l, 0.0);
    EXPECT_TRUE(r.insecure);
    EXPECT_EQ(r.pr_guess, 1.0);
    EXPECT_EQ(r.eps_for, 1.0);
}

TEST(Bounds, InputValidation) {
    SecurityInputs in;
    in.n_x = 400;
    EXPECT_THROW(security_bounds(in), DomainError);
    in = SecurityInputs{};
    in.f_ec = 0.5;
    EXPECT_THROW(security_bounds(in), DomainError);
    in = SecurityInputs{};
    in.e_z = 0.0;
    EXPECT_THROW(security_bounds(in), DomainError);
    in = SecurityInputs{};
    in.m_len = -1;
    EXPECT_THROW(security_bounds(in), DomainError);
    EXPECT_THROW(phase_error_block(0.03, 512, 512, 1e-10), DomainError);
}
