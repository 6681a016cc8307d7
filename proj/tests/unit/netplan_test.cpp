#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/netplan.hpp"

using namespace qbasim;
using namespace qbasim::netplan;

TEST(Channels, ThreeUsersNeedSixChannels) {
    const auto plan = channels_required(3, 1);
    EXPECT_EQ(plan.channels_total, 6U);
    EXPECT_EQ(plan.channels_intra, 6U);
    EXPECT_EQ(plan.channels_inter, 0U);
}

TEST(Channels, NineUsersInThreeSubnets) {
    const auto plan = channels_required(9, 3);
    EXPECT_EQ(plan.channels_intra, 6U);
    EXPECT_EQ(plan.channels_inter, 6U);
    EXPECT_EQ(plan.channels_total, 12U);
    EXPECT_EQ(plan.channels_intra_all_subnets, 18U);
    EXPECT_EQ(plan.channels_total_all_subnets, 24U);
}

TEST(Channels, SingletonSubnetsAreInterOnly) {
    for (std::uint64_t k = 1; k <= 20; ++k) {
        const auto plan = channels_required(k, k);
        EXPECT_EQ(plan.channels_intra, 0U);
        EXPECT_EQ(plan.channels_total, k * (k - 1));
    }
}

TEST(Channels, SingleNetIsFullyConnected) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
        EXPECT_EQ(channels_required(n, 1).channels_total, n * (n - 1));
    }
}

TEST(Channels, TotalsAreSums) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) {
            if (n % k != 0) continue;
            const auto p = channels_required(n, k);
            EXPECT_EQ(p.channels_total, p.channels_intra + p.channels_inter);
            EXPECT_EQ(p.channels_total_all_subnets, p.channels_intra_all_subnets + p.channels_inter);
            EXPECT_EQ(p.channels_intra_all_subnets, k * p.channels_intra);
        }
    }
}

TEST(Channels, RejectsNonDivisors) {
    EXPECT_THROW(channels_required(10, 3), DomainError);
    EXPECT_THROW(channels_required(0, 1), DomainError);
    EXPECT_THROW(channels_required(4, 0), DomainError);
}

TEST(Subnets, SquaresUseClosedForm) {
    EXPECT_EQ(optimal_subnets(16).k, 4U);
    EXPECT_TRUE(optimal_subnets(16).closed_form);
    EXPECT_EQ(optimal_subnets(4).k, 2U);
    EXPECT_EQ(optimal_subnets(1).k, 1U);
}

TEST(Subnets, NonSquaresBruteForceDivisors) {
    // Totals over the divisors of 12: 132, 32, 18, 18, 32, 132.
    const auto c = optimal_subnets(12);
    EXPECT_FALSE(c.closed_form);
    EXPECT_EQ(c.k, 3U);
    EXPECT_THROW(optimal_subnets(0), DomainError);
}

TEST(Subnets, ChoiceDividesAndMinimises) {
    for (std::uint64_t n = 1; n <= 400; ++n) {
        const auto c = optimal_subnets(n);
        ASSERT_LE(c.k, n);
        ASSERT_EQ(n % c.k, 0U);
        const auto best = channels_required(n, c.k).channels_total;
        for (std::uint64_t k = 1; k <= n; ++k) {
            if (n % k == 0) ASSERT_LE(best, channels_required(n, k).channels_total) << n << " " << k;
        }
    }
}

TEST(Complexity, SmallCases) {
    EXPECT_EQ(comm_complexity(3, 1), 2);
    EXPECT_EQ(comm_complexity(5, 2), 36);
    EXPECT_EQ(permutations(11, 7), 1663200);
    EXPECT_EQ(permutations(5, 0), 1);
}

TEST(Complexity, MatchesFactorialOracle) {
    for (unsigned n = 3; n <= 12; ++n) {
        for (unsigned f = 1; f <= 5 && n >= 2 * f + 1; ++f) {
            BigInt expected = 0;
            for (unsigned m = 0; m < f; ++m) expected += oracle::perm_ratio(n - 1, 2 + m);
            EXPECT_EQ(comm_complexity(n, f), expected) << n << " " << f;
        }
    }
}

TEST(Complexity, GrowsSuperExponentially) {
    // The step ratio dips once (18 then 14) and climbs from there on.
    BigInt previous = comm_complexity(5, 2);
    BigInt previous_ratio = 0;
    for (std::uint64_t f = 3; f <= 10; ++f) {
        const BigInt c = comm_complexity(2 * f + 1, f);
        const BigInt ratio = c / previous;
        EXPECT_GT(ratio, previous_ratio);
        previous = c;
        previous_ratio = ratio;
    }
}

TEST(Complexity, DomainErrors) {
    EXPECT_THROW(comm_complexity(4, 2), DomainError);
    EXPECT_THROW(comm_complexity(3, 0), DomainError);
    EXPECT_THROW(permutations(3, 4), DomainError);
}
