#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

// Channel budgets for subnet-multiplexed fully connected networks, and the
// cost of recursive multiparty agreement.
namespace qbasim::netplan {

using BigInt = boost::multiprecision::cpp_int;

struct NetworkPlan {
    std::uint64_t n_users = 0;
    std::uint64_t k_subnets = 0;
    /// (n/k)(n/k - 1): intra-subnet channels as counted by the closed-form total.
    std::uint64_t channels_intra = 0;
    /// k(k - 1): channels joining the subnets.
    std::uint64_t channels_inter = 0;
    /// channels_intra + channels_inter.
    std::uint64_t channels_total = 0;
    /// k (n/k)(n/k - 1): intra channels when every subnet pays for its own.
    std::uint64_t channels_intra_all_subnets = 0;
    /// channels_intra_all_subnets + channels_inter.
    std::uint64_t channels_total_all_subnets = 0;
};

/// Throws DomainError unless n, k >= 1 and k divides n.
NetworkPlan channels_required(std::uint64_t n_users, std::uint64_t k_subnets);

struct SubnetChoice {
    std::uint64_t k = 1;
    /// True when n is a perfect square and k = sqrt(n) was returned directly.
    /// Otherwise k minimises channels_total over the divisors of n (smallest
    /// k on ties).
    bool closed_form = false;
};

/// Throws DomainError when n_users == 0.
SubnetChoice optimal_subnets(std::uint64_t n_users);

/// A_a^b = a! / (a - b)!, the number of ordered selections of b out of a.
/// Throws DomainError when b > a.
BigInt permutations(std::uint64_t a, std::uint64_t b);

/// Number of three-party signature executions for N parties tolerating f
/// faulty ones: sum over m = 0 .. f-1 of A_{N-1}^{2+m}. Throws DomainError
/// unless f >= 1 and N >= 2f + 1.
BigInt comm_complexity(std::uint64_t n_parties, std::uint64_t f_faulty);

}  // namespace qbasim::netplan
