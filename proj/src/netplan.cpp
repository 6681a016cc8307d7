#include "qbasim/netplan.hpp"

#include <cmath>
#include <limits>

#include "qbasim/errors.hpp"

namespace qbasim::netplan {

NetworkPlan channels_required(std::uint64_t n_users, std::uint64_t k_subnets) {
    if (n_users == 0 || k_subnets == 0) throw DomainError("channels_required: n and k must be >= 1");
    if (n_users % k_subnets != 0) throw DomainError("channels_required: k must divide n");
    const std::uint64_t per_subnet = n_users / k_subnets;

    NetworkPlan plan;
    plan.n_users = n_users;
    plan.k_subnets = k_subnets;
    plan.channels_intra = per_subnet * (per_subnet - 1);
    plan.channels_inter = k_subnets * (k_subnets - 1);
    plan.channels_total = plan.channels_intra + plan.channels_inter;
    plan.channels_intra_all_subnets = k_subnets * plan.channels_intra;
    plan.channels_total_all_subnets = plan.channels_intra_all_subnets + plan.channels_inter;
    return plan;
}

SubnetChoice optimal_subnets(std::uint64_t n_users) {
    if (n_users == 0) throw DomainError("optimal_subnets: n must be >= 1");
    auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n_users))));
    while (root * root > n_users) --root;
    while ((root + 1) * (root + 1) <= n_users) ++root;
    if (root * root == n_users) return {root, true};

    SubnetChoice best{1, false};
    std::uint64_t best_total = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t k = 1; k <= n_users; ++k) {
        if (n_users % k != 0) continue;
        const std::uint64_t total = channels_required(n_users, k).channels_total;
        if (total < best_total) {
            best_total = total;
            best.k = k;
        }
    }
    return best;
}

BigInt permutations(std::uint64_t a, std::uint64_t b) {
    if (b > a) throw DomainError("permutations: b must not exceed a");
    BigInt result = 1;
    for (std::uint64_t i = 0; i < b; ++i) result *= (a - i);
    return result;
}

BigInt comm_complexity(std::uint64_t n_parties, std::uint64_t f_faulty) {
    if (f_faulty < 1) throw DomainError("comm_complexity: f must be >= 1");
    if (n_parties < 2 * f_faulty + 1) throw DomainError("comm_complexity: requires N >= 2f + 1");
    BigInt total = 0;
    for (std::uint64_t m = 0; m < f_faulty; ++m) total += permutations(n_parties - 1, 2 + m);
    return total;
}

}  // namespace qbasim::netplan
