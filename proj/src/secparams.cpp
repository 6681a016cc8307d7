#include "qbasim/secparams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qbasim/errors.hpp"

namespace qbasim::secparams {

double h2(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h2: argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double gamma(double n, double k, double lambda, double eps) {
    if (!(n >= 1.0) || !(k >= 1.0)) throw DomainError("gamma: sample sizes must be >= 1");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("gamma: lambda must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("gamma: eps must lie in (0, 1)");

    const double sum = n + k;
    const double var = lambda * (1.0 - lambda);
    const double ln_arg = sum / (2.0 * std::numbers::pi * n * k * var * eps * eps);
    if (!(ln_arg > 0.0)) throw DomainError("gamma: logarithm argument is not positive");
    const double g = sum / (n * k) * std::log(ln_arg);
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("gamma: fluctuation term G is not positive");

    const double a = std::max(n, k);
    const double ag = a * g / sum;
    const double numerator = (1.0 - 2.0 * lambda) * ag + std::sqrt(ag * ag + 4.0 * var * g);
    const double denominator = 2.0 + 2.0 * a * a * g / (sum * sum);
    return numerator / denominator;
}

namespace {
PhaseEstimate clamp_half(double value) {
    if (value > 0.5) return {0.5, true};
    return {value, false};
}
}  // namespace

void validate(const SecurityInputs& in) {
    if (!(in.l >= 1.0)) throw DomainError("security inputs: l must be >= 1");
    if (!(in.m_len >= 0.0)) throw DomainError("security inputs: |M| must be >= 0");
    if (!(in.n_x >= 1.0) || !(in.n_z >= 1.0)) throw DomainError("security inputs: n_x and n_z must be >= 1");
    if (!(in.e_z > 0.0 && in.e_z < 1.0)) throw DomainError("security inputs: e_z must lie in (0, 1)");
    if (!(in.e_x >= 0.0 && in.e_x <= 1.0)) throw DomainError("security inputs: e_x must lie in [0, 1]");
    if (!(in.f_ec >= 1.0)) throw DomainError("security inputs: f_ec must be >= 1");
    if (!(in.eps_gamma > 0.0 && in.eps_gamma < 1.0)) throw DomainError("security inputs: eps_gamma must lie in (0, 1)");
    if (!(in.eps_ec > 0.0 && in.eps_ec < 1.0)) throw DomainError("security inputs: eps_ec must lie in (0, 1)");
}

PhaseEstimate phase_error(const SecurityInputs& in) {
    const PhaseEstimate e_z = clamp_half(in.e_z);
    PhaseEstimate out = clamp_half(e_z.value + gamma(in.n_x, in.n_z, e_z.value, in.eps_gamma));
    out.clamped = out.clamped || e_z.clamped;
    return out;
}

PhaseEstimate phase_error_block(double e_p, double l, double n_x, double eps) {
    if (!(n_x > l)) throw DomainError("phase_error_block: n_x must exceed l");
    return clamp_half(e_p + gamma(l, n_x - l, e_p, eps));
}

double min_entropy(const SecurityInputs& in, double e1_l) {
    const double e_x = std::min(in.e_x, 0.5);
    return in.l * (1.0 - h2(e1_l) - in.f_ec * h2(e_x));
}

SecurityReport security_bounds(const SecurityInputs& in) {
    validate(in);
    SecurityReport r;
    r.eps_gamma = in.eps_gamma;

    const PhaseEstimate e_p = phase_error(in);
    const PhaseEstimate e1 = phase_error_block(e_p.value, in.l, in.n_x, in.eps_gamma);
    r.e_p = e_p.value;
    r.e1_l = e1.value;
    r.clamped = e_p.clamped || e1.clamped || in.e_x > 0.5;
    r.h_l = min_entropy(in, r.e1_l);

    // log2 Pr = -H_l, log2 eps_for = log2 |M| - 2 - H_l, both capped at 0.
    r.log2_pr_guess = std::min(0.0, -r.h_l);
    r.pr_guess = std::exp2(r.log2_pr_guess);
    r.log2_eps_for = in.m_len > 0.0 ? std::min(0.0, std::log2(in.m_len) - 2.0 - r.h_l)
                                    : -std::numeric_limits<double>::infinity();
    r.eps_for = std::exp2(r.log2_eps_for);
    r.eps_rep = 0.0;
    r.eps_rob = std::min(1.0, 2.0 * in.eps_ec);
    r.eps_total = std::max({r.eps_rep, r.eps_for, r.eps_rob});
    r.insecure = r.clamped || r.h_l <= 0.0;
    return r;
}

}  // namespace qbasim::secparams
