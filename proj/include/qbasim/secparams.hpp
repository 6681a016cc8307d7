#pragma once

#include <cstdint>

// Finite-key security bounds for one-time universal hashing signatures with
// imperfect (privacy-leaking) keys.
namespace qbasim::secparams {

struct SecurityInputs {
    double l = 512;             ///< key block length in bits
    double m_len = 896;         ///< |M|, message length in bits
    double n_x = 1.05e6;        ///< X-basis (key) bit count
    double n_z = 7.4e5;         ///< Z-basis (test) bit count
    double e_z = 0.0342;
    double e_x = 0.0476;
    double f_ec = 1.1648;
    double eps_gamma = 1e-10;   ///< failure parameter inside the sampling fluctuation term
    double eps_ec = 1e-10;      ///< error-correction failure probability
};

struct SecurityReport {
    double e_p = 0;
    double e1_l = 0;
    double h_l = 0;             ///< min-entropy of an l-bit block, may be <= 0
    double pr_guess = 0;
    double log2_pr_guess = 0;
    double eps_for = 0;
    double log2_eps_for = 0;
    double eps_rep = 0;
    double eps_rob = 0;
    double eps_total = 0;
    double eps_gamma = 0;       ///< echoed so every report states the value it used
    bool clamped = false;       ///< some error rate exceeded 1/2 and was clamped
    bool insecure = false;      ///< clamped, or h_l <= 0
};

/// Binary entropy with base-2 logarithms; h2(0) = h2(1) = 0. Throws
/// DomainError outside [0, 1].
double h2(double x);

/// Fluctuation bound for random sampling without replacement, with
/// A = max(n, k) and G = (n+k)/(nk) * ln((n+k) / (2 pi n k lambda (1-lambda) eps^2)):
///
///   gamma = [(1-2 lambda) A G/(n+k) + sqrt(A^2 G^2/(n+k)^2 + 4 lambda (1-lambda) G)]
///           / [2 + 2 A^2 G/(n+k)^2]
///
/// Throws DomainError for n or k < 1, lambda outside (0, 1), eps outside
/// (0, 1), or a non-positive G.
double gamma(double n, double k, double lambda, double eps);

struct PhaseEstimate {
    double value = 0;
    bool clamped = false;
};

/// e_p = e_z + gamma(n_x, n_z, e_z, eps_gamma), clamped to 1/2.
PhaseEstimate phase_error(const SecurityInputs& inputs);

/// e1_l = e_p + gamma(l, n_x - l, e_p, eps), clamped to 1/2. Throws
/// DomainError when n_x <= l.
PhaseEstimate phase_error_block(double e_p, double l, double n_x, double eps);

/// H_l = l * (1 - h2(e1_l) - f_ec * h2(e_x)).
double min_entropy(const SecurityInputs& inputs, double e1_l);

/// Full report: Pr = 2^-H_l, eps_for = |M| 2^(-2-H_l), eps_rep = 0,
/// eps_rob = 2 eps_ec, eps_total = max of the three. Probabilities are
/// computed in the log2 domain and clamped to [0, 1].
SecurityReport security_bounds(const SecurityInputs& inputs);

/// Throws DomainError unless counts are positive, e_z in (0, 1), e_x in [0, 1],
/// f_ec >= 1, eps values in (0, 1) and m_len >= 0. Rates of 1/2 or more are
/// accepted here and clamped by security_bounds.
void validate(const SecurityInputs& inputs);

}  // namespace qbasim::secparams
