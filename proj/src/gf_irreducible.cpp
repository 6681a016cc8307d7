#include <algorithm>
#include <cstring>
#include <string>
#include <utility>

#include "gf_region.hpp"
#include "qbasim/errors.hpp"
#include "qbasim/gf.hpp"

namespace qbasim::gf {
namespace {

thread_local std::size_t g_last_attempts = 0;

// Arithmetic in GF(256)[x] / (p) for monic p of degree n >= 1. Residues are
// n coefficients, lowest degree first.
class QuotientRing {
public:
    using Residue = std::vector<std::uint8_t>;

    explicit QuotientRing(const FieldPoly& p)
        : n_(static_cast<std::size_t>(p.degree())),
          low_(p.low_first().begin(), p.low_first().begin() + p.degree()),
          wide_(2 * n_) {}

    [[nodiscard]] std::size_t degree() const { return n_; }

    [[nodiscard]] Residue x() const {
        std::vector<std::uint8_t> work{0, 1};
        reduce(work);
        work.resize(n_, 0);
        return work;
    }

    // a <- a^2. Squaring is additive in characteristic 2, so the square of
    // sum(a_i x^i) is sum(a_i^2 x^(2i)).
    void square(Residue& a) {
        const auto& sq = detail::tables().square;
        std::fill(wide_.begin(), wide_.end(), 0);
        for (std::size_t i = 0; i < n_; ++i) wide_[2 * i] = sq[a[i]];
        for (std::size_t j = 2 * n_ - 1; j-- > n_;) {
            const std::uint8_t c = wide_[j];
            if (c != 0) detail::mul_add_region(c, low_.data(), wide_.data() + (j - n_), n_);
        }
        std::memcpy(a.data(), wide_.data(), n_);
    }

    // a <- a^256, the Frobenius map of GF(256)[x]/(p).
    void frobenius(Residue& a) {
        for (int i = 0; i < 8; ++i) square(a);
    }

    // gcd(a - x, p) is a nonzero constant. Euclid runs in place on scratch
    // buffers; this sits on the hot path of rejection sampling.
    [[nodiscard]] bool coprime_after_subtracting_x(const Residue& a, const Residue& x) {
        auto& u = gcd_u_;
        auto& v = gcd_v_;
        u.assign(low_.begin(), low_.end());
        u.push_back(1);
        v.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] ^ x[i];
        trim(v);
        const auto& inv = detail::tables().inv;
        while (!v.empty()) {
            const std::uint8_t inv_lead = inv[v.back()];
            const std::size_t dv = v.size() - 1;
            while (u.size() > dv) {
                const std::size_t shift = u.size() - 1 - dv;
                const std::uint8_t c = detail::mul(u.back(), inv_lead);
                detail::mul_add_region(c, v.data(), u.data() + shift, dv + 1);
                trim(u);
            }
            std::swap(u, v);
        }
        return u.size() == 1;
    }

private:
    void reduce(std::vector<std::uint8_t>& work) const {
        for (std::size_t j = work.size(); j-- > n_;) {
            const std::uint8_t c = work[j];
            if (c != 0) detail::mul_add_region(c, low_.data(), work.data() + (j - n_), n_);
        }
        if (work.size() > n_) work.resize(n_);
    }

    static void trim(std::vector<std::uint8_t>& poly) {
        while (!poly.empty() && poly.back() == 0) poly.pop_back();
    }

    std::size_t n_;
    std::vector<std::uint8_t> low_;
    std::vector<std::uint8_t> wide_;
    std::vector<std::uint8_t> gcd_u_;
    std::vector<std::uint8_t> gcd_v_;
};

void require_testable(const FieldPoly& p, const char* who) {
    if (!p.is_monic()) throw DomainError(std::string(who) + ": polynomial must be monic");
    if (p.degree() < 1) throw DomainError(std::string(who) + ": polynomial must have degree >= 1");
}

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool ben_or(const FieldPoly& p) {
    QuotientRing ring(p);
    const std::size_t n = ring.degree();
    const auto x = ring.x();
    auto h = x;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        ring.frobenius(h);
        if (!ring.coprime_after_subtracting_x(h, x)) return false;
    }
    return true;
}

}  // namespace

bool is_irreducible(const FieldPoly& p) {
    require_testable(p, "is_irreducible");
    QuotientRing ring(p);
    const std::size_t n = ring.degree();
    if (n == 1) return true;

    const auto primes = prime_factors(n);
    const auto x = ring.x();
    auto h = x;
    for (std::size_t k = 1; k <= n; ++k) {
        ring.frobenius(h);
        for (std::size_t r : primes) {
            if (k == n / r && !ring.coprime_after_subtracting_x(h, x)) return false;
        }
    }
    return h == x;
}

bool is_irreducible_ben_or(const FieldPoly& p) {
    require_testable(p, "is_irreducible_ben_or");
    return ben_or(p);
}

IrreduciblePoly IrreduciblePoly::checked(FieldPoly p) {
    if (!p.is_monic() || p.degree() < 1 || !is_irreducible(p)) {
        throw DomainError("polynomial is not monic irreducible");
    }
    return IrreduciblePoly(std::move(p));
}

IrreduciblePoly sample_irreducible(int degree, RandomStream& rng) {
    if (degree < 1) throw DomainError("sample_irreducible: degree must be >= 1");
    std::vector<std::uint8_t> low(static_cast<std::size_t>(degree));
    std::size_t attempts = 0;
    for (;;) {
        ++attempts;
        rng.fill(low);
        // A zero constant term means x divides the candidate.
        if (degree >= 2 && low[0] == 0) continue;
        FieldPoly candidate = FieldPoly::monic(low);
        if (ben_or(candidate)) {
            g_last_attempts = attempts;
            return IrreduciblePoly(std::move(candidate));
        }
    }
}

std::size_t last_sample_attempts() { return g_last_attempts; }

}  // namespace qbasim::gf
