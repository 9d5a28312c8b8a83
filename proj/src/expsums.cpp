#include "sqrtsum/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqrtsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t validate_j(const PrimeContext& ctx, std::int64_t j) {
    std::uint64_t jr = ctx.reduce(j);
    if (jr == 0) throw BadJ("j must be coprime to r");
    return jr;
}

// Table of e_r(k) for k in [0, r); pays for itself once a sum touches most
// residues (Gauss/Salie sums, large bilinear sums).
std::vector<Complex> phase_table(std::uint64_t r) {
    std::vector<Complex> tab(r);
    for (std::uint64_t k = 0; k < r; ++k) {
        tab[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(r));
    }
    return tab;
}

}  // namespace

Complex unit_phase(double x) {
    if (!std::isfinite(x)) throw InvalidParams("unit_phase argument must be finite");
    return std::polar(1.0, kTwoPi * x);
}

Complex unit_phase_ratio(std::int64_t k, std::uint64_t r) {
    std::int64_t m = k % static_cast<std::int64_t>(r);
    if (m < 0) m += static_cast<std::int64_t>(r);
    return std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(r));
}

CoeffSeq::CoeffSeq(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].first == entries_[i - 1].first) {
            throw InvalidParams("duplicate index " +
                                std::to_string(entries_[i].first) +
                                " in coefficient sequence");
        }
    }
    for (const auto& [idx, w] : entries_) {
        (void)idx;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
            throw InvalidParams("coefficient weights must be finite");
        }
        double a = std::abs(w);
        norm1_ += a;
        norm2_sq_ += a * a;
        norm_sup_ = std::max(norm_sup_, a);
    }
    norm2_ = std::sqrt(norm2_sq_);
}

CoeffSeq CoeffSeq::ones(const std::vector<std::int64_t>& support) {
    std::vector<Entry> entries;
    entries.reserve(support.size());
    for (std::int64_t idx : support) entries.emplace_back(idx, Complex{1.0, 0.0});
    return CoeffSeq(std::move(entries));
}

Complex CoeffSeq::at(std::int64_t index) const noexcept {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const Entry& e, std::int64_t v) { return e.first < v; });
    if (it != entries_.end() && it->first == index) return it->second;
    return {0.0, 0.0};
}

std::vector<std::int64_t> CoeffSeq::support() const {
    std::vector<std::int64_t> out;
    out.reserve(entries_.size());
    for (const auto& [idx, w] : entries_) {
        (void)w;
        out.push_back(idx);
    }
    return out;
}

PhaseFn PhaseFn::zero() { return PhaseFn(Family::Zero, 0, 0, 0, 0); }

PhaseFn PhaseFn::linear(double theta) {
    if (!std::isfinite(theta)) throw InvalidParams("linear phase slope must be finite");
    return PhaseFn(Family::Linear, theta, 0, 0, std::abs(theta));
}

PhaseFn PhaseFn::power(double c, double kappa, double domain_lo) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw InvalidParams("power phase requires 0 < kappa < 1");
    }
    if (!(domain_lo >= 1.0)) {
        throw InvalidParams("power phase requires the domain to start at >= 1");
    }
    if (!std::isfinite(c)) throw InvalidParams("power phase scale must be finite");
    // |f'| = |c| kappa m^(kappa-1) decreases in m, so the sup sits at the
    // left edge of the domain.
    double bound = std::abs(c) * kappa * std::pow(domain_lo, kappa - 1.0);
    return PhaseFn(Family::Power, c, kappa, domain_lo, bound);
}

double PhaseFn::operator()(double m) const {
    switch (family_) {
        case Family::Zero:
            return 0.0;
        case Family::Linear:
            return c_ * m;
        case Family::Power:
            if (m < domain_lo_) {
                throw InvalidParams("power phase evaluated left of its domain");
            }
            return c_ * std::pow(m, kappa_);
    }
    return 0.0;
}

Complex bilinear_set_sum(const PrimeContext& ctx, std::int64_t j,
                         const CoeffSeq& alpha, const IntervalSpec& yspan,
                         const PhaseFn& f) {
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t jr = validate_j(ctx, j);
    if (yspan.Y < 1) throw EmptyInterval("interval length Y must be >= 1");
    if (yspan.Y >= r) throw InvalidParams("interval length Y must satisfy Y < r");
    for (const auto& [l, w] : alpha.entries()) {
        (void)w;
        if (ctx.reduce(l) == 0) {
            throw InvalidParams("set-sum indices must be nonzero mod r");
        }
    }

    // Roots depend on m mod r only; collect them once per residue class of
    // the interval.
    KahanSum acc;
    for (std::int64_t m = yspan.first(); m <= yspan.last(); ++m) {
        const std::uint64_t mr = ctx.reduce(m);
        const auto roots = all_sqrts(static_cast<std::int64_t>(ctx.mul(jr, mr)), ctx);
        if (roots.empty()) continue;
        for (const auto& [l, w] : alpha.entries()) {
            const std::uint64_t lr = ctx.reduce(l);
            Complex analytic{1.0, 0.0};
            if (!f.is_zero()) {
                analytic = unit_phase(static_cast<double>(l) * f(static_cast<double>(m)));
            }
            for (std::uint64_t k : roots) {
                acc.add(w * analytic *
                        unit_phase_ratio(static_cast<std::int64_t>(ctx.mul(lr, k)), r));
            }
        }
    }
    return acc.value();
}

Complex bilinear_interval_sum(const PrimeContext& ctx, std::int64_t j,
                              std::uint64_t L, std::uint64_t M,
                              const CoeffSeq& alpha, const CoeffSeq& beta,
                              const PhaseFn& f) {
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t jr = validate_j(ctx, j);
    if (M < 1) throw EmptyInterval("interval bound M must be >= 1");
    const auto lmax = static_cast<std::int64_t>(L);
    for (const auto& [l, w] : alpha.entries()) {
        (void)w;
        if (l < -lmax || l > lmax) {
            throw InvalidParams("alpha support must lie in [-L, L]");
        }
    }
    for (const auto& [m, w] : beta.entries()) {
        (void)w;
        if (m < 1 || m > static_cast<std::int64_t>(M)) {
            throw InvalidParams("beta support must lie in [1, M]");
        }
    }

    KahanSum acc;
    for (const auto& [m, wb] : beta.entries()) {
        const auto roots = all_sqrts(
            static_cast<std::int64_t>(ctx.mul(jr, ctx.reduce(m))), ctx);
        if (roots.empty()) continue;
        for (const auto& [l, wa] : alpha.entries()) {
            const std::uint64_t lr = ctx.reduce(l);
            Complex analytic{1.0, 0.0};
            if (!f.is_zero() && l != 0) {
                analytic = unit_phase(static_cast<double>(l) * f(static_cast<double>(m)));
            }
            for (std::uint64_t k : roots) {
                acc.add(wa * wb * analytic *
                        unit_phase_ratio(static_cast<std::int64_t>(ctx.mul(lr, k)), r));
            }
        }
    }
    return acc.value();
}

Complex gauss_sum(std::int64_t a, std::int64_t b, const PrimeContext& ctx) {
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t ar = ctx.reduce(a);
    const std::uint64_t br = ctx.reduce(b);
    const auto tab = phase_table(r);
    KahanSum acc;
    for (std::uint64_t n = 1; n < r; ++n) {
        std::uint64_t e = ctx.mul(ar, ctx.mul(n, n));
        e += ctx.mul(br, n);
        if (e >= r) e -= r;
        acc.add(tab[e]);
    }
    return acc.value();
}

Complex salie_sum(std::int64_t a, std::int64_t b, const PrimeContext& ctx) {
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t ar = ctx.reduce(a);
    const std::uint64_t br = ctx.reduce(b);
    const auto tab = phase_table(r);
    KahanSum acc;
    for (std::uint64_t n = 1; n < r; ++n) {
        std::uint64_t e = ctx.mul(ar, n);
        e += ctx.mul(br, ctx.inverse(n));
        if (e >= r) e -= r;
        double chi = static_cast<double>(ctx.legendre(static_cast<std::int64_t>(n)));
        acc.add(chi * tab[e]);
    }
    return acc.value();
}

std::int64_t char_window_sum(std::uint64_t U, const PrimeContext& ctx) {
    if (U < 1 || U >= ctx.modulus()) {
        throw RangeError("char_window_sum requires 1 <= U < r");
    }
    std::int64_t sum = 0;
    for (std::uint64_t u = U / 2 + 1; u <= U; ++u) {
        sum += ctx.legendre(static_cast<std::int64_t>(u));
    }
    return sum;
}

}  // namespace sqrtsum
