#pragma once

#include "gabor/dual.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gabor {

struct ResidualReport {
    std::map<long, double> per_n;  ///< max |g(x-n/b)h(x) + g(x-n/b+a)h(x+a) - b[n=0]| on [n/b-a, n/b]
    long grid = 0;
    std::size_t points = 0;  ///< total evaluations including injected breakpoints
    double overall = 0;
    /// max |residual| / max(|first term| + |second term| + b[n=0], b): rounding level when h is large
    double relative = 0;
};

/// Worker count from GABOR_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("GABOR_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

// Runs f(i) for i in [0, n) on the worker pool; f writes to its own slot.
template <class F>
void parallel_for(long n, F&& f) {
    unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<long>(n, 1)));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Samples every required duality condition n = 0, +-1, ..., +-(M-1) on a uniform grid of
/// [n/b - a, n/b] (endpoints included), with the case breakpoints of h and the breakpoints
/// of g inserted exactly.
inline ResidualReport duality_residual(const Window& g, const DualWindow& h, const LatticeParams& p, long grid) {
    if (grid < 2) throw std::invalid_argument("residual grid needs at least 2 points");
    const auto& hp = h.params();
    if (hp.alpha != p.alpha || hp.a != p.a || hp.b != p.b || !(h.window() == g))
        throw std::invalid_argument("lattice or window does not match the dual window");
    ResidualReport rep;
    rep.grid = grid;
    auto hb = h.case_breakpoints();
    auto gb = g.breakpoints();
    for (long n = -(p.M - 1); n <= p.M - 1; ++n) {
        auto [lo, hi] = duality_interval(p, n);
        std::vector<Rational> xs;
        xs.reserve(static_cast<std::size_t>(grid) + 64);
        for (long k = 0; k < grid; ++k) xs.push_back(lo + (hi - lo) * Rational(k, grid - 1));
        auto inject = [&](const Rational& x) {
            if (x >= lo && x <= hi) xs.push_back(x);
        };
        for (const auto& t : hb) {
            inject(t);
            inject(Rational(t - p.a));
        }
        Rational shift = p.inv_b() * n;
        for (const auto& t : gb) {
            inject(Rational(t + shift));
            inject(Rational(t + shift - p.a));
        }
        std::vector<double> r(xs.size()), sc(xs.size());
        detail::parallel_for(static_cast<long>(xs.size()), [&](long i) {
            auto k = static_cast<std::size_t>(i);
            r[k] = std::fabs(duality_residual_at(h, n, xs[k], &sc[k]));
        });
        const double inf = std::numeric_limits<double>::infinity(), bd = to_double(p.b);
        double worst = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            bool ok = std::isfinite(r[k]);
            worst = std::max(worst, ok ? r[k] : inf);
            rep.relative = std::max(rep.relative, ok ? r[k] / std::max(sc[k], bd) : inf);
        }
        rep.per_n[n] = worst;
        rep.points += xs.size();
        rep.overall = std::max(rep.overall, worst);
    }
    return rep;
}

struct ZZOptions {
    long max_denominator = 256;  ///< largest admissible q in ab = p/q
};

/// Lower frame bound estimate for rational ab = p/q: the minimum over a nested grid
/// x = i/(N b), theta = k/K of sigma_min(Phi(x, theta))^2 / b, where Phi is the q x p matrix
///   Phi_{r,c}(x, theta) = sum_d g(x - r a - c/b - d p/b) e^{2 pi i d theta}
/// obtained from the block-periodic Ron-Shen matrix (g(x - j a - k/b))_{j,k}.
inline double zz_lower_bound(const Window& g, const Rational& a, const Rational& b, long x_grid, long nu_grid,
                             const ZZOptions& opt = {}) {
    if (x_grid < 1 || nu_grid < 1) throw std::invalid_argument("zz grids must be positive");
    if (a <= 0 || b <= 0) throw std::invalid_argument("a and b must be positive");
    Rational ab = a * b;
    const long p = to_long(Integer(ab.get_num())), q = to_long(Integer(ab.get_den()));
    if (q > opt.max_denominator)
        throw std::domain_error("ab = " + to_string(ab) + " has denominator above " + std::to_string(opt.max_denominator));
    if (p >= q) return 0.0;  // ab >= 1 is handled elsewhere; no lower bound estimate here
    const double ad = to_double(a), bd = to_double(b), ib = 1.0 / bd, per = static_cast<double>(p) * ib;
    const double al = to_double(g.alpha());
    std::vector<double> best(static_cast<std::size_t>(x_grid), std::numeric_limits<double>::infinity());
    detail::parallel_for(x_grid, [&](long i) {
        const double x = static_cast<double>(i) * ib / static_cast<double>(x_grid);
        // g samples per (r, c): t = x - r a - c/b, terms g(t - d per) for the finitely many d in range
        struct Terms {
            long d0 = 0;
            std::vector<double> v;
        };
        std::vector<Terms> terms(static_cast<std::size_t>(p * q));
        for (long r = 0; r < q; ++r)
            for (long c = 0; c < p; ++c) {
                double t = x - static_cast<double>(r) * ad - static_cast<double>(c) * ib;
                long dlo = static_cast<long>(std::ceil((t - al) / per)), dhi = static_cast<long>(std::floor((t + al) / per));
                Terms& tm = terms[static_cast<std::size_t>(r * p + c)];
                tm.d0 = dlo;
                for (long d = dlo; d <= dhi; ++d) tm.v.push_back(g.eval(t - static_cast<double>(d) * per));
            }
        Eigen::MatrixXcd phi(q, p);
        double local = std::numeric_limits<double>::infinity();
        for (long k = 0; k < nu_grid; ++k) {
            const double theta = static_cast<double>(k) / static_cast<double>(nu_grid);
            for (long r = 0; r < q; ++r)
                for (long c = 0; c < p; ++c) {
                    const Terms& tm = terms[static_cast<std::size_t>(r * p + c)];
                    std::complex<double> s = 0;
                    for (std::size_t j = 0; j < tm.v.size(); ++j) {
                        double ang = 2 * std::numbers::pi * theta * static_cast<double>(tm.d0 + static_cast<long>(j));
                        s += tm.v[j] * std::complex<double>(std::cos(ang), std::sin(ang));
                    }
                    phi(r, c) = s;
                }
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi);
            double smin = svd.singularValues()(p - 1);
            local = std::min(local, smin * smin / bd);
        }
        best[static_cast<std::size_t>(i)] = local;
    });
    return *std::min_element(best.begin(), best.end());
}

}  // namespace gabor
