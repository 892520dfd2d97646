#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "qpartial/geometry.hpp"
#include "qpartial/reduced.hpp"
#include "qpartial/statevector.hpp"

namespace qptest {

inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline qpartial::SearchGeometry random_geometry(std::mt19937_64& rng,
                                                std::int64_t max_n = 4096) {
    for (;;) {
        const std::int64_t K = pick(rng, 2, 16);
        const std::int64_t b = pick(rng, 2, 64);
        if (K * b > max_n) continue;
        const std::int64_t t = pick(rng, 1, K - 1);
        const std::int64_t tau = pick(rng, 1, b - 1);
        return qpartial::validate_geometry(K * b, K, t, tau);
    }
}

inline qpartial::ReducedState random_reduced(std::mt19937_64& rng) {
    auto gauss = [&] {
        // Box-Muller from two uniform draws
        const double u1 = unit_draw(rng) + 1e-18;
        const double u2 = unit_draw(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    qpartial::ReducedState r{{gauss(), gauss()}, {gauss(), gauss()}, {gauss(), gauss()}};
    const double n = r.norm();
    r.m /= n;
    r.ntt /= n;
    r.u /= n;
    return r;
}

inline qpartial::FullState random_full_state(const qpartial::SearchGeometry& g,
                                             std::mt19937_64& rng) {
    auto s = qpartial::uniform_state(g, qpartial::canonical_placement(g));
    double norm2 = 0;
    for (auto& a : s.amp) {
        a = {unit_draw(rng) - 0.5, unit_draw(rng) - 0.5};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : s.amp) a *= inv;
    return s;
}

// sign-change bisection; assumes f(lo) and f(hi) have opposite signs
template <class F>
double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double max_component_delta(const qpartial::ReducedState& a,
                                  const qpartial::ReducedState& b) {
    return std::max({std::abs(a.m - b.m), std::abs(a.ntt - b.ntt), std::abs(a.u - b.u)});
}

}  // namespace qptest
