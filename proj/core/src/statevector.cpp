#include "qpartial/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

namespace qpartial {

namespace {

using Cx = std::complex<double>;

// unbiased bounded draw, independent of library distribution internals
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t reject = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= reject);
    return v % n;
}

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TargetPlacement canonical_placement(const SearchGeometry& g) {
    TargetPlacement p;
    p.items.reserve(g.target_total());
    p.blocks.reserve(g.t);
    for (std::int64_t blk = 0; blk < g.t; ++blk) {
        p.blocks.push_back(blk);
        for (std::int64_t item = 0; item < g.tau; ++item)
            p.items.push_back(blk * g.b + item);
    }
    return p;
}

TargetPlacement random_placement(const SearchGeometry& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates over block labels
    std::vector<std::int64_t> blocks(g.K);
    for (std::int64_t i = 0; i < g.K; ++i) blocks[i] = i;
    for (std::int64_t i = 0; i < g.t; ++i) {
        const auto j = i + static_cast<std::int64_t>(bounded_draw(rng, g.K - i));
        std::swap(blocks[i], blocks[j]);
    }
    blocks.resize(g.t);
    std::sort(blocks.begin(), blocks.end());

    TargetPlacement p;
    p.blocks = blocks;
    std::vector<std::int64_t> slots(g.b);
    for (const auto blk : blocks) {
        for (std::int64_t i = 0; i < g.b; ++i) slots[i] = i;
        for (std::int64_t i = 0; i < g.tau; ++i) {
            const auto j = i + static_cast<std::int64_t>(bounded_draw(rng, g.b - i));
            std::swap(slots[i], slots[j]);
        }
        for (std::int64_t i = 0; i < g.tau; ++i) p.items.push_back(blk * g.b + slots[i]);
    }
    std::sort(p.items.begin(), p.items.end());
    return p;
}

std::int64_t full_state_cap() {
    if (const char* env = std::getenv("QPARTIAL_MAX_FULL_N")) {
        const long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return std::int64_t{1} << 20;
}

FullState uniform_state(const SearchGeometry& g, TargetPlacement placement) {
    if (g.N > full_state_cap())
        throw TooLargeError("N = " + std::to_string(g.N) +
                            " exceeds the full-engine cap " +
                            std::to_string(full_state_cap()));
    FullState s;
    s.geom = g;
    s.placement = std::move(placement);
    s.amp.assign(g.N, Cx(1.0 / std::sqrt(static_cast<double>(g.N)), 0.0));
    return s;
}

void apply_target_phase(FullState& s, Cx phase) {
    for (const auto idx : s.placement.items) s.amp[idx] *= phase;
    ++s.oracle_queries;
}

void apply_target_flip(FullState& s) { apply_target_phase(s, Cx(-1.0, 0.0)); }

void apply_global_reflection(FullState& s) {
    Cx mean = 0;
    for (const auto& a : s.amp) mean += a;
    mean /= static_cast<double>(s.amp.size());
    for (auto& a : s.amp) a = 2.0 * mean - a;
}

void apply_global_reflection_phased(FullState& s, Cx p) {
    Cx sum = 0;
    for (const auto& a : s.amp) sum += a;
    const Cx shift = p * sum / static_cast<double>(s.amp.size());
    for (auto& a : s.amp) a = shift - a;
}

void apply_global_iteration(FullState& s) {
    apply_target_flip(s);
    apply_global_reflection(s);
}

void apply_local_iterations(FullState& s, std::int64_t j2) {
    const auto b = s.geom.b;
    for (std::int64_t it = 0; it < j2; ++it) {
        apply_target_flip(s);
        for (std::int64_t blk = 0; blk < s.geom.K; ++blk) {
            Cx mean = 0;
            for (std::int64_t i = blk * b; i < (blk + 1) * b; ++i) mean += s.amp[i];
            mean /= static_cast<double>(b);
            for (std::int64_t i = blk * b; i < (blk + 1) * b; ++i)
                s.amp[i] = 2.0 * mean - s.amp[i];
        }
    }
}

void apply_step3(FullState& s, Step3Ordering ordering) {
    if (ordering == Step3Ordering::ReflectionThenOracle) {
        apply_global_reflection(s);
        apply_target_flip(s);
    } else {
        apply_target_flip(s);
        apply_global_reflection(s);
    }
}

void apply_final_phased(FullState& s, double theta, double phi) {
    // one query total: the oracle-dependent factor inside the operator
    apply_target_phase(s, std::exp(Cx(0, phi - theta)));
    apply_global_reflection_phased(s, 1.0 - std::exp(Cx(0, 2.0 * theta)));
}

std::vector<double> block_marginals(const FullState& s) {
    std::vector<double> p(s.geom.K, 0.0);
    for (std::int64_t blk = 0; blk < s.geom.K; ++blk)
        for (std::int64_t i = blk * s.geom.b; i < (blk + 1) * s.geom.b; ++i)
            p[blk] += std::norm(s.amp[i]);
    return p;
}

std::int64_t sample_block(const FullState& s, std::uint64_t seed) {
    const auto p = block_marginals(s);
    std::mt19937_64 rng(seed);
    const double u = unit_draw(rng);
    double acc = 0;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(p.size()); ++k) {
        acc += p[k];
        if (u < acc) return k;
    }
    return static_cast<std::int64_t>(p.size()) - 1;
}

namespace {

// class masks: 0 target item, 1 non-target item in a target block, 2 rest
std::vector<unsigned char> class_of(const FullState& s) {
    std::vector<unsigned char> cls(s.geom.N, 2);
    for (const auto blk : s.placement.blocks)
        std::fill(cls.begin() + blk * s.geom.b, cls.begin() + (blk + 1) * s.geom.b,
                  static_cast<unsigned char>(1));
    for (const auto idx : s.placement.items) cls[idx] = 0;
    return cls;
}

}  // namespace

ClassProjection project_classes(const FullState& s) {
    const auto cls = class_of(s);
    Cx sum[3] = {0, 0, 0};
    std::int64_t count[3] = {0, 0, 0};
    for (std::int64_t i = 0; i < s.geom.N; ++i) {
        sum[cls[i]] += s.amp[i];
        ++count[cls[i]];
    }
    double spread = 0;
    for (std::int64_t i = 0; i < s.geom.N; ++i) {
        const Cx mean = sum[cls[i]] / static_cast<double>(count[cls[i]]);
        spread = std::max(spread, std::abs(s.amp[i] - mean));
    }
    ClassProjection out;
    out.reduced.m = sum[0] / std::sqrt(static_cast<double>(count[0]));
    out.reduced.ntt = sum[1] / std::sqrt(static_cast<double>(count[1]));
    out.reduced.u = sum[2] / std::sqrt(static_cast<double>(count[2]));
    out.symmetry_residual = spread;
    return out;
}

FullState embed_reduced(const SearchGeometry& g, TargetPlacement placement,
                        const ReducedState& r) {
    FullState s = uniform_state(g, std::move(placement));
    const auto cls = class_of(s);
    const Cx per[3] = {
        r.m / std::sqrt(static_cast<double>(g.target_total())),
        r.ntt / std::sqrt(static_cast<double>(g.t * (g.b - g.tau))),
        r.u / std::sqrt(static_cast<double>(g.b * (g.K - g.t)))};
    for (std::int64_t i = 0; i < g.N; ++i) s.amp[i] = per[cls[i]];
    return s;
}

double state_norm(const FullState& s) {
    double n2 = 0;
    for (const auto& a : s.amp) n2 += std::norm(a);
    return std::sqrt(n2);
}

std::string amplitudes_json(const FullState& s) {
    std::string out;
    out.reserve(s.amp.size() * 24 + 2);
    out += '[';
    char buf[64];
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        if (i) out += ',';
        std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", s.amp[i].real(),
                      s.amp[i].imag());
        out += buf;
    }
    out += ']';
    return out;
}

double max_nontarget_amplitude(const FullState& s) {
    std::vector<bool> is_target_block(s.geom.K, false);
    for (const auto blk : s.placement.blocks) is_target_block[blk] = true;
    double worst = 0;
    for (std::int64_t blk = 0; blk < s.geom.K; ++blk) {
        if (is_target_block[blk]) continue;
        for (std::int64_t i = blk * s.geom.b; i < (blk + 1) * s.geom.b; ++i)
            worst = std::max(worst, std::abs(s.amp[i]));
    }
    return worst;
}

}  // namespace qpartial
