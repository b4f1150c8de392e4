#pragma once

// The consistent weighted sampling family. Each sketcher computes, per (hash, element),
// a hash value a_k from keyed variates and emits (k*, y_k*) for k* = argmin a_k.
// The per-element routines are exposed so tests can check the floor-form bounds and
// cell consistency directly.

#include "wmh/sketch_common.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace wmh {

// ---------------------------------------------------------------------------
// CWS: explicit traversal of active indices over the dyadic intervals (2^{j-1}, 2^j].

/// j such that 2^{j-1} < w <= 2^j.
inline int dyadic_interval(double w) {
    int e = 0;
    const double f = std::frexp(w, &e);
    return f == 0.5 ? e - 1 : e;
}

/// Packs (interval j, chain position m) into a draw counter.
constexpr std::uint64_t pack_chain(int j, std::uint64_t m) noexcept {
    return (static_cast<std::uint64_t>(j + 2048) << 32) | (m & 0xffffffffULL);
}

inline constexpr int kMaxIntervalSearch = 64;

struct CwsElement {
    double y = 0.0; // largest active index <= w
    double z = 0.0; // smallest active index > w
    double a = 0.0; // hash value, Gamma(2,1) / z
    int z_interval = 0;
    std::uint64_t z_rank = 0;
};

/// Active indices of element k: in interval j the chain x_1 = 2^j u_1,
/// x_{m+1} = x_m u_{m+1} runs down to 2^{j-1}; each interval restarts from its own
/// upper endpoint. The hash is a = c / z with c ~ Gamma(2,1) drawn once per (d, k).
template <class Source>
CwsElement cws_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                       double weight) {
    const int j0 = dyadic_interval(weight);
    VariateKey key{seed, d, k, Slot::Chain, 0};
    CwsElement out;
    bool have_y = false, have_z = false;

    {
        const double lower = std::ldexp(1.0, j0 - 1);
        double x = std::ldexp(1.0, j0);
        for (std::uint64_t m = 1;; ++m) {
            key.counter = pack_chain(j0, m);
            x *= src.uniform01(key);
            if (x <= lower) break;
            if (x > weight) {
                out.z = x;
                out.z_interval = j0;
                out.z_rank = m;
                have_z = true;
            } else {
                out.y = x;
                have_y = true;
                break;
            }
        }
    }

    for (int j = j0 - 1; !have_y; --j) {
        if (j0 - j > kMaxIntervalSearch) throw Error(ErrorCode::Internal, "CWS search below weight");
        const double lower = std::ldexp(1.0, j - 1);
        key.counter = pack_chain(j, 1);
        const double x = std::ldexp(1.0, j) * src.uniform01(key);
        if (x > lower) {
            out.y = x;
            have_y = true;
        }
    }

    for (int j = j0 + 1; !have_z; ++j) {
        if (j - j0 > kMaxIntervalSearch) throw Error(ErrorCode::Internal, "CWS search above weight");
        const double lower = std::ldexp(1.0, j - 1);
        double x = std::ldexp(1.0, j);
        for (std::uint64_t m = 1;; ++m) {
            key.counter = pack_chain(j, m);
            x *= src.uniform01(key);
            if (x <= lower) break;
            out.z = x;
            out.z_interval = j;
            out.z_rank = m;
            have_z = true;
        }
    }

    // One Gamma draw per (d, k): a = c / z is then non-increasing in the weight, which
    // the collision law needs. Keying c by z's position would redraw it whenever z
    // moves and let a smaller weight produce a smaller hash.
    const double c = gamma21(src, VariateKey{seed, d, k, Slot::CwsGamma, 0});
    out.a = c / out.z;
    return out;
}

// ---------------------------------------------------------------------------
// ICWS and 0-bit CWS

struct IcwsElement {
    double r = 0.0, beta = 0.0, c = 0.0;
    double t = 0.0; // floor cell
    double y = 0.0, a = 0.0;
};

/// r ~ Gamma(2,1), beta ~ U(0,1), c ~ Gamma(2,1);
/// y = exp(r (floor(ln w / r + beta) - beta)), a = c / (y e^r). Five uniforms.
template <class Source>
IcwsElement icws_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                         double weight) {
    IcwsElement e;
    e.r = gamma21(src, VariateKey{seed, d, k, Slot::R1, 0});
    e.beta = src.uniform01(VariateKey{seed, d, k, Slot::Beta, 0});
    e.c = gamma21(src, VariateKey{seed, d, k, Slot::C1, 0});
    e.t = std::floor(std::log(weight) / e.r + e.beta);
    e.y = std::exp(e.r * (e.t - e.beta));
    e.a = e.c / (e.y * std::exp(e.r));
    return e;
}

// ---------------------------------------------------------------------------
// CCWS

struct CcwsElement {
    double r = 0.0, beta = 0.0, c = 0.0;
    double t = 0.0;
    double y = 0.0, z = 0.0;
    double a = std::numeric_limits<double>::infinity();
    bool degenerate = false;
};

/// Linear-scale quantization: r ~ Beta(2,1), y = r (floor(w / r + beta) - beta),
/// 1/z = 1/y - 2r, a = c / z. When 1/y - 2r <= 0 (or y <= 0) the element is
/// degenerate and a = +inf.
template <class Source>
CcwsElement ccws_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                         double weight) {
    CcwsElement e;
    e.r = beta21(src, VariateKey{seed, d, k, Slot::R1, 0});
    e.beta = src.uniform01(VariateKey{seed, d, k, Slot::Beta, 0});
    e.c = gamma21(src, VariateKey{seed, d, k, Slot::C1, 0});
    e.t = std::floor(weight / e.r + e.beta);
    e.y = e.r * (e.t - e.beta);
    const double inv_z = 1.0 / e.y - 2.0 * e.r;
    if (!(e.y > 0.0) || !(inv_z > 0.0)) {
        e.degenerate = true;
        e.z = std::numeric_limits<double>::infinity();
        return e;
    }
    e.z = 1.0 / inv_z;
    e.a = e.c / e.z;
    return e;
}

// ---------------------------------------------------------------------------
// PCWS

struct PcwsElement {
    double u1 = 0.0, u2 = 0.0, beta = 0.0, x = 0.0;
    double r = 0.0, t = 0.0;
    double y = 0.0, s_hat = 0.0, a = 0.0;
};

/// Four uniforms: r = -ln(u1 u2), y as in ICWS, S^ = y / u1, a = -ln(x) / S^.
template <class Source>
PcwsElement pcws_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                         double weight) {
    PcwsElement e;
    e.u1 = src.uniform01(VariateKey{seed, d, k, Slot::U1, 0});
    e.u2 = src.uniform01(VariateKey{seed, d, k, Slot::U2, 0});
    e.beta = src.uniform01(VariateKey{seed, d, k, Slot::Beta, 0});
    e.x = src.uniform01(VariateKey{seed, d, k, Slot::X, 0});
    e.r = -(std::log(e.u1) + std::log(e.u2));
    e.t = std::floor(std::log(weight) / e.r + e.beta);
    e.y = std::exp(e.r * (e.t - e.beta));
    e.s_hat = e.y / e.u1;
    e.a = -std::log(e.x) / e.s_hat;
    return e;
}

// ---------------------------------------------------------------------------
// I2CWS: z and y from independent variates; y evaluated only for the winner.

struct I2cwsZ {
    double r = 0.0, beta = 0.0, c = 0.0;
    double t = 0.0;
    double z = 0.0, a = 0.0;
};

struct I2cwsY {
    double r = 0.0, beta = 0.0;
    double t = 0.0;
    double y = 0.0;
};

template <class Source>
I2cwsZ i2cws_z_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                       double weight) {
    I2cwsZ e;
    e.r = gamma21(src, VariateKey{seed, d, k, Slot::R2, 0});
    e.beta = src.uniform01(VariateKey{seed, d, k, Slot::B2, 0});
    e.c = gamma21(src, VariateKey{seed, d, k, Slot::C1, 0});
    e.t = std::floor(std::log(weight) / e.r + e.beta);
    e.z = std::exp(e.r * (e.t - e.beta + 1.0));
    e.a = e.c / e.z;
    return e;
}

template <class Source>
I2cwsY i2cws_y_element(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                       double weight) {
    I2cwsY e;
    e.r = gamma21(src, VariateKey{seed, d, k, Slot::R1, 0});
    e.beta = src.uniform01(VariateKey{seed, d, k, Slot::B1, 0});
    e.t = std::floor(std::log(weight) / e.r + e.beta);
    e.y = std::exp(e.r * (e.t - e.beta));
    return e;
}

// ---------------------------------------------------------------------------

Fingerprint sketch_cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});
Fingerprint sketch_icws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});
/// ICWS with y dropped from the code.
Fingerprint sketch_0bit_cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});
/// Hashes where every element is degenerate emit the sentinel code.
Fingerprint sketch_ccws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});
Fingerprint sketch_pcws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});
Fingerprint sketch_i2cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

} // namespace wmh
