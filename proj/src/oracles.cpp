/**
 * @file oracles.cpp
 * @brief Brute-force validation oracles.
 */

#include "wmap/oracles.hpp"

#include <cmath>
#include <random>

#include "wmap/positivity.hpp"

namespace wmap {

namespace {

/// Support-restricted f; returns false through `singular` when some z_i
/// vanishes on the support (certain refutation of positivity).
bool eval_support_f(const WMatrix& W, const std::array<double, 3>& x,
                    double& out) {
    double f = 0;
    for (int i = 0; i < 3; ++i) {
        if (x[i] <= 0) continue;
        double z = 0;
        for (int j = 0; j < 3; ++j) z += W.at(i, j) * x[j];
        if (z <= 0) return false;
        f += x[i] / z;
    }
    out = f;
    return true;
}

}  // namespace

MaxFResult max_f_on_simplex(const WMatrix& W, int depth) {
    MaxFResult res;
    res.max_value = -1e300;

    for (int i = 0; i <= depth; ++i) {
        for (int j = 0; j <= depth - i; ++j) {
            int k = depth - i - j;
            std::array<double, 3> x{static_cast<double>(i) / depth,
                                    static_cast<double>(j) / depth,
                                    static_cast<double>(k) / depth};
            double f;
            if (!eval_support_f(W, x, f)) {
                if (!res.singular) {
                    res.singular = true;
                    res.singular_witness = x;
                }
                continue;
            }
            if (f > res.max_value) {
                res.max_value = f;
                res.argmax = x;
            }
        }
    }

    // Local refinement: move mass between coordinate pairs with a shrinking
    // step, starting from the best lattice point.
    std::array<double, 3> x = res.argmax;
    double h = 1.0 / depth;
    for (int it = 0; it < 50; ++it) {
        bool improved = false;
        for (int p = 0; p < 3 && !improved; ++p) {
            for (int q = 0; q < 3; ++q) {
                if (p == q) continue;
                std::array<double, 3> y = x;
                y[p] += h;
                y[q] -= h;
                if (y[q] < 0) continue;
                double f;
                if (!eval_support_f(W, y, f)) continue;
                if (f > res.max_value) {
                    res.max_value = f;
                    res.argmax = y;
                    x = y;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return res;
}

ProbeReport rank_one_probe(const WMatrix& W, int samples, std::uint64_t seed) {
    ProbeReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.min_eigenvalue = 1e300;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    for (int s = 0; s < samples; ++s) {
        // Normalized exponentials are uniform on the simplex.
        double e0 = -std::log1p(-u(rng));
        double e1 = -std::log1p(-u(rng));
        double e2 = -std::log1p(-u(rng));
        double tot = e0 + e1 + e2;
        std::array<double, 3> x{e0 / tot, e1 / tot, e2 / tot};
        std::array<double, 3> amp{std::sqrt(x[0]), std::sqrt(x[1]), std::sqrt(x[2])};

        SymMatrix m(3);
        for (int i = 0; i < 3; ++i) {
            double z = 0;
            for (int j = 0; j < 3; ++j) z += W.at(i, j) * x[j];
            for (int j = 0; j < 3; ++j)
                m.at(i, j) = (i == j ? z : 0.0) - amp[i] * amp[j];
        }
        double lo = eig_sym(m).values.front();
        if (lo < rep.min_eigenvalue) {
            rep.min_eigenvalue = lo;
            rep.argmin = amp;
        }
    }
    return rep;
}

WMatrix random_wmatrix(std::mt19937_64& rng, bool vertex_admissible) {
    std::uniform_real_distribution<double> u(0, 1);
    for (;;) {
        BirkhoffParams p;
        p.a = 0.8 + 3.2 * u(rng);
        p.b = 2 * u(rng);
        p.c = 2 * u(rng);
        // Traceless part: random direction and radius bounded by the largest
        // scale in play; rejection keeps only entrywise-valid draws.
        double rad = u(rng) * (p.a + p.b + p.c) / 2;
        double phi = 2 * 3.14159265358979323846 * u(rng);
        p.d = std::sqrt(2.0 / 3.0) * rad * std::cos(phi);
        p.e = std::sqrt(2.0 / 3.0) * rad * std::cos(phi + 2 * 3.14159265358979323846 / 3);
        p.f = -p.d - p.e;
        try {
            WMatrix W = w_from_birkhoff(p);
            if (W.block_diagonal) continue;
            if (vertex_admissible &&
                (W.at(0, 0) < 1 || W.at(1, 1) < 1 || W.at(2, 2) < 1))
                continue;
            return W;
        } catch (const domain_error&) {
            continue;
        }
    }
}

SymMatrix fd_hessian_f(const WMatrix& W, const std::array<double, 3>& x,
                       double step) {
    SymMatrix H(3);
    auto shifted = [&](int i, double hi, int j, double hj) {
        std::array<double, 3> y = x;
        y[i] += hi;
        y[j] += hj;
        return f_value(W, y);
    };
    double f0 = f_value(W, x);
    for (int i = 0; i < 3; ++i) {
        H.at(i, i) =
            (shifted(i, step, i, 0) - 2 * f0 + shifted(i, -step, i, 0)) / (step * step);
        for (int j = i + 1; j < 3; ++j) {
            double v = (shifted(i, step, j, step) - shifted(i, step, j, -step) -
                        shifted(i, -step, j, step) + shifted(i, -step, j, -step)) /
                       (4 * step * step);
            H.set_sym(i, j, v);
        }
    }
    return H;
}

}  // namespace wmap
