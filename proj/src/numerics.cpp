/**
 * @file numerics.cpp
 * @brief Jacobi eigensolver and closed-form root finding (degrees 1..4).
 */

#include "wmap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace wmap {

namespace {

double env_override(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    double x = std::strtod(v, &end);
    return (end != v && x > 0) ? x : fallback;
}

}  // namespace

Tolerance tolerance_from_env() {
    Tolerance tol;
    const char* profile = std::getenv("WMAP_TOL_PROFILE");
    if (profile != nullptr) {
        std::string p(profile);
        if (p == "strict") tol = Tolerance::strict();
        else if (p == "loose") tol = Tolerance::loose();
    }
    tol.eps_psd = env_override("WMAP_EPS_PSD", tol.eps_psd);
    tol.eps_eq = env_override("WMAP_EPS_EQ", tol.eps_eq);
    tol.eps_root = env_override("WMAP_EPS_ROOT", tol.eps_root);
    return tol;
}

SymMatrix::SymMatrix(int n) : n_(n) {
    if (n < 2 || n > kMaxN) n_ = 2;  // callers pass literal sizes; clamp defensively
}

double SymMatrix::max_abs() const {
    double m = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m = std::max(m, std::abs(at(i, j)));
    return m;
}

void SymMatrix::symmetrize() {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            double v = 0.5 * (at(i, j) + at(j, i));
            at(i, j) = v;
            at(j, i) = v;
        }
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < m.n(); ++i) m.at(i, i) = 1;
    return m;
}

EigResult eig_sym(const SymMatrix& m) {
    const int n = m.n();
    double a[SymMatrix::kMaxN][SymMatrix::kMaxN];
    double v[SymMatrix::kMaxN][SymMatrix::kMaxN];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a[i][j] = 0.5 * (m.at(i, j) + m.at(j, i));
            v[i][j] = (i == j) ? 1.0 : 0.0;
        }

    double scale = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
    const double thr = 1e-12 * scale;

    if (scale > 0) {
        for (int sweep = 0; sweep < 200; ++sweep) {
            double off = 0;
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
            if (off <= thr) break;

            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    double apq = a[p][q];
                    if (std::abs(apq) <= 0.01 * thr) continue;
                    double theta = (a[q][q] - a[p][p]) / (2 * apq);
                    double t = (theta >= 0 ? 1.0 : -1.0) /
                               (std::abs(theta) + std::sqrt(theta * theta + 1));
                    double c = 1 / std::sqrt(t * t + 1);
                    double s = t * c;

                    for (int k = 0; k < n; ++k) {
                        if (k == p || k == q) continue;
                        double akp = a[k][p], akq = a[k][q];
                        a[k][p] = a[p][k] = c * akp - s * akq;
                        a[k][q] = a[q][k] = s * akp + c * akq;
                    }
                    a[p][p] -= t * apq;
                    a[q][q] += t * apq;
                    a[p][q] = a[q][p] = 0;

                    for (int k = 0; k < n; ++k) {
                        double vkp = v[k][p], vkq = v[k][q];
                        v[k][p] = c * vkp - s * vkq;
                        v[k][q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[i][i] < a[j][j]; });

    EigResult res;
    res.values.resize(n);
    res.vectors.resize(n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = a[order[k]][order[k]];
        res.vectors[k].fill(0);
        for (int i = 0; i < n; ++i) res.vectors[k][i] = v[i][order[k]];
    }
    return res;
}

bool is_psd(const SymMatrix& m, const Tolerance& tol) {
    EigResult e = eig_sym(m);
    return e.values.front() >= -tol.eps_psd;
}

double poly_eval(const Poly& p, double x) {
    double acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

double poly_deriv_eval(const Poly& p, double x) {
    double acc = 0;
    for (int k = static_cast<int>(p.coeffs.size()) - 1; k >= 1; --k)
        acc = acc * x + k * p.coeffs[k];
    return acc;
}

/// A few Newton steps against the original (unstripped) polynomial; keeps the
/// iterate with the smallest absolute residual.
double polish(const Poly& p, double x) {
    double best = x, best_res = std::abs(poly_eval(p, x));
    for (int it = 0; it < 10; ++it) {
        double d = poly_deriv_eval(p, x);
        if (std::abs(d) < 1e-300) break;
        x -= poly_eval(p, x) / d;
        if (!std::isfinite(x)) break;
        double res = std::abs(poly_eval(p, x));
        if (res < best_res) {
            best = x;
            best_res = res;
        }
    }
    return best;
}

/// Keeps a candidate root re + i*im when the imaginary part passes the
/// realness cut |im| <= 1e-9 * (1 + |re|).
void push_if_real(std::vector<double>& out, double re, double im) {
    if (std::abs(im) <= 1e-9 * (1 + std::abs(re))) out.push_back(re);
}

/// Roots of x^2 + bx + c appended to out (complex pairs filtered).
void quadratic_roots(double b, double c, std::vector<double>& out) {
    double disc = b * b - 4 * c;
    if (disc >= 0) {
        double sq = std::sqrt(disc);
        // Stable form: avoid cancellation on the smaller-magnitude root.
        double q = -0.5 * (b + (b >= 0 ? sq : -sq));
        out.push_back(q);
        out.push_back(std::abs(q) > 1e-300 ? c / q : -b - q);
    } else {
        push_if_real(out, -b / 2, std::sqrt(-disc) / 2);
        push_if_real(out, -b / 2, -std::sqrt(-disc) / 2);
    }
}

/// Real roots of the monic cubic x^3 + a x^2 + b x + c.
void cubic_roots(double a, double b, double c, std::vector<double>& out) {
    double q = (a * a - 3 * b) / 9;
    double r = (2 * a * a * a - 9 * a * b + 27 * c) / 54;
    if (r * r < q * q * q) {
        double th = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
        double s = -2 * std::sqrt(q);
        out.push_back(s * std::cos(th / 3) - a / 3);
        out.push_back(s * std::cos((th + 2 * M_PI) / 3) - a / 3);
        out.push_back(s * std::cos((th - 2 * M_PI) / 3) - a / 3);
    } else {
        double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
        double small = (big != 0) ? q / big : 0;
        out.push_back(big + small - a / 3);
        // The conjugate pair is real only when it degenerates to a double root.
        push_if_real(out, -(big + small) / 2 - a / 3, std::sqrt(3.0) / 2 * std::abs(big - small));
        if (std::abs(big - small) <= 1e-9 * (1 + std::abs(big + small)))
            out.push_back(-(big + small) / 2 - a / 3);
    }
}

/// Real roots of the monic quartic x^4 + a x^3 + b x^2 + c x + d, by
/// factoring the depressed quartic into two quadratics through the resolvent
/// cubic.
void quartic_roots(double a, double b, double c, double d, std::vector<double>& out) {
    // Depress: x = y - a/4.
    double p = b - 3 * a * a / 8;
    double q = c - a * b / 2 + a * a * a / 8;
    double r = d - a * c / 4 + a * a * b / 16 - 3 * a * a * a * a / 256;
    double shift = -a / 4;

    // Resolvent: 8z^3 + 8p z^2 + (2p^2 - 8r) z - q^2 = 0 has a root z >= 0
    // (value at 0 is -q^2 <= 0). Pick the largest real root.
    std::vector<double> zs;
    cubic_roots(p, (2 * p * p - 8 * r) / 8, -q * q / 8, zs);
    double z = *std::max_element(zs.begin(), zs.end());
    if (z < 0) z = 0;
    double alpha = std::sqrt(2 * z);

    if (alpha > 1e-10 * (1 + std::abs(p))) {
        // (y^2 + alpha y + s)(y^2 - alpha y + t)
        double s = (p + alpha * alpha - q / alpha) / 2;
        double t = (p + alpha * alpha + q / alpha) / 2;
        std::vector<double> ys;
        quadratic_roots(alpha, s, ys);
        quadratic_roots(-alpha, t, ys);
        for (double y : ys) out.push_back(y + shift);
    } else {
        // Biquadratic y^4 + p y^2 + r.
        std::vector<double> us;
        quadratic_roots(p, r, us);
        for (double u : us) {
            if (u >= 0) {
                out.push_back(std::sqrt(u) + shift);
                out.push_back(-std::sqrt(u) + shift);
            } else {
                push_if_real(out, shift, std::sqrt(-u));
            }
        }
    }
}

}  // namespace

std::vector<double> real_roots(const Poly& p, const Tolerance&) {
    double maxc = 0;
    for (double c : p.coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0) return {};

    // Strip near-zero leading coefficients so a degenerate leading term drops
    // the degree instead of manufacturing one huge spurious root.
    std::vector<double> c = p.coeffs;
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * maxc) c.pop_back();
    int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return {};

    double lead = c.back();
    std::vector<double> roots;
    switch (deg) {
        case 1:
            roots.push_back(-c[0] / c[1]);
            break;
        case 2:
            quadratic_roots(c[1] / lead, c[0] / lead, roots);
            break;
        case 3:
            cubic_roots(c[2] / lead, c[1] / lead, c[0] / lead, roots);
            break;
        default:
            quartic_roots(c[3] / lead, c[2] / lead, c[1] / lead, c[0] / lead, roots);
            break;
    }

    for (double& x : roots) x = polish(p, x);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace wmap
