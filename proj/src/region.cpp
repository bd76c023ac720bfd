/**
 * @file region.cpp
 * @brief Boundary-curve computation and CSV/JSON/SVG serialization.
 */

#include "wmap/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>

namespace wmap {

namespace {

constexpr double kPi = 3.14159265358979323846;

double nanmin(double x, double y) {
    if (std::isnan(x)) return y;
    if (std::isnan(y)) return x;
    return std::min(x, y);
}

/// max(-cos(phi), -cos(phi - 2pi/3), -cos(phi + 2pi/3)); always >= 1/2.
double worst_direction(double phi) {
    double m = -std::cos(phi);
    m = std::max(m, -std::cos(phi - 2 * kPi / 3));
    m = std::max(m, -std::cos(phi + 2 * kPi / 3));
    return m;
}

std::string fmt(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

double triangle_mu(double a, double b, double c) {
    return std::min(a - 1, std::min(b, c));
}

std::array<double, 2> plane_xy(double phi, double r) {
    return {r * std::cos(phi + kPi / 2), r * std::sin(phi + kPi / 2)};
}

Triangle triangle(double a, double b, double c, int samples_per_edge) {
    Triangle t;
    t.mu = triangle_mu(a, b, c);
    if (t.mu <= 0) {
        t.empty = true;
        return t;
    }
    double R = std::sqrt(6.0) * t.mu;
    std::array<std::array<double, 2>, 3> v{plane_xy(0, R), plane_xy(2 * kPi / 3, R),
                                           plane_xy(4 * kPi / 3, R)};
    int per = std::max(1, samples_per_edge);
    for (int edge = 0; edge < 3; ++edge) {
        const auto& p0 = v[edge];
        const auto& p1 = v[(edge + 1) % 3];
        for (int k = 0; k < per; ++k) {
            double s = static_cast<double>(k) / per;
            t.points.push_back({p0[0] + s * (p1[0] - p0[0]), p0[1] + s * (p1[1] - p0[1])});
        }
    }
    t.points.push_back(v[0]);  // close
    return t;
}

double hessian_radius(double a, double b, double c) {
    double g = std::sqrt((a - 2 * b - 2 * c) * (a - 2 * b - 2 * c) +
                         3 * (b - c) * (b - c));
    return (a + b + c - g) / std::sqrt(6.0);
}

std::vector<ArcSample> bean_arc_raw(double a, double b, double c, double phi0,
                                    double phi1, int n, const Tolerance& tol) {
    // Internally everything is in "half-spread" units rho = r / sqrt(6), in
    // which d = 2 rho cos(phi) etc.; converted back on output.
    const double A1 = a + b + c - 1;
    const double K = (a - 1) * (a - 1) - b * c - 1;
    const double mu = triangle_mu(a, b, c);

    std::vector<ArcSample> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        double phi = phi0 + (phi1 - phi0) * k / (n - 1);
        double cs = std::cos(phi), sn = std::sin(phi);

        // Squaring the saturation equation twice gives a quartic in rho.
        Poly quartic;
        quartic.coeffs = {K * K / 4 - b * c,
                          -(A1 * K + 2 * (b + c)) * cs,
                          (A1 * A1 - 4) * cs * cs - 1.5 * K,
                          3 * A1 * cs,
                          2.25};
        std::vector<double> roots = real_roots(quartic, tol);

        double bound = 0.5 * mu / worst_direction(phi);
        double best = std::numeric_limits<double>::quiet_NaN();
        for (double rho : roots) {  // ascending: first admissible is minimal
            if (rho <= 0) continue;
            // Squaring introduces spurious roots; keep only those solving
            // the original equation with both square roots real.
            double t1 = (a - 1 - rho * cs) * (a - 1 - rho * cs) - 3 * rho * rho * sn * sn;
            double t2 = ((b + c) / 2 + 2 * rho * cs) * ((b + c) / 2 + 2 * rho * cs) -
                        (b - c) * (b - c) / 4;
            if (t1 < 0 || t2 < 0) continue;
            if (std::abs(std::sqrt(t1) + std::sqrt(t2) - 1) > tol.eps_root) continue;
            if (rho > bound + 1e-12) continue;
            best = rho;
            break;
        }
        out.push_back({phi, best * std::sqrt(6.0)});
    }
    return out;
}

std::vector<ArcSample> bean_arc(double a, double b, double c, int n,
                                const Tolerance& tol) {
    if (n < 3 || n % 2 == 0) throw domain_error("arc sample count must be odd, >= 3");
    const int m = (n - 1) / 2;

    // The raw curve is evaluated on [pi/3, pi]: the native range of the
    // edge-(0,1) arc is [2pi/3, 4pi/3], and [pi/3, 2pi/3) carries the
    // prolonged branch of the neighboring pair that may cut the arc short.
    std::vector<ArcSample> raw = bean_arc_raw(a, b, c, kPi / 3, kPi, n, tol);

    std::vector<double> folded(m + 1);
    for (int k = 0; k <= m; ++k) folded[k] = nanmin(raw[m - k].r, raw[m + k].r);

    // Mirror about phi = pi (the curve is symmetric under e <-> f).
    std::vector<ArcSample> out(n);
    const double step = (2 * kPi / 3) / (n - 1);
    for (int j = 0; j < n; ++j)
        out[j] = {2 * kPi / 3 + j * step, folded[j <= m ? j : (n - 1) - j]};
    return out;
}

std::vector<CpSample> cp_boundary(double a, double b, double c, int n,
                                  const Tolerance& tol) {
    std::vector<CpSample> out;
    out.reserve(n);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double mu = triangle_mu(a, b, c);
    for (int k = 0; k < n; ++k) {
        double phi = 2 * kPi * k / (n - 1);
        CpSample s;
        s.phi = phi;
        if (a <= 3) {
            // The uniform direction is CP only from a = 3 on; below that the
            // CP set does not reach into the plane.
            s.raw_r = nan;
            s.r = nan;
            out.push_back(s);
            continue;
        }
        double cs = std::cos(phi);
        // sum_i 1/W_ii = 1 in polar coordinates clears to a cubic in r.
        Poly cubic;
        cubic.coeffs = {a * a * (a - 3), 0, -(a - 1) / 2,
                        std::pow(2.0 / 3.0, 1.5) * cs * (cs * cs - 0.75)};
        double raw = nan;
        for (double r : real_roots(cubic, tol))
            if (r > 0 && !(r >= raw)) raw = r;  // min positive (NaN-safe)
        s.raw_r = raw;
        if (std::isnan(raw)) {
            s.r = nan;
        } else if (mu <= 0) {
            s.r = nan;
            s.clamped = true;
        } else {
            double bound = std::sqrt(1.5) * mu / worst_direction(phi);
            s.clamped = raw > bound;
            s.r = s.clamped ? bound : raw;
        }
        out.push_back(s);
    }
    return out;
}

RegionCurves assemble_region(double a, double b, double c, const RegionConfig& cfg,
                             const Tolerance& tol) {
    RegionCurves rc;
    rc.a = a;
    rc.b = b;
    rc.c = c;
    rc.w = a + b + c;
    rc.triangle = triangle(a, b, c, cfg.triangle_samples_per_edge);
    rc.hessian_radius = hessian_radius(a, b, c);
    rc.arc = bean_arc(a, b, c, cfg.arc_samples, tol);
    rc.cp = cp_boundary(a, b, c, cfg.cp_samples, tol);
    (void)cfg.circle_samples;  // used at serialization time
    return rc;
}

namespace {

void csv_row(std::string& out, double phi, double r, const std::string& curve) {
    auto xy = plane_xy(phi, r);
    out += fmt(phi) + "," + fmt(r) + "," + fmt(xy[0]) + "," + fmt(xy[1]) + "," +
           curve + "\n";
}

double wrap_angle(double phi) {
    while (phi >= 2 * kPi) phi -= 2 * kPi;
    while (phi < 0) phi += 2 * kPi;
    return phi;
}

}  // namespace

std::string region_to_csv(const RegionCurves& rc) {
    std::string out = "phi,r,x,y,curve\n";
    for (const auto& p : rc.triangle.points) {
        double r = std::hypot(p[0], p[1]);
        double phi = wrap_angle(std::atan2(p[1], p[0]) - kPi / 2);
        out += fmt(phi) + "," + fmt(r) + "," + fmt(p[0]) + "," + fmt(p[1]) +
               ",triangle\n";
    }
    const char* arc_ids[3] = {"arc1", "arc2", "arc3"};
    for (int q = 0; q < 3; ++q)
        for (const auto& s : rc.arc)
            csv_row(out, wrap_angle(s.phi + q * 2 * kPi / 3), s.r, arc_ids[q]);
    if (rc.hessian_radius > 0) {
        const int n = 601;
        for (int k = 0; k < n; ++k)
            csv_row(out, 2 * kPi * k / (n - 1), rc.hessian_radius, "circle");
    }
    for (const auto& s : rc.cp) csv_row(out, s.phi, s.r, "cp");
    return out;
}

std::string region_to_json(const RegionCurves& rc) {
    nlohmann::json j;
    j["a"] = rc.a;
    j["b"] = rc.b;
    j["c"] = rc.c;
    j["w"] = rc.w;
    j["mu"] = rc.triangle.mu;
    j["triangle"]["empty"] = rc.triangle.empty;
    auto& tp = j["triangle"]["points"] = nlohmann::json::array();
    for (const auto& p : rc.triangle.points) tp.push_back({p[0], p[1]});
    j["hessian_circle"]["radius"] = rc.hessian_radius;
    j["hessian_circle"]["empty"] = !(rc.hessian_radius > 0);
    auto& arcs = j["arcs"] = nlohmann::json::array();
    const char* arc_ids[3] = {"arc1", "arc2", "arc3"};
    for (int q = 0; q < 3; ++q) {
        nlohmann::json arc;
        arc["id"] = arc_ids[q];
        auto& samples = arc["samples"] = nlohmann::json::array();
        for (const auto& s : rc.arc) {
            nlohmann::json row;
            row["phi"] = wrap_angle(s.phi + q * 2 * kPi / 3);
            row["r"] = s.r;  // NaN serializes as null (gap marker)
            samples.push_back(row);
        }
        arcs.push_back(arc);
    }
    bool cp_present = false;
    for (const auto& s : rc.cp) cp_present = cp_present || !std::isnan(s.raw_r);
    j["cp"]["present"] = cp_present;
    auto& cps = j["cp"]["samples"] = nlohmann::json::array();
    for (const auto& s : rc.cp) {
        nlohmann::json row;
        row["phi"] = s.phi;
        row["raw_r"] = s.raw_r;
        row["r"] = s.r;
        row["clamped"] = s.clamped;
        cps.push_back(row);
    }
    return j.dump(2) + "\n";
}

namespace {

/// Appends "M x y L x y ..." segments, breaking at NaN gaps.  SVG y points
/// down, so the y coordinate is negated.
std::string svg_path_polar(const std::vector<std::array<double, 2>>& pts) {
    std::string d;
    bool open = false;
    for (const auto& p : pts) {
        if (std::isnan(p[0]) || std::isnan(p[1])) {
            open = false;
            continue;
        }
        d += (open ? " L " : " M ") + fmt(p[0], "%.3f") + " " + fmt(-p[1], "%.3f");
        open = true;
    }
    return d;
}

}  // namespace

std::string region_to_svg(const RegionCurves& rc) {
    const double nan = std::numeric_limits<double>::quiet_NaN();

    double extent = 1e-3;
    for (const auto& p : rc.triangle.points)
        extent = std::max({extent, std::abs(p[0]), std::abs(p[1])});
    extent = std::max(extent, rc.hessian_radius);
    for (const auto& s : rc.arc)
        if (!std::isnan(s.r)) extent = std::max(extent, s.r);
    for (const auto& s : rc.cp)
        if (!std::isnan(s.r)) extent = std::max(extent, s.r);
    extent *= 1.05;

    std::string E = fmt(extent, "%.3f");
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-" + E +
                      " -" + E + " " + fmt(2 * extent, "%.3f") + " " +
                      fmt(2 * extent, "%.3f") + "\" width=\"640\" height=\"640\">\n";
    out += "<title>admissible region: a=" + fmt(rc.a) + " b=" + fmt(rc.b) +
           " c=" + fmt(rc.c) + "</title>\n";
    out += "<g fill=\"none\" stroke-width=\"" + fmt(0.01 * extent, "%.3f") + "\">\n";

    if (!rc.triangle.points.empty())
        out += "<path class=\"triangle\" stroke=\"#1f77b4\" d=\"" +
               svg_path_polar(rc.triangle.points) + "\"/>\n";

    for (int q = 0; q < 3; ++q) {
        std::vector<std::array<double, 2>> pts;
        for (const auto& s : rc.arc)
            pts.push_back(std::isnan(s.r) ? std::array<double, 2>{nan, nan}
                                          : plane_xy(s.phi + q * 2 * kPi / 3, s.r));
        std::string d = svg_path_polar(pts);
        if (!d.empty())
            out += "<path class=\"arc\" stroke=\"#d62728\" d=\"" + d + "\"/>\n";
    }

    if (rc.hessian_radius > 0) {
        out += "<circle class=\"circle\" stroke=\"#2ca02c\" cx=\"0\" cy=\"0\" r=\"" +
               fmt(rc.hessian_radius, "%.3f") + "\"/>\n";
    }

    {
        std::vector<std::array<double, 2>> pts;
        for (const auto& s : rc.cp)
            pts.push_back(std::isnan(s.r) ? std::array<double, 2>{nan, nan}
                                          : plane_xy(s.phi, s.r));
        std::string d = svg_path_polar(pts);
        if (!d.empty())
            out += "<path class=\"cp\" stroke=\"#000000\" d=\"" + d + "\"/>\n";
    }

    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace wmap
