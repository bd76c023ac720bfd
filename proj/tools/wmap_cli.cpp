/**
 * @file wmap_cli.cpp
 * @brief Command line front end: classify | region | sweep | verify.
 *
 * Exit codes: 0 success, 2 invalid input (message names the violated
 * invariant), 3 internal consistency failure, 1 unexpected error.
 */

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "wmap/decomposability.hpp"
#include "wmap/map_model.hpp"
#include "wmap/oracles.hpp"
#include "wmap/positivity.hpp"
#include "wmap/region.hpp"

using nlohmann::json;
using namespace wmap;

namespace {

json verdict_to_json(const WMatrix& W, const PositivityVerdict& pv,
                     const DecomposabilityVerdict& dv) {
    json j;
    j["input"] = json::parse(wmatrix_to_json_text(W));
    j["cp"] = pv.cp;
    j["positive"] = to_string(pv.positive);
    j["conditions"]["vertex"] = pv.conditions.vertex;
    j["conditions"]["edge"] = pv.conditions.edge;
    j["conditions"]["interior"] = pv.conditions.interior;
    j["conditions"]["hessian"] = pv.conditions.hessian;
    if (pv.witness) {
        j["witness"]["amplitudes"] = *pv.witness;
        j["witness"]["phases"] = {0.0, 0.0, 0.0};
        j["witness"]["eigenvalue"] = pv.witness_eigenvalue;
    } else {
        j["witness"] = nullptr;
    }
    json d;
    d["applicable"] = dv.applicable;
    d["verdict"] = to_string(dv.decomposable);
    d["sufficient"] = dv.sufficient_holds;
    d["necessary"] = dv.necessary_holds;
    d["necessary_value"] = dv.necessary_value;
    d["circulant_route"] = dv.circulant_route;
    d["infimum_attained"] = dv.infimum_attained;
    if (dv.decomposition) {
        json dec;
        dec["residual"] = dv.decomposition->residual;
        Tolerance tol;
        dec["A_min_eigenvalue"] = eig_sym(dv.decomposition->A).values.front();
        dec["B_min_eigenvalue"] = eig_sym(dv.decomposition->B).values.front();
        for (int i = 0; i < 9; ++i) {
            json ra = json::array(), rb = json::array();
            for (int k = 0; k < 9; ++k) {
                ra.push_back(dv.decomposition->A.at(i, k));
                rb.push_back(dv.decomposition->B.at(i, k));
            }
            dec["A"].push_back(ra);
            dec["B"].push_back(rb);
        }
        d["decomposition"] = dec;
    } else {
        d["decomposition"] = nullptr;
    }
    j["decomposability"] = d;
    return j;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw domain_error("cannot open output file: " + path);
    out << content;
}

/// Axis specification: a single value "v" or a range "min:max:n".
std::vector<double> parse_axis(const std::string& spec, const std::string& name) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    try {
        if (parts.size() == 1) return {std::stod(parts[0])};
        if (parts.size() == 3) {
            double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
            int n = std::stoi(parts[2]);
            if (n < 1) throw domain_error("axis " + name + ": count must be >= 1");
            std::vector<double> v;
            for (int k = 0; k < n; ++k)
                v.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
            return v;
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw domain_error("axis " + name + ": expected \"value\" or \"min:max:count\"");
}

std::string csv_escape(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    return s;
}

int run_classify(const WMatrix& W, const Tolerance& tol) {
    PositivityVerdict pv = classify_positivity(W, tol);
    DecomposabilityVerdict dv = classify_decomposability(W, pv, tol);
    std::cout << verdict_to_json(W, pv, dv).dump(2) << "\n";
    return 0;
}

int run_sweep(const std::vector<double>& as, const std::vector<double>& bs,
              const std::vector<double>& cs, const std::vector<double>& ds,
              const std::vector<double>& es, bool c_equals_b,
              const std::string& out_path, const Tolerance& tol) {
    std::string out =
        "a,b,c,d,e,f,w,status,cp,positive,decomposable,vertex1,vertex2,vertex3,"
        "edge12,edge13,edge23,interior,hessian,sufficient,necessary,"
        "necessary_value,witness_eigenvalue\n";
    char buf[256];
    for (double a : as)
        for (double b : bs)
            for (double c0 : (c_equals_b ? std::vector<double>{0.0} : cs))
                for (double d : ds)
                    for (double e : es) {
                        double c = c_equals_b ? b : c0;
                        double f = -d - e;
                        std::snprintf(buf, sizeof buf,
                                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,",
                                      a, b, c, d, e, f, a + b + c);
                        out += buf;
                        try {
                            WMatrix W = w_from_birkhoff({a, b, c, d, e, f}, tol);
                            PositivityVerdict pv = classify_positivity(W, tol);
                            DecomposabilityVerdict dv =
                                classify_decomposability(W, pv, tol);
                            std::snprintf(
                                buf, sizeof buf,
                                "ok,%d,%s,%s,%d,%d,%d,%d,%d,%d,%d,%d,%d,%d,%.12g,%.12g\n",
                                pv.cp ? 1 : 0, to_string(pv.positive),
                                dv.applicable ? to_string(dv.decomposable) : "n/a",
                                pv.conditions.vertex[0] ? 1 : 0,
                                pv.conditions.vertex[1] ? 1 : 0,
                                pv.conditions.vertex[2] ? 1 : 0,
                                pv.conditions.edge[0] ? 1 : 0,
                                pv.conditions.edge[1] ? 1 : 0,
                                pv.conditions.edge[2] ? 1 : 0,
                                pv.conditions.interior ? 1 : 0,
                                pv.conditions.hessian ? 1 : 0,
                                dv.sufficient_holds ? 1 : 0,
                                dv.necessary_holds ? 1 : 0, dv.necessary_value,
                                pv.witness ? pv.witness_eigenvalue : 0.0);
                            out += buf;
                        } catch (const domain_error& ex) {
                            out += "error:" + csv_escape(ex.what()) +
                                   ",,,,,,,,,,,,,,,\n";
                        }
                    }
    write_or_print(out_path, out);
    return 0;
}

int run_verify(int trials, std::uint64_t seed, const Tolerance& tol) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        if (ok) {
            std::cout << "PASS " << name << "\n";
        } else {
            std::cout << "FAIL " << name << ": " << detail << "\n";
            ++failures;
        }
    };

    // 1. Reference circulant map: positive, not CP, certified non-decomposable.
    try {
        WMatrix W = circulant_wmatrix(2, 1, 0, tol);
        PositivityVerdict pv = classify_positivity(W, tol);
        DecomposabilityVerdict dv = classify_decomposability(W, pv, tol);
        bool ok = pv.positive == Verdict::yes && !pv.cp &&
                  dv.decomposable == Verdict::no &&
                  std::abs(dv.necessary_value + 3) <= 1e-12 &&
                  witness_trace(W, 100, 100, 100) < -2.9;
        report("reference-circulant", ok, "unexpected verdict for circulant(2,1,0)");
    } catch (const std::exception& ex) {
        report("reference-circulant", false, ex.what());
    }

    // 2. Hessian gate: algebraic vs restricted-spectrum agreement.
    {
        std::mt19937_64 rng(seed);
        int bad = 0;
        std::string detail;
        for (int t = 0; t < trials; ++t) {
            WMatrix W = random_wmatrix(rng);
            try {
                hessian_condition(W, tol);
            } catch (const consistency_error& ex) {
                ++bad;
                detail = ex.what();
            }
        }
        report("hessian-gate-agreement", bad == 0,
               std::to_string(bad) + " disagreements; last: " + detail);
    }

    // 3. Classification vs Monte-Carlo probe.
    {
        std::mt19937_64 rng(seed + 1);
        int bad = 0;
        for (int t = 0; t < std::max(1, trials / 4); ++t) {
            WMatrix W = random_wmatrix(rng);
            PositivityVerdict pv = classify_positivity(W, tol);
            ProbeReport pr = rank_one_probe(W, 2000, seed + t);
            if (pv.positive == Verdict::yes && pr.min_eigenvalue < -1e-6) ++bad;
        }
        report("probe-consistency", bad == 0,
               std::to_string(bad) + " positive maps with negative probe");
    }

    // 4. Explicit decompositions: exact reconstruction, both parts PSD.
    {
        std::mt19937_64 rng(seed + 2);
        int bad = 0, n = 0;
        for (int t = 0; t < trials && n < std::max(1, trials / 4); ++t) {
            WMatrix W = random_wmatrix(rng, true);
            if (!sufficient_condition(W, tol)) continue;
            ++n;
            Decomposition dec = build_decomposition(W);
            SymMatrix choi = choi_matrix(W);
            bool ok = dec.residual <= 1e-12 * (1 + choi.max_abs()) &&
                      is_psd(dec.A, tol) && is_psd(dec.B, tol);
            if (!ok) ++bad;
        }
        report("decomposition-exactness", bad == 0,
               std::to_string(bad) + "/" + std::to_string(n) + " bad splits");
    }

    // 5. Harmonic CP criterion vs Choi PSD.
    {
        std::mt19937_64 rng(seed + 3);
        int bad = 0;
        for (int t = 0; t < trials; ++t) {
            WMatrix W = random_wmatrix(rng);
            double h = 0;
            bool pos_diag = true;
            for (int i = 0; i < 3; ++i) {
                if (W.at(i, i) <= 0) pos_diag = false;
                else h += 1 / W.at(i, i);
            }
            if (pos_diag && std::abs(h - 1) < 1e-7) continue;  // boundary band
            if (is_completely_positive(W, tol) != is_psd(choi_matrix(W), tol)) ++bad;
        }
        report("cp-choi-agreement", bad == 0, std::to_string(bad) + " mismatches");
    }

    // 6. Region reference: circle radius and arc saturation residuals.
    try {
        double a = 1.7, b = 0.9, c = 0.5;
        bool ok = std::abs(hessian_radius(a, b, c) - 1.8 / std::sqrt(6.0)) <= 1e-9;
        auto arc = bean_arc(a, b, c, 201, tol);
        int finite = 0;
        double worst = 0;
        for (const auto& s : arc) {
            if (std::isnan(s.r)) continue;
            ++finite;
            double d = std::sqrt(2.0 / 3.0) * s.r * std::cos(s.phi);
            double e = std::sqrt(2.0 / 3.0) * s.r * std::cos(s.phi + 2 * M_PI / 3);
            double f = -d - e;
            double diag[3] = {a + f, a + e, a + d};
            double off[3][2] = {{b + d, c + d}, {b + e, c + e}, {b + f, c + f}};
            double best = 1e300;
            const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
            for (int k = 0; k < 3; ++k) {
                double dd = std::max(0.0, diag[pairs[k][0]] - 1) *
                            std::max(0.0, diag[pairs[k][1]] - 1);
                double oo = std::max(0.0, off[k][0]) * std::max(0.0, off[k][1]);
                best = std::min(best,
                                std::abs(std::sqrt(dd) + std::sqrt(oo) - 1));
            }
            worst = std::max(worst, best);
        }
        ok = ok && finite == 201 && worst <= 1e-6;
        report("region-reference", ok,
               "finite=" + std::to_string(finite) + " worst residual=" +
                   std::to_string(worst));
    } catch (const std::exception& ex) {
        report("region-reference", false, ex.what());
    }

    std::cout << (failures == 0 ? "VERIFY OK" : "VERIFY FAILED") << "\n";
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification of scaled doubly stochastic matrix maps on M3 "
                 "and their admissible-parameter region"};
    app.require_subcommand(1);

    Tolerance tol = tolerance_from_env();
    app.add_option("--eps-psd", tol.eps_psd, "PSD eigenvalue tolerance");
    app.add_option("--eps-eq", tol.eps_eq, "scalar comparison tolerance");
    app.add_option("--eps-root", tol.eps_root, "curve-root residual tolerance");

    // classify ---------------------------------------------------------
    auto* cls = app.add_subcommand("classify", "Classify one map");
    std::vector<double> circ, birk, mat;
    std::string file;
    auto* o_circ = cls->add_option("--circulant", circ, "a,b,c")
                       ->delimiter(',')->expected(3);
    auto* o_birk = cls->add_option("--birkhoff", birk, "a,b,c,d,e,f")
                       ->delimiter(',')->expected(6);
    auto* o_mat = cls->add_option("--matrix", mat, "nine entries, row-major")
                      ->delimiter(',')->expected(9);
    auto* o_file = cls->add_option("--file", file, "JSON file describing the map");
    o_circ->excludes(o_birk)->excludes(o_mat)->excludes(o_file);
    o_birk->excludes(o_mat)->excludes(o_file);
    o_mat->excludes(o_file);

    // region -----------------------------------------------------------
    auto* reg = app.add_subcommand("region", "Boundary curves for fixed (a,b,c)");
    double ra = 0, rb = 0, rc = 0;
    std::string svg_path, csv_path, json_path;
    RegionConfig cfg;
    reg->add_option("a", ra, "circulant diagonal")->required();
    reg->add_option("b", rb, "circulant upper cycle")->required();
    reg->add_option("c", rc, "circulant lower cycle")->required();
    reg->add_option("--svg", svg_path, "write SVG drawing here");
    reg->add_option("--csv", csv_path, "write CSV samples here");
    reg->add_option("--json", json_path, "write JSON document here");
    reg->add_option("--arc-samples", cfg.arc_samples, "samples per arc (odd)");
    reg->add_option("--cp-samples", cfg.cp_samples, "samples on the CP curve");
    reg->add_option("--circle-samples", cfg.circle_samples, "samples on the circle");

    // sweep ------------------------------------------------------------
    auto* swp = app.add_subcommand("sweep", "Classify over a parameter grid");
    std::string sa = "2", sb = "1", sc = "1", sd = "0", se = "0", sweep_out;
    bool c_equals_b = false;
    swp->add_option("--a", sa, "value or min:max:count");
    swp->add_option("--b", sb, "value or min:max:count");
    swp->add_option("--c", sc, "value or min:max:count");
    swp->add_option("--d", sd, "value or min:max:count");
    swp->add_option("--e", se, "value or min:max:count (f = -d-e)");
    swp->add_flag("--c-equals-b", c_equals_b, "tie c to b");
    swp->add_option("-o,--out", sweep_out, "output CSV path (default stdout)");

    // verify -----------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "Run built-in consistency checks");
    int trials = 200;
    std::uint64_t seed = 0x5eed;
    ver->add_option("--trials", trials, "random trials per check");
    ver->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cls->parsed()) {
            WMatrix W;
            if (!circ.empty()) {
                W = circulant_wmatrix(circ[0], circ[1], circ[2], tol);
            } else if (!birk.empty()) {
                W = w_from_birkhoff(
                    {birk[0], birk[1], birk[2], birk[3], birk[4], birk[5]}, tol);
            } else if (!mat.empty()) {
                W = make_wmatrix({{{mat[0], mat[1], mat[2]},
                                   {mat[3], mat[4], mat[5]},
                                   {mat[6], mat[7], mat[8]}}},
                                 tol);
            } else if (!file.empty()) {
                std::ifstream in(file, std::ios::binary);
                if (!in) throw domain_error("cannot read file: " + file);
                std::stringstream ss;
                ss << in.rdbuf();
                W = wmatrix_from_json_text(ss.str(), tol);
            } else {
                throw domain_error(
                    "one of --circulant, --birkhoff, --matrix, --file is required");
            }
            return run_classify(W, tol);
        }
        if (reg->parsed()) {
            RegionCurves curves = assemble_region(ra, rb, rc, cfg, tol);
            if (!svg_path.empty()) write_or_print(svg_path, region_to_svg(curves));
            if (!csv_path.empty()) write_or_print(csv_path, region_to_csv(curves));
            if (!json_path.empty()) write_or_print(json_path, region_to_json(curves));
            if (svg_path.empty() && csv_path.empty() && json_path.empty())
                std::cout << region_to_json(curves);
            return 0;
        }
        if (swp->parsed()) {
            return run_sweep(parse_axis(sa, "a"), parse_axis(sb, "b"),
                             parse_axis(sc, "c"), parse_axis(sd, "d"),
                             parse_axis(se, "e"), c_equals_b, sweep_out, tol);
        }
        if (ver->parsed()) return run_verify(trials, seed, tol);
    } catch (const consistency_error& ex) {
        std::cerr << "internal consistency failure: " << ex.what() << "\n";
        return 3;
    } catch (const domain_error& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
