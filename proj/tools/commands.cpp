#include "commands.hpp"

#include "svg.hpp"

#include "hexlat/errors.hpp"
#include "hexlat/fields.hpp"
#include "hexlat/homogenize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

namespace hexlat::app {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefaultBondNu = 0.2668;
constexpr double kDefaultEffectiveNu = 0.3;

std::string banner() { return "hexlat 0.1.0"; }

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream out(cfg.out / name, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write " + (cfg.out / name).string());
    out << content;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json inputs_json(const RunConfig& cfg) {
    const LatticeSpec spec = cfg.lattice();
    json j;
    j["a"] = cfg.a;
    j["lambda"] = cfg.hole_radius();
    if (spec.chiral) j["chiral"] = json::array({spec.chiral->m, spec.chiral->n});
    j["alpha"] = spec.alpha;
    j["sigma1"] = cfg.sigma1;
    j["sigma2"] = cfg.sigma2;
    j["K"] = cfg.K;
    j["shells"] = cfg.shells;
    if (cfg.nu) j["nu"] = *cfg.nu;
    if (cfg.nu_eff) j["nu_eff"] = *cfg.nu_eff;
    return j;
}

LatticeSums sums_for(const RunConfig& cfg, int K) {
    return compute_lattice_sums(cfg.lattice(), required_s_max(K), cfg.shells);
}

double rel(double x, double ref) { return std::abs(x) / std::max(std::abs(ref), 1e-300); }

// --- sums ---------------------------------------------------------------

json sums_checks(const LatticeSums& s, const LatticeSpec& spec) {
    const double a = spec.a;
    json c;
    const Complex legendre = s.delta1 * spec.omega2 - s.delta2 * spec.omega1;
    c["legendre_residual"] = std::abs(legendre - Complex(0.0, 2.0 * kPi)) / (2.0 * kPi);
    c["conjugate_relation_residual"] =
        std::abs(s.delta1 * std::conj(spec.omega2) - s.delta2 * std::conj(spec.omega1)) / (std::abs(s.delta1) * a);
    c["delta_conjugate_residual"] = std::abs(s.delta1 - std::conj(s.delta2)) / std::abs(s.delta1);
    const Complex ratio = std::conj(s.delta1) / spec.omega1;
    c["delta_imag_ratio"] = std::abs(ratio.imag()) / std::abs(ratio.real());
    c["gamma_relative"] = std::max(std::abs(s.gamma1), std::abs(s.gamma2)) / (std::abs(s.delta1));
    double czero = 0.0;
    for (int k : {2, 4, 5})
        if (k <= s.s_max) czero = std::max(czero, std::abs(s.c_direct_norm[k]) / std::abs(s.c_direct_norm[3]));
    c["c_zero_pattern"] = czero;
    double dzero = 0.0;
    for (int k : {3, 4})
        if (k <= s.s_max) dzero = std::max(dzero, std::abs(s.d_norm[k]) / std::abs(s.d_norm[2]));
    c["d_zero_pattern"] = dzero;
    if (s.s_max >= 6) c["c6_recursion_gap"] = rel(s.c_direct_norm[6] - s.c_norm[6], s.c_norm[6]);
    c["tail_estimate"] = s.tail_estimate;
    return c;
}

std::string sums_csv(const LatticeSums& s) {
    std::string out = "quantity,index,real,imag\n";
    for (int k = 2; k <= s.s_max; ++k) out += fmt::format("c,{},{},0\n", k, num(s.c(k)));
    for (int k = 2; k <= s.s_max; ++k) out += fmt::format("c_direct,{},{},0\n", k, num(s.c_direct(k)));
    for (int k = 2; k <= s.s_max; ++k) out += fmt::format("d,{},{},0\n", k, num(s.d(k)));
    auto row = [&](const char* name, Complex z) { out += fmt::format("{},,{},{}\n", name, num(z.real()), num(z.imag())); };
    row("delta1", s.delta1);
    row("delta2", s.delta2);
    row("delta", s.delta);
    row("gamma1", s.gamma1);
    row("gamma2", s.gamma2);
    row("g2", s.g2);
    row("g3", s.g3);
    return out;
}

// --- solve ----------------------------------------------------------------

double coefficient_drift(const PotentialCoefficients& lo, const PotentialCoefficients& hi) {
    double scale = std::max(std::abs(hi.alpha0), std::abs(hi.beta0));
    for (int k = 0; k < hi.K(); ++k) scale = std::max({scale, std::abs(hi.alpha[k]), std::abs(hi.beta[k])});
    double diff = std::max(std::abs(lo.alpha0 - hi.alpha0), std::abs(lo.beta0 - hi.beta0));
    for (int k = 0; k < lo.K(); ++k)
        diff = std::max({diff, std::abs(lo.alpha[k] - hi.alpha[k]), std::abs(lo.beta[k] - hi.beta[k])});
    for (int k = lo.K(); k < hi.K(); ++k) diff = std::max({diff, std::abs(hi.alpha[k]), std::abs(hi.beta[k])});
    return scale > 0.0 ? diff / scale : diff;
}

json coeffs_json(const RunConfig& cfg, const Solution& sol, double residual) {
    json j;
    j["schema"] = "hexlat.coeffs";
    j["schema_version"] = kCheckSchemaVersion;
    j["inputs"] = inputs_json(cfg);
    j["porosity"] = sol.tables.b;
    j["alpha0"] = complex_json(sol.coeffs.alpha0);
    j["beta0"] = complex_json(sol.coeffs.beta0);
    json al = json::array(), be = json::array();
    for (int k = 0; k < sol.coeffs.K(); ++k) {
        al.push_back(complex_json(sol.coeffs.alpha[k]));
        be.push_back(complex_json(sol.coeffs.beta[k]));
    }
    j["alpha"] = al;
    j["beta"] = be;
    j["rcond"] = json::array({sol.coeffs.rcond_plus, sol.coeffs.rcond_minus});
    j["boundary_residual"] = residual;
    return j;
}

// --- field ----------------------------------------------------------------

struct FieldRow {
    int figure = 0;
    int curve = 0;
    FieldSample s;
    double alpha = 0.0;
};

std::string field_csv(const std::vector<FieldRow>& rows) {
    std::string out = "figure,curve,r,theta,alpha,sigma_r,tau_rtheta,sigma_theta,sigma_x,sigma_y,tau_xy,2Gu,2Gv\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.figure, r.curve, num(r.s.r), num(r.s.theta),
                           num(r.alpha), num(r.s.sigma_r), num(r.s.tau_rtheta), num(r.s.sigma_theta), num(r.s.sigma_x),
                           num(r.s.sigma_y), num(r.s.tau_xy), num(r.s.u2G), num(r.s.v2G));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    v.back() = hi;
    return v;
}

double bond_nu(const RunConfig& cfg, const LatticeSums& sums) {
    if (cfg.nu) return *cfg.nu;
    if (cfg.nu_eff) {
        const LatticeSpec base = build_lattice_with_angle(cfg.a, 0.0);
        const UnitLoadSets sets = unit_load_coefficients(series_tables(sums, cfg.hole_radius(), cfg.K));
        return bond_from_effective(1.0, *cfg.nu_eff, homogenization_data(sums, base, cfg.hole_radius(), sets)).nu;
    }
    return kDefaultBondNu;
}

double span(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

// --- moduli ---------------------------------------------------------------

struct ModuliRow {
    double ratio = 0.0;
    HomogenizationData data;
    ModuliSet bond;       // from nu_eff
    ModuliSet effective;  // from nu
    double round_trip = 0.0;
};

std::vector<double> sweep_grid(const RunConfig& cfg) {
    std::vector<double> g = linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
    if (0.2 > cfg.sweep_min && 0.2 < cfg.sweep_max &&
        std::none_of(g.begin(), g.end(), [](double x) { return std::abs(x - 0.2) < 1e-12; })) {
        g.push_back(0.2);
        std::sort(g.begin(), g.end());
    }
    return g;
}

std::vector<ModuliRow> moduli_rows(const RunConfig& cfg, double nu_eff, double nu) {
    const LatticeSpec base = build_lattice_with_angle(cfg.a, 0.0);
    const LatticeSums sums = compute_lattice_sums(base, required_s_max(cfg.K), cfg.shells);
    std::vector<ModuliRow> rows;
    for (double ratio : sweep_grid(cfg)) {
        const double lambda = ratio * cfg.a;
        const UnitLoadSets sets = unit_load_coefficients(series_tables(sums, lambda, cfg.K));
        ModuliRow r;
        r.ratio = ratio;
        r.data = homogenization_data(sums, base, lambda, sets);
        r.bond = bond_from_effective(1.0, nu_eff, r.data);
        r.effective = effective_from_bond(1.0, nu, r.data);
        const ModuliSet back = effective_from_bond(r.bond.E, r.bond.nu, r.data);
        r.round_trip = std::max(std::abs(back.E_eff - 1.0), std::abs(back.nu_eff - nu_eff));
        rows.push_back(r);
    }
    return rows;
}

std::string moduli_csv(const std::vector<ModuliRow>& rows, double nu_eff, double nu) {
    std::string out =
        "lambda_ratio,lambda,porosity,alpha0_plus,beta1_plus,alpha1_minus,beta0_minus,"
        "nu_eff_in,nu,E_over_Eeff,nu_in,nu_eff,Eeff_over_E\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.ratio), num(r.data.lambda), num(r.data.b()),
                           num(r.data.alpha0_plus), num(r.data.beta1_plus), num(r.data.alpha1_minus),
                           num(r.data.beta0_minus), num(nu_eff), num(r.bond.nu), num(r.bond.E), num(nu),
                           num(r.effective.nu_eff), num(r.effective.E_eff));
    }
    return out;
}

bool monotone(const std::vector<double>& v, int sign) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (sign * (v[i] - v[i - 1]) <= 0.0) return false;
    return true;
}

json moduli_outputs(const RunConfig& cfg, bool fig4, bool fig5) {
    const double nu_eff = cfg.nu_eff.value_or(kDefaultEffectiveNu);
    const double nu = cfg.nu.value_or(kDefaultBondNu);
    const auto rows = moduli_rows(cfg, nu_eff, nu);
    write_file(cfg, "moduli.csv", moduli_csv(rows, nu_eff, nu));

    std::vector<double> x, bnu, bE, enu, eE;
    double worst_round_trip = 0.0;
    json at_fifth;
    for (const auto& r : rows) {
        x.push_back(r.ratio);
        bnu.push_back(r.bond.nu);
        bE.push_back(r.bond.E);
        enu.push_back(r.effective.nu_eff);
        eE.push_back(r.effective.E_eff);
        worst_round_trip = std::max(worst_round_trip, r.round_trip);
        if (std::abs(r.ratio - 0.2) < 1e-12) {
            at_fifth["nu"] = r.bond.nu;
            at_fifth["E_over_Eeff"] = r.bond.E;
            at_fifth["nu_eff"] = r.effective.nu_eff;
            at_fifth["Eeff_over_E"] = r.effective.E_eff;
        }
    }
    json c;
    c["round_trip_max"] = worst_round_trip;
    if (!at_fifth.is_null()) c["lambda_a_over_5"] = at_fifth;
    if (fig4) {
        c["fig4_nu_decreasing"] = monotone(bnu, -1);
        c["fig4_E_ratio_increasing"] = monotone(bE, +1);
        const std::string label = fmt::format("nu_eff = {}", nu_eff);
        write_file(cfg, "fig4.svg",
                   render_svg({Panel{"Bond Poisson ratio", "lambda / a", "nu", {Series{label, x, bnu}}},
                               Panel{"Bond stiffness", "lambda / a", "E / E_eff", {Series{label, x, bE}}}},
                              banner()));
    }
    if (fig5) {
        c["fig5_nu_eff_increasing"] = monotone(enu, +1);
        c["fig5_E_ratio_decreasing"] = monotone(eE, -1);
        const std::string label = fmt::format("nu = {}", nu);
        write_file(cfg, "fig5.svg",
                   render_svg({Panel{"Effective Poisson ratio", "lambda / a", "nu_eff", {Series{label, x, enu}}},
                               Panel{"Effective stiffness", "lambda / a", "E_eff / E", {Series{label, x, eE}}}},
                              banner()));
    }
    return c;
}

json field_outputs(const RunConfig& cfg) {
    const LatticeSums sums = sums_for(cfg, cfg.K);
    const double a = cfg.a;
    const double lambda = cfg.hole_radius();
    const double nu = bond_nu(cfg, sums);
    const int n = cfg.field_points;

    auto solve_at = [&](double alpha) {
        ProblemSpec p = cfg.problem();
        p.load.alpha = alpha;
        return solve_problem(p, sums);
    };
    auto sample = [&](const Solution& sol, double r, double theta) {
        FieldSample s = total_stress(r, theta, sol);
        const Complex u = total_displacement(std::polar(r, theta), sol, nu);
        s.u2G = u.real();
        s.v2G = u.imag();
        return s;
    };

    std::vector<FieldRow> rows;
    json c;
    c["bond_nu"] = nu;

    // Stresses along theta = 0 for three load angles.
    const std::vector<double> fig2_alpha{0.0, kPi / 8.0, kPi / 4.0};
    const std::vector<double> radii = linspace(lambda, a / std::numbers::sqrt3, n);
    std::vector<Panel> fig2{Panel{"sigma_r, theta = 0", "r (pm)", "sigma_r", {}},
                            Panel{"tau_rtheta, theta = 0", "r (pm)", "tau_rtheta", {}}};
    double rim = 0.0;
    bool max_at_vertex = true;
    for (std::size_t i = 0; i < fig2_alpha.size(); ++i) {
        const Solution sol = solve_at(fig2_alpha[i]);
        std::vector<double> sr, tr;
        for (double r : radii) {
            const FieldSample s = sample(sol, r, 0.0);
            rows.push_back({2, int(i) + 1, s, fig2_alpha[i]});
            sr.push_back(s.sigma_r);
            tr.push_back(s.tau_rtheta);
        }
        rim = std::max({rim, std::abs(sr.front()), std::abs(tr.front())});
        max_at_vertex = max_at_vertex && std::max_element(sr.begin(), sr.end()) == sr.end() - 1;
        const std::string label = fmt::format("{}: alpha = {:.4g}", i + 1, fig2_alpha[i]);
        fig2[0].series.push_back(Series{label, radii, sr});
        fig2[1].series.push_back(Series{label, radii, tr});
    }
    c["fig2_rim_stress"] = rim;
    c["fig2_sigma_r_max_at_vertex"] = max_at_vertex;
    write_file(cfg, "fig2.svg", render_svg(fig2, banner()));

    // Angle sweeps at theta = pi/8.
    const double theta = kPi / 8.0;
    const std::vector<double> alphas = linspace(0.0, kPi, n);
    std::vector<Solution> sols;
    for (double al : alphas) sols.push_back(solve_at(al));

    const double half = a / 2.0;
    const std::vector<double> fig3_r{lambda + (half - lambda) / 16.0, lambda + (half - lambda) / 4.0,
                                     lambda + 15.0 * (half - lambda) / 16.0};
    std::vector<Panel> fig3{Panel{"sigma_r, theta = pi/8", "alpha (rad)", "sigma_r", {}},
                            Panel{"tau_rtheta, theta = pi/8", "alpha (rad)", "tau_rtheta", {}}};
    std::vector<double> amp3;
    for (std::size_t i = 0; i < fig3_r.size(); ++i) {
        std::vector<double> sr, tr;
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            const FieldSample s = sample(sols[k], fig3_r[i], theta);
            rows.push_back({3, int(i) + 1, s, alphas[k]});
            sr.push_back(s.sigma_r);
            tr.push_back(s.tau_rtheta);
        }
        amp3.push_back(std::max(span(sr), span(tr)));
        const std::string label = fmt::format("{}: r = {:.4g}", i + 1, fig3_r[i]);
        fig3[0].series.push_back(Series{label, alphas, sr});
        fig3[1].series.push_back(Series{label, alphas, tr});
    }
    c["fig3_amplitudes"] = amp3;
    c["fig3_amplitude_grows_with_r"] = monotone(amp3, +1);
    write_file(cfg, "fig3.svg", render_svg(fig3, banner()));

    const std::vector<double> fig6_r{lambda, lambda + (half - lambda) / 3.0, half};
    std::vector<Panel> fig6{Panel{"2G u, theta = pi/8", "alpha (rad)", "2G u", {}},
                            Panel{"2G v, theta = pi/8", "alpha (rad)", "2G v", {}}};
    std::vector<double> var6, hole6;
    const double kappa = (3.0 - nu) / (1.0 + nu);
    for (std::size_t i = 0; i < fig6_r.size(); ++i) {
        std::vector<double> u, v, hu, hv;
        const Complex z = std::polar(fig6_r[i], theta);
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            const FieldSample s = sample(sols[k], fig6_r[i], theta);
            rows.push_back({6, int(i) + 1, s, alphas[k]});
            u.push_back(s.u2G);
            v.push_back(s.v2G);
            // Part induced by the holes: total minus the remote field.
            const LoadCase& ld = sols[k].prob.load;
            const Complex remote = (kappa - 1.0) * ld.sigma_plus() * z / 2.0 +
                                   ld.sigma_minus() * std::polar(1.0, 2.0 * ld.alpha) * std::conj(z);
            hu.push_back(s.u2G - remote.real());
            hv.push_back(s.v2G - remote.imag());
        }
        var6.push_back(std::max(span(u), span(v)));
        hole6.push_back(std::max(span(hu), span(hv)));
        const std::string label = fmt::format("{}: r = {:.4g}", i + 1, fig6_r[i]);
        fig6[0].series.push_back(Series{label, alphas, u});
        fig6[1].series.push_back(Series{label, alphas, v});
    }
    c["fig6_variations"] = var6;
    c["fig6_variation_largest_at_rim"] = var6[0] >= var6[1] && var6[0] >= var6[2];
    c["fig6_hole_part_variations"] = hole6;
    c["fig6_hole_part_variation_largest_at_rim"] = hole6[0] >= hole6[1] && hole6[0] >= hole6[2];
    write_file(cfg, "fig6.svg", render_svg(fig6, banner()));

    write_file(cfg, "field.csv", field_csv(rows));
    return c;
}

json solve_outputs(const RunConfig& cfg) {
    const LatticeSums sums = sums_for(cfg, cfg.K + 4);
    const Solution sol = solve_problem(cfg.problem(), sums);
    ProblemSpec wider = cfg.problem();
    wider.K = cfg.K + 4;
    const Solution ref = solve_problem(wider, sums);
    const double residual = boundary_residual(sol);
    write_file(cfg, "coeffs.json", coeffs_json(cfg, sol, residual).dump(2) + "\n");

    json c;
    c["boundary_residual"] = residual;
    c["boundary_residual_relative"] = residual / cfg.problem().load.scale();
    c["rcond"] = json::array({sol.coeffs.rcond_plus, sol.coeffs.rcond_minus});
    c["truncation_drift"] = coefficient_drift(sol.coeffs, ref.coeffs);
    c["m_sum_tail"] = sol.tables.m_tail;
    c["im_beta1"] = std::abs(sol.coeffs.beta[0].imag());
    return c;
}

json sums_outputs(const RunConfig& cfg) {
    const LatticeSpec spec = cfg.lattice();
    const LatticeSums s = compute_lattice_sums(spec, cfg.s_max.value_or(required_s_max(cfg.K)), cfg.shells);
    write_file(cfg, "sums.csv", sums_csv(s));
    return sums_checks(s, spec);
}

void write_report(const RunConfig& cfg, const std::string& command, const std::string& status, const json& checks,
                  const json& error) {
    json j;
    j["schema"] = "hexlat.check";
    j["schema_version"] = kCheckSchemaVersion;
    j["command"] = command;
    j["status"] = status;
    j["inputs"] = inputs_json(cfg);
    j["checks"] = checks;
    if (!error.is_null()) j["error"] = error;
    write_file(cfg, "check.json", j.dump(2) + "\n");
}

}  // namespace

std::string num(double v) { return fmt::format("{:.17g}", v); }

json cmd_sums(const RunConfig& cfg) { return sums_outputs(cfg); }
json cmd_solve(const RunConfig& cfg) { return solve_outputs(cfg); }
json cmd_field(const RunConfig& cfg) { return field_outputs(cfg); }

json cmd_moduli(const RunConfig& cfg) {
    const bool to_effective = cfg.nu.has_value();
    return moduli_outputs(cfg, !to_effective, to_effective);
}

json cmd_sweep(const RunConfig& cfg) {
    json c;
    c["sums"] = sums_outputs(cfg);
    c["solve"] = solve_outputs(cfg);
    c["field"] = field_outputs(cfg);
    c["moduli"] = moduli_outputs(cfg, true, true);
    return c;
}

int run_command(const std::string& command, const RunConfig& cfg) {
    auto fail = [&](const std::string& status, const json& error, int code) {
        try {
            write_report(cfg, command, status, json::object(), error);
        } catch (const std::exception&) {
        }
        std::cerr << "hexlat " << command << ": " << error.value("message", std::string{}) << "\n";
        return code;
    };
    try {
        json checks;
        if (command == "sums") checks = cmd_sums(cfg);
        else if (command == "solve") checks = cmd_solve(cfg);
        else if (command == "field") checks = cmd_field(cfg);
        else if (command == "moduli") checks = cmd_moduli(cfg);
        else if (command == "sweep") checks = cmd_sweep(cfg);
        else throw ConfigurationError("unknown command '" + command + "'");
        write_report(cfg, command, "ok", checks, json());
        return kExitOk;
    } catch (const PrecisionError& e) {
        return fail("precision_failure", json{{"message", e.what()}, {"tail_estimate", e.tail_estimate()}}, kExitPrecision);
    } catch (const NumericalError& e) {
        return fail("precision_failure", json{{"message", e.what()}, {"rcond", e.rcond()}}, kExitPrecision);
    } catch (const ConsistencyError& e) {
        return fail("consistency_failure", json{{"message", e.what()}, {"residual", e.residual()}}, kExitConsistency);
    } catch (const ConfigurationError& e) {
        return fail("config_error", json{{"message", e.what()}}, kExitConfig);
    } catch (const DegenerateError& e) {
        return fail("consistency_failure", json{{"message", e.what()}}, kExitConsistency);
    } catch (const Error& e) {
        // InvalidArgument, DomainError, PoleError: bad parameters.
        return fail("config_error", json{{"message", e.what()}}, kExitConfig);
    }
}

}  // namespace hexlat::app
