// Batch front-end: every computation reachable with reproducible configs and
// machine-readable output.  Exit codes: 0 success, 1 parameter/usage error,
// 2 internal invariant violation (e.g. the two Franel routes disagreeing).

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcdlab/acceptance.hpp"
#include "gcdlab/dilated.hpp"
#include "gcdlab/extremal.hpp"
#include "gcdlab/gcd_spectra.hpp"
#include "gcdlab/numtheory.hpp"
#include "gcdlab/simulate.hpp"
#include "gcdlab/special.hpp"

namespace {

using gcdlab::u64;
using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[48];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, p);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

std::vector<u64> parse_u64_list(const std::string& csv) {
    std::vector<u64> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"gcdlab: GCD sums, dilated-series norms, and spectral checks"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "write results to this file instead of stdout");
        sub->add_option("--format", format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        return sub;
    };

    // sigma
    auto* sigma_cmd = add_common(app.add_subcommand("sigma", "divisor sum sigma_s(k)"));
    double sigma_s = -0.5;
    u64 sigma_k = 1;
    sigma_cmd->add_option("--s", sigma_s, "exponent")->required();
    sigma_cmd->add_option("--k", sigma_k, "argument")->required();

    // eig
    auto* eig_cmd = add_common(app.add_subcommand("eig", "extreme eigenvalues of a GCD matrix"));
    double eig_alpha = 0.75;
    u64 eig_n = 16;
    std::string eig_dilations, dump_matrix;
    bool eig_min = false;
    int eig_threads = 0;
    eig_cmd->add_option("--alpha", eig_alpha, "exponent in (1/2, 1]")->required();
    eig_cmd->add_option("--n", eig_n, "matrix size (identity dilations 1..n)");
    eig_cmd->add_option("--dilations", eig_dilations, "comma-separated dilation sequence");
    eig_cmd->add_flag("--min", eig_min, "also compute the smallest eigenvalue (dense path)");
    eig_cmd->add_option("--dump-matrix", dump_matrix, "write the matrix as CSV to this path");
    eig_cmd->add_option("--threads", eig_threads, "worker cap (does not affect results)");

    // gcdsum
    auto* gcdsum_cmd = add_common(app.add_subcommand("gcdsum", "quadratic form c^T G c"));
    double gs_alpha = 0.75;
    u64 gs_n = 50;
    std::string gs_coeffs;
    gcdsum_cmd->add_option("--alpha", gs_alpha)->required();
    gcdsum_cmd->add_option("--n", gs_n, "identity dilations 1..n");
    gcdsum_cmd->add_option("--coeffs", gs_coeffs, "comma-separated c_k (default all ones)");

    // norm
    auto* norm_cmd = add_common(app.add_subcommand("norm", "L^2 norm^2 of a dilated sum"));
    double norm_alpha = 0.75;
    std::string norm_profile = "sine", norm_dil = "1,2", norm_coef = "1,1";
    u64 parseval_j = 1 << 14;
    norm_cmd->add_option("--alpha", norm_alpha);
    norm_cmd->add_option("--profile", norm_profile, "sine, cosine, or bernoulli")
        ->check(CLI::IsMember({"sine", "cosine", "bernoulli"}));
    norm_cmd->add_option("--dilations", norm_dil, "comma-separated n_k")->required();
    norm_cmd->add_option("--coeffs", norm_coef, "comma-separated c_k")->required();
    norm_cmd->add_option("--parseval-j", parseval_j, "oracle truncation frequency");

    // franel
    auto* franel_cmd = add_common(app.add_subcommand("franel", "exact Franel integrals"));
    u64 franel_max = 0, franel_k = 0, franel_l = 0;
    franel_cmd->add_option("--max", franel_max, "all pairs k <= l <= max");
    franel_cmd->add_option("--k", franel_k);
    franel_cmd->add_option("--l", franel_l);

    // extremal
    auto* ext_cmd = add_common(app.add_subcommand("extremal", "block constructions"));
    std::string ext_variant = "th1";
    double ext_alpha = 0.75, ext_eps = 0.1, ext_beta = -1.0, ext_k1 = -1.0, ext_delta = -1.0;
    int ext_imax = 6, ext_divergence = 0;
    ext_cmd->add_option("--variant", ext_variant)->check(CLI::IsMember({"th1", "th2"}));
    ext_cmd->add_option("--alpha", ext_alpha);
    ext_cmd->add_option("--eps", ext_eps, "th1 epsilon in (0,1)");
    ext_cmd->add_option("--beta", ext_beta, "th2 beta (default derived)");
    ext_cmd->add_option("--k1", ext_k1, "th2 K1 constant (default derived)");
    ext_cmd->add_option("--delta", ext_delta, "th2 delta (default midpoint)");
    ext_cmd->add_option("--imax", ext_imax, "number of blocks");
    ext_cmd->add_option("--divergence", ext_divergence,
                        "emit partial sums of the divergent series through M blocks");

    // simulate
    auto* sim_cmd = add_common(app.add_subcommand("simulate", "seeded Monte-Carlo batch"));
    std::string sim_config, sim_traj_path;
    gcdlab::SimulateRunOptions sim;
    sim_cmd->add_option("--config", sim_config, "JSON config file (flags override it)");
    auto* o_seed = sim_cmd->add_option("--seed", sim.seed);
    auto* o_samples = sim_cmd->add_option("--samples", sim.samples);
    auto* o_alpha = sim_cmd->add_option("--alpha", sim.alpha);
    auto* o_n = sim_cmd->add_option("--n", sim.n, "identity dilations 1..n");
    auto* o_ces = sim_cmd->add_option("--cesaro-n", sim.cesaro_n);
    sim_cmd->add_option("--threads", sim.threads, "worker cap (does not affect results)");
    sim_cmd->add_option("--trajectories", sim_traj_path, "also write trajectory CSV here");

    // verify
    auto* verify_cmd = add_common(app.add_subcommand("verify", "run the acceptance suite"));
    std::string suite = "primary";
    int criterion = 0, verify_threads = 0;
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"primary"}));
    verify_cmd->add_option("--criterion", criterion, "run a single criterion (1..11)");
    verify_cmd->add_option("--threads", verify_threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);   // prints usage or the error message
        return code == 0 ? 0 : 1;
    }

    if (*sigma_cmd) {
        double v = gcdlab::sigma(sigma_s, sigma_k);
        if (format == "csv") {
            emit("s,k,sigma\n" + fmt17(sigma_s) + "," + std::to_string(sigma_k) + "," +
                     fmt17(v) + "\n",
                 out_path);
        } else {
            ordered_json j;
            j["config"] = {{"subcommand", "sigma"}, {"s", sigma_s}, {"k", sigma_k}};
            j["sigma"] = v;
            emit(j.dump(2) + "\n", out_path);
        }
        return 0;
    }

    if (*eig_cmd) {
        gcdlab::GcdMatrixSpec spec;
        spec.alpha = eig_alpha;
        if (!eig_dilations.empty())
            spec.dilations = parse_u64_list(eig_dilations);
        else
            spec = gcdlab::GcdMatrixSpec::identity(eig_alpha, eig_n);
        spec.validate();
        if (!dump_matrix.empty()) {
            std::ofstream mout(dump_matrix, std::ios::binary);
            if (!mout) throw std::invalid_argument("cannot open " + dump_matrix);
            gcdlab::write_matrix_csv(spec, mout);
        }
        auto res = gcdlab::largest_eigenvalue(spec, 1e-10, 100000, eig_threads);
        ordered_json j;
        j["config"] = {{"subcommand", "eig"},
                       {"alpha", eig_alpha},
                       {"n", spec.dilations.size()},
                       {"dilations", eig_dilations.empty() ? "identity" : eig_dilations}};
        j["lambda"] = res.lambda;
        j["residual"] = res.residual;
        j["iterations"] = res.iterations;
        j["certified_interval"] = {res.lower, res.upper};
        j["converged"] = res.converged;
        if (eig_min) {
            auto mn = gcdlab::min_eigenvalue(spec);
            j["min_lambda"] = mn.lambda;
            j["min_certified_interval"] = {mn.lower, mn.upper};
        }
        if (format == "csv") {
            std::string csv = "lambda,residual,iterations,lower,upper\n" + fmt17(res.lambda) +
                              "," + fmt17(res.residual) + "," + std::to_string(res.iterations) +
                              "," + fmt17(res.lower) + "," + fmt17(res.upper) + "\n";
            emit(csv, out_path);
        } else {
            emit(j.dump(2) + "\n", out_path);
        }
        return 0;
    }

    if (*gcdsum_cmd) {
        auto spec = gcdlab::GcdMatrixSpec::identity(gs_alpha, gs_n);
        std::vector<double> c(gs_n, 1.0);
        if (!gs_coeffs.empty()) {
            c = parse_double_list(gs_coeffs);
            if (c.size() != gs_n)
                throw std::invalid_argument("gcdsum: coefficient count must equal n");
        }
        double v = gcdlab::quadratic_form(spec, c);
        ordered_json j;
        j["config"] = {{"subcommand", "gcdsum"}, {"alpha", gs_alpha}, {"n", gs_n}};
        j["quadratic_form"] = v;
        emit(format == "csv" ? "quadratic_form\n" + fmt17(v) + "\n" : j.dump(2) + "\n",
             out_path);
        return 0;
    }

    if (*norm_cmd) {
        auto dil = parse_u64_list(norm_dil);
        auto coef = parse_double_list(norm_coef);
        gcdlab::FourierProfile profile =
            norm_profile == "sine"     ? gcdlab::FourierProfile::sine(norm_alpha)
            : norm_profile == "cosine" ? gcdlab::FourierProfile::cosine(norm_alpha)
                                       : gcdlab::FourierProfile::bernoulli_profile();
        auto exact = gcdlab::norm_squared(profile, dil, coef);
        auto oracle = gcdlab::parseval_norm(profile, dil, coef,
                                            std::max<u64>(parseval_j, dil.back()));
        ordered_json j;
        j["config"] = {{"subcommand", "norm"},
                       {"alpha", norm_alpha},
                       {"profile", norm_profile},
                       {"dilations", norm_dil},
                       {"coeffs", norm_coef},
                       {"parseval_j", parseval_j}};
        j["norm_sq"] = {{"lower", exact.lower}, {"upper", exact.upper}};
        j["parseval"] = {{"lower", oracle.lower}, {"upper", oracle.upper}};
        j["oracle_contains_exact"] =
            oracle.lower <= exact.lower && exact.upper <= oracle.upper;
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }

    if (*franel_cmd) {
        if (franel_max == 0 && (franel_k == 0 || franel_l == 0))
            throw std::invalid_argument("franel: give --max or both --k and --l");
        if (format == "csv") {
            std::string csv = "k,l,value\n";
            if (franel_max > 0) {
                for (u64 k = 1; k <= franel_max; ++k)
                    for (u64 l = k; l <= franel_max; ++l)
                        csv += std::to_string(k) + "," + std::to_string(l) + "," +
                               gcdlab::franel_exact(k, l).to_string() + "\n";
            } else {
                csv += std::to_string(franel_k) + "," + std::to_string(franel_l) + "," +
                       gcdlab::franel_exact(franel_k, franel_l).to_string() + "\n";
            }
            emit(csv, out_path);
        } else {
            ordered_json j;
            j["config"] = {{"subcommand", "franel"},
                           {"max", franel_max},
                           {"k", franel_k},
                           {"l", franel_l}};
            ordered_json vals = ordered_json::array();
            if (franel_max > 0) {
                for (u64 k = 1; k <= franel_max; ++k)
                    for (u64 l = k; l <= franel_max; ++l)
                        vals.push_back({{"k", k},
                                        {"l", l},
                                        {"value", gcdlab::franel_exact(k, l).to_string()}});
            } else {
                vals.push_back({{"k", franel_k},
                                {"l", franel_l},
                                {"value",
                                 gcdlab::franel_exact(franel_k, franel_l).to_string()}});
            }
            j["values"] = std::move(vals);
            emit(j.dump(2) + "\n", out_path);
        }
        return 0;
    }

    if (*ext_cmd) {
        if (ext_variant == "th1") {
            auto cons = gcdlab::th1_blocks(ext_alpha, ext_eps, ext_imax);
            if (ext_divergence > 0) {
                auto sums = gcdlab::divergence_partial_sums(cons, ext_divergence);
                ordered_json j;
                j["config"] = {{"subcommand", "extremal"},
                               {"variant", "th1"},
                               {"alpha", ext_alpha},
                               {"eps", ext_eps},
                               {"imax", ext_imax},
                               {"divergence", ext_divergence}};
                j["partial_sums"] = sums;
                emit(j.dump(2) + "\n", out_path);
            } else {
                emit(gcdlab::to_json(cons) + "\n", out_path);
            }
        } else {
            double delta = ext_delta > 0 ? ext_delta : gcdlab::th2_default_delta(ext_alpha);
            double beta = ext_beta > 0 ? ext_beta : gcdlab::th2_default_beta(delta);
            double k1 = ext_k1 > 0 ? ext_k1 : gcdlab::th2_default_k1(ext_alpha, 0.1);
            auto cons = gcdlab::th2_construction(ext_alpha, beta, k1, ext_imax, delta);
            if (ext_divergence > 0) {
                auto sums = gcdlab::divergence_partial_sums(cons, ext_divergence);
                ordered_json j;
                j["config"] = {{"subcommand", "extremal"}, {"variant", "th2"},
                               {"alpha", ext_alpha},     {"beta", beta},
                               {"k1", k1},               {"delta", delta},
                               {"imax", ext_imax},       {"divergence", ext_divergence}};
                j["partial_sums"] = sums;
                emit(j.dump(2) + "\n", out_path);
            } else {
                emit(gcdlab::to_json(cons) + "\n", out_path);
            }
        }
        return 0;
    }

    if (*sim_cmd) {
        if (!sim_config.empty()) {
            std::ifstream in(sim_config);
            if (!in) throw std::invalid_argument("cannot open config: " + sim_config);
            ordered_json j = ordered_json::parse(in);
            // file supplies defaults; explicitly passed flags win
            if (!*o_seed && j.contains("seed")) sim.seed = j["seed"].get<u64>();
            if (!*o_samples && j.contains("samples")) sim.samples = j["samples"].get<u64>();
            if (!*o_alpha && j.contains("alpha")) sim.alpha = j["alpha"].get<double>();
            if (!*o_n && j.contains("n")) sim.n = j["n"].get<u64>();
            if (!*o_ces && j.contains("cesaro_n")) sim.cesaro_n = j["cesaro_n"].get<u64>();
        }
        emit(gcdlab::simulate_report_json(sim), out_path);
        if (!sim_traj_path.empty()) {
            std::ofstream tout(sim_traj_path, std::ios::binary);
            if (!tout) throw std::invalid_argument("cannot open " + sim_traj_path);
            tout << gcdlab::simulate_trajectories_csv(sim);
        }
        return 0;
    }

    if (*verify_cmd) {
        auto results = gcdlab::run_acceptance(criterion, verify_threads);
        bool all = true;
        for (const auto& r : results) {
            std::cout << gcdlab::format_criterion(r) << "\n";
            all = all && r.pass;
        }
        std::cout << (all ? "acceptance: all criteria passed\n"
                          : "acceptance: FAILURES present\n");
        return all ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gcdlab::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
