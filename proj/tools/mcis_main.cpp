#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "mcis/certificate.hpp"
#include "mcis/gadget.hpp"
#include "mcis/landscape.hpp"
#include "mcis/rounding.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFailed = 3;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw mcis::Error("cannot open output file: " + out_path);
        out << j.dump(2) << '\n';
    }
}

json constants_json() {
    auto cc = mcis::compute_critical_constants();
    json j;
    j["rho_star"] = cc.rho_star;
    j["alpha_gw"] = cc.alpha_gw;
    j["c_star"] = cc.c_star;
    j["s_star"] = cc.s_star;
    j["alpha_star"] = cc.alpha_star;
    j["b_star"] = cc.b_star;
    j["p_star"] = cc.p_star;
    j["q_star"] = cc.q_star;
    return j;
}

json report_json(const mcis::LandscapeReport& rep) {
    json j;
    j["maximizer"] = rep.maximizer;
    j["value"] = rep.value;
    j["location_class"] =
        rep.location_class == mcis::LocationClass::interior ? "interior" : "boundary";
    j["residual"] = rep.residual;
    return j;
}

double planted_incident_weight(const mcis::WeightedGraph& g) {
    std::vector<uint8_t> in(g.n, 0);
    for (int v : g.planted) in[v] = 1;
    double w = 0.0;
    for (const auto& e : g.edges)
        if (in[e.i] || in[e.j]) w += e.w;
    return w;
}

int run_gadget(const std::string& type, double rho, double alpha, int r,
               const std::string& export_path, const std::string& out_path) {
    mcis::Correlation c(rho);
    mcis::GadgetGraph g;
    std::vector<int> iset;
    json j;
    j["type"] = type;
    j["rho"] = rho;
    j["r"] = r;
    if (type == "noisy") {
        g = mcis::build_noisy_cube(c, r);
    } else if (type == "tripartite") {
        g = mcis::build_tripartite_cube(c, r);
    } else if (type == "known-iset") {
        g = mcis::build_known_iset_gadget(c, alpha, r);
        j["alpha"] = alpha;
        size_t per_part = g.vertices.size() / 2;
        for (size_t v = 0; v < per_part; ++v) iset.push_back(static_cast<int>(v));
    } else if (type == "hidden-iset") {
        g = mcis::build_hidden_iset_gadget(c, alpha, r);
        j["alpha"] = alpha;
        // y-dictator on coordinate 0: symbols 2x+y with y = 1
        for (size_t v = 0; v < g.vertices.size(); ++v)
            if (g.vertices[v].string % 4 == 1 || g.vertices[v].string % 4 == 3)
                iset.push_back(static_cast<int>(v));
    } else {
        throw mcis::Error("unknown gadget type: " + type);
    }
    j["vertices"] = g.vertices.size();
    j["total_weight"] = g.total_weight();

    // Dictator cut on the first string coordinate (x-part for 4-ary symbols).
    mcis::CutAssignment dict;
    dict.member.resize(g.vertices.size());
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        uint32_t sym = g.vertices[v].string % g.domain_size;
        dict.member[v] = g.domain_size == 4 ? (sym >> 1) & 1u : sym & 1u;
    }
    j["dictator_cut"] = mcis::cut_value(g, dict);

    if (!iset.empty()) {
        auto [indep, vol] = mcis::independent_set_check(g, iset);
        j["iset_independent"] = indep;
        j["iset_volume"] = vol;
    }
    if (g.vertices.size() <= 24) {
        auto [cut, value] = mcis::brute_force_max_cut(g);
        j["max_cut"] = value;
    }
    if (g.vertices.size() <= 20) j["quasirandom_cut_tau0"] = mcis::quasirandom_max_cut(g, 0.0);
    if (type == "hidden-iset") {
        auto d = mcis::tensor_distribution(mcis::make_rho_correlated(c),
                                           mcis::make_mu2_alpha(alpha));
        j["correlation"] = mcis::correlation_of(d).value;
    }

    if (!export_path.empty()) {
        // Re-index into the sdp graph format, dropping diagonal mass.
        mcis::WeightedGraph wg;
        wg.n = static_cast<int>(g.vertices.size());
        for (const auto& [e, w] : g.edge_weights)
            if (e.first != e.second) wg.edges.push_back({e.first, e.second, w});
        wg.planted = iset;
        std::ofstream out(export_path);
        if (!out) throw mcis::Error("cannot open export file: " + export_path);
        mcis::save_graph(wg, out);
        j["exported"] = export_path;
    }
    emit(j, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-Cut toolkit for graphs with large independent sets"};
    app.set_config("--config", "", "key = value config file; explicit flags win");
    app.require_subcommand(1);

    uint64_t seed = 0;
    int workers = 1;
    std::string out_path;
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
    app.add_option("--workers", workers, "worker threads for box processing")
        ->capture_default_str();
    app.add_option("--out", out_path, "write JSON report here instead of stdout");

    auto* c_constants = app.add_subcommand("constants", "critical constants");

    auto* c_landscape = app.add_subcommand("landscape", "Gaussian cut landscape reports");
    double ls_rho = -0.6891577366451644;
    double ls_alpha = -1.0;
    double ls_zmax = 5.0;
    int ls_zn = 10000;
    std::string ls_csv;
    c_landscape->add_option("--rho", ls_rho, "correlation in (-1, 0]")->capture_default_str();
    c_landscape->add_option("--alpha", ls_alpha, "bipartite mixture weight (enables bipartite report)");
    c_landscape->add_option("--zmax", ls_zmax, "z-ratio check range")->capture_default_str();
    c_landscape->add_option("--zn", ls_zn, "z-ratio check grid points")->capture_default_str();
    c_landscape->add_option("--grid-csv", ls_csv, "export a 101x101 cut-value grid as CSV");

    auto* c_gadget = app.add_subcommand("gadget", "build and analyze a gadget graph");
    std::string g_type = "tripartite", g_export;
    double g_rho = -0.6891577366451644, g_alpha = 0.5;
    int g_r = 2;
    c_gadget->add_option("--type", g_type, "noisy|tripartite|known-iset|hidden-iset")
        ->capture_default_str();
    c_gadget->add_option("--rho", g_rho, "pair correlation")->capture_default_str();
    c_gadget->add_option("--alpha", g_alpha, "independent-set weight parameter")
        ->capture_default_str();
    c_gadget->add_option("--r", g_r, "string dimension")->capture_default_str();
    c_gadget->add_option("--export", g_export, "write the gadget in sdp graph format");

    auto* c_solve = app.add_subcommand("solve", "solve the independence-constrained SDP");
    std::string s_graph, s_solution;
    c_solve->add_option("--graph", s_graph, "input graph file")->required();
    c_solve->add_option("--solution", s_solution, "write the solution export here");

    auto* c_round = app.add_subcommand("round", "THRESH- rounding of a solution export");
    std::string r_graph, r_solution;
    long r_trials = 10000;
    double r_b0 = 0.1840220;
    c_round->add_option("--graph", r_graph, "input graph file")->required();
    c_round->add_option("--solution", r_solution, "solution export from `solve`")->required();
    c_round->add_option("--trials", r_trials, "rounding trials")->capture_default_str();
    c_round->add_option("--b0", r_b0, "threshold anchor bias")->capture_default_str();

    auto* c_verify = app.add_subcommand("verify", "interval certificate of the soundness bound");
    double v_b0 = 0.1840220, v_eta = 1e-13, v_t1_offset = 0.0095;
    bool v_relaxed = false;
    int v_grid = 64, v_depth = 40;
    c_verify->add_option("--b0", v_b0, "anchor bias")->capture_default_str();
    c_verify->add_option("--eta", v_eta, "anchor half-width")->capture_default_str();
    c_verify->add_flag("--relaxed", v_relaxed, "point-b0 regression run (eta = 0)");
    c_verify->add_option("--t1-offset", v_t1_offset, "t(1) = q + offset")->capture_default_str();
    c_verify->add_option("--grid", v_grid, "initial subdivision grid")->capture_default_str();
    c_verify->add_option("--max-depth", v_depth, "subdivision depth cap")->capture_default_str();

    auto* c_pipeline = app.add_subcommand("pipeline", "solve, blend, round, certify");
    std::string p_graph;
    long p_trials = 10000;
    c_pipeline->add_option("--graph", p_graph, "input graph file")->required();
    c_pipeline->add_option("--trials", p_trials, "rounding trials")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_constants)) {
            emit(constants_json(), out_path);
            return kExitOk;
        }
        if (app.got_subcommand(c_landscape)) {
            mcis::Correlation rho(ls_rho);
            json j;
            j["rho"] = ls_rho;
            j["tripartite"] = report_json(mcis::tripartite_max(rho));
            if (ls_alpha >= 0.0) {
                j["alpha"] = ls_alpha;
                j["bipartite"] = report_json(mcis::bipartite_max(rho, ls_alpha));
            }
            if (ls_rho < 0.0) j["z_ratio_increasing"] = mcis::z_ratio_check(rho, ls_zmax, ls_zn);
            if (!ls_csv.empty()) {
                std::ofstream csv(ls_csv);
                if (!csv) throw mcis::Error("cannot open CSV file: " + ls_csv);
                csv.precision(17);
                csv << "mu1,mu2,cut\n";
                for (int a = 0; a <= 100; ++a)
                    for (int b = 0; b <= 100; ++b)
                        csv << a / 100.0 << ',' << b / 100.0 << ','
                            << mcis::gaussian_cut(rho, a / 100.0, b / 100.0, 1e-9) << '\n';
                j["grid_csv"] = ls_csv;
            }
            emit(j, out_path);
            return kExitOk;
        }
        if (app.got_subcommand(c_gadget))
            return run_gadget(g_type, g_rho, g_alpha, g_r, g_export, out_path);
        if (app.got_subcommand(c_solve)) {
            auto g = mcis::load_graph_file(s_graph);
            mcis::SolverConfig cfg;
            cfg.seed = seed;
            auto sol = mcis::solve_sdp(g, cfg);
            auto rep = mcis::feasibility_report(g, sol);
            json j;
            j["n"] = g.n;
            j["edges"] = g.edges.size();
            j["objective"] = mcis::sdp_objective(g, sol);
            j["max_norm_violation"] = rep.max_norm_violation;
            j["max_edge_violation"] = rep.max_edge_violation;
            j["max_bij_violation"] = rep.max_bij_violation;
            j["min_bias_sum"] = rep.min_bias_sum;
            if (!s_solution.empty()) {
                std::ofstream out(s_solution);
                if (!out) throw mcis::Error("cannot open solution file: " + s_solution);
                mcis::save_solution(sol, out);
                j["solution"] = s_solution;
            }
            emit(j, out_path);
            return kExitOk;
        }
        if (app.got_subcommand(c_round)) {
            auto g = mcis::load_graph_file(r_graph);
            std::ifstream in(r_solution);
            if (!in) throw mcis::Error("cannot open solution file: " + r_solution);
            auto sol = mcis::load_solution(in);
            auto t = mcis::default_threshold(r_b0);
            auto outcome = mcis::round_many(g, sol, t, r_trials, seed);
            json j;
            j["cut_weight"] = outcome.cut_weight;
            j["best_weight"] = outcome.best_weight;
            j["mean_weight"] = outcome.mean_weight;
            j["trials"] = outcome.trials;
            j["seed"] = outcome.seed;
            j["certified_bound"] = mcis::certified_bound(g, sol, r_b0);
            emit(j, out_path);
            return kExitOk;
        }
        if (app.got_subcommand(c_verify)) {
            if (v_relaxed) v_eta = 0.0;
            auto t = mcis::default_threshold(v_b0);
            t.breakpoints.back().second = t.q + v_t1_offset;
            mcis::CertificateConfig cfg;
            cfg.initial_grid = v_grid;
            cfg.max_depth = v_depth;
            cfg.workers = workers;
            auto rep = mcis::verify_certificate(v_b0, v_eta, t, cfg);
            json j;
            j["verified"] = rep.verified;
            j["boxes_checked"] = rep.boxes_checked;
            j["max_depth"] = rep.max_depth;
            j["near_case_boxes"] = rep.near_case_boxes;
            json fails = json::array();
            for (const auto& b : rep.failures) {
                json f;
                f["bi"] = {b.bi.lo, b.bi.hi};
                f["bj"] = {b.bj.lo, b.bj.hi};
                fails.push_back(f);
            }
            j["failures"] = fails;
            j["depth_exhausted"] = rep.depth_exhausted;
            j["criticality_ok"] = rep.criticality_ok;
            j["eta"] = rep.eta;
            j["runtime_seconds"] = rep.runtime_seconds;
            emit(j, out_path);
            return rep.verified ? kExitOk : kExitVerifyFailed;
        }
        if (app.got_subcommand(c_pipeline)) {
            auto cc = mcis::compute_critical_constants();
            auto g = mcis::load_graph_file(p_graph);
            mcis::SolverConfig scfg;
            scfg.seed = seed;
            auto sol = mcis::solve_sdp(g, scfg);
            double obj = mcis::sdp_objective(g, sol);
            // Cap the objective just above alpha*, inside the certified window.
            double cap = cc.alpha_star + 5e-14;
            auto blended = obj > cap ? mcis::blend_solution(sol, g, cap) : sol;
            double blended_obj = mcis::sdp_objective(g, blended);
            auto t = mcis::default_threshold(cc.b_star);
            auto outcome = mcis::round_many(g, blended, t, p_trials, seed);
            json j;
            j["sdp_objective"] = obj;
            j["blended_objective"] = blended_obj;
            j["certified_bound"] = mcis::certified_bound(g, blended, cc.b_star);
            j["mean_cut"] = outcome.mean_weight;
            j["best_cut"] = outcome.best_weight;
            j["trials"] = outcome.trials;
            j["seed"] = outcome.seed;
            bool planted_large = false;
            if (!g.planted.empty()) {
                double pw = planted_incident_weight(g);
                j["planted_incident_weight"] = pw;
                planted_large = pw > cc.alpha_star;
            }
            emit(j, out_path);
            if (planted_large) return outcome.best_weight > cc.s_star ? kExitOk : kExitComputational;
            return kExitOk;
        }
    } catch (const mcis::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const mcis::SelfLoop& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const mcis::NegativeWeight& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const mcis::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputational;
    }
    return kExitBadInput;
}
