// Command-line front end: validate inputs, emit quasi-probability tables,
// reconstruct states, run simulations, and scan the Margenau-Hill bounds.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpm/json_io.hpp"
#include "qpm/reconstruct.hpp"

namespace {

using qpm::json;

constexpr int kExitOk = 0;
constexpr int kExitPhysics = 1;
constexpr int kExitUsage = 2;

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw CLI::ValidationError("file not found: " + path);
}

void emit_error(const qpm::Error& e) {
    json out{{"error_kind", qpm::to_string(e.kind())},
             {"message", e.what()},
             {"magnitude", e.magnitude()}};
    std::cerr << out.dump() << '\n';
}

void print_table_text(const qpm::QuasiProbTable& t) {
    const auto& v = t.values();
    const bool complex_kind = t.kind() == qpm::TableKind::kirkwood_dirac;
    std::printf("kind: %s  (%td x %td)\n", qpm::to_string(t.kind()), v.rows(), v.cols());
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            if (complex_kind)
                std::printf(" %+.6f%+.6fi", v(i, j).real(), v(i, j).imag());
            else
                std::printf(" %+.6f", v(i, j).real());
        }
        std::printf("\n");
    }
    double row_dev = 0.0, col_dev = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        row_dev = std::max(row_dev, std::abs(v.row(i).sum() - qpm::Complex(t.row_marginals()[i])));
    for (Eigen::Index j = 0; j < v.cols(); ++j)
        col_dev = std::max(col_dev, std::abs(v.col(j).sum() - qpm::Complex(t.col_marginals()[j])));
    std::printf("marginal check: max row dev %.3e, max col dev %.3e, total %.12f\n", row_dev,
                col_dev, t.total().real());
    const double min_re = t.min_real();
    const double max_im = t.max_imag_abs();
    std::printf("min entry (real part): %.6f%s\n", min_re,
                min_re < -1e-10 ? "  [negative: nonclassicality witness]" : "");
    if (complex_kind)
        std::printf("max |imag|: %.6f%s\n", max_im,
                    max_im > 1e-10 ? "  [imaginary: nonclassicality witness]" : "");
}

int cmd_validate(const std::vector<std::string>& paths, double tol, bool json_only) {
    int status = kExitOk;
    json verdicts = json::array();
    for (const auto& path : paths) {
        json verdict{{"file", path}};
        try {
            const json j = qpm::load_json(path);
            if (j.contains("projectors") || j.contains("basis")) {
                const qpm::Pvm p = qpm::pvm_from_json(j, tol);
                verdict["type"] = "pvm";
                verdict["dim"] = p.dim();
                verdict["rank_one"] = p.rank_one();
                verdict["valid"] = true;
            } else {
                const qpm::DensityMatrix rho = qpm::state_from_json(j, tol);
                verdict["type"] = "state";
                verdict["dim"] = rho.dim();
                verdict["valid"] = true;
            }
        } catch (const qpm::Error& e) {
            verdict["valid"] = false;
            verdict["error_kind"] = qpm::to_string(e.kind());
            verdict["message"] = e.what();
            verdict["magnitude"] = e.magnitude();
            status = kExitPhysics;
        }
        verdicts.push_back(verdict);
        if (!json_only) {
            if (verdict["valid"].get<bool>())
                std::printf("%s: OK (%s, dim %lld)\n", path.c_str(),
                            verdict["type"].get<std::string>().c_str(),
                            static_cast<long long>(verdict["dim"].get<Eigen::Index>()));
            else
                std::printf("%s: INVALID %s (violation %.3e): %s\n", path.c_str(),
                            verdict["error_kind"].get<std::string>().c_str(),
                            verdict["magnitude"].get<double>(),
                            verdict["message"].get<std::string>().c_str());
        }
    }
    if (json_only) std::cout << verdicts.dump() << '\n';
    return status;
}

int cmd_quasiprob(const std::string& state_path, const std::string& pvm_a_path,
                  const std::string& pvm_b_path, const std::string& kind,
                  const std::string& out_path, double tol, bool json_only) {
    const qpm::DensityMatrix rho = qpm::state_from_json(qpm::load_json(state_path), tol);
    const qpm::Pvm pa = qpm::pvm_from_json(qpm::load_json(pvm_a_path), tol);
    const qpm::Pvm pb = qpm::pvm_from_json(qpm::load_json(pvm_b_path), tol);
    const qpm::QuasiProbTable table =
        qpm::QuasiProbTable::build(rho, pa, pb, qpm::table_kind_from_string(kind));
    const json j = qpm::table_to_json(table);
    if (!out_path.empty()) qpm::save_json(out_path, j);
    if (json_only)
        std::cout << j.dump() << '\n';
    else
        print_table_text(table);
    return kExitOk;
}

int cmd_reconstruct(const std::string& table_path, const std::string& pvm_a_path,
                    const std::string& pvm_b_path, const std::string& out_path, double tol,
                    bool json_only) {
    const qpm::Pvm pa = qpm::pvm_from_json(qpm::load_json(pvm_a_path), tol);
    const qpm::Pvm pb = qpm::pvm_from_json(qpm::load_json(pvm_b_path), tol);
    const qpm::OverlapMatrix ov = qpm::completeness_check(pa, pb);
    const qpm::QuasiProbTable table = qpm::table_from_json(qpm::load_json(table_path), pa, pb);
    const qpm::DensityMatrix rho = qpm::reconstruct_state(table, pa, pb);
    const json j = qpm::state_to_json(rho);
    if (!out_path.empty()) qpm::save_json(out_path, j);
    if (json_only) {
        std::cout << j.dump() << '\n';
    } else {
        std::printf("min overlap |<a_i|b_j>| = %.6e%s\n", ov.min_abs,
                    ov.min_abs < 1e-3 ? "  [warning: poorly conditioned inversion]" : "");
        std::printf("reconstructed state (dim %td):\n", rho.dim());
        std::cout << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, double tol,
                 bool json_only) {
    const json cfg = qpm::load_json(config_path);
    const qpm::DensityMatrix rho = qpm::state_from_json(cfg.at("state"), tol);
    const qpm::Projector a = qpm::Projector::validate(qpm::matrix_from_json(cfg.at("alpha")), tol);
    const qpm::Projector b = qpm::Projector::validate(qpm::matrix_from_json(cfg.at("beta")), tol);
    const std::uint64_t n = cfg.at("n").get<std::uint64_t>();
    qpm::Seed seed;
    if (cfg.contains("seed")) {
        seed.value = cfg.at("seed").value("value", 0ull);
        seed.stream = cfg.at("seed").value("stream", 0ull);
    }
    const std::string op = cfg.value("op", "projective");
    qpm::SimulationReport rep;
    if (op == "projective") {
        rep = qpm::sample_projective_sequence(rho, a, b, n, seed);
    } else if (op == "disturbance") {
        rep = qpm::estimate_disturbance(rho, a, b, n, seed);
    } else if (op == "weak_pointer") {
        qpm::PointerModel model{cfg.at("model").at("sigma").get<double>()};
        rep = qpm::sample_weak_pointer(rho, a, b, model, n, seed);
    } else {
        throw CLI::ValidationError("unknown op: " + op);
    }
    const json j = qpm::report_to_json(rep);
    if (!out_path.empty()) qpm::save_json(out_path, j);
    std::cout << j.dump(json_only ? -1 : 2) << '\n';
    return kExitOk;
}

int cmd_bounds(Eigen::Index dim, std::uint64_t samples, std::uint64_t seed_value,
               std::uint64_t refine_budget, const std::string& out_path, bool json_only) {
    const qpm::Seed seed{seed_value, 0};
    qpm::ScanReport rep = qpm::scan_bounds(dim, samples, seed);
    json j = qpm::scan_report_to_json(rep);
    if (refine_budget > 0) {
        const qpm::Configuration refined =
            qpm::refine_minimum(rep.min_config, refine_budget, qpm::Seed{seed_value, 1});
        j["refined_min"] = qpm::configuration_to_json(refined);
    }
    if (!out_path.empty()) qpm::save_json(out_path, j);
    if (json_only) {
        std::cout << j.dump() << '\n';
    } else {
        std::printf("dim %td, %llu samples: min mh = %.12f, max mh = %.12f\n", dim,
                    static_cast<unsigned long long>(samples), rep.min_config.value,
                    rep.max_config.value);
        if (refine_budget > 0)
            std::printf("refined min mh = %.12f (bound is -0.125)\n",
                        j["refined_min"]["value"].get<double>());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-probability calculus for successive projective measurements"};
    app.require_subcommand(1);

    double tol = qpm::kDefaultTol;
    std::uint64_t seed_value = 0;
    bool json_only = false;
    app.add_option("--tol", tol, "validation tolerance");
    app.add_option("--seed", seed_value, "random seed");
    app.add_flag("--json-only", json_only, "machine-readable output only");

    auto* validate = app.add_subcommand("validate", "validate state / PVM files");
    std::vector<std::string> validate_paths;
    validate->add_option("files", validate_paths, "JSON files")->required();

    auto* quasiprob = app.add_subcommand("quasiprob", "emit a quasi-probability table");
    std::string qp_state, qp_pvm_a, qp_pvm_b, qp_kind = "mh", qp_out;
    quasiprob->add_option("state", qp_state)->required();
    quasiprob->add_option("pvm_a", qp_pvm_a)->required();
    quasiprob->add_option("pvm_b", qp_pvm_b)->required();
    quasiprob->add_option("--kind", qp_kind, "mh | kd | wigner | factorized");
    quasiprob->add_option("--out", qp_out, "write table JSON here");

    auto* reconstruct = app.add_subcommand("reconstruct", "invert a Kirkwood-Dirac table");
    std::string rc_table, rc_pvm_a, rc_pvm_b, rc_out;
    reconstruct->add_option("table", rc_table)->required();
    reconstruct->add_option("pvm_a", rc_pvm_a)->required();
    reconstruct->add_option("pvm_b", rc_pvm_b)->required();
    reconstruct->add_option("--out", rc_out, "write state JSON here");

    auto* simulate = app.add_subcommand("simulate", "run a Monte-Carlo experiment");
    std::string sim_config, sim_out;
    simulate->add_option("config", sim_config)->required();
    simulate->add_option("--out", sim_out, "write report JSON here");

    auto* bounds = app.add_subcommand("bounds", "scan the Margenau-Hill value range");
    Eigen::Index bd_dim = 2;
    std::uint64_t bd_samples = 10000, bd_refine = 0;
    std::string bd_out;
    bounds->add_option("--dim", bd_dim, "Hilbert space dimension");
    bounds->add_option("--samples", bd_samples, "number of random triples");
    bounds->add_option("--refine-budget", bd_refine, "local-descent budget from the scan minimum");
    bounds->add_option("--out", bd_out, "write report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) {
            for (const auto& p : validate_paths) require_file(p);
            return cmd_validate(validate_paths, tol, json_only);
        }
        if (*quasiprob) {
            for (const auto& p : {qp_state, qp_pvm_a, qp_pvm_b}) require_file(p);
            return cmd_quasiprob(qp_state, qp_pvm_a, qp_pvm_b, qp_kind, qp_out, tol, json_only);
        }
        if (*reconstruct) {
            for (const auto& p : {rc_table, rc_pvm_a, rc_pvm_b}) require_file(p);
            return cmd_reconstruct(rc_table, rc_pvm_a, rc_pvm_b, rc_out, tol, json_only);
        }
        if (*simulate) {
            require_file(sim_config);
            return cmd_simulate(sim_config, sim_out, tol, json_only);
        }
        if (*bounds) return cmd_bounds(bd_dim, bd_samples, seed_value, bd_refine, bd_out, json_only);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const qpm::Error& e) {
        emit_error(e);
        return e.kind() == qpm::ErrorKind::InvalidArgument &&
                       std::string(e.what()).starts_with("cannot open")
                   ? kExitUsage
                   : kExitPhysics;
    } catch (const json::exception& e) {
        std::cerr << json{{"error_kind", "InvalidArgument"}, {"message", e.what()}}.dump() << '\n';
        return kExitPhysics;
    }
    return kExitUsage;
}
