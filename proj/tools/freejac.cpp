// freejac — free polynomial maps on matrix tuples: evaluation, derivatives,
// singularity certificates, Sylvester analysis, injectivity witnesses and
// inversion. JSON in, JSON out; --pretty for human-readable summaries.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "freejac/digest.hpp"
#include "freejac/error.hpp"
#include "freejac/eval.hpp"
#include "freejac/linearize.hpp"
#include "freejac/newton.hpp"
#include "freejac/parse.hpp"
#include "freejac/scan.hpp"
#include "freejac/series.hpp"
#include "freejac/sylvester.hpp"
#include "freejac/witness.hpp"

namespace {

using freejac::Error;
using freejac::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitScanHits = 3;

struct Output {
    std::string path;  // empty: stdout
    bool pretty = false;

    void emit(const json& j, const std::string& pretty_text = "") const {
        std::string text = pretty && !pretty_text.empty() ? pretty_text : j.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::io_error, "cannot open output file '" + path + "'");
        out << text;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::io_error, "invalid JSON in '" + path + "': " + e.what());
    }
}

freejac::MatrixTuple load_tuple(const std::string& path) {
    return freejac::MatrixTuple::from_json(load_json(path));
}

/// Single matrices travel as one-component tuple JSON.
Eigen::MatrixXcd load_matrix(const std::string& path) {
    freejac::MatrixTuple t = load_tuple(path);
    if (t.count() != 1) {
        throw Error(ErrorCode::shape_mismatch,
                    "expected a single matrix (a one-component tuple) in '" + path + "'");
    }
    return t.mats.front();
}

struct MapInput {
    std::string inline_text;
    std::string file;

    freejac::ParsedMap parse() const {
        if (!inline_text.empty() && !file.empty()) {
            throw Error(ErrorCode::invalid_argument, "give the map inline or as a file, not both");
        }
        if (!inline_text.empty()) return freejac::parse_source(inline_text);
        if (!file.empty()) return freejac::parse_source(slurp(file));
        throw Error(ErrorCode::invalid_argument, "a map is required (-m or --map-file)");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("-m,--map", inline_text, "map source, e.g. \"vars X,Y; (X+Y, X^2+Y^2)\"");
        cmd->add_option("--map-file", file, "file containing the map source");
    }
};

int resolve_var(const json& v, const std::vector<std::string>& names) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) return static_cast<int>(i);
        }
        throw Error(ErrorCode::unknown_identifier,
                    "domain constraint references unknown variable '" + name + "'");
    }
    throw Error(ErrorCode::invalid_argument, "constraint \"var\" must be an index or a name");
}

/// Domain JSON may name variables; indices are substituted before parsing.
freejac::DomainSpec load_domain(const std::string& path, const std::vector<std::string>& names) {
    json j = load_json(path);
    json* arr = j.is_array() ? &j : (j.contains("constraints") ? &j["constraints"] : nullptr);
    if (arr) {
        for (auto& jc : *arr) {
            if (jc.contains("var")) jc["var"] = resolve_var(jc["var"], names);
        }
    }
    return freejac::DomainSpec::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free polynomial maps on matrix tuples"};
    app.require_subcommand(1);

    Output out;
    app.add_option("-o,--out", out.path, "write output to a file instead of stdout");
    app.add_flag("--pretty", out.pretty, "human-readable output where available");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a map on a matrix tuple");
    MapInput eval_map_in;
    eval_map_in.attach(eval_cmd);
    std::string eval_point;
    eval_cmd->add_option("-x,--point", eval_point, "matrix-tuple JSON file")->required();

    // jet
    auto* jet_cmd = app.add_subcommand("jet", "block-jet evaluation: value and derivative");
    MapInput jet_map_in;
    jet_map_in.attach(jet_cmd);
    std::string jet_point, jet_dir;
    jet_cmd->add_option("-x,--point", jet_point, "matrix-tuple JSON file")->required();
    jet_cmd->add_option("-H,--direction", jet_dir, "direction tuple JSON file")->required();

    // deriv-matrix
    auto* dm_cmd = app.add_subcommand("deriv-matrix", "materialize the derivative as a matrix");
    MapInput dm_map_in;
    dm_map_in.attach(dm_cmd);
    std::string dm_point;
    dm_cmd->add_option("-x,--point", dm_point, "matrix-tuple JSON file")->required();

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "singularity certificate of the derivative");
    MapInput cert_map_in;
    cert_map_in.attach(cert_cmd);
    std::string cert_point;
    cert_cmd->add_option("-x,--point", cert_point, "matrix-tuple JSON file")->required();

    // sylvester
    auto* syl_cmd = app.add_subcommand(
        "sylvester", "solve AH + HB = C, or test uniqueness when C is omitted");
    std::string syl_a, syl_b, syl_c;
    syl_cmd->add_option("--A", syl_a, "matrix JSON file")->required();
    syl_cmd->add_option("--B", syl_b, "matrix JSON file")->required();
    syl_cmd->add_option("--C", syl_c, "right-hand side JSON file (omit to test uniqueness)");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "sample a domain and certify derivatives");
    MapInput scan_map_in;
    scan_map_in.attach(scan_cmd);
    std::string scan_domain;
    std::vector<int> scan_sizes{2, 3};
    int scan_samples = 100;
    std::uint64_t scan_seed = 0;
    std::vector<std::string> scan_plants;
    scan_cmd->add_option("-d,--domain", scan_domain, "domain spec JSON file");
    scan_cmd->add_option("-n,--sizes", scan_sizes, "matrix sizes to scan")->delimiter(',');
    scan_cmd->add_option("--samples", scan_samples, "samples per size");
    scan_cmd->add_option("-s,--seed", scan_seed, "RNG seed (scans are deterministic per seed)")
        ->required();
    scan_cmd->add_option("--plant", scan_plants, "tuple JSON files appended to the batch");

    // witness
    auto* wit_cmd = app.add_subcommand("witness", "injectivity witness constructions");
    wit_cmd->require_subcommand(1);
    auto* wk_cmd = wit_cmd->add_subcommand("from-kernel",
                                           "collision pair from a kernel direction");
    MapInput wk_map_in;
    wk_map_in.attach(wk_cmd);
    std::string wk_point, wk_dir;
    wk_cmd->add_option("-x,--point", wk_point, "matrix-tuple JSON file")->required();
    wk_cmd->add_option("-H,--direction", wk_dir, "direction tuple JSON file")->required();
    auto* wc_cmd = wit_cmd->add_subcommand("from-collision",
                                           "kernel direction from a collision pair");
    MapInput wc_map_in;
    wc_map_in.attach(wc_cmd);
    std::string wc_x1, wc_x2;
    wc_cmd->add_option("--x1", wc_x1, "first tuple JSON file")->required();
    wc_cmd->add_option("--x2", wc_x2, "second tuple JSON file")->required();

    // invert-series
    auto* ser_cmd = app.add_subcommand("invert-series", "truncated compositional inverse");
    MapInput ser_map_in;
    ser_map_in.attach(ser_cmd);
    int ser_degree = 5;
    ser_cmd->add_option("--degree", ser_degree, "working degree of the series");

    // invert-newton
    auto* newt_cmd = app.add_subcommand("invert-newton", "numerical inversion by Newton steps");
    MapInput newt_map_in;
    newt_map_in.attach(newt_cmd);
    std::string newt_target, newt_init;
    double newt_tol = 1e-10;
    int newt_max_iter = 50;
    bool newt_damping = false;
    newt_cmd->add_option("--target", newt_target, "target tuple JSON file")->required();
    newt_cmd->add_option("--init", newt_init, "initial iterate JSON file")->required();
    newt_cmd->add_option("--tol", newt_tol, "relative residual tolerance");
    newt_cmd->add_option("--max-iter", newt_max_iter, "iteration cap");
    newt_cmd->add_flag("--damping", newt_damping, "halve steps that increase the residual");

    // accept -o/--pretty after the subcommand as well
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cout << Error(ErrorCode::invalid_argument, e.what()).to_json().dump(2) << "\n";
        return kExitPrecondition;
    }

    try {
        if (*eval_cmd) {
            auto parsed = eval_map_in.parse();
            out.emit(freejac::eval_map(parsed.map, load_tuple(eval_point)).to_json());
        } else if (*jet_cmd) {
            auto parsed = jet_map_in.parse();
            auto jet = freejac::jet_eval(parsed.map, load_tuple(jet_point), load_tuple(jet_dir));
            out.emit(json{{"value", jet.value.to_json()},
                          {"derivative", jet.derivative.to_json()}});
        } else if (*dm_cmd) {
            auto parsed = dm_map_in.parse();
            out.emit(freejac::derivative_matrix(parsed.map, load_tuple(dm_point)).to_json());
        } else if (*cert_cmd) {
            auto parsed = cert_map_in.parse();
            auto cert = freejac::singularity_certificate(
                freejac::derivative_matrix(parsed.map, load_tuple(cert_point)));
            std::string pretty = std::string(cert.singular() ? "singular" : "nonsingular") +
                                 " (sigma_min=" + freejac::format_double(cert.sigma_min) +
                                 ", sigma_max=" + freejac::format_double(cert.sigma_max) + ")\n";
            out.emit(cert.to_json(), pretty);
        } else if (*syl_cmd) {
            Eigen::MatrixXcd a = load_matrix(syl_a);
            Eigen::MatrixXcd b = load_matrix(syl_b);
            if (syl_c.empty()) {
                out.emit(freejac::sylvester_unique(a, b).to_json());
            } else {
                Eigen::MatrixXcd c = load_matrix(syl_c);
                Eigen::MatrixXcd h = freejac::sylvester_solve(a, b, c);
                freejac::MatrixTuple ht({h});
                double residual = (a * h + h * b - c).norm();
                out.emit(json{{"H", ht.to_json()}, {"residual", residual}});
            }
        } else if (*scan_cmd) {
            auto parsed = scan_map_in.parse();
            freejac::DomainSpec domain;
            if (!scan_domain.empty()) domain = load_domain(scan_domain, parsed.names);
            freejac::SampleConfig cfg;
            cfg.count = scan_samples;
            cfg.seed = scan_seed;
            std::vector<freejac::MatrixTuple> planted;
            for (const auto& path : scan_plants) planted.push_back(load_tuple(path));
            auto report = freejac::jacobian_scan(parsed.map, domain, scan_sizes, cfg, planted);
            std::ostringstream pretty;
            pretty << "scan of " << report.map_digest << " (seed " << report.seed << ", "
                   << (report.domain_free ? "free domain" : "non-free domain")
                   << "; sampled evidence only)\n";
            for (const auto& rec : report.sizes) {
                pretty << "  n=" << rec.n << ": " << rec.samples << " samples, min sigma_min "
                       << freejac::format_double(rec.min_sigma_min) << ", " << rec.hits.size()
                       << " singular hit(s)\n";
            }
            out.emit(report.to_json(), pretty.str());
            return report.total_hits > 0 ? kExitScanHits : kExitOk;
        } else if (*wk_cmd) {
            auto parsed = wk_map_in.parse();
            auto w = freejac::make_kernel_witness(parsed.map, load_tuple(wk_point),
                                                  load_tuple(wk_dir));
            out.emit(freejac::collision_from_kernel(parsed.map, w).to_json());
        } else if (*wc_cmd) {
            auto parsed = wc_map_in.parse();
            auto w = freejac::kernel_from_collision(parsed.map, load_tuple(wc_x1),
                                                    load_tuple(wc_x2));
            out.emit(w.to_json());
        } else if (*ser_cmd) {
            auto parsed = ser_map_in.parse();
            auto inv = freejac::series_inverse(parsed.map, ser_degree);
            std::vector<std::string> names =
                parsed.map.num_vars == 1 ? std::vector<std::string>{"Y"} : parsed.names;
            std::string display;
            for (int i = 0; i < inv.map.num_outputs(); ++i) {
                if (i) display += ", ";
                display += freejac::print_poly(inv.map.components[i], names, true);
            }
            if (inv.map.num_outputs() > 1) display = "(" + display + ")";
            out.emit(json{{"degree", inv.degree},
                          {"valid", inv.valid},
                          {"inverse", freejac::print_map(inv.map, names)},
                          {"display", display}},
                     display + "\n");
        } else if (*newt_cmd) {
            auto parsed = newt_map_in.parse();
            auto result = freejac::newton_invert(parsed.map, load_tuple(newt_target),
                                                 load_tuple(newt_init), newt_tol, newt_max_iter,
                                                 newt_damping);
            if (!result.converged()) {
                const bool singular =
                    result.status == freejac::NewtonResult::Status::singular_derivative;
                Error err(singular ? ErrorCode::singular_derivative
                                   : ErrorCode::max_iter_exceeded,
                          singular ? "derivative singular at an iterate"
                                   : "iteration cap reached before convergence",
                          result.to_json());
                std::cout << err.to_json().dump(2) << "\n";
                return kExitPrecondition;
            }
            out.emit(result.to_json());
        }
    } catch (const Error& e) {
        std::cout << e.to_json().dump(2) << "\n";
        return e.code() == ErrorCode::io_error ? kExitIo : kExitPrecondition;
    } catch (const std::exception& e) {
        std::cout << Error(ErrorCode::io_error, e.what()).to_json().dump(2) << "\n";
        return kExitIo;
    }
    return kExitOk;
}
