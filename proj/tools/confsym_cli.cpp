// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "confsym/ckt.hpp"
#include "confsym/pairings.hpp"
#include "confsym/taskfile.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
}

int emit_and_exit(const confsym::Report& report, const std::string& format, const std::string& out_path) {
    write_output(format == "json" ? confsym::emit_report_json(report) : confsym::emit_report_text(report), out_path);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of conformal symmetry operators and invariant pairings"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "output format: text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    // verify <taskfile>
    auto* verify = app.add_subcommand("verify", "run a task file");
    std::string taskfile_path;
    verify->add_option("taskfile", taskfile_path, "task file path")->required();

    // suite --n N --order K --seed S
    auto* suite = app.add_subcommand("suite", "run the canonical verification suite");
    int suite_n = 3, suite_order = 6;
    std::uint64_t suite_seed = 0;
    suite->add_option("--n", suite_n, "dimension")->check(CLI::Range(2, 6));
    suite->add_option("--order", suite_order, "jet order")->check(CLI::Range(3, 10));
    suite->add_option("--seed", suite_seed, "random seed");

    // solve ckt --n N --valence V --max-degree D
    auto* solve = app.add_subcommand("solve", "exact solvers");
    auto* solve_ckt = solve->add_subcommand("ckt", "solve the conformal Killing equation");
    int ckt_n = 3, ckt_valence = 1, ckt_degree = -1;
    solve_ckt->add_option("--n", ckt_n, "dimension")->check(CLI::Range(2, 6));
    solve_ckt->add_option("--valence", ckt_valence, "valence (1 or 2)")->check(CLI::Range(1, 2));
    solve_ckt->add_option("--max-degree", ckt_degree, "polynomial degree bound");

    // experiment yamabe-ckt --n N --seed S
    auto* experiment = app.add_subcommand("experiment", "open-ended numerical probes");
    auto* exp_yam = experiment->add_subcommand("yamabe-ckt", "curved second-order symmetry probe");
    int exp_n = 3, exp_order = 6;
    std::uint64_t exp_seed = 0;
    exp_yam->add_option("--n", exp_n, "dimension")->check(CLI::Range(3, 6));
    exp_yam->add_option("--order", exp_order, "jet order")->check(CLI::Range(4, 10));
    exp_yam->add_option("--seed", exp_seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            std::ifstream is(taskfile_path, std::ios::binary);
            if (!is) throw std::runtime_error("cannot open task file: " + taskfile_path);
            std::stringstream buf;
            buf << is.rdbuf();
            confsym::TaskFile tf = confsym::parse_taskfile(buf.str());
            return emit_and_exit(confsym::run_tasks(tf), format, out_path);
        }
        if (*suite) {
            confsym::TaskFile tf;
            tf.dimension = suite_n;
            tf.order = suite_order;
            tf.seed = suite_seed;
            confsym::TaskDecl t;
            t.verb = "suite-all";
            tf.tasks.push_back(t);
            return emit_and_exit(confsym::run_tasks(tf), format, out_path);
        }
        if (*solve_ckt) {
            if (ckt_degree < 0) ckt_degree = ckt_valence == 1 ? 2 : 4;
            auto basis = confsym::solve_conformal_killing(ckt_n, ckt_valence, ckt_degree);
            std::ostringstream os;
            if (format == "json") {
                os << "{\n  \"n\": " << ckt_n << ",\n  \"valence\": " << ckt_valence << ",\n  \"max_degree\": "
                   << ckt_degree << ",\n  \"count\": " << basis.size() << ",\n  \"basis\": [\n";
                for (size_t i = 0; i < basis.size(); ++i) {
                    os << "    [";
                    bool first = true;
                    basis[i].for_each_index([&](const std::vector<int>& idx, size_t flat) {
                        if (ckt_valence == 2 && idx[0] > idx[1]) return;
                        os << (first ? "" : ", ") << '"' << basis[i].components()[flat].str() << '"';
                        first = false;
                    });
                    os << "]" << (i + 1 < basis.size() ? "," : "") << "\n";
                }
                os << "  ]\n}\n";
            } else {
                os << "conformal Killing basis: n=" << ckt_n << " valence=" << ckt_valence
                   << " max-degree=" << ckt_degree << " count=" << basis.size() << "\n";
                for (size_t i = 0; i < basis.size(); ++i) {
                    os << "[" << i << "]";
                    basis[i].for_each_index([&](const std::vector<int>& idx, size_t flat) {
                        if (ckt_valence == 2 && idx[0] > idx[1]) return;
                        os << " ";
                        for (size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k] + 1;
                        os << ": " << basis[i].components()[flat].str() << ";";
                    });
                    os << "\n";
                }
            }
            write_output(os.str(), out_path);
            return 0;
        }
        if (*exp_yam) {
            confsym::TaskFile tf;
            tf.dimension = exp_n;
            tf.order = exp_order;
            tf.seed = exp_seed;
            confsym::TaskDecl t;
            t.verb = "experiment-yamabe-ckt";
            tf.tasks.push_back(t);
            return emit_and_exit(confsym::run_tasks(tf), format, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
