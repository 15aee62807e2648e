// Command-line front end: enumerate lattices, build representations, emit
// subduction graphs and solve for SDC tables.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "brauer/pipeline.hpp"

namespace {

using namespace brauer;

enum Exit { kOk = 0, kVerify = 1, kUsage = 2, kGuard = 3, kAmbiguous = 4 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Config {
    int f = 0, f1 = 0, f2 = -1;
    std::string shape, shape1, shape2;
    std::string x;
    bool check = false, allow_nonsemisimple = false, sweep = false;
    std::string convention = "calibrated";
    std::string json_path, csv_path, dot_path, out_path;
    int color_layer = 0;
    double rank_tol = 1e-10, residual_tol = 1e-9, verify_tol = 1e-8, phase_tol = 1e-7;
    double relation_tol = 1e-9;
};

// Status text moves to stderr when a data file is streamed to stdout.
std::ostream &report_stream(const Config &c) {
    for (const auto *p : {&c.json_path, &c.csv_path, &c.dot_path})
        if (*p == "-")
            return std::cerr;
    return std::cout;
}

// Write to a sibling temporary, then rename over the target.
void write_atomic(const std::string &path, const std::string &content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp + " for writing");
        os << content;
        if (!os.flush())
            throw std::runtime_error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

Shape shape_arg(const std::string &text, const char *flag) {
    try {
        return parse_shape(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--") + flag + ": " + e.what());
    }
}

Rational x_arg(const std::string &text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--x: ") + e.what());
    }
}

NablaConvention convention_arg(const std::string &s) {
    if (s == "calibrated")
        return NablaConvention::Calibrated;
    if (s == "literal")
        return NablaConvention::Literal;
    throw UsageError("--convention must be literal or calibrated");
}

int split_f2(const Config &c) {
    if (c.f1 < 1 || c.f1 >= c.f)
        throw UsageError("--f1 must lie in [1, f-1]");
    const int f2 = c.f2 < 0 ? c.f - c.f1 : c.f2;
    if (c.f1 + f2 != c.f)
        throw UsageError("f1 + f2 = " + std::to_string(c.f1 + f2) + " differs from f = " + std::to_string(c.f));
    return f2;
}

GridSignature signature_arg(const Config &c, const Shape &l1, const Shape &l2) {
    GridSignature sig{c.f, shape_arg(c.shape, "shape"), c.f1, split_f2(c), l1, l2};
    try {
        sig.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return sig;
}

int cmd_enum(const Config &c) {
    if (c.f < 0)
        throw UsageError("--f must be nonnegative");
    const Shape lambda = shape_arg(c.shape, "shape");
    const auto lattices = enumerate_lattices(c.f, lambda);
    for (const auto &w : lattices)
        std::cout << w.to_string() << '\n';
    const auto dim = dimension(c.f, lambda);
    std::cout << "count " << lattices.size() << '\n' << "dimension " << dim << '\n';
    return lattices.size() == dim ? kOk : kVerify;
}

int cmd_rep(const Config &c) {
    if (c.f < 1)
        throw UsageError("--f must be positive");
    const Shape lambda = shape_arg(c.shape, "shape");
    if (!lambda.in_upsilon(c.f))
        throw UsageError(lambda.to_string() + " is not in Υ_" + std::to_string(c.f));
    const auto x = RationalParam::for_order(x_arg(c.x), c.f, c.allow_nonsemisimple);
    const auto m = build_module(c.f, lambda, x, {convention_arg(c.convention)});
    std::ostringstream dump;
    write_module_text(dump, m);
    write_atomic(c.out_path.empty() ? "-" : c.out_path, dump.str());
    if (!c.json_path.empty())
        write_atomic(c.json_path, module_to_json(m) + "\n");
    if (!c.check)
        return kOk;
    const auto rep = check_relations(m, c.relation_tol);
    rep.print(report_stream(c));
    return rep.passed ? kOk : kVerify;
}

int cmd_graph(const Config &c) {
    const auto sig = signature_arg(c, shape_arg(c.shape1, "shape1"), shape_arg(c.shape2, "shape2"));
    const auto g = build_grid(sig);
    if (!c.dot_path.empty())
        write_atomic(c.dot_path, export_dot(g, c.color_layer));
    if (!c.json_path.empty())
        write_atomic(c.json_path, grid_to_json(g) + "\n");
    auto &os = report_stream(c);
    os << "signature " << sig.to_string() << '\n';
    os << "nodes " << g.nodes().size() << " edges " << g.edge_count() << '\n';
    for (const auto &layer : g.layers()) {
        const auto h = layer.histogram();
        os << "i=" << layer.i;
        for (std::size_t k = 0; k < kConfigurations.size(); ++k)
            os << ' ' << to_string(kConfigurations[k]) << '=' << h[k];
        os << '\n';
    }
    return kOk;
}

int cmd_solve(const Config &c) {
    const int f2 = split_f2(c);
    const auto x = RationalParam::for_order(x_arg(c.x), c.f, c.allow_nonsemisimple);
    PipelineOptions opt;
    opt.build.convention = convention_arg(c.convention);
    opt.solve.rank_tol = c.rank_tol;
    opt.residual_tol = c.residual_tol;
    opt.verify_tol = c.verify_tol;
    opt.phase_tol = c.phase_tol;

    std::vector<std::pair<Shape, Shape>> splits;
    if (c.sweep) {
        for (const auto &l1 : upsilon(c.f1))
            for (const auto &l2 : upsilon(f2))
                splits.emplace_back(l1, l2);
    } else {
        if (c.shape1.empty() || c.shape2.empty())
            throw UsageError("--shape1 and --shape2 are required without --sweep");
        splits.emplace_back(shape_arg(c.shape1, "shape1"), shape_arg(c.shape2, "shape2"));
    }

    bool ok = true, ambiguous = false;
    std::vector<SdcTable> tables;
    std::vector<nlohmann::ordered_json> reports;
    std::string csv;
    std::uint64_t total = 0;
    for (const auto &[l1, l2] : splits) {
        const auto sig = signature_arg(c, l1, l2);
        const auto r = run_pipeline(sig, x, opt);
        r.print(report_stream(c));
        ok = ok && r.passed();
        ambiguous = ambiguous || r.basis.ambiguous;
        if (r.basis.ambiguous)
            std::cerr << "rank decision ambiguous for " << sig.to_string() << ": " << r.basis.diagnostics << '\n';
        reports.push_back(nlohmann::ordered_json::parse(result_to_json(r)));
        const std::string block = table_to_csv(r.table);
        csv += csv.empty() ? block : block.substr(block.find('\n') + 1);
        total += static_cast<std::uint64_t>(r.table.multiplicity()) * r.table.dim1() * r.table.dim2();
        if (r.table.multiplicity())
            tables.push_back(r.table);
    }

    nlohmann::ordered_json doc;
    if (c.sweep) {
        const auto dim = dimension(c.f, shape_arg(c.shape, "shape"));
        const auto unit = sweep_unitarity(tables);
        const bool complete = total == dim;
        const bool unitary = complete && unit.residual <= c.verify_tol;
        report_stream(c) << "completeness " << total << " / " << dim << (complete ? " ok" : " FAIL") << '\n';
        report_stream(c) << "sweep unitarity " << unit.residual << (unitary ? " ok" : " FAIL") << '\n';
        ok = ok && complete && unitary;
        doc["blocks"] = reports;
        doc["completeness"] = {{"total", total}, {"dimension", dim}, {"passed", complete}};
        doc["sweep_unitarity"] = {{"residual", unit.residual}, {"passed", unitary}};
    } else {
        doc = reports.front();
    }
    if (!c.json_path.empty())
        write_atomic(c.json_path, doc.dump(2) + "\n");
    if (!c.csv_path.empty())
        write_atomic(c.csv_path, csv);
    if (ambiguous)
        return kAmbiguous;
    report_stream(c) << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kVerify;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Brauer algebra Gelfand-Tzetlin representations and subduction coefficients"};
    app.require_subcommand(1);
    Config c;

    auto *en = app.add_subcommand("enum", "list the permutation lattices of shape lambda and order f");
    en->add_option("--f", c.f, "order")->required();
    en->add_option("--shape", c.shape, "shape, e.g. \"[2,1]\" or \"[]\"")->required();

    auto *rep = app.add_subcommand("rep", "build the irrep [f, lambda] and dump g_i, e_i");
    rep->add_option("--f", c.f, "order")->required();
    rep->add_option("--shape", c.shape, "shape")->required();
    rep->add_option("--x", c.x, "parameter as p/q or integer")->required();
    rep->add_flag("--check", c.check, "check the defining relations");
    rep->add_option("--out", c.out_path, "text dump path (default stdout)");
    rep->add_option("--json", c.json_path, "JSON dump path");
    rep->add_option("--convention", c.convention, "literal or calibrated");
    rep->add_option("--residual-tol", c.relation_tol, "relation tolerance");
    rep->add_flag("--allow-nonsemisimple", c.allow_nonsemisimple, "skip the semisimplicity guard");

    auto add_signature = [&](CLI::App *sub, bool split_shapes_required) {
        sub->add_option("--f", c.f, "order")->required();
        sub->add_option("--shape", c.shape, "shape of the irrep being restricted")->required();
        sub->add_option("--f1", c.f1, "order of the first factor")->required();
        sub->add_option("--f2", c.f2, "order of the second factor (default f - f1)");
        auto *s1 = sub->add_option("--shape1", c.shape1, "first factor shape");
        auto *s2 = sub->add_option("--shape2", c.shape2, "second factor shape");
        if (split_shapes_required) {
            s1->required();
            s2->required();
        }
    };

    auto *graph = app.add_subcommand("graph", "build the subduction graph");
    add_signature(graph, true);
    graph->add_option("--dot", c.dot_path, "DOT output path");
    graph->add_option("--json", c.json_path, "JSON output path");
    graph->add_option("--color-layer", c.color_layer, "colour nodes by configuration at this generator index");

    auto *solve = app.add_subcommand("solve", "solve for the SDC table");
    add_signature(solve, false);
    solve->add_option("--x", c.x, "parameter as p/q or integer")->required();
    solve->add_option("--json", c.json_path, "JSON table and report path");
    solve->add_option("--csv", c.csv_path, "CSV table path");
    solve->add_flag("--sweep", c.sweep, "all (shape1, shape2) pairs with completeness and unitarity checks");
    solve->add_option("--rank-tol", c.rank_tol, "relative singular value threshold");
    solve->add_option("--residual-tol", c.residual_tol, "bound on |Omega v|");
    solve->add_option("--verify-tol", c.verify_tol, "structure, unitarity and block-diagonal tolerance");
    solve->add_option("--phase-tol", c.phase_tol, "relative threshold for the leading entry");
    solve->add_option("--convention", c.convention, "literal or calibrated");
    solve->add_flag("--allow-nonsemisimple", c.allow_nonsemisimple, "skip the semisimplicity guard");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*en)
            return cmd_enum(c);
        if (*rep)
            return cmd_rep(c);
        if (*graph)
            return cmd_graph(c);
        return cmd_solve(c);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParameterGuardError &e) {
        std::cerr << "parameter guard: " << e.what() << '\n';
        return kGuard;
    } catch (const ConstructionError &e) {
        std::cerr << "construction failed: " << e.what() << '\n';
        return kVerify;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerify;
    }
}
