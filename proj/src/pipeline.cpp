#include "brauer/pipeline.hpp"

#include <cmath>
#include <iomanip>

#include "json.hpp"

namespace brauer {

bool PipelineResult::passed() const {
    return residual_ok && unitary_ok && block_diagonal_ok && phases_ok && kernels.passed && propagation.passed &&
           singlets.passed;
}

void PipelineResult::print(std::ostream &os) const {
    const auto flags = os.flags();
    os << "signature " << system.grid().signature().to_string() << " x=" << system.x().to_string() << '\n';
    os << "nodes " << system.grid().nodes().size() << " equations " << system.omega().rows() << '\n';
    os << "multiplicity " << basis.multiplicity << (basis.ambiguous ? " (AMBIGUOUS)" : "") << '\n';
    os << "solver " << basis.diagnostics << '\n';
    os << std::scientific << std::setprecision(3);
    os << "residual " << basis.max_residual << (residual_ok ? " ok" : " FAIL") << '\n';
    if (gram)
        os << "gram " << gram->residual() << '\n';
    os << "unitarity " << table.unitarity_residual() << (unitary_ok ? " ok" : " FAIL") << '\n';
    os << "block-diagonal " << block_diagonal << (block_diagonal_ok ? " ok" : " FAIL") << '\n';
    os << "phases " << (phases_ok ? "ok" : "FAIL") << '\n';
    os.flags(flags);
    kernels.print(os);
    propagation.print(os);
    singlets.print(os);
}

PipelineResult run_pipeline(const GridSignature &sig, const RationalParam &x, const PipelineOptions &options) {
    sig.validate();
    auto grid = build_grid(sig);
    auto sys = assemble(grid, x, options.build);
    auto basis = solve(sys, options.solve);

    std::optional<GramResult> g;
    Eigen::MatrixXd tilde(basis.vectors.rows(), 0);
    if (basis.multiplicity > 0) {
        g = gram(basis.vectors, grid.basis1().size(), grid.basis2().size(), options.gauge);
        tilde = orthonormalize(basis.vectors, *g);
    }
    auto table = fix_phases(tilde, sys.grid(), x, options.phase_tol);
    const double tol = options.verify_tol;
    PipelineResult r{sys,
                     basis,
                     g,
                     table,
                     verify_bridge_kernels(sys, basis, tol),
                     verify_bridge_propagation(sys, basis, tol),
                     verify_singlet_structure(sys, basis, tol),
                     block_diagonal_residual(table, sys)};
    double scale = 1;
    for (Eigen::Index k = 0; k < sys.omega().outerSize(); ++k)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.omega(), k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    r.residual_ok = basis.max_residual <= options.residual_tol * scale;
    r.unitary_ok = table.unitarity_residual() <= tol && (!g || g->residual() <= 1e-10);
    r.block_diagonal_ok = r.block_diagonal <= tol;
    for (auto lead : leading_entries(table.coefficients(), options.phase_tol))
        if (lead < 0)
            r.phases_ok = false;
    return r;
}

std::string result_to_json(const PipelineResult &r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(table_to_json(r.table));
    j["equations"] = r.system.omega().rows();
    j["ambiguous"] = r.basis.ambiguous;
    j["rank_threshold"] = r.basis.threshold;
    j["residual"] = r.basis.max_residual;
    j["block_diagonal_residual"] = r.block_diagonal;
    if (r.gram)
        j["gram_eigenvalues"] = std::vector<double>(r.gram->eigenvalues.data(),
                                                    r.gram->eigenvalues.data() + r.gram->eigenvalues.size());
    auto rep = [](const VerificationReport &v) {
        return nlohmann::ordered_json{{"passed", v.passed}, {"checks", v.checks}, {"max_deviation", v.max_deviation},
                                      {"notes", v.notes}};
    };
    j["verification"] = {{"bridge_kernels", rep(r.kernels)},
                         {"bridge_propagation", rep(r.propagation)},
                         {"singlet_structure", rep(r.singlets)}};
    j["passed"] = r.passed();
    return j.dump(2);
}

} // namespace brauer
