#pragma once

#include <optional>
#include <ostream>

#include "brauer/ortho.hpp"
#include "brauer/solver.hpp"

namespace brauer {

struct PipelineOptions {
    BuildOptions build;
    SolveOptions solve;
    /// Bound on ||Ω v|| relative to max(1, ||Ω||_max).
    double residual_tol = 1e-9;
    /// Structure verification, unitarity and block-diagonalization.
    double verify_tol = 1e-8;
    double phase_tol = 1e-7;
    std::optional<Eigen::MatrixXd> gauge;
};

struct PipelineResult {
    SubductionSystem system;
    SolutionBasis basis;
    std::optional<GramResult> gram;
    /// Empty (μ = 0 columns) when the block does not occur.
    SdcTable table;
    VerificationReport kernels, propagation, singlets;
    double block_diagonal = 0;

    bool residual_ok = true;
    bool unitary_ok = true;
    bool block_diagonal_ok = true;
    bool phases_ok = true;

    /// Every check except rank ambiguity, which callers report separately.
    bool passed() const;
    void print(std::ostream &os) const;
};

/// assemble → solve → gram → orthonormalize → fix_phases → verify.
PipelineResult run_pipeline(const GridSignature &sig, const RationalParam &x, const PipelineOptions &options = {});

/// Full JSON report: table plus solver diagnostics and verification results.
std::string result_to_json(const PipelineResult &r);

} // namespace brauer
