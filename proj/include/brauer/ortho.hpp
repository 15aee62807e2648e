#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "brauer/grid.hpp"
#include "brauer/solver.hpp"

namespace brauer {

struct GramResult {
    /// τ = χᵀχ / (d1 d2)
    Eigen::MatrixXd tau;
    /// Eigenvalues of τ, descending, and the matching eigenvectors (columns of
    /// O_τ) with their first nonzero component positive.
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    Eigen::MatrixXd chosen_O;
    /// σ = O_τ D_τ^{-1/2} O, so σᵀ τ σ = 1.
    Eigen::MatrixXd sylvester;

    /// max |σᵀ τ σ - 1|
    double residual() const;
};

/// Throws std::invalid_argument for μ = 0 or a gauge of the wrong size, and
/// std::runtime_error when τ is numerically singular.
GramResult gram(const Eigen::MatrixXd &chi, std::size_t d1, std::size_t d2,
                const std::optional<Eigen::MatrixXd> &gauge = std::nullopt);

/// χ̃ = χ σ; columns satisfy χ̃ᵀχ̃ = d1 d2 · 1.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd &chi, const GramResult &g);

class SdcTable {
  public:
    SdcTable(GridSignature sig, RationalParam x, std::vector<GridNode> nodes, std::size_t d, std::size_t d1,
             std::size_t d2, Eigen::MatrixXd coefficients);

    const GridSignature &signature() const { return sig_; }
    const RationalParam &x() const { return x_; }
    int multiplicity() const { return static_cast<int>(coefficients_.cols()); }
    const std::vector<GridNode> &nodes() const { return nodes_; }
    /// Rows follow node order, one column per η.
    const Eigen::MatrixXd &coefficients() const { return coefficients_; }
    std::size_t dim() const { return d_; }
    std::size_t dim1() const { return d1_; }
    std::size_t dim2() const { return d2_; }

    /// X_η[w][(w1,w2)] as a d × (d1 d2) matrix.
    Eigen::MatrixXd block(int eta) const;

    /// max |X_ηᵀ X_η' - δ_ηη' 1|
    double unitarity_residual() const { return unitarity_; }

  private:
    GridSignature sig_;
    RationalParam x_;
    std::vector<GridNode> nodes_;
    std::size_t d_, d1_, d2_;
    Eigen::MatrixXd coefficients_;
    double unitarity_ = 0;
};

/// Scales each column by ±1 so its first entry with |entry| > phase_tol · max
/// is positive. Throws std::runtime_error on an all-zero column.
SdcTable fix_phases(const Eigen::MatrixXd &chi_tilde, const SubductionGrid &grid, const RationalParam &x,
                    double phase_tol = 1e-7);

/// max over a ∈ {g_l, e_l : l ≠ f1} and η, η' of |X_ηᵀ ρ(a) X_η' - δ_ηη' ρ_split(a)|.
double block_diagonal_residual(const SdcTable &table, const SubductionSystem &sys);

/// Index of the first entry above phase_tol · max in each column; -1 for a
/// zero column.
std::vector<Eigen::Index> leading_entries(const Eigen::MatrixXd &m, double phase_tol = 1e-7);

struct SweepUnitarity {
    std::size_t columns = 0, dim = 0;
    /// max(|M Mᵀ - 1|, |Mᵀ M - 1|) for the d × Σ μ d1 d2 matrix of all blocks;
    /// infinite when M is not square.
    double residual = 0;
};

/// All tables must share (f, λ, f1, f2, x) and cover every (λ1, λ2).
SweepUnitarity sweep_unitarity(const std::vector<SdcTable> &tables);

struct Freedom {
    std::uint64_t phases = 0;
    std::uint64_t continuous = 0;
};

/// (2^{μ-1} + 1, μ(μ-1)/2). Throws std::invalid_argument for μ < 1.
Freedom freedom_count(int mu);

/// {"signature", "x", "multiplicity", "unitarity_residual", "table": {node: [η values]}}
std::string table_to_json(const SdcTable &t);

/// Header w,w1,w2,eta,value; lattice fields are quoted, η is 1-based.
std::string table_to_csv(const SdcTable &t);

} // namespace brauer
