#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "brauer/grid.hpp"
#include "brauer/gt_module.hpp"

namespace brauer {

enum class GeneratorKind { G, E };

/// Raised when module sparsity contradicts the grid's coupling structure.
struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EquationRow {
    std::size_t node;
    int i;
    GeneratorKind kind;
};

struct RowBlock {
    int i;
    GeneratorKind kind;
    std::size_t begin, end;
};

/// Ω(λ; f1, f2; λ1, λ2): one g-row and one e-row per (node, layer index),
///   Σ_u ρ(a)[w,u] χ(u; w12) - Σ_v12 ρ_split(a)[v12, w12] χ(w; v12) = 0,
/// with identically zero rows dropped.
class SubductionSystem {
  public:
    SubductionSystem(SubductionGrid grid, GTModule module, GTModule module1, GTModule module2);

    const SubductionGrid &grid() const { return grid_; }
    const GTModule &module() const { return module_; }
    const GTModule &module1() const { return module1_; }
    const GTModule &module2() const { return module2_; }
    const RationalParam &x() const { return module_.x(); }

    const Eigen::SparseMatrix<double, Eigen::RowMajor> &omega() const { return omega_; }
    const std::vector<EquationRow> &rows() const { return rows_; }
    const std::vector<RowBlock> &blocks() const { return blocks_; }

    /// The split-side action ρ1(a) ⊗ I or I ⊗ ρ2(a) on pairs in grid order.
    Eigen::MatrixXd split_action(int i, GeneratorKind kind) const;
    /// The split-side module and local index for a layer index.
    std::pair<const GTModule *, int> split_factor(int i) const;
    /// ρ_[f,λ](a)
    const Eigen::MatrixXd &full_action(int i, GeneratorKind kind) const;

    friend SubductionSystem assemble(const SubductionGrid &, GTModule, GTModule, GTModule);

  private:
    SubductionGrid grid_;
    GTModule module_, module1_, module2_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> omega_;
    std::vector<EquationRow> rows_;
    std::vector<RowBlock> blocks_;
};

/// Requires the modules to match the grid signature and share x. Throws
/// AssemblyError when a nonzero entry falls outside an i-coupling class, when
/// the swap action disagrees with crossing sparsity, or when an e-entry is
/// nonzero on a configuration that forbids it.
SubductionSystem assemble(const SubductionGrid &grid, GTModule module, GTModule module1, GTModule module2);

/// Builds the three modules at x, then assembles.
SubductionSystem assemble(const SubductionGrid &grid, const RationalParam &x, BuildOptions options = {});

struct SolveOptions {
    /// Singular values below rank_tol · σ_max count as zero.
    double rank_tol = 1e-10;
    /// Singular values within this factor of the threshold are ambiguous.
    double gap_factor = 10;
};

struct SolutionBasis {
    /// Columns span the numerical nullspace; rows follow grid node order.
    Eigen::MatrixXd vectors;
    int multiplicity = 0;
    /// All singular values, descending, zero-padded to the node count.
    std::vector<double> singular_values;
    double threshold = 0;
    bool ambiguous = false;
    /// max_v ||Ω v||, and the same per row block.
    double max_residual = 0;
    std::vector<double> block_residuals;
    std::string diagnostics;
};

/// Nullspace of Ω by a full SVD. Zero-equation systems return the identity.
SolutionBasis solve(const SubductionSystem &sys, SolveOptions options = {});

/// c^λ_{λ1 λ2} by enumeration of Littlewood-Richardson skew tableaux of shape
/// λ/λ1 and content λ2. Zero when the box counts disagree or λ1 ⊄ λ.
int lr_coefficient(const Shape &lambda, const Shape &lambda1, const Shape &lambda2);

struct VerificationReport {
    std::string name;
    bool passed = true;
    double max_deviation = 0;
    std::size_t checks = 0;
    std::vector<std::string> notes;

    void record(double deviation, double tol);
    void print(std::ostream &os) const;
};

/// Horizontal bridges: Σ_{u ∈ Θ̄_i(w)} √P_{Y(u^{(i)})} χ(u; w12) = 0 and the
/// ī-class restriction lies in ker e_i; vertical bridges dually on pairs.
VerificationReport verify_bridge_kernels(const SubductionSystem &sys, const SolutionBasis &basis, double tol);

/// Recomputes the coefficient at the g_i image from the crossing and bridge
/// equations, using exact axial distances and P-ratios, and compares with the
/// solved value.
VerificationReport verify_bridge_propagation(const SubductionSystem &sys, const SolutionBasis &basis, double tol);

struct IntertwinerSide {
    /// ρ_w ⊗ I - I ⊗ ρ_12 on the block, row-major in (w-class, pair-class).
    Eigen::MatrixXd omega;
    std::size_t kernel = 0;
    /// Σ over matching eigenvalues of the product of their multiplicities.
    std::size_t expected_kernel = 0;
    double spectrum_deviation = 0;
    /// max ||Ω (a ⊗ b) - (s_a - s_b)(a ⊗ b)|| over eigenvector pairs.
    double eigen_product_deviation = 0;
    /// max |Ω X_η| over the solution restricted to the block.
    double solution_residual = 0;
};

/// One block Θ̄_i(w) × Θ̄_i(w12) of singlet nodes.
struct SingletBlock {
    int i = 0;
    /// Representative node, the first of both classes.
    std::size_t node = 0;
    std::size_t k = 0, m = 0;
    IntertwinerSide g, e;
    /// Dimension of ker Ω_g ∩ ker Ω_e.
    std::size_t intersection = 0;
    /// Rank of the solution space restricted to the block.
    std::size_t solution_rank = 0;
};

std::vector<SingletBlock> singlet_blocks(const SubductionSystem &sys, const SolutionBasis &basis);

/// Singlet blocks: the solution restricted to Θ̄_i(w) × Θ̄_i(w12) lies in
/// the kernels of the g- and e-intertwiners, and those kernels are spanned by
/// tensor products of eigenvectors with matching eigenvalues.
VerificationReport verify_singlet_structure(const SubductionSystem &sys, const SolutionBasis &basis, double tol);

struct CompletenessEntry {
    Shape lambda1, lambda2;
    int multiplicity;
    std::uint64_t dim1, dim2;
};

struct CompletenessReport {
    std::vector<CompletenessEntry> entries;
    std::uint64_t total = 0, dim = 0;
    bool ambiguous = false;
    bool passed = false;
    void print(std::ostream &os) const;
};

/// Σ_{λ1, λ2} μ · dim[f1,λ1] · dim[f2,λ2] against dim[f,λ].
CompletenessReport completeness_check(int f, const Shape &lambda, int f1, int f2, const RationalParam &x,
                                      SolveOptions options = {}, BuildOptions build = {});

/// JSON dump: signature, x, μ, singular-value tail and basis vectors keyed by node.
std::string solution_to_json(const SubductionSystem &sys, const SolutionBasis &basis);

} // namespace brauer
