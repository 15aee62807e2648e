#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "brauer/lattice.hpp"
#include "brauer/young.hpp"

namespace brauer {

/// u ↔ⁱ v: equal order and shape, u_h = v_h for h ∉ {i, i+1}.
/// Throws std::invalid_argument on an order/shape mismatch.
bool i_coupled(const PermutationLattice &u, const PermutationLattice &v, int i);

/// u ↔^ī v: i-coupled and u_i = -u_{i+1}, v_i = -v_{i+1}.
bool ibar_coupled(const PermutationLattice &u, const PermutationLattice &v, int i);

/// w_i = -w_{i+1}, i.e. w is ī-coupled to itself.
bool ibar_self(const PermutationLattice &w, int i);

/// g_i(w): w with entries i, i+1 swapped when that is again a lattice,
/// otherwise w itself.
PermutationLattice swap_action(const PermutationLattice &w, int i);

/// Θ_i(w) / Θ̄_i(w) within Ξ_f^λ, in canonical order. The basis overloads
/// filter a precomputed Ξ_f^λ.
std::vector<PermutationLattice> theta_set(const PermutationLattice &w, int i);
std::vector<PermutationLattice> theta_bar_set(const PermutationLattice &w, int i);
std::vector<std::size_t> theta_indices(std::span<const PermutationLattice> basis, const PermutationLattice &w, int i);
std::vector<std::size_t> theta_bar_indices(std::span<const PermutationLattice> basis, const PermutationLattice &w,
                                           int i);

/// Raised when an explicit-action entry cannot be formed: a vanishing
/// denominator, or a negative radicand (non-real entry).
struct ConstructionError : std::runtime_error {
    ConstructionError(const std::string &what, PermutationLattice u, PermutationLattice v, int i)
        : std::runtime_error(what), u(std::move(u)), v(std::move(v)), i(i) {}
    PermutationLattice u, v;
    int i;
};

struct BuildOptions {
    NablaConvention convention = NablaConvention::Calibrated;
};

/// Exact ⟨u|g_i|u⟩ for ī-self-coupled u: (1 - P_ν/P_μ)/◇_i(u,u) with
/// ν = Y(u^{(i)}), μ = Y(u^{(i-1)}), evaluated as a rational function of x so
/// that removable 0/0 points take their limit. Throws ConstructionError at a
/// genuine pole.
Rational ibar_diagonal(const PermutationLattice &u, int i, const RationalParam &x,
                       NablaConvention conv = NablaConvention::Calibrated);

/// The irrep [f, λ] in its Gelfand-Tzetlin basis.
class GTModule {
  public:
    GTModule(int f, Shape shape, RationalParam x, std::vector<PermutationLattice> basis, std::vector<Eigen::MatrixXd> g,
             std::vector<Eigen::MatrixXd> e, NablaConvention convention);

    int order() const { return f_; }
    const Shape &shape() const { return shape_; }
    const RationalParam &x() const { return x_; }
    NablaConvention convention() const { return convention_; }
    const std::vector<PermutationLattice> &basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    /// 1-based generator index, 1 <= i <= f-1.
    const Eigen::MatrixXd &g(int i) const { return g_.at(static_cast<std::size_t>(i - 1)); }
    const Eigen::MatrixXd &e(int i) const { return e_.at(static_cast<std::size_t>(i - 1)); }

    /// Position of w in the basis; nullopt when absent.
    std::optional<std::size_t> index_of(const PermutationLattice &w) const;

  private:
    int f_;
    Shape shape_;
    RationalParam x_;
    std::vector<PermutationLattice> basis_;
    std::vector<Eigen::MatrixXd> g_, e_;
    NablaConvention convention_;
    std::map<Word, std::size_t> index_;
};

/// Builds g_i, e_i from the explicit Gelfand-Tzetlin action. Radicands are
/// formed exactly before the square root is taken. Throws
/// std::invalid_argument when λ ∉ Υ_f and ConstructionError on degenerate entries.
GTModule build_module(int f, const Shape &lambda, const RationalParam &x, BuildOptions options = {});

struct RelationResidual {
    std::string name;
    double residual = 0;
    /// Part of the defining presentation (gates pass/fail) rather than an
    /// extra, report-only identity.
    bool gating = true;
};

struct RelationReport {
    std::vector<RelationResidual> residuals;
    double tolerance = 0;
    bool passed = true;

    double residual(const std::string &name) const;
    void print(std::ostream &os) const;
};

/// Max-norm residuals of the defining relations
///   (1) g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}   (2) g_i g_j = g_j g_i, |i-j| >= 2
///   (3) e_i g_i = e_i                           (4) e_i g_{i-1} e_i = e_i
///   (5) e_i^2 = x e_i                           (6) g_i^2 = 1
/// plus symmetry of every matrix and e_i spectrum ⊆ {0, x}. Extra Brauer
/// identities are reported with gating = false.
RelationReport check_relations(const GTModule &m, double tol);

/// Plain-text dump: basis listing, then every matrix row-major with 17
/// significant digits.
void write_module_text(std::ostream &os, const GTModule &m);

/// JSON dump with the same content.
std::string module_to_json(const GTModule &m);

} // namespace brauer
