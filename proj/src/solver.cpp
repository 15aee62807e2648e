#include "brauer/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>

#include "json.hpp"

namespace brauer {

namespace {

constexpr double kZeroRow = 1e-14;
constexpr double kZeroEntry = 1e-15;

const Eigen::MatrixXd &action(const GTModule &m, int i, GeneratorKind kind) {
    return kind == GeneratorKind::G ? m.g(i) : m.e(i);
}

// Sparsity of ρ(a) must follow the coupling structure of the basis.
void check_module_sparsity(const GTModule &m) {
    const auto &basis = m.basis();
    for (int i = 1; i < m.order(); ++i) {
        const auto &g = m.g(i);
        const auto &e = m.e(i);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            const bool bar = ibar_self(basis[a], i);
            const auto image = bar ? basis[a] : swap_action(basis[a], i);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const auto ra = static_cast<Eigen::Index>(a), rb = static_cast<Eigen::Index>(b);
                const bool gz = std::abs(g(ra, rb)) <= kZeroEntry;
                const bool ez = std::abs(e(ra, rb)) <= kZeroEntry;
                if (gz && ez)
                    continue;
                auto fail = [&](const std::string &why) {
                    throw AssemblyError("module [" + std::to_string(m.order()) + "," + m.shape().to_string() +
                                        "]: " + why + " at (" + basis[a].to_string() + ", " + basis[b].to_string() +
                                        "), i=" + std::to_string(i));
                };
                if (!i_coupled(basis[a], basis[b], i))
                    fail("nonzero entry between lattices that are not i-coupled");
                if (!bar) {
                    if (!ez)
                        fail("nonzero e entry on a crossing lattice");
                    if (a != b && !(basis[b] == image))
                        fail("off-diagonal g entry away from the swap image");
                } else if (!ibar_self(basis[b], i)) {
                    fail("ī-class entry reaching a lattice outside the class");
                }
            }
        }
    }
}

void require_match(const GTModule &m, int f, const Shape &lambda, const char *which) {
    if (m.order() != f || !(m.shape() == lambda))
        throw AssemblyError(std::string(which) + " module [" + std::to_string(m.order()) + "," +
                            m.shape().to_string() + "] does not match [" + std::to_string(f) + "," +
                            lambda.to_string() + "]");
}

} // namespace

SubductionSystem::SubductionSystem(SubductionGrid grid, GTModule module, GTModule module1, GTModule module2)
    : grid_(std::move(grid)), module_(std::move(module)), module1_(std::move(module1)),
      module2_(std::move(module2)) {}

std::pair<const GTModule *, int> SubductionSystem::split_factor(int i) const {
    const int f1 = grid_.signature().f1;
    if (!grid_.signature().is_layer_index(i))
        throw std::out_of_range("generator index " + std::to_string(i) + " is not a layer index");
    return i < f1 ? std::pair{&module1_, i} : std::pair{&module2_, i - f1};
}

const Eigen::MatrixXd &SubductionSystem::full_action(int i, GeneratorKind kind) const {
    return action(module_, i, kind);
}

Eigen::MatrixXd SubductionSystem::split_action(int i, GeneratorKind kind) const {
    const auto [m, j] = split_factor(i);
    const auto &a = action(*m, j, kind);
    const auto d1 = static_cast<Eigen::Index>(module1_.dim());
    const auto d2 = static_cast<Eigen::Index>(module2_.dim());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d1 * d2, d1 * d2);
    for (Eigen::Index p1 = 0; p1 < d1; ++p1)
        for (Eigen::Index p2 = 0; p2 < d2; ++p2)
            for (Eigen::Index q1 = 0; q1 < d1; ++q1)
                for (Eigen::Index q2 = 0; q2 < d2; ++q2) {
                    double v;
                    if (m == &module1_)
                        v = p2 == q2 ? a(p1, q1) : 0.0;
                    else
                        v = p1 == q1 ? a(p2, q2) : 0.0;
                    out(p1 * d2 + p2, q1 * d2 + q2) = v;
                }
    return out;
}

SubductionSystem assemble(const SubductionGrid &grid, GTModule module, GTModule module1, GTModule module2) {
    const auto &sig = grid.signature();
    require_match(module, sig.f, sig.lambda, "target");
    require_match(module1, sig.f1, sig.lambda1, "first factor");
    require_match(module2, sig.f2, sig.lambda2, "second factor");
    if (!(module.x().value() == module1.x().value()) || !(module.x().value() == module2.x().value()))
        throw AssemblyError("modules were built at different x");
    check_module_sparsity(module);
    check_module_sparsity(module1);
    check_module_sparsity(module2);

    SubductionSystem sys(grid, std::move(module), std::move(module1), std::move(module2));
    const auto &g = sys.grid();
    const std::size_t d = g.basis().size(), d1 = g.basis1().size(), d2 = g.basis2().size();
    const std::size_t n = g.nodes().size();

    std::vector<Eigen::Triplet<double>> triplets;
    std::size_t row = 0;
    for (int i : sig.layer_indices()) {
        const auto &layer = g.layer(i);
        for (auto kind : {GeneratorKind::G, GeneratorKind::E}) {
            const auto &full = sys.full_action(i, kind);
            const Eigen::MatrixXd split = sys.split_action(i, kind);
            const std::size_t begin = row;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t p = 0; p < d1 * d2; ++p) {
                    const std::size_t node = a * d1 * d2 + p;
                    std::map<std::size_t, double> coeffs;
                    for (std::size_t u = 0; u < d; ++u) {
                        const double c = full(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(u));
                        if (c != 0)
                            coeffs[u * d1 * d2 + p] += c;
                    }
                    for (std::size_t q = 0; q < d1 * d2; ++q) {
                        const double c = split(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p));
                        if (c != 0)
                            coeffs[a * d1 * d2 + q] -= c;
                    }
                    double big = 0;
                    for (const auto &[col, c] : coeffs) {
                        big = std::max(big, std::abs(c));
                        if (std::abs(c) > kZeroEntry && layer.class_of[col] != layer.class_of[node])
                            throw AssemblyError("equation for " + g.nodes()[node].to_string() + " at i=" +
                                                std::to_string(i) + " couples outside its class");
                    }
                    if (big <= kZeroRow)
                        continue;
                    for (const auto &[col, c] : coeffs)
                        triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), c);
                    sys.rows_.push_back({node, i, kind});
                    ++row;
                }
            sys.blocks_.push_back({i, kind, begin, row});
        }
    }
    sys.omega_.resize(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(n));
    sys.omega_.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

SubductionSystem assemble(const SubductionGrid &grid, const RationalParam &x, BuildOptions options) {
    const auto &sig = grid.signature();
    return assemble(grid, build_module(sig.f, sig.lambda, x, options), build_module(sig.f1, sig.lambda1, x, options),
                    build_module(sig.f2, sig.lambda2, x, options));
}

SolutionBasis solve(const SubductionSystem &sys, SolveOptions options) {
    SolutionBasis out;
    const auto n = static_cast<Eigen::Index>(sys.grid().nodes().size());
    const auto rows = sys.omega().rows();
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(std::max(rows, n), n);
    dense.topRows(rows) = Eigen::MatrixXd(sys.omega());

    if (n == 0) {
        out.vectors.resize(0, 0);
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv.size() ? sv(0) : 0.0;
    std::ostringstream diag;
    diag << std::scientific << std::setprecision(3);
    if (smax == 0) {
        out.threshold = 0;
        out.vectors = Eigen::MatrixXd::Identity(n, n);
        out.multiplicity = static_cast<int>(n);
        diag << "Ω has no nonzero entries; nullspace is the whole node space";
    } else {
        out.threshold = options.rank_tol * smax;
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) > out.threshold)
            ++rank;
        out.multiplicity = static_cast<int>(n - rank);
        out.vectors = svd.matrixV().rightCols(n - rank);
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            const double s = sv(k);
            if (s >= out.threshold / options.gap_factor && s <= out.threshold * options.gap_factor) {
                out.ambiguous = true;
                diag << "singular value " << s << " (index " << k << ") lies within a factor "
                     << options.gap_factor << " of threshold " << out.threshold << "; ";
            }
        }
        diag << "rank " << rank << " of " << n << ", σ_max " << smax;
        if (rank > 0)
            diag << ", last kept " << sv(rank - 1);
        if (rank < sv.size())
            diag << ", first dropped " << sv(rank);
    }
    out.diagnostics = diag.str();

    const Eigen::MatrixXd r = sys.omega() * out.vectors;
    out.max_residual = 0;
    for (const auto &b : sys.blocks()) {
        double m = 0;
        for (Eigen::Index c = 0; c < r.cols(); ++c)
            m = std::max(m, r.col(c).segment(static_cast<Eigen::Index>(b.begin),
                                              static_cast<Eigen::Index>(b.end - b.begin))
                                .norm());
        out.block_residuals.push_back(m);
        out.max_residual = std::max(out.max_residual, m);
    }
    return out;
}

int lr_coefficient(const Shape &lambda, const Shape &lambda1, const Shape &lambda2) {
    if (lambda.boxes() != lambda1.boxes() + lambda2.boxes())
        return 0;
    for (int r = 1; r <= static_cast<int>(lambda1.num_rows()); ++r)
        if (lambda1.row(r) > lambda.row(r))
            return 0;
    // Cells of λ/λ1 in reverse reading order: rows top to bottom, right to left.
    std::vector<std::pair<int, int>> cells;
    for (int r = 1; r <= static_cast<int>(lambda.num_rows()); ++r)
        for (int c = lambda.row(r); c > lambda1.row(r); --c)
            cells.emplace_back(r, c);
    const int letters = lambda2.num_rows();
    std::map<std::pair<int, int>, int> fill;
    std::vector<int> count(static_cast<std::size_t>(letters) + 2, 0);
    int total = 0;
    std::function<void(std::size_t)> place = [&](std::size_t k) {
        if (k == cells.size()) {
            ++total;
            return;
        }
        const auto [r, c] = cells[k];
        int lo = 1, hi = letters;
        if (auto it = fill.find({r - 1, c}); it != fill.end())
            lo = std::max(lo, it->second + 1);
        if (auto it = fill.find({r, c + 1}); it != fill.end())
            hi = std::min(hi, it->second);
        for (int v = lo; v <= hi; ++v) {
            const auto sv = static_cast<std::size_t>(v);
            if (count[sv] + 1 > lambda2.row(v))
                continue;
            if (v > 1 && count[sv] + 1 > count[sv - 1])
                continue;
            ++count[sv];
            fill[{r, c}] = v;
            place(k + 1);
            fill.erase({r, c});
            --count[sv];
        }
    };
    place(0);
    return total;
}

void VerificationReport::record(double deviation, double tol) {
    ++checks;
    if (std::isnan(deviation) || std::isnan(max_deviation))
        max_deviation = std::numeric_limits<double>::quiet_NaN();
    else
        max_deviation = std::max(max_deviation, deviation);
    if (!(deviation <= tol))
        passed = false;
}

void VerificationReport::print(std::ostream &os) const {
    const auto flags = os.flags();
    os << name << ": " << (passed ? "PASS" : "FAIL") << " checks=" << checks << " max_dev=" << std::scientific
       << std::setprecision(3) << max_deviation << '\n';
    os.flags(flags);
    for (const auto &n : notes)
        os << "  note: " << n << '\n';
}

namespace {

// Exact local quantities of the explicit action on one lattice.
struct Local {
    const RationalParam &x;
    NablaConvention conv;

    Rational d(const PermutationLattice &w, int i) const { return diamond(w, w, i, x, conv); }

    double beta(const PermutationLattice &w, int i) const {
        if (swap_action(w, i) == w)
            return 0;
        const Rational dd = d(w, i);
        return std::sqrt(to_double(1 - 1 / (dd * dd)));
    }

    Rational p(const PermutationLattice &w, int k) const { return p_eval(prefix(w, k).shape(), x); }

    double e(const PermutationLattice &u, const PermutationLattice &v, int i) const {
        const Rational pm = p(u, i - 1);
        const double s = std::sqrt(to_double(p(u, i) * p(v, i) / (pm * pm)));
        return pm > 0 ? s : -s;
    }
};

struct NodeAccess {
    const SubductionSystem &sys;
    const SolutionBasis &basis;

    std::size_t index(const PermutationLattice &w, const LatticePair &p) const {
        return sys.grid().node_index(GridNode{w, p});
    }
    double chi(const PermutationLattice &w, const LatticePair &p, Eigen::Index eta) const {
        return basis.vectors(static_cast<Eigen::Index>(index(w, p)), eta);
    }
};

// Pairs in the ī-class of p at layer index i, other factor held fixed.
std::vector<LatticePair> pair_bar_class(const SubductionSystem &sys, const LatticePair &p, int i) {
    const auto c = pair_component(p, i, sys.grid().signature().f1);
    const auto &m = c.first ? sys.module1() : sys.module2();
    std::vector<LatticePair> out;
    for (auto k : theta_bar_indices(m.basis(), *c.lattice, c.local_index))
        out.push_back(c.first ? LatticePair{m.basis()[k], p.w2} : LatticePair{p.w1, m.basis()[k]});
    return out;
}

} // namespace

VerificationReport verify_bridge_kernels(const SubductionSystem &sys, const SolutionBasis &basis, double tol) {
    VerificationReport rep;
    rep.name = "bridge kernels";
    const auto &g = sys.grid();
    const int f1 = g.signature().f1;
    Local loc{sys.x(), sys.module().convention()};
    NodeAccess acc{sys, basis};
    for (const auto &layer : g.layers()) {
        const int i = layer.i;
        for (std::size_t k = 0; k < g.nodes().size(); ++k) {
            const auto &nd = g.nodes()[k];
            const auto tag = layer.tags[k];
            if (tag == Configuration::HBridge) {
                const auto cls = theta_bar_indices(sys.module().basis(), nd.w, i);
                const auto &e = sys.full_action(i, GeneratorKind::E);
                for (Eigen::Index eta = 0; eta < basis.vectors.cols(); ++eta) {
                    double s = 0;
                    for (auto u : cls) {
                        const auto &wu = sys.module().basis()[u];
                        s += std::sqrt(std::abs(to_double(loc.p(wu, i)))) * acc.chi(wu, nd.pair, eta);
                    }
                    rep.record(std::abs(s), tol);
                    const auto a = *sys.module().index_of(nd.w);
                    double r = 0;
                    for (auto u : cls)
                        r += e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(u)) *
                             acc.chi(sys.module().basis()[u], nd.pair, eta);
                    rep.record(std::abs(r), tol);
                }
            } else if (tag == Configuration::VBridge) {
                const auto cls = pair_bar_class(sys, nd.pair, i);
                const auto c = pair_component(nd.pair, i, f1);
                const Eigen::MatrixXd es = sys.split_action(i, GeneratorKind::E);
                const std::size_t d2 = g.basis2().size();
                auto pair_pos = [&](const LatticePair &q) {
                    return static_cast<Eigen::Index>(*sys.module1().index_of(q.w1) * d2 +
                                                     *sys.module2().index_of(q.w2));
                };
                for (Eigen::Index eta = 0; eta < basis.vectors.cols(); ++eta) {
                    double s = 0, r = 0;
                    for (const auto &q : cls) {
                        const auto qc = pair_component(q, i, f1);
                        s += std::sqrt(std::abs(to_double(loc.p(*qc.lattice, c.local_index)))) *
                             acc.chi(nd.w, q, eta);
                        r += es(pair_pos(q), pair_pos(nd.pair)) * acc.chi(nd.w, q, eta);
                    }
                    rep.record(std::abs(s), tol);
                    rep.record(std::abs(r), tol);
                }
            }
        }
    }
    return rep;
}

VerificationReport verify_bridge_propagation(const SubductionSystem &sys, const SolutionBasis &basis, double tol) {
    VerificationReport rep;
    rep.name = "bridge propagation";
    const auto &g = sys.grid();
    const int f1 = g.signature().f1;
    const auto &x = sys.x();
    const auto conv = sys.module().convention();
    Local loc{x, conv};
    NodeAccess acc{sys, basis};
    const auto mu = basis.vectors.cols();
    std::size_t skipped = 0;

    for (const auto &layer : g.layers()) {
        const int i = layer.i;
        for (std::size_t k = 0; k < g.nodes().size(); ++k) {
            const auto &nd = g.nodes()[k];
            const auto &w = nd.w;
            const auto &p = nd.pair;
            const auto pc = pair_component(p, i, f1);
            const int j = pc.local_index;
            switch (layer.tags[k]) {
            case Configuration::Crossing: {
                const Rational dw = loc.d(w, i), d12 = loc.d(*pc.lattice, j);
                const double bw = loc.beta(w, i), b12 = loc.beta(*pc.lattice, j);
                const double alpha = to_double(1 / d12 - 1 / dw);
                const auto gw = swap_action(w, i);
                const auto gp = pair_swap_action(p, i, f1);
                for (Eigen::Index eta = 0; eta < mu; ++eta) {
                    const double c0 = acc.chi(w, p, eta);
                    if (b12 != 0) {
                        const double rec = (bw * acc.chi(gw, p, eta) - alpha * c0) / b12;
                        rep.record(std::abs(rec - acc.chi(w, gp, eta)), tol);
                    } else if (bw != 0) {
                        rep.record(std::abs(alpha * c0 / bw - acc.chi(gw, p, eta)), tol);
                    } else {
                        rep.record(std::abs(alpha * c0), tol);
                    }
                }
                break;
            }
            case Configuration::HBridge: {
                const double b12 = loc.beta(*pc.lattice, j);
                const auto gp = pair_swap_action(p, i, f1);
                if (b12 == 0) {
                    if (!(gp == p)) {
                        rep.passed = false;
                        rep.notes.push_back("β = 0 with a nontrivial swap at " + nd.to_string());
                    }
                    ++skipped;
                    break;
                }
                const double diag = to_double(ibar_diagonal(w, i, x, conv));
                const double inv12 = to_double(1 / loc.d(*pc.lattice, j));
                const auto cls = theta_bar_indices(sys.module().basis(), w, i);
                for (Eigen::Index eta = 0; eta < mu; ++eta) {
                    double num = (diag - inv12) * acc.chi(w, p, eta);
                    for (auto u : cls) {
                        const auto &wu = sys.module().basis()[u];
                        if (wu == w)
                            continue;
                        num -= loc.e(w, wu, i) / to_double(diamond(w, wu, i, x, conv)) * acc.chi(wu, p, eta);
                    }
                    rep.record(std::abs(num / b12 - acc.chi(w, gp, eta)), tol);
                }
                break;
            }
            case Configuration::VBridge: {
                const double bw = loc.beta(w, i);
                const auto gw = swap_action(w, i);
                if (bw == 0) {
                    if (!(gw == w)) {
                        rep.passed = false;
                        rep.notes.push_back("β = 0 with a nontrivial swap at " + nd.to_string());
                    }
                    ++skipped;
                    break;
                }
                const double diag = to_double(ibar_diagonal(*pc.lattice, j, x, conv));
                const double invw = to_double(1 / loc.d(w, i));
                const auto cls = pair_bar_class(sys, p, i);
                for (Eigen::Index eta = 0; eta < mu; ++eta) {
                    double num = (diag - invw) * acc.chi(w, p, eta);
                    for (const auto &q : cls) {
                        if (q == p)
                            continue;
                        const auto &lq = *pair_component(q, i, f1).lattice;
                        num -= loc.e(lq, *pc.lattice, j) / to_double(diamond(lq, *pc.lattice, j, x, conv)) *
                               acc.chi(w, q, eta);
                    }
                    rep.record(std::abs(num / bw - acc.chi(gw, p, eta)), tol);
                }
                break;
            }
            case Configuration::Singlet:
                break;
            }
        }
    }
    if (skipped)
        rep.notes.push_back(std::to_string(skipped) + " bridge nodes skipped: g_i fixes the lattice (β = 0)");
    return rep;
}

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

Eigen::Index nullity(const Eigen::MatrixXd &a, double thr) {
    if (a.cols() == 0)
        return 0;
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(std::max(a.rows(), a.cols()), a.cols());
    padded.topRows(a.rows()) = a;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded);
    Eigen::Index z = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) <= thr)
            ++z;
    return z;
}

} // namespace

std::vector<SingletBlock> singlet_blocks(const SubductionSystem &sys, const SolutionBasis &basis) {
    std::vector<SingletBlock> out;
    const auto &g = sys.grid();
    const int f1 = g.signature().f1;
    const double x = to_double(sys.x().value());
    NodeAccess acc{sys, basis};
    const auto &mb = sys.module().basis();

    for (const auto &layer : g.layers()) {
        const int i = layer.i;
        for (std::size_t k = 0; k < g.nodes().size(); ++k) {
            if (layer.tags[k] != Configuration::Singlet)
                continue;
            const auto &nd = g.nodes()[k];
            const auto wcls = theta_bar_indices(mb, nd.w, i);
            const auto pcls = pair_bar_class(sys, nd.pair, i);
            // One representative per block: the first member of both classes.
            if (!(mb[wcls.front()] == nd.w) || !(pcls.front() == nd.pair))
                continue;
            SingletBlock blk;
            blk.i = i;
            blk.node = k;
            const auto kk = static_cast<Eigen::Index>(wcls.size());
            const auto mm = static_cast<Eigen::Index>(pcls.size());
            blk.k = static_cast<std::size_t>(kk);
            blk.m = static_cast<std::size_t>(mm);

            const auto pc = pair_component(nd.pair, i, f1);
            const auto &fm = pc.first ? sys.module1() : sys.module2();
            std::vector<std::size_t> pidx;
            for (const auto &q : pcls)
                pidx.push_back(*fm.index_of(*pair_component(q, i, f1).lattice));
            auto restrict = [](const Eigen::MatrixXd &a, const std::vector<std::size_t> &idx) {
                const auto s = static_cast<Eigen::Index>(idx.size());
                Eigen::MatrixXd r(s, s);
                for (Eigen::Index u = 0; u < s; ++u)
                    for (Eigen::Index v = 0; v < s; ++v)
                        r(u, v) = a(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(u)]),
                                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(v)]));
                return r;
            };
            for (auto kind : {GeneratorKind::G, GeneratorKind::E}) {
                const Eigen::MatrixXd rw = restrict(sys.full_action(i, kind), wcls);
                const Eigen::MatrixXd r12 = restrict(action(fm, pc.local_index, kind), pidx);
                const Eigen::MatrixXd omega =
                    kron(rw, Eigen::MatrixXd::Identity(mm, mm)) - kron(Eigen::MatrixXd::Identity(kk, kk), r12);
                auto &side = kind == GeneratorKind::G ? blk.g : blk.e;
                side.omega = omega;
                // Eigenvalues snap to {-1, 1} for g and {0, x} for e.
                const double lo = kind == GeneratorKind::G ? -1.0 : 0.0;
                const double hi = kind == GeneratorKind::G ? 1.0 : x;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ew(rw), e12(r12);
                std::array<std::size_t, 2> nw{}, n12{};
                auto snap = [&](double v, std::array<std::size_t, 2> &cnt) {
                    const bool up = std::abs(v - hi) < std::abs(v - lo);
                    side.spectrum_deviation = std::max(side.spectrum_deviation, std::abs(v - (up ? hi : lo)));
                    ++cnt[up ? 1 : 0];
                    return up ? hi : lo;
                };
                std::vector<double> sw, s12;
                for (Eigen::Index a = 0; a < kk; ++a)
                    sw.push_back(snap(ew.eigenvalues()(a), nw));
                for (Eigen::Index b = 0; b < mm; ++b)
                    s12.push_back(snap(e12.eigenvalues()(b), n12));
                side.expected_kernel = nw[0] * n12[0] + nw[1] * n12[1];
                for (Eigen::Index a = 0; a < kk; ++a)
                    for (Eigen::Index b = 0; b < mm; ++b) {
                        Eigen::VectorXd t = kron(ew.eigenvectors().col(a), e12.eigenvectors().col(b));
                        const double lam = sw[static_cast<std::size_t>(a)] - s12[static_cast<std::size_t>(b)];
                        side.eigen_product_deviation =
                            std::max(side.eigen_product_deviation, (omega * t - lam * t).norm());
                    }
                const double thr = 1e-6 * std::max(1.0, x);
                side.kernel = static_cast<std::size_t>(nullity(omega, thr));
                Eigen::MatrixXd restricted(kk * mm, basis.vectors.cols());
                for (Eigen::Index a = 0; a < kk; ++a)
                    for (Eigen::Index b = 0; b < mm; ++b)
                        for (Eigen::Index eta = 0; eta < basis.vectors.cols(); ++eta)
                            restricted(a * mm + b, eta) =
                                acc.chi(mb[wcls[static_cast<std::size_t>(a)]], pcls[static_cast<std::size_t>(b)], eta);
                side.solution_residual = restricted.size() ? (omega * restricted).cwiseAbs().maxCoeff() : 0.0;
                if (kind == GeneratorKind::E) {
                    Eigen::MatrixXd stacked(2 * kk * mm, kk * mm);
                    stacked << blk.g.omega, omega;
                    blk.intersection = static_cast<std::size_t>(nullity(stacked, thr));
                    if (restricted.cols() == 0) {
                        blk.solution_rank = 0;
                    } else {
                        Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted);
                        const auto &s = svd.singularValues();
                        blk.solution_rank = 0;
                        for (Eigen::Index r = 0; r < s.size(); ++r)
                            if (s(r) > 1e-8)
                                ++blk.solution_rank;
                    }
                }
            }
            out.push_back(std::move(blk));
        }
    }
    return out;
}

VerificationReport verify_singlet_structure(const SubductionSystem &sys, const SolutionBasis &basis, double tol) {
    VerificationReport rep;
    rep.name = "singlet structure";
    for (const auto &blk : singlet_blocks(sys, basis)) {
        const auto &nd = sys.grid().nodes()[blk.node];
        for (const auto *side : {&blk.g, &blk.e}) {
            rep.record(side->spectrum_deviation, tol);
            rep.record(side->eigen_product_deviation, tol);
            rep.record(side->solution_residual, tol);
            ++rep.checks;
            if (side->kernel != side->expected_kernel) {
                rep.passed = false;
                rep.notes.push_back("kernel dimension " + std::to_string(side->kernel) + " differs from " +
                                    std::to_string(side->expected_kernel) + " at " + nd.to_string() +
                                    ", i=" + std::to_string(blk.i));
            }
        }
        if (blk.solution_rank > blk.intersection) {
            rep.passed = false;
            rep.notes.push_back("restricted solution rank exceeds the intertwiner intersection at " +
                                nd.to_string());
        }
    }
    return rep;
}

void CompletenessReport::print(std::ostream &os) const {
    for (const auto &e : entries)
        if (e.multiplicity)
            os << "  " << e.lambda1.to_string() << " x " << e.lambda2.to_string() << ": mu=" << e.multiplicity
               << " dims=" << e.dim1 << "x" << e.dim2 << '\n';
    os << "completeness " << total << " / " << dim << (passed ? " PASS" : " FAIL") << (ambiguous ? " (ambiguous)" : "")
       << '\n';
}

CompletenessReport completeness_check(int f, const Shape &lambda, int f1, int f2, const RationalParam &x,
                                      SolveOptions options, BuildOptions build) {
    CompletenessReport rep;
    rep.dim = dimension(f, lambda);
    const auto target = build_module(f, lambda, x, build);
    for (const auto &l1 : upsilon(f1))
        for (const auto &l2 : upsilon(f2)) {
            GridSignature sig{f, lambda, f1, f2, l1, l2};
            sig.validate();
            auto sys = assemble(build_grid(sig), target, build_module(f1, l1, x, build), build_module(f2, l2, x, build));
            auto sol = solve(sys, options);
            rep.ambiguous = rep.ambiguous || sol.ambiguous;
            CompletenessEntry e{l1, l2, sol.multiplicity, dimension(f1, l1), dimension(f2, l2)};
            rep.total += static_cast<std::uint64_t>(e.multiplicity) * e.dim1 * e.dim2;
            rep.entries.push_back(std::move(e));
        }
    rep.passed = rep.total == rep.dim && !rep.ambiguous;
    return rep;
}

std::string solution_to_json(const SubductionSystem &sys, const SolutionBasis &basis) {
    nlohmann::ordered_json j;
    const auto &sig = sys.grid().signature();
    j["signature"] = {{"f", sig.f},   {"shape", sig.lambda.to_string()},   {"f1", sig.f1},
                      {"f2", sig.f2}, {"shape1", sig.lambda1.to_string()}, {"shape2", sig.lambda2.to_string()}};
    j["x"] = sys.x().to_string();
    j["equations"] = sys.omega().rows();
    j["unknowns"] = sys.omega().cols();
    j["multiplicity"] = basis.multiplicity;
    j["threshold"] = basis.threshold;
    j["ambiguous"] = basis.ambiguous;
    j["residual"] = basis.max_residual;
    const std::size_t keep = std::min<std::size_t>(basis.singular_values.size(),
                                                   static_cast<std::size_t>(basis.multiplicity) + 4);
    j["singular_value_tail"] = std::vector<double>(basis.singular_values.end() - static_cast<std::ptrdiff_t>(keep),
                                                   basis.singular_values.end());
    nlohmann::ordered_json vecs = nlohmann::ordered_json::object();
    const auto &nodes = sys.grid().nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        std::vector<double> row;
        for (Eigen::Index c = 0; c < basis.vectors.cols(); ++c)
            row.push_back(basis.vectors(static_cast<Eigen::Index>(k), c));
        vecs[nodes[k].to_string()] = row;
    }
    j["basis"] = std::move(vecs);
    return j.dump(2);
}

} // namespace brauer
