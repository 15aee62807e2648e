#include "brauer/gt_module.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>

#include "json.hpp"

namespace brauer {

namespace {

void require_compatible(const PermutationLattice &u, const PermutationLattice &v) {
    if (u.order() != v.order() || !(u.shape() == v.shape()))
        throw std::invalid_argument("lattices " + u.to_string() + " and " + v.to_string() +
                                    " differ in order or shape");
}

} // namespace

bool i_coupled(const PermutationLattice &u, const PermutationLattice &v, int i) {
    require_compatible(u, v);
    for (int h = 1; h <= u.order(); ++h)
        if (h != i && h != i + 1 && u.at(h) != v.at(h))
            return false;
    return true;
}

bool ibar_self(const PermutationLattice &w, int i) {
    if (i < 1 || i >= w.order())
        return false;
    return w.at(i) == -w.at(i + 1);
}

bool ibar_coupled(const PermutationLattice &u, const PermutationLattice &v, int i) {
    return i_coupled(u, v, i) && ibar_self(u, i) && ibar_self(v, i);
}

PermutationLattice swap_action(const PermutationLattice &w, int i) {
    if (i < 1 || i >= w.order())
        throw std::out_of_range("swap index " + std::to_string(i) + " outside [1, " + std::to_string(w.order() - 1) +
                                "]");
    Word word = w.word();
    std::swap(word[static_cast<std::size_t>(i - 1)], word[static_cast<std::size_t>(i)]);
    auto v = validate_word(word);
    return v ? std::move(*v.lattice) : w;
}

std::vector<std::size_t> theta_indices(std::span<const PermutationLattice> basis, const PermutationLattice &w,
                                       int i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (i_coupled(w, basis[k], i))
            out.push_back(k);
    return out;
}

std::vector<std::size_t> theta_bar_indices(std::span<const PermutationLattice> basis, const PermutationLattice &w,
                                           int i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (ibar_coupled(w, basis[k], i))
            out.push_back(k);
    return out;
}

std::vector<PermutationLattice> theta_set(const PermutationLattice &w, int i) {
    const auto basis = enumerate_lattices(w.order(), w.shape());
    std::vector<PermutationLattice> out;
    for (auto k : theta_indices(basis, w, i))
        out.push_back(basis[k]);
    return out;
}

std::vector<PermutationLattice> theta_bar_set(const PermutationLattice &w, int i) {
    const auto basis = enumerate_lattices(w.order(), w.shape());
    std::vector<PermutationLattice> out;
    for (auto k : theta_bar_indices(basis, w, i))
        out.push_back(basis[k]);
    return out;
}

Rational ibar_diagonal(const PermutationLattice &u, int i, const RationalParam &x, NablaConvention conv) {
    const auto p_outer = p_poly(prefix(u, i - 1).shape());
    const auto p_middle = p_poly(prefix(u, i).shape());
    const auto num = p_outer - p_middle;
    const auto den = p_outer * diamond_poly(u, u, i, conv);
    Rational value;
    if (!evaluate_ratio(num, den, x.value(), value))
        throw ConstructionError("pole in diagonal g_" + std::to_string(i) + " entry at " + u.to_string() +
                                    " for x = " + x.to_string(),
                                u, u, i);
    return value;
}

GTModule::GTModule(int f, Shape shape, RationalParam x, std::vector<PermutationLattice> basis,
                   std::vector<Eigen::MatrixXd> g, std::vector<Eigen::MatrixXd> e, NablaConvention convention)
    : f_(f), shape_(std::move(shape)), x_(std::move(x)), basis_(std::move(basis)), g_(std::move(g)), e_(std::move(e)),
      convention_(convention) {
    for (std::size_t k = 0; k < basis_.size(); ++k)
        index_.emplace(basis_[k].word(), k);
}

std::optional<std::size_t> GTModule::index_of(const PermutationLattice &w) const {
    auto it = index_.find(w.word());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

GTModule build_module(int f, const Shape &lambda, const RationalParam &x, BuildOptions options) {
    if (!lambda.in_upsilon(f))
        throw std::invalid_argument("shape " + lambda.to_string() + " is not in Υ_" + std::to_string(f));
    auto basis = enumerate_lattices(f, lambda);
    const auto n = static_cast<Eigen::Index>(basis.size());
    const auto conv = options.convention;

    std::map<Shape, Rational> p_cache;
    auto p_of = [&](const Shape &s) -> const Rational & {
        auto it = p_cache.find(s);
        if (it == p_cache.end())
            it = p_cache.emplace(s, p_eval(s, x)).first;
        return it->second;
    };
    // prefix_shapes[a][k] = Y(u^{(k)}) for basis element a.
    std::vector<std::vector<Shape>> prefix_shapes(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (int k = 0; k <= f; ++k)
            prefix_shapes[a].push_back(prefix(basis[a], k).shape());

    std::vector<Eigen::MatrixXd> gs, es;
    for (int i = 1; i < f; ++i) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            const auto &u = basis[a];
            const bool bar = ibar_self(u, i);
            for (std::size_t b : theta_indices(basis, u, i)) {
                const auto &v = basis[b];
                const auto ra = static_cast<Eigen::Index>(a), rb = static_cast<Eigen::Index>(b);
                if (!bar) {
                    const Rational d = diamond(u, u, i, x, conv);
                    if (d == 0)
                        throw ConstructionError("vanishing axial distance d_" + std::to_string(i) + " at " +
                                                    u.to_string(),
                                                u, v, i);
                    if (a == b) {
                        g(ra, rb) = to_double(1 / d);
                    } else {
                        const Rational radicand = 1 - 1 / (d * d);
                        if (radicand < 0)
                            throw ConstructionError("negative radicand 1 - 1/d^2 = " + to_string(radicand) + " at (" +
                                                        u.to_string() + ", " + v.to_string() + ")",
                                                    u, v, i);
                        g(ra, rb) = std::sqrt(to_double(radicand));
                    }
                    continue;
                }
                const Rational &p_outer = p_of(prefix_shapes[a][static_cast<std::size_t>(i - 1)]);
                const Rational &p_u = p_of(prefix_shapes[a][static_cast<std::size_t>(i)]);
                const Rational &p_v = p_of(prefix_shapes[b][static_cast<std::size_t>(i)]);
                if (p_outer == 0)
                    throw ConstructionError("vanishing P_" + prefix_shapes[a][static_cast<std::size_t>(i - 1)].to_string() +
                                                "(x)",
                                            u, v, i);
                const Rational radicand = p_u * p_v / (p_outer * p_outer);
                if (radicand < 0)
                    throw ConstructionError("negative radicand P_u P_v / P_m^2 = " + to_string(radicand) + " at (" +
                                                u.to_string() + ", " + v.to_string() + ")",
                                            u, v, i);
                // P is sign-constant on a class, so √P_u √P_v carries sign(P_u).
                const double e_entry = a == b ? to_double(p_u / p_outer)
                                              : ((p_outer > 0) == (p_u >= 0) ? 1.0 : -1.0) * std::sqrt(to_double(radicand));
                e(ra, rb) = e_entry;
                if (a == b) {
                    g(ra, rb) = to_double(ibar_diagonal(u, i, x, conv));
                } else {
                    const Rational dd = diamond(u, v, i, x, conv);
                    if (dd == 0)
                        throw ConstructionError("vanishing diamond ◇_" + std::to_string(i) + "(" + u.to_string() +
                                                    ", " + v.to_string() + ")",
                                                u, v, i);
                    g(ra, rb) = -e_entry / to_double(dd);
                }
            }
        }
        gs.push_back(std::move(g));
        es.push_back(std::move(e));
    }
    return GTModule(f, lambda, x, std::move(basis), std::move(gs), std::move(es), conv);
}

double RelationReport::residual(const std::string &name) const {
    for (const auto &r : residuals)
        if (r.name == name)
            return r.residual;
    throw std::out_of_range("no relation named " + name);
}

void RelationReport::print(std::ostream &os) const {
    const auto flags = os.flags();
    for (const auto &r : residuals) {
        os << std::left << std::setw(26) << r.name << std::scientific << std::setprecision(3) << r.residual;
        if (!r.gating)
            os << "  (extra)";
        else
            os << (r.residual <= tolerance ? "  ok" : "  FAIL");
        os << '\n';
    }
    os.flags(flags);
    os << "relations " << (passed ? "PASS" : "FAIL") << " at tol " << tolerance << '\n';
}

RelationReport check_relations(const GTModule &m, double tol) {
    RelationReport rep;
    rep.tolerance = tol;
    const int f = m.order();
    const auto n = static_cast<Eigen::Index>(m.dim());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const double x = to_double(m.x().value());
    auto maxabs = [](const Eigen::MatrixXd &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; };

    std::map<std::string, std::pair<double, bool>> acc;
    const std::vector<std::pair<std::string, bool>> order = {
        {"(1) braid", true},
        {"(2) distant commute", true},
        {"(3) e_i g_i = e_i", true},
        {"(4) e_i g_{i-1} e_i = e_i", true},
        {"(5) e_i^2 = x e_i", true},
        {"(6) g_i^2 = 1", true},
        {"hermiticity", true},
        {"spectrum e_i in {0,x}", true},
        {"g_i e_i = e_i", false},
        {"e_i g_{i+1} e_i = e_i", false},
        {"e_i e_{i+-1} e_i = e_i", false},
        {"distant commute (g,e)", false},
        {"tangle g_i e_{i+1} e_i", false},
        {"trace e_i = x rank e_i", false},
    };
    for (const auto &[name, gating] : order)
        acc[name] = {0.0, gating};
    auto bump = [&](const std::string &name, double v) { acc[name].first = std::max(acc[name].first, v); };

    for (int i = 1; i < f; ++i) {
        const auto &g = m.g(i);
        const auto &e = m.e(i);
        bump("hermiticity", std::max(maxabs(g - g.transpose()), maxabs(e - e.transpose())));
        bump("(6) g_i^2 = 1", maxabs(g * g - id));
        bump("(5) e_i^2 = x e_i", maxabs(e * e - x * e));
        bump("(3) e_i g_i = e_i", maxabs(e * g - e));
        bump("g_i e_i = e_i", maxabs(g * e - e));
        if (i >= 2) {
            bump("(4) e_i g_{i-1} e_i = e_i", maxabs(e * m.g(i - 1) * e - e));
            bump("e_i e_{i+-1} e_i = e_i", maxabs(e * m.e(i - 1) * e - e));
        }
        if (i + 1 < f) {
            const auto &g1 = m.g(i + 1);
            const auto &e1 = m.e(i + 1);
            bump("(1) braid", maxabs(g * g1 * g - g1 * g * g1));
            bump("e_i g_{i+1} e_i = e_i", maxabs(e * g1 * e - e));
            bump("e_i e_{i+-1} e_i = e_i", maxabs(e * e1 * e - e));
            bump("tangle g_i e_{i+1} e_i", maxabs(g * e1 * e - g1 * e));
        }
        for (int j = 1; j < f; ++j) {
            if (std::abs(i - j) < 2)
                continue;
            bump("(2) distant commute", maxabs(g * m.g(j) - m.g(j) * g));
            bump("distant commute (g,e)",
                 std::max({maxabs(g * m.e(j) - m.e(j) * g), maxabs(e * m.e(j) - m.e(j) * e)}));
        }
        if (n > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
            double off_spectrum = 0;
            int rank = 0;
            for (Eigen::Index k = 0; k < n; ++k) {
                const double lam = es.eigenvalues()(k);
                off_spectrum = std::max(off_spectrum, std::min(std::abs(lam), std::abs(lam - x)));
                if (std::abs(lam - x) < std::abs(lam))
                    ++rank;
            }
            bump("spectrum e_i in {0,x}", off_spectrum);
            bump("trace e_i = x rank e_i", std::abs(e.trace() - x * rank));
        }
    }
    for (const auto &[name, gating] : order) {
        const double r = acc[name].first;
        rep.residuals.push_back({name, r, gating});
        if (gating && !(r <= tol))
            rep.passed = false;
    }
    return rep;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string convention_name(NablaConvention c) { return c == NablaConvention::Calibrated ? "calibrated" : "literal"; }

nlohmann::json matrix_json(const Eigen::MatrixXd &a) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            row.push_back(a(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

void write_module_text(std::ostream &os, const GTModule &m) {
    os << "module f=" << m.order() << " shape=" << m.shape().to_string() << " x=" << m.x().to_string()
       << " convention=" << convention_name(m.convention()) << " dim=" << m.dim() << '\n';
    os << "basis\n";
    for (std::size_t k = 0; k < m.dim(); ++k)
        os << "  " << k << ' ' << m.basis()[k].to_string() << '\n';
    auto dump = [&](const char *name, int i, const Eigen::MatrixXd &a) {
        os << name << i << '\n';
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            os << ' ';
            for (Eigen::Index c = 0; c < a.cols(); ++c)
                os << ' ' << fmt17(a(r, c));
            os << '\n';
        }
    };
    for (int i = 1; i < m.order(); ++i) {
        dump("g", i, m.g(i));
        dump("e", i, m.e(i));
    }
}

std::string module_to_json(const GTModule &m) {
    nlohmann::json j;
    j["f"] = m.order();
    j["shape"] = m.shape().to_string();
    j["x"] = m.x().to_string();
    j["convention"] = convention_name(m.convention());
    auto basis = nlohmann::json::array();
    for (const auto &w : m.basis())
        basis.push_back(w.to_string());
    j["basis"] = std::move(basis);
    auto g = nlohmann::json::array(), e = nlohmann::json::array();
    for (int i = 1; i < m.order(); ++i) {
        g.push_back(matrix_json(m.g(i)));
        e.push_back(matrix_json(m.e(i)));
    }
    j["g"] = std::move(g);
    j["e"] = std::move(e);
    return j.dump(2);
}

} // namespace brauer
