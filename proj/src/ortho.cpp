#include "brauer/ortho.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brauer {

namespace {

double max_abs(const Eigen::MatrixXd &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

double GramResult::residual() const {
    const auto mu = tau.rows();
    return max_abs(sylvester.transpose() * tau * sylvester - Eigen::MatrixXd::Identity(mu, mu));
}

std::vector<Eigen::Index> leading_entries(const Eigen::MatrixXd &m, double phase_tol) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double big = m.rows() ? m.col(c).cwiseAbs().maxCoeff() : 0.0;
        Eigen::Index lead = -1;
        if (big > 0)
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                if (std::abs(m(r, c)) > phase_tol * big) {
                    lead = r;
                    break;
                }
        out.push_back(lead);
    }
    return out;
}

GramResult gram(const Eigen::MatrixXd &chi, std::size_t d1, std::size_t d2, const std::optional<Eigen::MatrixXd> &gauge) {
    const auto mu = chi.cols();
    if (mu == 0)
        throw std::invalid_argument("Gram matrix needs at least one solution vector");
    if (gauge && (gauge->rows() != mu || gauge->cols() != mu))
        throw std::invalid_argument("gauge must be " + std::to_string(mu) + "x" + std::to_string(mu));
    GramResult out;
    out.tau = chi.transpose() * chi / static_cast<double>(d1 * d2);
    out.tau = 0.5 * (out.tau + out.tau.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.tau);
    // Eigen sorts ascending; reverse to descending.
    out.eigenvalues = es.eigenvalues().reverse();
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    const auto leads = leading_entries(out.eigenvectors, 1e-12);
    for (Eigen::Index c = 0; c < mu; ++c)
        if (leads[static_cast<std::size_t>(c)] >= 0 && out.eigenvectors(leads[static_cast<std::size_t>(c)], c) < 0)
            out.eigenvectors.col(c) *= -1;
    const double top = out.eigenvalues(0);
    const double bottom = out.eigenvalues(mu - 1);
    if (!(top > 0) || !(bottom > 1e-12 * top))
        throw std::runtime_error("Gram matrix is numerically singular (eigenvalues " + std::to_string(top) + " .. " +
                                 std::to_string(bottom) + "); solution vectors are not independent");
    out.chosen_O = gauge ? *gauge : Eigen::MatrixXd::Identity(mu, mu);
    const Eigen::VectorXd inv_sqrt = out.eigenvalues.cwiseSqrt().cwiseInverse();
    out.sylvester = out.eigenvectors * inv_sqrt.asDiagonal() * out.chosen_O;
    return out;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd &chi, const GramResult &g) { return chi * g.sylvester; }

SdcTable::SdcTable(GridSignature sig, RationalParam x, std::vector<GridNode> nodes, std::size_t d, std::size_t d1,
                   std::size_t d2, Eigen::MatrixXd coefficients)
    : sig_(std::move(sig)), x_(std::move(x)), nodes_(std::move(nodes)), d_(d), d1_(d1), d2_(d2),
      coefficients_(std::move(coefficients)) {
    if (static_cast<std::size_t>(coefficients_.rows()) != d_ * d1_ * d2_ || nodes_.size() != d_ * d1_ * d2_)
        throw std::invalid_argument("coefficient rows do not match the node count");
    const auto mu = coefficients_.cols();
    for (Eigen::Index a = 0; a < mu; ++a)
        for (Eigen::Index b = 0; b < mu; ++b) {
            const Eigen::MatrixXd ov = block(static_cast<int>(a)).transpose() * block(static_cast<int>(b));
            const double want = a == b ? 1.0 : 0.0;
            for (Eigen::Index r = 0; r < ov.rows(); ++r)
                for (Eigen::Index c = 0; c < ov.cols(); ++c) {
                    const double dev = std::abs(ov(r, c) - (r == c ? want : 0.0));
                    if (std::isnan(dev) || std::isnan(unitarity_))
                        unitarity_ = std::numeric_limits<double>::quiet_NaN();
                    else
                        unitarity_ = std::max(unitarity_, dev);
                }
        }
}

Eigen::MatrixXd SdcTable::block(int eta) const {
    const auto d = static_cast<Eigen::Index>(d_);
    const auto p = static_cast<Eigen::Index>(d1_ * d2_);
    Eigen::MatrixXd out(d, p);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index q = 0; q < p; ++q)
            out(a, q) = coefficients_(a * p + q, eta);
    return out;
}

SdcTable fix_phases(const Eigen::MatrixXd &chi_tilde, const SubductionGrid &grid, const RationalParam &x,
                    double phase_tol) {
    Eigen::MatrixXd c = chi_tilde;
    const auto leads = leading_entries(c, phase_tol);
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
        const auto lead = leads[static_cast<std::size_t>(k)];
        if (lead < 0)
            throw std::runtime_error("SDC column " + std::to_string(k + 1) + " is identically zero");
        if (c(lead, k) < 0)
            c.col(k) *= -1;
    }
    // Adding +0 turns -0 into +0 so serialized tables carry no signed zeros.
    c.array() += 0.0;
    return SdcTable(grid.signature(), x, grid.nodes(), grid.basis().size(), grid.basis1().size(),
                    grid.basis2().size(), std::move(c));
}

double block_diagonal_residual(const SdcTable &table, const SubductionSystem &sys) {
    double worst = 0;
    const auto mu = table.multiplicity();
    std::vector<Eigen::MatrixXd> blocks;
    for (int eta = 0; eta < mu; ++eta)
        blocks.push_back(table.block(eta));
    for (int i : sys.grid().signature().layer_indices())
        for (auto kind : {GeneratorKind::G, GeneratorKind::E}) {
            const auto &full = sys.full_action(i, kind);
            const Eigen::MatrixXd split = sys.split_action(i, kind);
            for (int a = 0; a < mu; ++a)
                for (int b = 0; b < mu; ++b) {
                    Eigen::MatrixXd r = blocks[static_cast<std::size_t>(a)].transpose() * full *
                                        blocks[static_cast<std::size_t>(b)];
                    if (a == b)
                        r -= split;
                    const double m = max_abs(r);
                    if (std::isnan(m))
                        return m;
                    worst = std::max(worst, m);
                }
        }
    return worst;
}

SweepUnitarity sweep_unitarity(const std::vector<SdcTable> &tables) {
    SweepUnitarity out;
    if (tables.empty())
        return out;
    out.dim = tables.front().dim();
    for (const auto &t : tables)
        out.columns += static_cast<std::size_t>(t.multiplicity()) * t.dim1() * t.dim2();
    if (out.columns != out.dim) {
        out.residual = std::numeric_limits<double>::infinity();
        return out;
    }
    const auto d = static_cast<Eigen::Index>(out.dim);
    Eigen::MatrixXd m(d, d);
    Eigen::Index col = 0;
    for (const auto &t : tables)
        for (int eta = 0; eta < t.multiplicity(); ++eta) {
            const Eigen::MatrixXd blk = t.block(eta);
            m.middleCols(col, blk.cols()) = blk;
            col += blk.cols();
        }
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    out.residual = std::max(max_abs(m * m.transpose() - id), max_abs(m.transpose() * m - id));
    return out;
}

Freedom freedom_count(int mu) {
    if (mu < 1)
        throw std::invalid_argument("multiplicity must be at least 1, got " + std::to_string(mu));
    if (mu > 63)
        throw std::invalid_argument("multiplicity " + std::to_string(mu) + " overflows the phase count");
    const auto m = static_cast<std::uint64_t>(mu);
    return {(std::uint64_t{1} << (m - 1)) + 1, m * (m - 1) / 2};
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string table_to_json(const SdcTable &t) {
    nlohmann::ordered_json j;
    const auto &s = t.signature();
    j["signature"] = {{"f", s.f},   {"shape", s.lambda.to_string()},   {"f1", s.f1},
                      {"f2", s.f2}, {"shape1", s.lambda1.to_string()}, {"shape2", s.lambda2.to_string()}};
    j["x"] = t.x().to_string();
    j["multiplicity"] = t.multiplicity();
    j["unitarity_residual"] = t.unitarity_residual();
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < t.nodes().size(); ++k) {
        std::vector<double> row;
        for (int eta = 0; eta < t.multiplicity(); ++eta)
            row.push_back(t.coefficients()(static_cast<Eigen::Index>(k), eta));
        table[t.nodes()[k].to_string()] = row;
    }
    j["table"] = std::move(table);
    return j.dump(2);
}

std::string table_to_csv(const SdcTable &t) {
    std::ostringstream os;
    os << "w,w1,w2,eta,value\n";
    for (std::size_t k = 0; k < t.nodes().size(); ++k) {
        const auto &n = t.nodes()[k];
        for (int eta = 0; eta < t.multiplicity(); ++eta)
            os << csv_quote(n.w.to_string()) << ',' << csv_quote(n.pair.w1.to_string()) << ','
               << csv_quote(n.pair.w2.to_string()) << ',' << eta + 1 << ','
               << fmt17(t.coefficients()(static_cast<Eigen::Index>(k), eta)) << '\n';
    }
    return os.str();
}

} // namespace brauer
