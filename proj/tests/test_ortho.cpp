#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "brauer/pipeline.hpp"
#include "json.hpp"

using namespace brauer;

namespace {

RationalParam X(const char *s) { return RationalParam(parse_rational(s)); }

double max_abs(const Eigen::MatrixXd &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

bool has_negative_zero(const Eigen::MatrixXd &m) {
    return std::any_of(m.data(), m.data() + m.size(), [](double v) { return v == 0 && std::signbit(v); });
}

SubductionGrid three_grid() { return build_grid({3, Shape({1}), 2, 1, Shape{}, Shape({1})}); }

} // namespace

TEST_CASE("gram on a single vector") {
    Eigen::MatrixXd chi(2, 1);
    chi << 1, 1;
    const auto g = gram(chi, 2, 1);
    CHECK(g.tau(0, 0) == doctest::Approx(1.0));
    CHECK(g.sylvester(0, 0) == doctest::Approx(1.0));

    Eigen::MatrixXd raw(3, 1);
    raw << 3, 0, 4;
    const auto h = gram(raw, 2, 3);
    const Eigen::MatrixXd t = orthonormalize(raw, h);
    CHECK(t.col(0).norm() == doctest::Approx(std::sqrt(6.0)));
    CHECK(h.residual() <= 1e-14);
}

TEST_CASE("gram on a synthetic pair") {
    // χᵀχ / (d1 d2) = diag(2, 1/2) with d1 d2 = 2.
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(4, 2);
    chi(0, 0) = 2;
    chi(1, 1) = 1;
    const auto g = gram(chi, 1, 2);
    CHECK(g.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(g.eigenvalues(1) == doctest::Approx(0.5));
    CHECK(g.sylvester(0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(g.sylvester(1, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(g.sylvester(0, 1)) <= 1e-15);
    CHECK(g.residual() <= 1e-14);
    const Eigen::MatrixXd t = orthonormalize(chi, g);
    CHECK(max_abs(t.transpose() * t - 2 * Eigen::MatrixXd::Identity(2, 2)) <= 1e-14);
}

TEST_CASE("gram gauge and failures") {
    Eigen::MatrixXd chi(3, 2);
    chi << 1, 2, 0, 1, 1, 0;
    Eigen::MatrixXd rot(2, 2);
    const double c = std::cos(0.3), s = std::sin(0.3);
    rot << c, -s, s, c;
    const auto g = gram(chi, 1, 1, rot);
    CHECK(g.chosen_O == rot);
    CHECK(g.residual() <= 1e-14);
    for (Eigen::Index k = 0; k < 2; ++k) {
        Eigen::Index lead = 0;
        while (std::abs(g.eigenvectors(lead, k)) <= 1e-12)
            ++lead;
        CHECK(g.eigenvectors(lead, k) > 0);
    }
    CHECK(g.eigenvalues(0) >= g.eigenvalues(1));
    CHECK_THROWS_AS(gram(chi, 1, 1, Eigen::MatrixXd::Identity(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(gram(Eigen::MatrixXd(3, 0), 1, 1), std::invalid_argument);
    Eigen::MatrixXd dep(3, 2);
    dep << 1, 2, 1, 2, 0, 0;
    CHECK_THROWS_AS(gram(dep, 1, 1), std::runtime_error);
}

TEST_CASE("phase fixing") {
    const auto grid = three_grid();
    Eigen::MatrixXd m(3, 2);
    m << -0.7, 0.7, 0.1, 0.1, 0.7, -0.7;
    const auto t = fix_phases(m, grid, X("5"));
    CHECK(t.coefficients()(0, 0) == 0.7);
    CHECK(t.coefficients()(2, 0) == -0.7);
    CHECK(t.coefficients()(0, 1) == 0.7);
    CHECK(t.coefficients()(1, 1) == 0.1);

    Eigen::MatrixXd noise(3, 1);
    noise << -1e-12, -0.5, 1.0;
    CHECK(fix_phases(noise, grid, X("5")).coefficients()(1, 0) == 0.5);

    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 1);
    CHECK_THROWS_AS(fix_phases(zero, grid, X("5")), std::runtime_error);
}

TEST_CASE("freedom count") {
    CHECK(freedom_count(1).phases == 2);
    CHECK(freedom_count(1).continuous == 0);
    CHECK(freedom_count(2).phases == 3);
    CHECK(freedom_count(2).continuous == 1);
    CHECK(freedom_count(3).phases == 5);
    CHECK(freedom_count(3).continuous == 3);
    CHECK(freedom_count(5).phases == 17);
    CHECK(freedom_count(5).continuous == 10);
    CHECK_THROWS_AS(freedom_count(0), std::invalid_argument);
}

TEST_CASE("pipeline tables on every small signature") {
    for (const char *xs : {"7/2", "5", "6"})
        for (int f = 2; f <= 4; ++f)
            for (int f1 = 1; f1 < f; ++f1)
                for (const auto &l : upsilon(f)) {
                    std::vector<SdcTable> tables;
                    for (const auto &l1 : upsilon(f1))
                        for (const auto &l2 : upsilon(f - f1)) {
                            const GridSignature sig{f, l, f1, f - f1, l1, l2};
                            CAPTURE(sig.to_string());
                            const auto r = run_pipeline(sig, X(xs));
                            CHECK(r.passed());
                            CHECK(r.table.unitarity_residual() <= 1e-8);
                            CHECK(r.block_diagonal <= 1e-8);
                            CHECK(!has_negative_zero(r.table.coefficients()));
                            for (int eta = 0; eta < r.table.multiplicity(); ++eta) {
                                const auto lead = leading_entries(r.table.coefficients())[static_cast<std::size_t>(eta)];
                                REQUIRE(lead >= 0);
                                CHECK(r.table.coefficients()(lead, eta) > 0);
                            }
                            if (r.table.multiplicity())
                                tables.push_back(r.table);
                        }
                    const auto u = sweep_unitarity(tables);
                    CHECK(u.columns == u.dim);
                    CHECK(u.residual <= 1e-8);
                }
}

TEST_CASE("sweep of a three-site reduction") {
    std::vector<SdcTable> tables;
    for (const auto &l1 : upsilon(2)) {
        const auto r = run_pipeline({3, Shape({1}), 2, 1, l1, Shape({1})}, X("7/2"));
        REQUIRE(r.table.multiplicity() == 1);
        tables.push_back(r.table);
    }
    const auto u = sweep_unitarity(tables);
    CHECK(u.dim == 3);
    CHECK(u.columns == 3);
    CHECK(u.residual <= 1e-12);
    tables.pop_back();
    CHECK(std::isinf(sweep_unitarity(tables).residual));
}

TEST_CASE("multiplicity two") {
    const auto r = run_pipeline({5, Shape({2, 1}), 3, 2, Shape({2, 1}), Shape({2})}, X("6"));
    CHECK(r.basis.multiplicity == 2);
    CHECK(r.passed());
    REQUIRE(r.gram.has_value());
    CHECK(r.gram->residual() <= 1e-10);
    CHECK(max_abs(r.table.coefficients().transpose() * r.table.coefficients() -
                  static_cast<double>(r.table.dim1() * r.table.dim2()) * Eigen::MatrixXd::Identity(2, 2)) <= 1e-10);
}

TEST_CASE("serialization is deterministic") {
    const GridSignature sig{4, Shape({2}), 2, 2, Shape{}, Shape({2})};
    const auto a = run_pipeline(sig, X("7/2"));
    const auto b = run_pipeline(sig, X("7/2"));
    CHECK(table_to_json(a.table) == table_to_json(b.table));
    CHECK(table_to_csv(a.table) == table_to_csv(b.table));
    CHECK(result_to_json(a) == result_to_json(b));

    const auto csv = table_to_csv(a.table);
    CHECK(csv.rfind("w,w1,w2,eta,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(1 + a.table.nodes().size() * static_cast<std::size_t>(a.table.multiplicity())));
    CHECK(csv.find("\"(1,1,-1,1)\",\"(1,-1)\",\"(1,1)\",1,") != std::string::npos);

    const auto j = nlohmann::json::parse(table_to_json(a.table));
    CHECK(j["multiplicity"] == a.table.multiplicity());
    CHECK(j["table"].size() == a.table.nodes().size());
    const auto key = a.table.nodes()[0].to_string();
    CHECK(j["table"][key][0].get<double>() == a.table.coefficients()(0, 0));
}
