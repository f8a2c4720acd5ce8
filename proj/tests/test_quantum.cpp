#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include "fpolab/json_io.hpp"
#include "fpolab/quantum.hpp"
#include "test_common.hpp"

using namespace fpolab;
using namespace fpolab::quantum;

TEST_CASE("gate constructors and lookups") {
    for (const char* n : {"identity", "id", "cnot", "swap", "cz", "t"}) {
        Mat u = named_gate(n);
        REQUIRE(u.rows() == 4);
        CHECK((u * u.adjoint() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <
              1e-12);
    }
    CHECK_THROWS_AS(named_gate("hadamard3000"), UnknownName);
    CHECK(named_gate("id") == named_gate("identity"));

    // CNOT flips the target exactly when the control is 1
    Mat c = cnot_gate();
    CHECK((c * kron_vec(ket1(), ket0()) - kron_vec(ket1(), ket1())).norm() <
          1e-12);
    CHECK((c * kron_vec(ket0(), ket0()) - kron_vec(ket0(), ket0())).norm() <
          1e-12);

    CHECK_THROWS_AS(require_two_qubit_unitary(Mat::Identity(2, 2)),
                    DimensionError);
    CHECK_THROWS_AS(require_two_qubit_unitary(Mat::Zero(4, 4)),
                    DimensionError);
}

TEST_CASE("pauli algebra helpers") {
    for (char a : {'I', 'X', 'Y', 'Z'}) {
        CHECK((pauli(a) * pauli(a) - Mat::Identity(2, 2)).norm() < 1e-12);
    }
    CHECK_THROWS_AS(pauli('Q'), UnknownName);

    auto d = pauli_decompose_2q(kron(pauli('X'), pauli('Z')));
    REQUIRE(d.has_value());
    CHECK(d->a == 'X');
    CHECK(d->b == 'Z');
    CHECK(format_phase(d->phase) == "+");

    auto neg = pauli_decompose_2q(-kron(pauli('Y'), pauli('Y')));
    REQUIRE(neg.has_value());
    CHECK(format_phase(neg->phase) == "-");

    Mat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CHECK_FALSE(pauli_decompose_2q(kron(h, pauli('I'))).has_value());

    CHECK(format_phase(cplx(0, 1)) == "(0.000+1.000j)");

    // the four maximally entangled vectors are orthonormal
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    cplx ip = bell_vec(i, j).dot(bell_vec(k, l));
                    double want = (i == k && j == l) ? 1.0 : 0.0;
                    CHECK(std::abs(ip - cplx(want, 0)) < 1e-12);
                }
}

TEST_CASE("reduced characteristic polynomials of the controlled flip") {
    const auto& polys = testutil::expected()["quantum"]["cnot_polys"];
    Mat u = cnot_gate();
    auto basis = default_evcond_basis();
    for (const auto& a : basis)
        for (const auto& b : basis) {
            auto p = reduced_char_poly(u, a.second, b.second);
            const auto& exp = polys[a.first + b.first];
            CAPTURE(a.first, b.first);
            for (int i = 0; i < 3; ++i)
                CHECK(p[i] == Catch::Approx(exp[i].get<double>()).margin(1e-12));
        }
    CHECK_THROWS_AS(reduced_char_poly(Mat::Identity(2, 2), ket0(), ket0()),
                    DimensionError);

    // polynomial product is plain convolution: (x^2 - x)^2
    auto sq = poly_product({1, -1, 0}, {1, -1, 0});
    CHECK(sq == std::array<double, 5>{1, -2, 1, 0, 0});
}

TEST_CASE("the factorization condition separates entanglers") {
    const auto& exp = testutil::expected()["quantum"];
    EvcondResult cn = evcond_check(cnot_gate(), default_evcond_basis());
    CHECK(cn.holds == exp["evcond_cnot_holds"].get<bool>());
    CHECK(cn.worst_dev ==
          Catch::Approx(exp["evcond_cnot_worst_dev"].get<double>())
              .margin(1e-9));
    REQUIRE(cn.has_witness);
    for (int i = 0; i < 4; ++i)
        CHECK(cn.witness[i] == exp["evcond_cnot_witness"][i].get<std::string>());

    EvcondResult id = evcond_check(named_gate("identity"),
                                   default_evcond_basis());
    CHECK(id.holds == exp["evcond_identity_holds"].get<bool>());
    CHECK(id.worst_dev ==
          Catch::Approx(exp["evcond_identity_worst_dev"].get<double>())
              .margin(1e-12));

    // a product of local unitaries also factorizes
    CHECK(evcond_check(named_gate("t"), default_evcond_basis()).holds);

    CHECK_THROWS_AS(evcond_check(Mat::Identity(2, 2), default_evcond_basis()),
                    DimensionError);
}

TEST_CASE("the violating output is maximally mixed on one side") {
    const auto& exp = testutil::expected()["quantum"]["reduced_eigs_plus0"];
    Vec out = cnot_gate() * kron_vec(ket_plus(), ket0());
    Mat rho = out * out.adjoint();
    Mat red = Mat::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (int b = 0; b < 2; ++b) red(a, c) += rho(2 * a + b, 2 * c + b);
    Eigen::SelfAdjointEigenSolver<Mat> es(red);
    REQUIRE(es.info() == Eigen::Success);
    for (int i = 0; i < 2; ++i) {
        CHECK(es.eigenvalues()[i] ==
              Catch::Approx(exp[i].get<double>()).margin(1e-9));
        CHECK(es.eigenvalues()[i] == Catch::Approx(0.5).margin(1e-9));
    }
}

TEST_CASE("conjugation tableaux of the stock gates") {
    const auto& exp = testutil::expected()["quantum"]["tableau"];
    for (const char* g : {"cnot", "swap", "cz"}) {
        CliffordResult r = is_clifford_22(named_gate(g));
        CAPTURE(g);
        REQUIRE(r.clifford);
        REQUIRE(r.tableau.size() == 4);
        for (const auto& [gen, img] : exp[g].items())
            CHECK(r.tableau.at(gen) == img.get<std::string>());
    }

    CliffordResult t = is_clifford_22(named_gate("t"));
    CHECK(t.clifford ==
          testutil::expected()["quantum"]["t_gate_clifford"].get<bool>());
    CHECK(t.witness == "XI");  // the first generator already escapes
    CHECK(t.tableau.empty());
}

TEST_CASE("the length-one protocol reproduces its gate exactly") {
    const auto& exp = testutil::expected()["quantum"]["zigzag1_choi_dist"];
    for (const char* g : {"identity", "cnot", "swap", "cz"}) {
        Mat u = named_gate(g);
        auto kraus = zigzag1_kraus(u);
        CAPTURE(g);
        CHECK(kraus.size() == 16);
        // the sixteen outcome branches form a channel
        Mat sum = Mat::Zero(4, 4);
        for (const auto& k : kraus) sum += k.adjoint() * k;
        CHECK((sum - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        double dist = zigzag1_choi_distance(u);
        CHECK(dist < 1e-9);
        CHECK(dist == Catch::Approx(exp[g].get<double>()).margin(1e-12));
    }
    // non-Clifford corrections cannot be teleported this way
    CHECK_THROWS_AS(zigzag1_kraus(named_gate("t")), NotCliffordError);
}

TEST_CASE("choi matrices distinguish channels") {
    Mat a = choi({named_gate("cnot")});
    Mat b = choi({named_gate("swap")});
    CHECK(choi_distance(a, a) == 0.0);
    CHECK(choi_distance(a, b) > 0.1);
    // trace-preserving channels have trace-d choi matrices
    CHECK(std::abs(a.trace().real() - 4.0) < 1e-10);
}

TEST_CASE("gates round-trip through their JSON form") {
    Mat u = named_gate("cz");
    json j = gate_to_json(u);
    Mat back = gate_from_json(j);
    CHECK((u - back).cwiseAbs().maxCoeff() < 1e-15);

    json bad = j;
    bad["matrix"][0].erase(0);  // ragged row
    CHECK_THROWS_AS(gate_from_json(bad), DimensionError);
}
