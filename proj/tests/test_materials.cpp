// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <random>

#include "piezoq/materials.hpp"

using namespace piezoq;

namespace {

// Independent oracle: rotate the stiffness as a full rank-4 tensor with index
// loops, bypassing the Bond-matrix path under test.
Eigen::Matrix<double, 6, 6> rotate_rank4_bruteforce(const Eigen::Matrix<double, 6, 6>& c,
                                                    const Eigen::Matrix3d& a) {
    double t[3][3][3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) t[i][j][k][l] = c(voigt::index(i, j), voigt::index(k, l));
    double r[3][3][3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double s = 0.0;
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                            for (int u = 0; u < 3; ++u)
                                for (int v = 0; v < 3; ++v)
                                    s += a(i, p) * a(j, q) * a(k, u) * a(l, v) * t[p][q][u][v];
                    r[i][j][k][l] = s;
                }
    Eigen::Matrix<double, 6, 6> out;
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J)
            out(I, J) = r[voigt::kPairs[I][0]][voigt::kPairs[I][1]][voigt::kPairs[J][0]][voigt::kPairs[J][1]];
    return out;
}

Eigen::Matrix<double, 3, 6> rotate_rank3_bruteforce(const Eigen::Matrix<double, 3, 6>& e,
                                                    const Eigen::Matrix3d& a) {
    double t[3][3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) t[i][j][k] = e(i, voigt::index(j, k));
    double r[3][3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0.0;
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        for (int u = 0; u < 3; ++u) s += a(i, p) * a(j, q) * a(k, u) * t[p][q][u];
                r[i][j][k] = s;
            }
    Eigen::Matrix<double, 3, 6> out;
    for (int i = 0; i < 3; ++i)
        for (int J = 0; J < 6; ++J) out(i, J) = r[i][voigt::kPairs[J][0]][voigt::kPairs[J][1]];
    return out;
}

// A made-up but physically valid transversely isotropic piezoelectric;
// exercises every tensor slot without claiming any real material's numbers.
Material synthetic_piezo() {
    Material m;
    m.name = "synthetic-piezo";
    m.cls = MaterialClass::Piezoelectric;
    m.density = 4700.0;
    m.stiffness_cE.setZero();
    const double c11 = 170e9, c12 = 70e9, c13 = 65e9, c33 = 190e9, c44 = 45e9;
    m.stiffness_cE << c11, c12, c13, 0, 0, 0,
                      c12, c11, c13, 0, 0, 0,
                      c13, c13, c33, 0, 0, 0,
                      0, 0, 0, c44, 0, 0,
                      0, 0, 0, 0, c44, 0,
                      0, 0, 0, 0, 0, (c11 - c12) / 2.0;
    m.piezo_e.setZero();
    m.piezo_e(2, 0) = -0.6;
    m.piezo_e(2, 1) = -0.6;
    m.piezo_e(2, 2) = 1.5;
    m.piezo_e(0, 4) = -0.48;
    m.piezo_e(1, 3) = -0.48;
    m.permittivity_epsS = 9.0 * kVacuumPermittivity * Eigen::Matrix3d::Identity();
    m.validate();
    return m;
}

Material isotropic_test_solid() {
    return Material::isotropic("isotropic-test", MaterialClass::Piezoelectric, 5000.0, 50e9, 25e9, 1.0);
}

EulerAngles random_angles(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    return EulerAngles{u(rng), std::abs(u(rng)) / 2.0, u(rng)};
}

std::string write_temp(const std::string& text) {
    static int counter = 0;
    std::string path = "materials_test_" + std::to_string(counter++) + ".mat";
    std::ofstream out(path);
    out << text;
    return path;
}

const char* kIsotropicFile =
    "# isotropic test solid (Lame lambda = 50 GPa, mu = 25 GPa)\n"
    "name = isotropic-test\n"
    "class = piezoelectric\n"
    "density_kg_m3 = 5000\n"
    "cE_GPa = 100 50 50 0 0 0\n"
    "        50 100 50 0 0 0\n"
    "        50 50 100 0 0 0\n"
    "        0 0 0 25 0 0\n"
    "        0 0 0 0 25 0\n"
    "        0 0 0 0 0 25\n"
    "e_C_m2 = 0 0 0 0 0 0  0 0 0 0 0 0  0 0 0 0 0 0\n"
    "epsS_relative = 1 0 0  0 1 0  0 0 1\n";

} // namespace

TEST_CASE("load_material parses the isotropic test file") {
    auto path = write_temp(kIsotropicFile);
    Material m = load_material(path);
    std::remove(path.c_str());
    CHECK(m.name == "isotropic-test");
    CHECK(m.density == 5000.0);
    CHECK(m.stiffness_cE(0, 0) == Catch::Approx(100e9));
    CHECK(m.stiffness_cE(3, 3) == Catch::Approx(25e9));
    CHECK(m.stiffness_cE(0, 1) == Catch::Approx(50e9));
    CHECK(m.piezo_e.cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.permittivity_epsS(0, 0) == Catch::Approx(kVacuumPermittivity));
}

TEST_CASE("load_material rejects asymmetric stiffness") {
    std::string text = kIsotropicFile;
    auto pos = text.find("50 100 50");
    text.replace(pos, 9, "51 100 50"); // break c(1,0) only
    auto path = write_temp(text);
    CHECK_THROWS_AS(load_material(path), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("load_material rejects metal with nonzero piezo coupling") {
    std::string text = kIsotropicFile;
    text.replace(text.find("class = piezoelectric"), 21, "class = metal        ");
    text.replace(text.find("e_C_m2 = 0"), 10, "e_C_m2 = 1");
    auto path = write_temp(text);
    CHECK_THROWS_AS(load_material(path), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("load_material rejects nonpositive density") {
    std::string text = kIsotropicFile;
    text.replace(text.find("density_kg_m3 = 5000"), 20, "density_kg_m3 = -1  ");
    auto path = write_temp(text);
    CHECK_THROWS_AS(load_material(path), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("identity rotation returns the material unchanged") {
    Material m = synthetic_piezo();
    Material r = rotate_material(m, EulerAngles{0, 0, 0});
    CHECK((r.stiffness_cE - m.stiffness_cE).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.piezo_e - m.piezo_e).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.permittivity_epsS - m.permittivity_epsS).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("isotropic stiffness is rotation-invariant") {
    Material m = isotropic_test_solid();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Material r = rotate_material(m, random_angles(rng));
        CHECK((r.stiffness_cE - m.stiffness_cE).cwiseAbs().maxCoeff() <
              1e-12 * m.stiffness_cE.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("Bond rotation matches brute-force tensor rotation") {
    Material m = synthetic_piezo();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        EulerAngles a = random_angles(rng);
        Eigen::Matrix3d rot = rotation_matrix(a);
        Material r = rotate_material(m, a);
        auto c_ref = rotate_rank4_bruteforce(m.stiffness_cE, rot);
        auto e_ref = rotate_rank3_bruteforce(m.piezo_e, rot);
        CHECK((r.stiffness_cE - c_ref).cwiseAbs().maxCoeff() < 1e-9 * c_ref.cwiseAbs().maxCoeff());
        CHECK((r.piezo_e - e_ref).cwiseAbs().maxCoeff() < 1e-9 * e_ref.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("rotation composition: rotate(A) then rotate(B) == rotate(B*A)") {
    Material m = synthetic_piezo();
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        EulerAngles a = random_angles(rng), b = random_angles(rng);
        Material two_step = rotate_material(rotate_material(m, a), b);
        Eigen::Matrix3d composed = rotation_matrix(b) * rotation_matrix(a);
        Material one_step = rotate_material(m, euler_from_matrix(composed));
        const double scale = m.stiffness_cE.cwiseAbs().maxCoeff();
        CHECK((two_step.stiffness_cE - one_step.stiffness_cE).cwiseAbs().maxCoeff() < 1e-10 * scale);
        CHECK((two_step.piezo_e - one_step.piezo_e).cwiseAbs().maxCoeff() <
              1e-10 * std::max(1.0, m.piezo_e.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("rotation preserves the Mandel eigenvalue spectrum") {
    Material m = synthetic_piezo();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(m.stiffness_mandel());
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Material r = rotate_material(m, random_angles(rng));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(r.stiffness_mandel());
        for (int i = 0; i < 6; ++i)
            CHECK(es1.eigenvalues()(i) == Catch::Approx(es0.eigenvalues()(i)).epsilon(1e-9));
    }
}

TEST_CASE("rotation round trip: rotate then rotate by inverse") {
    Material m = synthetic_piezo();
    std::mt19937 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        EulerAngles a = random_angles(rng);
        Eigen::Matrix3d inv = rotation_matrix(a).transpose();
        Material back = rotate_material(rotate_material(m, a), euler_from_matrix(inv));
        const double scale = m.stiffness_cE.cwiseAbs().maxCoeff();
        CHECK((back.stiffness_cE - m.stiffness_cE).cwiseAbs().maxCoeff() < 1e-10 * scale);
        CHECK((back.permittivity_epsS - m.permittivity_epsS).cwiseAbs().maxCoeff() <
              1e-10 * m.permittivity_epsS.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("strain energy density stays positive under rotation") {
    Material m = synthetic_piezo();
    std::mt19937 rng(23);
    std::normal_distribution<double> nd;
    Material r = rotate_material(m, EulerAngles{0.4, 0.7, -1.1});
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::Matrix<double, 6, 1> s;
        for (int i = 0; i < 6; ++i) s(i) = nd(rng);
        if (s.norm() == 0.0) continue;
        CHECK(0.5 * s.dot(r.stiffness_cE * s) > 0.0);
    }
}

TEST_CASE("euler_from_matrix round trips random rotations") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Matrix3d r = rotation_matrix(random_angles(rng));
        Eigen::Matrix3d rr = rotation_matrix(euler_from_matrix(r));
        CHECK((r - rr).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cut_to_euler base case X-cut YZ0") {
    Eigen::Matrix3d r = rotation_matrix(cut_to_euler("X-cut YZ0\xc2\xb0"));
    Eigen::Matrix3d expect;
    expect << 0, 1, 0,
              0, 0, 1,
              1, 0, 0;
    CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cut_to_euler X-cut YZ30 is base plus in-plane rotation") {
    Eigen::Matrix3d base = rotation_matrix(cut_to_euler("X-cut YZ0"));
    Eigen::Matrix3d r30 = rotation_matrix(cut_to_euler("X-cut YZ30"));
    // 30 degrees applied in the device plane (about device z, Y toward Z)
    const double t = 30.0 * M_PI / 180.0;
    Eigen::Matrix3d inplane;
    inplane << std::cos(t), std::sin(t), 0,
               -std::sin(t), std::cos(t), 0,
               0, 0, 1;
    CHECK((r30 - inplane * base).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cut_to_euler accepts Y and Z cuts and rejects junk") {
    CHECK_NOTHROW(cut_to_euler("Y-cut ZX15"));
    CHECK_NOTHROW(cut_to_euler("Z-cut XY45"));
    CHECK_NOTHROW(cut_to_euler("X-cut YZ170"));
    CHECK_THROWS_AS(cut_to_euler("Q-cut 17"), ValidationError);
    CHECK_THROWS_AS(cut_to_euler("X-cut XZ10"), ValidationError);
    CHECK_THROWS_AS(cut_to_euler("X-cut YZ"), ValidationError);
    CHECK_THROWS_AS(cut_to_euler(""), ValidationError);
}
