// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef PIEZOQ_MATERIALS_HPP
#define PIEZOQ_MATERIALS_HPP

#include <Eigen/Dense>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "piezoq/errors.hpp"
#include "piezoq/keyval.hpp"

namespace piezoq {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m

enum class MaterialClass { Piezoelectric, Metal };

// Euler angles, intrinsic Z-X-Z convention: R = Rz(phi) * Rx(theta) * Rz(psi).
// R maps vector components from the crystal frame to the device frame
// (device x = propagation, y = aperture, z = plate normal).
struct EulerAngles {
    double phi = 0.0;
    double theta = 0.0;
    double psi = 0.0;
};

inline Eigen::Matrix3d rotation_z(double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0.0, std::sin(t), std::cos(t), 0.0, 0.0, 0.0, 1.0;
    return r;
}

inline Eigen::Matrix3d rotation_x(double t) {
    Eigen::Matrix3d r;
    r << 1.0, 0.0, 0.0, 0.0, std::cos(t), -std::sin(t), 0.0, std::sin(t), std::cos(t);
    return r;
}

inline Eigen::Matrix3d rotation_matrix(const EulerAngles& a) {
    if (!std::isfinite(a.phi) || !std::isfinite(a.theta) || !std::isfinite(a.psi))
        throw ValidationError("Euler angles must be finite");
    return rotation_z(a.phi) * rotation_x(a.theta) * rotation_z(a.psi);
}

// Inverse of rotation_matrix: recovers a Z-X-Z triple from a rotation matrix.
// theta in [0, pi]; at the theta = 0 / pi singularity psi is fixed to 0.
inline EulerAngles euler_from_matrix(const Eigen::Matrix3d& r) {
    EulerAngles a;
    const double c = std::clamp(r(2, 2), -1.0, 1.0);
    a.theta = std::acos(c);
    if (std::abs(std::sin(a.theta)) > 1e-12) {
        a.phi = std::atan2(r(0, 2), -r(1, 2));
        a.psi = std::atan2(r(2, 0), r(2, 1));
    } else {
        a.psi = 0.0;
        a.phi = std::atan2(r(1, 0), r(0, 0));
    }
    return a;
}

namespace voigt {
// Voigt pair map: 1->(1,1), 2->(2,2), 3->(3,3), 4->(2,3), 5->(1,3), 6->(1,2).
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {{{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};

// Voigt index of an (i,j) tensor pair.
inline constexpr int index(int i, int j) {
    if (i == j) return i;
    return 6 - i - j + 2; // (1,2)/(2,1)->3, (0,2)/(2,0)->4, (0,1)/(1,0)->5
}
} // namespace voigt

// 6x6 Bond matrix transforming Voigt stress: T' = M T for x' = a x.
inline Eigen::Matrix<double, 6, 6> bond_stress_matrix(const Eigen::Matrix3d& a) {
    Eigen::Matrix<double, 6, 6> m;
    for (int I = 0; I < 6; ++I) {
        const int i = voigt::kPairs[I][0], j = voigt::kPairs[I][1];
        for (int J = 0; J < 6; ++J) {
            const int k = voigt::kPairs[J][0], l = voigt::kPairs[J][1];
            m(I, J) = a(i, k) * a(j, l) + (k != l ? a(i, l) * a(j, k) : 0.0);
        }
    }
    return m;
}

struct Material {
    std::string name;
    MaterialClass cls = MaterialClass::Piezoelectric;
    double density = 0.0;                          // kg/m^3
    Eigen::Matrix<double, 6, 6> stiffness_cE;      // Pa, Voigt, engineering shear strain
    Eigen::Matrix<double, 3, 6> piezo_e;           // C/m^2 (zero for metals)
    Eigen::Matrix3d permittivity_epsS;             // F/m

    static Material isotropic(std::string name, MaterialClass cls, double density,
                              double lame_lambda, double lame_mu, double eps_relative = 1.0) {
        Material m;
        m.name = std::move(name);
        m.cls = cls;
        m.density = density;
        m.stiffness_cE.setZero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m.stiffness_cE(i, j) = (i == j) ? lame_lambda + 2.0 * lame_mu : lame_lambda;
        for (int i = 3; i < 6; ++i) m.stiffness_cE(i, i) = lame_mu;
        m.piezo_e.setZero();
        m.permittivity_epsS = eps_relative * kVacuumPermittivity * Eigen::Matrix3d::Identity();
        m.validate();
        return m;
    }

    void validate() const {
        if (!(density > 0.0)) throw ValidationError("material '" + name + "': density must be > 0");
        check_spd(stiffness_cE, "stiffness_cE");
        check_spd(permittivity_epsS, "permittivity_epsS");
        if (!stiffness_cE.allFinite() || !piezo_e.allFinite() || !permittivity_epsS.allFinite())
            throw ValidationError("material '" + name + "': non-finite tensor entry");
        if (cls == MaterialClass::Metal && piezo_e.cwiseAbs().maxCoeff() != 0.0)
            throw ValidationError("material '" + name + "': metals must have exactly zero piezo_e");
    }

    // Stiffness in Mandel (orthonormal) form; rotation acts orthogonally on it,
    // so its eigenvalue spectrum is rotation-invariant.
    Eigen::Matrix<double, 6, 6> stiffness_mandel() const {
        Eigen::Matrix<double, 6, 6> m = stiffness_cE;
        const double r2 = std::sqrt(2.0);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (i >= 3) m(i, j) *= r2;
                if (j >= 3) m(i, j) *= r2;
            }
        return m;
    }

private:
    template <typename M>
    static void check_spd(const M& mat, const char* what) {
        const double scale = mat.cwiseAbs().maxCoeff();
        if ((mat - mat.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
            throw ValidationError(std::string(what) + " is not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
        if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
            throw ValidationError(std::string(what) + " is not positive definite");
    }
};

// Rotates all constitutive tensors into the frame given by `angles`:
// stiffness via the Bond matrix (rank-4), piezo coupling as rank-3,
// permittivity as rank-2. Density is a scalar.
inline Material rotate_material(const Material& m, const EulerAngles& angles) {
    const Eigen::Matrix3d a = rotation_matrix(angles);
    const Eigen::Matrix<double, 6, 6> bond = bond_stress_matrix(a);
    Material out = m;
    out.stiffness_cE = bond * m.stiffness_cE * bond.transpose();
    out.stiffness_cE = 0.5 * (out.stiffness_cE + out.stiffness_cE.transpose()).eval();
    out.piezo_e = a * m.piezo_e * bond.transpose();
    out.permittivity_epsS = a * m.permittivity_epsS * a.transpose();
    out.permittivity_epsS = 0.5 * (out.permittivity_epsS + out.permittivity_epsS.transpose()).eval();
    out.validate();
    return out;
}

// Parses IEEE-style cut labels of the form "X-cut YZ170" (degree sign optional).
// Convention: device z (plate normal) = first axis; device x (propagation) =
// second axis rotated by the angle toward the third axis; device y completes
// the right-handed frame. "X-cut YZ0" therefore maps crystal (Y, Z, X) onto
// device (x, y, z).
inline EulerAngles cut_to_euler(const std::string& cut_label) {
    auto axis_index = [](char c) -> int {
        switch (std::toupper(static_cast<unsigned char>(c))) {
            case 'X': return 0;
            case 'Y': return 1;
            case 'Z': return 2;
            default: return -1;
        }
    };
    // strip whitespace and a trailing degree sign (UTF-8 b0 after c2)
    std::string s;
    for (char c : cut_label)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

    const auto fail = [&] { throw ValidationError("unparseable cut label: '" + cut_label + "'"); };
    if (s.size() < 7) fail();
    const int normal = axis_index(s[0]);
    if (normal < 0) fail();
    std::string cut_word = s.substr(1, 4);
    for (auto& c : cut_word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (cut_word != "-cut") fail();
    const int ax_b = axis_index(s[5]);
    const int ax_c = axis_index(s[6]);
    if (ax_b < 0 || ax_c < 0 || ax_b == ax_c || ax_b == normal || ax_c == normal) fail();
    std::string angle_str = s.substr(7);
    while (!angle_str.empty() &&
           (static_cast<unsigned char>(angle_str.back()) == 0xB0 ||
            static_cast<unsigned char>(angle_str.back()) == 0xC2))
        angle_str.pop_back();
    double deg = 0.0;
    try {
        size_t pos = 0;
        deg = std::stod(angle_str, &pos);
        if (pos != angle_str.size()) fail();
    } catch (const std::exception&) {
        fail();
    }

    const double t = deg * M_PI / 180.0;
    Eigen::Vector3d eb = Eigen::Vector3d::Unit(ax_b);
    Eigen::Vector3d ec = Eigen::Vector3d::Unit(ax_c);
    Eigen::Vector3d en = Eigen::Vector3d::Unit(normal);
    Eigen::Matrix3d r; // rows = device axes expressed in crystal coordinates
    r.row(0) = (std::cos(t) * eb + std::sin(t) * ec).transpose();
    r.row(2) = en.transpose();
    r.row(1) = en.cross(r.row(0).transpose()).transpose();
    return euler_from_matrix(r);
}

// Reads a material file (plain-text key-value, see README for the schema):
// name, class, density_kg_m3, cE_GPa (36, row-major), e_C_m2 (18),
// epsS_relative (9).
inline Material load_material(const std::string& path) {
    const KeyValueFile kv = KeyValueFile::parse_file(path);
    Material m;
    m.name = kv.require("name");
    const std::string cls = kv.require("class");
    if (cls == "piezoelectric")
        m.cls = MaterialClass::Piezoelectric;
    else if (cls == "metal")
        m.cls = MaterialClass::Metal;
    else
        throw ValidationError(path + ": class must be 'piezoelectric' or 'metal', got '" + cls + "'");
    m.density = kv.get_double("density_kg_m3");

    const auto c = kv.get_doubles("cE_GPa");
    if (c.size() != 36) throw ValidationError(path + ": cE_GPa needs 36 numbers, got " + std::to_string(c.size()));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.stiffness_cE(i, j) = c[6 * i + j] * 1e9;

    const auto e = kv.get_doubles("e_C_m2");
    if (e.size() != 18) throw ValidationError(path + ": e_C_m2 needs 18 numbers, got " + std::to_string(e.size()));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) m.piezo_e(i, j) = e[6 * i + j];

    const auto p = kv.get_doubles("epsS_relative");
    if (p.size() != 9) throw ValidationError(path + ": epsS_relative needs 9 numbers, got " + std::to_string(p.size()));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.permittivity_epsS(i, j) = p[3 * i + j] * kVacuumPermittivity;

    try {
        m.validate();
    } catch (const ValidationError& err) {
        throw ValidationError(path + ": " + err.what());
    }
    return m;
}

} // namespace piezoq

#endif
