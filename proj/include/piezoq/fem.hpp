// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef PIEZOQ_FEM_HPP
#define PIEZOQ_FEM_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "piezoq/errors.hpp"
#include "piezoq/unit_cell.hpp"

namespace piezoq {

// A solved unit-cell eigenmode. Displacement and potential are nodal fields at
// an arbitrary modal scale; eta is the piezo fraction of elastic strain energy.
struct ModeSolution {
    double omega = 0.0;     // rad/s
    double frequency = 0.0; // Hz
    std::vector<std::array<double, 3>> displacement; // per node (u_x, u_y, u_z)
    std::vector<double> potential;                   // per node, 0 outside piezo
    double energy_piezo = 0.0; // modal scale, J
    double energy_metal = 0.0;
    double eta = 1.0;
    double modal_coupling = 0.0; // electrical excitability score, arbitrary units
};

// Dense blocks of the unconstrained coupled system.
//
// Sign convention: K_pp is assembled positive definite (dielectric energy), so
// eliminating the potential ADDS the piezoelectric stiffening
// K* = K_uu + K_up K_pp^-1 K_up^T. Displacements carry three components per
// node everywhere (d/dy = 0 but u_y retained, required for SH modes); the
// potential lives on piezo nodes only, with the metal a perfect conductor.
struct AssembledSystem {
    Eigen::MatrixXd K_uu;
    Eigen::MatrixXd K_up;
    Eigen::MatrixXd K_pp;
    Eigen::MatrixXd M;
    std::vector<int> phi_index; // node -> potential dof, -1 where absent
    int n_u = 0;
    int n_p = 0;
};

namespace detail {

inline constexpr double kGaussPoint = 0.5773502691896257; // 1/sqrt(3)

struct QuadPoint {
    double xi, eta;
};

inline const std::array<QuadPoint, 4>& gauss2x2() {
    static const std::array<QuadPoint, 4> pts = {{{-kGaussPoint, -kGaussPoint},
                                                  {kGaussPoint, -kGaussPoint},
                                                  {kGaussPoint, kGaussPoint},
                                                  {-kGaussPoint, kGaussPoint}}};
    return pts;
}

// Bilinear quad shape values and physical-space gradients at one quadrature
// point; returns the Jacobian determinant.
inline double quad_shape(const Mesh& mesh, const std::array<int, 4>& conn, double xi, double eta,
                         std::array<double, 4>& n, std::array<double, 4>& dn_dx,
                         std::array<double, 4>& dn_dz) {
    const std::array<double, 4> xi_a = {-1, 1, 1, -1}, eta_a = {-1, -1, 1, 1};
    std::array<double, 4> dxi, deta;
    for (int a = 0; a < 4; ++a) {
        n[a] = 0.25 * (1 + xi * xi_a[a]) * (1 + eta * eta_a[a]);
        dxi[a] = 0.25 * xi_a[a] * (1 + eta * eta_a[a]);
        deta[a] = 0.25 * eta_a[a] * (1 + xi * xi_a[a]);
    }
    double j11 = 0, j12 = 0, j21 = 0, j22 = 0; // d(x,z)/d(xi,eta)
    for (int a = 0; a < 4; ++a) {
        j11 += dxi[a] * mesh.x[conn[a]];
        j12 += deta[a] * mesh.x[conn[a]];
        j21 += dxi[a] * mesh.z[conn[a]];
        j22 += deta[a] * mesh.z[conn[a]];
    }
    const double det = j11 * j22 - j12 * j21;
    if (det <= 0.0) throw SolveError("singular element Jacobian");
    for (int a = 0; a < 4; ++a) {
        dn_dx[a] = (j22 * dxi[a] - j21 * deta[a]) / det;
        dn_dz[a] = (-j12 * dxi[a] + j11 * deta[a]) / det;
    }
    return det;
}

// Voigt strain-displacement matrix for the 2.5D reduction (d/dy = 0):
// S = (du_x/dx, 0, du_z/dz, du_y/dz, du_x/dz + du_z/dx, du_y/dx).
inline Eigen::Matrix<double, 6, 12> strain_matrix(const std::array<double, 4>& dn_dx,
                                                  const std::array<double, 4>& dn_dz) {
    Eigen::Matrix<double, 6, 12> b = Eigen::Matrix<double, 6, 12>::Zero();
    for (int a = 0; a < 4; ++a) {
        b(0, 3 * a + 0) = dn_dx[a];
        b(2, 3 * a + 2) = dn_dz[a];
        b(3, 3 * a + 1) = dn_dz[a];
        b(4, 3 * a + 0) = dn_dz[a];
        b(4, 3 * a + 2) = dn_dx[a];
        b(5, 3 * a + 1) = dn_dx[a];
    }
    return b;
}

} // namespace detail

// Assembles the full coupled blocks with bilinear quads and 2x2 Gauss
// quadrature (unit depth along y; a uniform depth cancels in the eigenpair).
inline AssembledSystem assemble(const Mesh& mesh, const UnitCellSpec& spec) {
    AssembledSystem sys;
    const int nn = mesh.n_nodes();
    sys.n_u = 3 * nn;

    std::vector<int> touches_piezo(nn, 0);
    for (int e = 0; e < mesh.n_elements(); ++e)
        if (mesh.region[e] == Region::Piezo)
            for (int n : mesh.elements[e]) touches_piezo[n] = 1;
    sys.phi_index.assign(nn, -1);
    for (int n = 0; n < nn; ++n)
        if (touches_piezo[n]) sys.phi_index[n] = sys.n_p++;

    sys.K_uu = Eigen::MatrixXd::Zero(sys.n_u, sys.n_u);
    sys.K_up = Eigen::MatrixXd::Zero(sys.n_u, sys.n_p);
    sys.K_pp = Eigen::MatrixXd::Zero(sys.n_p, sys.n_p);
    sys.M = Eigen::MatrixXd::Zero(sys.n_u, sys.n_u);

    std::array<double, 4> n, dnx, dnz;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& conn = mesh.elements[e];
        const bool piezo = mesh.region[e] == Region::Piezo;
        const Material& mat = piezo ? spec.piezo : spec.metal;

        Eigen::Matrix<double, 12, 12> ke_uu = Eigen::Matrix<double, 12, 12>::Zero();
        Eigen::Matrix<double, 12, 12> me = Eigen::Matrix<double, 12, 12>::Zero();
        Eigen::Matrix<double, 12, 4> ke_up = Eigen::Matrix<double, 12, 4>::Zero();
        Eigen::Matrix<double, 4, 4> ke_pp = Eigen::Matrix<double, 4, 4>::Zero();

        for (const auto& qp : detail::gauss2x2()) {
            const double det = detail::quad_shape(mesh, conn, qp.xi, qp.eta, n, dnx, dnz);
            const auto b = detail::strain_matrix(dnx, dnz);
            ke_uu += det * b.transpose() * mat.stiffness_cE * b;
            for (int a = 0; a < 4; ++a)
                for (int bb = 0; bb < 4; ++bb) {
                    const double mab = det * mat.density * n[a] * n[bb];
                    for (int c = 0; c < 3; ++c) me(3 * a + c, 3 * bb + c) += mab;
                }
            if (piezo) {
                Eigen::Matrix<double, 3, 4> g = Eigen::Matrix<double, 3, 4>::Zero();
                for (int a = 0; a < 4; ++a) {
                    g(0, a) = dnx[a];
                    g(2, a) = dnz[a];
                }
                ke_up += det * b.transpose() * mat.piezo_e.transpose() * g;
                ke_pp += det * g.transpose() * mat.permittivity_epsS * g;
            }
        }

        for (int a = 0; a < 4; ++a)
            for (int bb = 0; bb < 4; ++bb) {
                for (int ca = 0; ca < 3; ++ca)
                    for (int cb = 0; cb < 3; ++cb) {
                        sys.K_uu(3 * conn[a] + ca, 3 * conn[bb] + cb) += ke_uu(3 * a + ca, 3 * bb + cb);
                        sys.M(3 * conn[a] + ca, 3 * conn[bb] + cb) += me(3 * a + ca, 3 * bb + cb);
                    }
                if (piezo) {
                    const int pa = sys.phi_index[conn[a]], pb = sys.phi_index[conn[bb]];
                    sys.K_pp(pa, pb) += ke_pp(a, bb);
                    for (int ca = 0; ca < 3; ++ca)
                        sys.K_up(3 * conn[a] + ca, pb) += ke_up(3 * a + ca, bb);
                }
            }
    }
    return sys;
}

// Constraint disposition of one full dof after boundary conditions.
struct DofMap {
    int reduced = -1;  // -1: fixed to zero
    double sign = 1.0; // -1 on antiperiodic slave dofs
};

// System after antiperiodic tying (Floquet phase pi across the lambda/2 cell),
// electrode grounding (series/shorted condition) and, when no electrode node
// exists, a single gauge pin on the potential.
struct ConstrainedSystem {
    Eigen::MatrixXd K_uu, M;      // reduced mechanical blocks
    Eigen::MatrixXd K_up;         // reduced u x free-potential coupling
    Eigen::MatrixXd K_pp;         // reduced free-potential block (SPD)
    Eigen::VectorXd drive;        // condensed electrode forcing vector (size n_ur)
    std::vector<DofMap> umap;     // 3*node+c -> reduced u dof
    std::vector<DofMap> pmap;     // potential dof (assembly index) -> reduced free dof
    std::vector<int> phi_index;   // node -> assembly potential dof
    int n_ur = 0, n_pf = 0, n_pe = 0;
    bool gauge_pinned = false;
};

inline ConstrainedSystem apply_bcs(const AssembledSystem& sys, const Mesh& mesh,
                                   const UnitCellSpec& spec) {
    (void)spec; // lateral_bc has a single variant
    const int nn = mesh.n_nodes();
    ConstrainedSystem cs;
    cs.phi_index = sys.phi_index;

    std::vector<int> right_master(nn, -1); // right node -> left partner
    for (auto [l, r] : mesh.periodic_pairs) right_master[r] = l;

    // mechanical dofs
    cs.umap.assign(sys.n_u, DofMap{});
    std::vector<int> order; // master nodes in id order
    for (int node = 0; node < nn; ++node) {
        if (right_master[node] >= 0) continue;
        for (int c = 0; c < 3; ++c) cs.umap[3 * node + c] = {cs.n_ur++, 1.0};
    }
    for (int node = 0; node < nn; ++node)
        if (right_master[node] >= 0)
            for (int c = 0; c < 3; ++c)
                cs.umap[3 * node + c] = {cs.umap[3 * right_master[node] + c].reduced, -1.0};

    // potential dofs: electrode nodes are prescribed, right-edge nodes slaved,
    // the rest free; a gauge pin removes the free-floating potential when no
    // electrode exists.
    std::vector<int> disposition(sys.n_p, 0); // 0 free, 1 electrode, 2 slave, 3 pinned
    Eigen::VectorXd pattern = Eigen::VectorXd::Zero(sys.n_p);
    for (int node : mesh.electrode) {
        const int p = sys.phi_index[node];
        disposition[p] = 1;
        pattern[p] = 0.5 * mesh.electrode_side(node);
    }
    for (int node = 0; node < nn; ++node) {
        const int l = right_master[node];
        if (l < 0 || sys.phi_index[node] < 0) continue;
        const int p = sys.phi_index[node];
        if (disposition[p] == 1) continue; // grounding wins over tying
        disposition[p] = 2;
    }
    if (mesh.electrode.empty()) {
        for (int p = 0; p < sys.n_p; ++p)
            if (disposition[p] == 0) {
                disposition[p] = 3;
                cs.gauge_pinned = true;
                break;
            }
    }

    cs.pmap.assign(sys.n_p, DofMap{});
    for (int node = 0; node < nn; ++node) {
        const int p = sys.phi_index[node];
        if (p < 0 || disposition[p] != 0 || right_master[node] >= 0) continue;
        cs.pmap[p] = {cs.n_pf++, 1.0};
    }
    std::vector<int> electrode_dofs;
    for (int p = 0; p < sys.n_p; ++p)
        if (disposition[p] == 1) electrode_dofs.push_back(p);
    cs.n_pe = static_cast<int>(electrode_dofs.size());
    for (int node = 0; node < nn; ++node) {
        const int p = sys.phi_index[node];
        const int l = right_master[node];
        if (p < 0 || l < 0 || disposition[p] != 2) continue;
        const int pm = sys.phi_index[l];
        const auto& master = cs.pmap[pm];
        if (disposition[pm] == 1) {
            // slave of a grounded node: fixed (0 = -0); antisymmetric pattern kept
            cs.pmap[p] = DofMap{};
        } else {
            cs.pmap[p] = {master.reduced, -1.0};
        }
    }

    // reduced blocks via signed gather
    cs.K_uu = Eigen::MatrixXd::Zero(cs.n_ur, cs.n_ur);
    cs.M = Eigen::MatrixXd::Zero(cs.n_ur, cs.n_ur);
    for (int a = 0; a < sys.n_u; ++a) {
        const auto& da = cs.umap[a];
        if (da.reduced < 0) continue;
        for (int b = 0; b < sys.n_u; ++b) {
            const auto& db = cs.umap[b];
            if (db.reduced < 0) continue;
            const double s = da.sign * db.sign;
            cs.K_uu(da.reduced, db.reduced) += s * sys.K_uu(a, b);
            cs.M(da.reduced, db.reduced) += s * sys.M(a, b);
        }
    }
    cs.K_up = Eigen::MatrixXd::Zero(cs.n_ur, cs.n_pf);
    Eigen::MatrixXd kup_e = Eigen::MatrixXd::Zero(cs.n_ur, cs.n_pe);
    for (int a = 0; a < sys.n_u; ++a) {
        const auto& da = cs.umap[a];
        if (da.reduced < 0) continue;
        for (int p = 0; p < sys.n_p; ++p) {
            const auto& dp = cs.pmap[p];
            if (dp.reduced >= 0)
                cs.K_up(da.reduced, dp.reduced) += da.sign * dp.sign * sys.K_up(a, p);
        }
        for (int j = 0; j < cs.n_pe; ++j) kup_e(da.reduced, j) += da.sign * sys.K_up(a, electrode_dofs[j]);
    }
    cs.K_pp = Eigen::MatrixXd::Zero(cs.n_pf, cs.n_pf);
    Eigen::MatrixXd kpp_fe = Eigen::MatrixXd::Zero(cs.n_pf, cs.n_pe);
    for (int p = 0; p < sys.n_p; ++p) {
        const auto& dp = cs.pmap[p];
        if (dp.reduced < 0) continue;
        for (int q = 0; q < sys.n_p; ++q) {
            const auto& dq = cs.pmap[q];
            if (dq.reduced >= 0) cs.K_pp(dp.reduced, dq.reduced) += dp.sign * dq.sign * sys.K_pp(p, q);
        }
        for (int j = 0; j < cs.n_pe; ++j)
            kpp_fe(dp.reduced, j) += dp.sign * sys.K_pp(p, electrode_dofs[j]);
    }

    // condensed drive vector for the antisymmetric +-1/2 V electrode pattern
    cs.drive = Eigen::VectorXd::Zero(cs.n_ur);
    if (cs.n_pe > 0) {
        Eigen::VectorXd ve(cs.n_pe);
        for (int j = 0; j < cs.n_pe; ++j) ve(j) = pattern[electrode_dofs[j]];
        if (cs.n_pf > 0) {
            Eigen::LLT<Eigen::MatrixXd> llt(cs.K_pp);
            if (llt.info() != Eigen::Success) throw SolveError("dielectric block not SPD after constraints");
            cs.drive = cs.K_up * llt.solve(kpp_fe * ve) - kup_e * ve;
        } else {
            cs.drive = -kup_e * ve;
        }
    }
    return cs;
}

// Computes (piezo, metal) elastic strain energies of a nodal displacement
// field, integrating 1/2 S^T cE S with the assembly quadrature.
inline std::pair<double, double> region_energies(const std::vector<std::array<double, 3>>& u,
                                                 const Mesh& mesh, const UnitCellSpec& spec) {
    double wp = 0.0, wm = 0.0;
    std::array<double, 4> n, dnx, dnz;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto& conn = mesh.elements[e];
        const Material& mat = mesh.region[e] == Region::Piezo ? spec.piezo : spec.metal;
        Eigen::Matrix<double, 12, 1> ue;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 3; ++c) ue(3 * a + c) = u[conn[a]][c];
        double we = 0.0;
        for (const auto& qp : detail::gauss2x2()) {
            const double det = detail::quad_shape(mesh, conn, qp.xi, qp.eta, n, dnx, dnz);
            const Eigen::Matrix<double, 6, 1> s = detail::strain_matrix(dnx, dnz) * ue;
            we += 0.5 * det * s.dot(mat.stiffness_cE * s);
        }
        (mesh.region[e] == Region::Piezo ? wp : wm) += we;
    }
    return {wp, wm};
}

// Piezoelectric energy confinement: piezo strain energy over total.
inline double compute_eta(const ModeSolution& mode, const Mesh& mesh, const UnitCellSpec& spec) {
    const auto [wp, wm] = region_energies(mode.displacement, mesh, spec);
    const double total = wp + wm;
    if (total <= 0.0) throw SolveError("degenerate mode: zero total strain energy");
    return wp / total;
}

enum class EigenPath { Auto, Dense, SubspaceIteration };

namespace detail {

// Lowest eigenpairs of K x = lambda M x (both SPD) by inverse subspace
// iteration with Rayleigh-Ritz; falls back on the caller for failure handling.
inline bool subspace_lowest(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m, int nev,
                            Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const int n = static_cast<int>(k.rows());
    const int block = std::min(n, nev + std::max(8, nev));
    Eigen::LLT<Eigen::MatrixXd> kllt(k);
    if (kllt.info() != Eigen::Success) return false;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull); // fixed seed: deterministic output
    std::normal_distribution<double> nd;
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = nd(rng);
    Eigen::VectorXd prev = Eigen::VectorXd::Constant(block, -1.0);
    for (int it = 0; it < 400; ++it) {
        Eigen::MatrixXd y = kllt.solve(m * x);
        Eigen::MatrixXd km = y.transpose() * (k * y);
        Eigen::MatrixXd mm = y.transpose() * (m * y);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> small(
            0.5 * (km + km.transpose()), 0.5 * (mm + mm.transpose()));
        if (small.info() != Eigen::Success) return false;
        x = y * small.eigenvectors();
        double drel = 0.0;
        for (int j = 0; j < nev; ++j) {
            const double cur = small.eigenvalues()(j);
            drel = std::max(drel, std::abs(cur - prev(j)) / std::max(1e-300, std::abs(cur)));
        }
        prev = small.eigenvalues();
        if (it > 2 && drel < 1e-12) {
            values = prev.head(nev);
            vectors = x.leftCols(nev);
            return true;
        }
    }
    return false;
}

} // namespace detail

// Solves the condensed generalized eigenproblem K* u = omega^2 M u and returns
// the lowest n_modes, ascending in frequency, each with energies, eta and the
// electrode-drive coupling score.
inline std::vector<ModeSolution> solve_modes(const ConstrainedSystem& cs, const Mesh& mesh,
                                             const UnitCellSpec& spec, int n_modes,
                                             EigenPath path = EigenPath::Auto) {
    if (n_modes < 1) throw ValidationError("solve_modes: n_modes must be >= 1");
    const int n = cs.n_ur;
    if (n == 0) throw SolveError("empty constrained system");
    n_modes = std::min(n_modes, n);

    // static condensation of the free potential
    Eigen::MatrixXd kstar = cs.K_uu;
    Eigen::LLT<Eigen::MatrixXd> ppllt;
    if (cs.n_pf > 0) {
        ppllt.compute(cs.K_pp);
        if (ppllt.info() != Eigen::Success)
            throw SolveError("dielectric block not positive definite (gauge missing?)");
        kstar += cs.K_up * ppllt.solve(cs.K_up.transpose());
    }
    kstar = 0.5 * (kstar + kstar.transpose()).eval();

    const double kscale = kstar.cwiseAbs().maxCoeff();
    Eigen::VectorXd lambda;
    Eigen::MatrixXd vecs;
    const bool want_dense = path == EigenPath::Dense || (path == EigenPath::Auto && n <= 1500);
    bool solved = false;
    if (!want_dense)
        solved = detail::subspace_lowest(kstar, cs.M, n_modes, lambda, vecs);
    if (!solved) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(kstar, cs.M);
        if (es.info() != Eigen::Success) throw SolveError("dense generalized eigensolver failed");
        lambda = es.eigenvalues().head(n_modes);
        vecs = es.eigenvectors().leftCols(n_modes);
    }

    std::vector<ModeSolution> out;
    out.reserve(n_modes);
    const int nn = mesh.n_nodes();
    for (int j = 0; j < n_modes; ++j) {
        if (lambda(j) < -1e-6 * kscale)
            throw SolveError("negative eigenvalue beyond tolerance: assembly or constraint bug");
        if (lambda(j) <= 0.0) throw SolveError("nonpositive eigenvalue: expected omega > 0");
        ModeSolution mode;
        mode.omega = std::sqrt(lambda(j));
        mode.frequency = mode.omega / (2.0 * M_PI);

        Eigen::VectorXd ur = vecs.col(j);
        // deterministic modal scale: largest |entry| becomes +1
        int imax = 0;
        ur.cwiseAbs().maxCoeff(&imax);
        ur /= ur(imax);

        mode.modal_coupling = 0.0;
        if (cs.drive.size() == n && cs.drive.norm() > 0.0) {
            const double num = cs.drive.dot(ur);
            const double den = ur.dot(kstar * ur);
            mode.modal_coupling = num * num / den;
        }

        mode.displacement.assign(nn, {0.0, 0.0, 0.0});
        for (int node = 0; node < nn; ++node)
            for (int c = 0; c < 3; ++c) {
                const auto& d = cs.umap[3 * node + c];
                if (d.reduced >= 0) mode.displacement[node][c] = d.sign * ur(d.reduced);
            }
        mode.potential.assign(nn, 0.0);
        if (cs.n_pf > 0) {
            Eigen::VectorXd phi_f = ppllt.solve(cs.K_up.transpose() * ur);
            for (int node = 0; node < nn; ++node) {
                const int p = cs.phi_index[node];
                if (p < 0) continue;
                const auto& d = cs.pmap[p];
                if (d.reduced >= 0) mode.potential[node] = d.sign * phi_f(d.reduced);
            }
        }

        const auto [wp, wm] = region_energies(mode.displacement, mesh, spec);
        mode.energy_piezo = wp;
        mode.energy_metal = wm;
        const double total = wp + wm;
        if (total <= 0.0) throw SolveError("degenerate mode: zero total strain energy");
        mode.eta = wp / total;
        out.push_back(std::move(mode));
    }
    return out;
}

// Convenience: mesh + assemble + constrain + solve in one call.
inline std::vector<ModeSolution> solve_unit_cell(const UnitCellSpec& spec, int n_modes,
                                                 EigenPath path = EigenPath::Auto) {
    const Mesh mesh = build_mesh(spec);
    const AssembledSystem sys = assemble(mesh, spec);
    const ConstrainedSystem cs = apply_bcs(sys, mesh, spec);
    return solve_modes(cs, mesh, spec, n_modes, path);
}

struct FrequencyWindow {
    double min_hz = 0.0;
    double max_hz = std::numeric_limits<double>::infinity();
};

// Picks the electrically driven mode: maximum modal_coupling inside the
// window, ties broken by lowest frequency.
inline const ModeSolution& select_mode(const std::vector<ModeSolution>& modes,
                                       std::optional<FrequencyWindow> window = std::nullopt) {
    if (modes.empty()) throw ValidationError("select_mode: empty candidate list");
    const ModeSolution* best = nullptr;
    for (const auto& m : modes) {
        if (window && (m.frequency < window->min_hz || m.frequency > window->max_hz)) continue;
        if (!best || m.modal_coupling > best->modal_coupling ||
            (m.modal_coupling == best->modal_coupling && m.frequency < best->frequency))
            best = &m;
    }
    if (!best) throw ValidationError("select_mode: no mode inside the frequency window");
    return *best;
}

} // namespace piezoq

#endif
