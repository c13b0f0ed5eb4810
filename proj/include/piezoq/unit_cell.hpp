// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef PIEZOQ_UNIT_CELL_HPP
#define PIEZOQ_UNIT_CELL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "piezoq/errors.hpp"
#include "piezoq/materials.hpp"

namespace piezoq {

enum class Region { Piezo, Metal };
enum class LateralBc { Antiperiodic };

// Half-wavelength periodic cell of an interdigitated resonator: piezoelectric
// film of thickness h, width lambda/2, with two half-electrode strips of the
// metal abutting the lateral edges, each covering coverage*lambda/4 of the
// top surface.
struct UnitCellSpec {
    double wavelength = 0.0;         // m
    double film_thickness = 0.0;     // m
    double metal_thickness = 0.0;    // m
    double electrode_coverage = 0.5; // fraction of top surface under metal
    Material piezo;                  // already rotated into the device frame
    Material metal;
    int mesh_nx = 24;
    int mesh_nz_film = 6;
    int mesh_nz_metal = 2;
    LateralBc lateral_bc = LateralBc::Antiperiodic;

    void validate() const {
        if (!(wavelength > 0.0) || !(film_thickness > 0.0))
            throw ValidationError("unit cell: wavelength and film thickness must be > 0");
        if (metal_thickness < 0.0) throw ValidationError("unit cell: metal thickness must be >= 0");
        if (electrode_coverage < 0.0 || electrode_coverage > 1.0)
            throw ValidationError("unit cell: electrode coverage must be in [0, 1]");
        if (mesh_nx < 2 || mesh_nz_film < 2 || mesh_nz_metal < 2)
            throw ValidationError("unit cell: mesh counts must be >= 2");
        piezo.validate();
        metal.validate();
    }
};

// Structured conforming quad mesh of the unit cell. Film nodes form a full
// (nx+1) x (nz_film+1) grid; metal nodes exist only above the electrode strips.
struct Mesh {
    std::vector<double> x, z;                  // node coordinates, m
    std::vector<std::array<int, 4>> elements;  // CCW connectivity
    std::vector<Region> region;                // per element
    std::vector<int> left, right, top, bottom; // boundary node sets
    std::vector<int> electrode;                // piezo surface nodes under an electrode
    std::vector<std::array<int, 2>> periodic_pairs; // {left node, right node}
    int electrode_columns = 0;                 // element columns per half-electrode

    int n_nodes() const { return static_cast<int>(x.size()); }
    int n_elements() const { return static_cast<int>(elements.size()); }

    // +1 if the node sits on the left half-electrode, -1 on the right, 0 otherwise.
    int electrode_side(int node) const {
        auto it = electrode_side_.find(node);
        return it == electrode_side_.end() ? 0 : it->second;
    }

    std::map<int, int> electrode_side_; // filled by build_mesh

    void check_conformity() const {
        for (const auto& e : elements) {
            const double ax = x[e[1]] - x[e[0]], az = z[e[1]] - z[e[0]];
            const double bx = x[e[3]] - x[e[0]], bz = z[e[3]] - z[e[0]];
            if (ax * bz - az * bx <= 0.0) throw ValidationError("mesh: nonpositive element Jacobian");
        }
    }
};

// Builds the structured unit-cell mesh. The two half-electrode strips occupy
// round(coverage*nx/2) element columns against each lateral edge.
inline Mesh build_mesh(const UnitCellSpec& spec) {
    spec.validate();
    const int nx = spec.mesh_nx;
    const int nzf = spec.mesh_nz_film;
    const int nzm = spec.mesh_nz_metal;
    const double width = spec.wavelength / 2.0;
    const double h = spec.film_thickness;
    const double tm = spec.metal_thickness;
    const double alpha = spec.electrode_coverage;

    int ncol = 0;
    if (alpha > 0.0) {
        ncol = static_cast<int>(std::lround(alpha * nx / 2.0));
        if (ncol < 1)
            throw ValidationError(
                "unit cell: electrode strip (coverage*lambda/4) is narrower than one element "
                "column; increase mesh_nx or electrode coverage");
        ncol = std::min(ncol, nx / 2);
    }

    Mesh mesh;
    const double dx = width / nx;
    const double dzf = h / nzf;

    // film grid, bottom row first
    auto film_node = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= nzf; ++j)
        for (int i = 0; i <= nx; ++i) {
            mesh.x.push_back(i * dx);
            mesh.z.push_back(j * dzf);
        }
    for (int j = 0; j < nzf; ++j)
        for (int i = 0; i < nx; ++i) {
            mesh.elements.push_back({film_node(i, j), film_node(i + 1, j), film_node(i + 1, j + 1), film_node(i, j + 1)});
            mesh.region.push_back(Region::Piezo);
        }

    // electrode node columns (node indices 0..ncol and nx-ncol..nx)
    std::set<int> electrode_node_cols;
    if (ncol > 0) {
        for (int i = 0; i <= ncol; ++i) electrode_node_cols.insert(i);
        for (int i = nx - ncol; i <= nx; ++i) electrode_node_cols.insert(i);
    }

    const bool has_metal = tm > 0.0 && ncol > 0;
    std::map<std::pair<int, int>, int> metal_node; // (col, layer>=1) -> id
    if (has_metal) {
        const double dzm = tm / nzm;
        for (int k = 1; k <= nzm; ++k)
            for (int i : electrode_node_cols) {
                metal_node[{i, k}] = mesh.n_nodes();
                mesh.x.push_back(i * dx);
                mesh.z.push_back(h + k * dzm);
            }
        auto mnode = [&](int i, int k) { return k == 0 ? film_node(i, nzf) : metal_node.at({i, k}); };
        std::vector<int> metal_elem_cols;
        for (int i = 0; i < ncol; ++i) metal_elem_cols.push_back(i);
        for (int i = nx - ncol; i < nx; ++i)
            if (i >= ncol) metal_elem_cols.push_back(i);
        for (int i : metal_elem_cols)
            for (int k = 0; k < nzm; ++k) {
                mesh.elements.push_back({mnode(i, k), mnode(i + 1, k), mnode(i + 1, k + 1), mnode(i, k + 1)});
                mesh.region.push_back(Region::Metal);
            }
    }

    // boundary node sets
    for (int j = 0; j <= nzf; ++j) {
        mesh.left.push_back(film_node(0, j));
        mesh.right.push_back(film_node(nx, j));
        mesh.periodic_pairs.push_back({film_node(0, j), film_node(nx, j)});
    }
    if (has_metal)
        for (int k = 1; k <= nzm; ++k) {
            mesh.left.push_back(metal_node.at({0, k}));
            mesh.right.push_back(metal_node.at({nx, k}));
            mesh.periodic_pairs.push_back({metal_node.at({0, k}), metal_node.at({nx, k})});
        }
    for (int i = 0; i <= nx; ++i) {
        mesh.bottom.push_back(film_node(i, 0));
        mesh.top.push_back(film_node(i, nzf));
    }
    if (ncol > 0)
        for (int i : electrode_node_cols) {
            const int n = film_node(i, nzf);
            mesh.electrode.push_back(n);
            mesh.electrode_side_[n] = (i <= ncol) ? +1 : -1;
        }
    mesh.electrode_columns = ncol;
    mesh.check_conformity();
    return mesh;
}

// Debug CSV of node positions and (optionally) a nodal field; one row per node:
// node id, x, z, region, u_x, u_y, u_z, phi.
inline void dump_mesh_csv(const Mesh& mesh, const std::string& path,
                          const std::vector<std::array<double, 3>>* displacement = nullptr,
                          const std::vector<double>* potential = nullptr) {
    std::vector<int> touches_piezo(mesh.n_nodes(), 0), touches_metal(mesh.n_nodes(), 0);
    for (int e = 0; e < mesh.n_elements(); ++e)
        for (int n : mesh.elements[e])
            (mesh.region[e] == Region::Piezo ? touches_piezo : touches_metal)[n] = 1;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write mesh dump: " + path);
    out << "node,x_m,z_m,region,u_x,u_y,u_z,phi\n";
    char buf[256];
    for (int n = 0; n < mesh.n_nodes(); ++n) {
        const char* reg = touches_piezo[n] && touches_metal[n] ? "interface"
                          : touches_metal[n]                   ? "metal"
                                                               : "piezo";
        double ux = 0, uy = 0, uz = 0, phi = 0;
        if (displacement) {
            ux = (*displacement)[n][0];
            uy = (*displacement)[n][1];
            uz = (*displacement)[n][2];
        }
        if (potential) phi = (*potential)[n];
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%s,%.9g,%.9g,%.9g,%.9g\n", n, mesh.x[n], mesh.z[n],
                      reg, ux, uy, uz, phi);
        out << buf;
    }
}

} // namespace piezoq

#endif
