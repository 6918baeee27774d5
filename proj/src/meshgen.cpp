#include "discgeom/meshgen.hpp"

#include <cmath>
#include <numbers>

#include "discgeom/errors.hpp"

namespace discgeom {

EmbeddedMesh fan_disc(int n, double radius) {
    if (n < 3) throw InputError("fan disc needs at least 3 sectors");
    if (!(radius > 0.0)) throw InputError("fan disc needs a positive radius");
    Eigen::MatrixXd coords(n + 1, 2);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        coords(i, 0) = radius * std::cos(a);
        coords(i, 1) = radius * std::sin(a);
    }
    coords.row(n).setZero();
    std::vector<std::array<int, 3>> tris;
    tris.reserve(n);
    for (int i = 0; i < n; ++i) tris.push_back({i, (i + 1) % n, n});
    return {make_tri_disc_mesh_from_coords(coords, tris), std::move(coords)};
}

EmbeddedMesh grid_rect(int nx, int ny, double width, double height) {
    if (nx < 1 || ny < 1) throw InputError("grid needs at least one cell per side");
    if (!(width > 0.0) || !(height > 0.0)) throw InputError("grid needs positive side lengths");
    const int cols = nx + 1;
    Eigen::MatrixXd coords((nx + 1) * (ny + 1), 2);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            coords(j * cols + i, 0) = width * i / nx;
            coords(j * cols + i, 1) = height * j / ny;
        }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int v00 = j * cols + i, v10 = v00 + 1;
            const int v01 = v00 + cols, v11 = v01 + 1;
            tris.push_back({v00, v10, v11});
            tris.push_back({v00, v11, v01});
        }
    return {make_tri_disc_mesh_from_coords(coords, tris), std::move(coords)};
}

EmbeddedMesh ring_disc(int n, double r_inner, double r_outer) {
    if (n < 3) throw InputError("ring disc needs at least 3 sectors");
    if (!(0.0 < r_inner && r_inner < r_outer))
        throw InputError("ring disc needs 0 < r_inner < r_outer");
    Eigen::MatrixXd coords(2 * n + 1, 2);
    coords.row(0).setZero();
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        coords(1 + i, 0) = r_inner * std::cos(a);
        coords(1 + i, 1) = r_inner * std::sin(a);
        coords(1 + n + i, 0) = r_outer * std::cos(a);
        coords(1 + n + i, 1) = r_outer * std::sin(a);
    }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(3 * n);
    for (int i = 0; i < n; ++i) {
        const int i0 = 1 + i, i1 = 1 + (i + 1) % n;
        const int o0 = 1 + n + i, o1 = 1 + n + (i + 1) % n;
        tris.push_back({0, i0, i1});
        tris.push_back({i0, o0, o1});
        tris.push_back({i0, o1, i1});
    }
    return {make_tri_disc_mesh_from_coords(coords, tris), std::move(coords)};
}

}  // namespace discgeom
