#include "nnosim/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>

#include "nnosim/csv.hpp"
#include "nnosim/errors.hpp"

namespace nnosim {

void ArrayGeometry::validate() const {
    if (!(pad_um > 0.0) || rows < 1 || cols < 1) {
        throw GeometryError("pads need positive size and at least one row and column");
    }
    if (!(gap_um > 0.0)) {
        throw GeometryError("pads overlap: the gap must be positive");
    }
    if (!(ring_um > 0.0)) {
        throw GeometryError("ring width must be positive");
    }
    if (ring_um >= gap_um / 2.0) {
        throw GeometryError("rings of adjacent pads overlap: ring must be < gap/2");
    }
    if (!(margin_pitches > 0.0)) {
        throw GeometryError("domain margin must be positive");
    }
}

std::size_t PotentialGrid::cell_count(int patch) const {
    std::size_t n = 0;
    for (int id : electrode) {
        if (id == patch) ++n;
    }
    return n;
}

PotentialGrid build_grid(const ArrayGeometry& geom, double h_um,
                         double rho_nno_ohm_m, double rho_hnno_ohm_m,
                         double thickness_nm) {
    geom.validate();
    if (!(h_um > 0.0) || h_um > geom.ring_um + 1e-12) {
        throw GeometryError("cell size must be positive and no larger than the ring width");
    }
    if (!(rho_nno_ohm_m > 0.0) || !(rho_hnno_ohm_m > 0.0) || !(thickness_nm > 0.0)) {
        throw GeometryError("resistivities and film thickness must be positive");
    }
    const double t_m = thickness_nm * 1e-9;
    const double g_film = t_m / rho_nno_ohm_m;   // S per square
    const double g_ring = t_m / rho_hnno_ohm_m;

    const double pitch = geom.pitch_um();
    const double margin = geom.margin_pitches * pitch;
    const double w = 2.0 * margin + geom.cols * geom.pad_um + (geom.cols - 1) * geom.gap_um;
    const double h = 2.0 * margin + geom.rows * geom.pad_um + (geom.rows - 1) * geom.gap_um;

    PotentialGrid grid;
    grid.h_um = h_um;
    grid.thickness_nm = thickness_nm;
    grid.nx = static_cast<int>(std::lround(w / h_um));
    grid.ny = static_cast<int>(std::lround(h / h_um));
    grid.n_patches = geom.n_pads();
    grid.g_sheet.assign(static_cast<std::size_t>(grid.nx) * grid.ny, g_film);
    grid.electrode.assign(static_cast<std::size_t>(grid.nx) * grid.ny, -1);

    // Coverage fraction of each cell by hydrogenated material (pad plus
    // collar).  Cells cut by the collar's outer edge get an area-weighted
    // resistivity blend, so the effective collar width stays put when the
    // cell size changes: grid refinement then probes the discretization, not
    // a re-rasterized geometry.
    std::vector<double> hydro(grid.g_sheet.size(), 0.0);
    const auto cover = [h_um](int c, double lo, double hi) {
        const double a = std::max(lo, c * h_um);
        const double b = std::min(hi, (c + 1) * h_um);
        return std::max(0.0, b - a) / h_um;
    };
    for (int r = 0; r < geom.rows; ++r) {
        for (int c = 0; c < geom.cols; ++c) {
            const int patch = r * geom.cols + c;
            const double x0 = margin + c * pitch;
            const double y0 = margin + r * pitch;
            const double x1 = x0 + geom.pad_um;
            const double y1 = y0 + geom.pad_um;
            const double ex0 = x0 - geom.ring_um, ex1 = x1 + geom.ring_um;
            const double ey0 = y0 - geom.ring_um, ey1 = y1 + geom.ring_um;
            const int il = std::max(0, static_cast<int>(ex0 / h_um));
            const int ir = std::min(grid.nx - 1, static_cast<int>(ex1 / h_um));
            const int jl = std::max(0, static_cast<int>(ey0 / h_um));
            const int jr = std::min(grid.ny - 1, static_cast<int>(ey1 / h_um));
            for (int j = jl; j <= jr; ++j) {
                for (int i = il; i <= ir; ++i) {
                    const double frac = cover(i, ex0, ex1) * cover(j, ey0, ey1);
                    if (frac <= 0.0) continue;
                    const std::size_t k = grid.idx(i, j);
                    hydro[k] = std::min(1.0, hydro[k] + frac);
                    const double cx = (i + 0.5) * h_um;
                    const double cy = (j + 0.5) * h_um;
                    if (cx >= x0 && cx <= x1 && cy >= y0 && cy <= y1) {
                        if (grid.electrode[k] >= 0 && grid.electrode[k] != patch) {
                            throw GeometryError("pads overlap on the grid");
                        }
                        grid.electrode[k] = patch;
                    }
                }
            }
        }
    }
    for (std::size_t k = 0; k < hydro.size(); ++k) {
        if (hydro[k] <= 0.0) continue;
        grid.g_sheet[k] =
            hydro[k] >= 1.0
                ? g_ring
                : t_m / (hydro[k] * rho_hnno_ohm_m + (1.0 - hydro[k]) * rho_nno_ohm_m);
    }
    return grid;
}

namespace {

// Harmonic face conductance between two film cells.  Against an electrode
// cell the metal clamps the sheet everywhere under the pad, so the boundary
// value lives on the pad's edge face and the free cell couples to it across
// half a cell of its own material; anchoring the fixed potential on the face
// keeps the collar's series length exact instead of stretching it by h/2.
inline double face_t(const PotentialGrid& grid, std::size_t a, std::size_t b) {
    const double ga = grid.g_sheet[a], gb = grid.g_sheet[b];
    if (grid.electrode[a] >= 0) return 2.0 * gb;
    if (grid.electrode[b] >= 0) return 2.0 * ga;
    return 2.0 * ga * gb / (ga + gb);
}

}  // namespace

PotentialField solve_potential(const PotentialGrid& grid,
                               const std::vector<double>& patch_v,
                               const SolveOptions& opts) {
    if (static_cast<int>(patch_v.size()) != grid.n_patches) {
        throw ArgumentError("one boundary potential per patch is required");
    }
    if (grid.n_patches < 1) {
        throw ArgumentError("at least one electrode patch is required");
    }
    const int nx = grid.nx, ny = grid.ny;
    std::vector<int> unknown(static_cast<std::size_t>(nx) * ny, -1);
    int n_unknown = 0;
    for (std::size_t k = 0; k < unknown.size(); ++k) {
        if (grid.electrode[k] < 0) unknown[k] = n_unknown++;
    }

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    trips.reserve(static_cast<std::size_t>(n_unknown) * 5);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_unknown);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = grid.idx(i, j);
            const int row = unknown[k];
            if (row < 0) continue;
            double diag = 0.0;
            for (int d = 0; d < 4; ++d) {
                const int ni = i + di[d], nj = j + dj[d];
                if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;  // insulating
                const std::size_t nk = grid.idx(ni, nj);
                const double t = face_t(grid, k, nk);
                diag += t;
                if (unknown[nk] >= 0) {
                    trips.emplace_back(row, unknown[nk], -t);
                } else {
                    rhs(row) += t * patch_v[grid.electrode[nk]];
                }
            }
            trips.emplace_back(row, row, diag);
        }
    }
    Eigen::SparseMatrix<double> a(n_unknown, n_unknown);
    a.setFromTriplets(trips.begin(), trips.end());

    // The ring/film contrast spans ~7 orders of magnitude; both the incomplete
    // factorization and any residual evaluated in the raw row scaling break
    // down under it.  Work on the Jacobi-equilibrated system (unit diagonal):
    // its true residual stays computable to ~1e-11 in double precision, and
    // that is the norm the tolerance refers to.
    const Eigen::VectorXd scale = a.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::SparseMatrix<double> as =
        (scale.asDiagonal() * a * scale.asDiagonal()).eval();
    const Eigen::VectorXd bs = scale.asDiagonal() * rhs;

    // Two-level preconditioner: incomplete-Cholesky smoothing for the local
    // modes plus a piecewise-constant coarse correction over square cell
    // tiles, factored directly, for the long-range ones that IC alone drags
    // out over thousands of iterations on pad-scale grids.
    Eigen::IncompleteCholesky<double> ic;
    ic.compute(as);
    if (ic.info() != Eigen::Success) {
        throw SolverError("incomplete factorization failed", 0.0, 0);
    }
    constexpr int kTile = 16;
    const int tiles_x = (nx + kTile - 1) / kTile;
    std::vector<int> agg(static_cast<std::size_t>(n_unknown), -1);
    std::vector<int> tile_of(static_cast<std::size_t>(tiles_x) *
                                 ((ny + kTile - 1) / kTile),
                             -1);
    int n_coarse = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int u = unknown[grid.idx(i, j)];
            if (u < 0) continue;
            const std::size_t t =
                static_cast<std::size_t>(j / kTile) * tiles_x + i / kTile;
            if (tile_of[t] < 0) tile_of[t] = n_coarse++;
            agg[static_cast<std::size_t>(u)] = tile_of[t];
        }
    }
    std::vector<Trip> ctrips;
    ctrips.reserve(static_cast<std::size_t>(as.nonZeros()));
    for (int c = 0; c < as.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(as, c); it; ++it) {
            ctrips.emplace_back(agg[static_cast<std::size_t>(it.row())],
                                agg[static_cast<std::size_t>(it.col())],
                                it.value());
        }
    }
    Eigen::SparseMatrix<double> ac(n_coarse, n_coarse);
    ac.setFromTriplets(ctrips.begin(), ctrips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> coarse;
    coarse.compute(ac);
    if (coarse.info() != Eigen::Success) {
        throw SolverError("coarse-level factorization failed", 0.0, 0);
    }
    Eigen::VectorXd rc(n_coarse);
    auto apply_precond = [&](const Eigen::VectorXd& r) {
        Eigen::VectorXd z = ic.solve(r);
        rc.setZero();
        for (int u = 0; u < n_unknown; ++u) rc[agg[static_cast<std::size_t>(u)]] += r[u];
        const Eigen::VectorXd zc = coarse.solve(rc);
        for (int u = 0; u < n_unknown; ++u) z[u] += zc[agg[static_cast<std::size_t>(u)]];
        return z;
    };

    // PCG on the scaled system, restarted on the recomputed residual whenever
    // the recursive one reaches the bound, so accumulated drift cannot fake
    // convergence.
    const double b_norm = bs.norm();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_unknown);
    double relres = b_norm > 0.0 ? 1.0 : 0.0;
    int iters = 0;
    if (b_norm > 0.0) {
        Eigen::VectorXd r = bs;
        Eigen::VectorXd z = apply_precond(r);
        Eigen::VectorXd p = z;
        double rz = r.dot(z);
        double stalled_at = std::numeric_limits<double>::infinity();
        while (iters < opts.max_iter) {
            const Eigen::VectorXd q = as * p;
            const double pq = p.dot(q);
            if (!(pq > 0.0)) break;
            const double alpha = rz / pq;
            x += alpha * p;
            r -= alpha * q;
            ++iters;
            if (r.norm() <= 0.5 * opts.tol * b_norm) {
                r = bs - as * x;
                relres = r.norm() / b_norm;
                if (relres <= opts.tol) break;
                if (relres >= 0.5 * stalled_at) break;  // FP floor
                stalled_at = relres;
                z = apply_precond(r);
                p = z;
                rz = r.dot(z);
                continue;
            }
            z = apply_precond(r);
            const double rz_new = r.dot(z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
        if (relres > opts.tol) relres = (bs - as * x).norm() / b_norm;
    }
    if (relres > opts.tol || !std::isfinite(relres)) {
        throw SolverError("potential solve did not reach the residual bound",
                          relres, iters);
    }
    x = (scale.asDiagonal() * x).eval();

    PotentialField field;
    field.nx = nx;
    field.ny = ny;
    field.residual = relres;
    field.iterations = iters;
    field.v.resize(unknown.size());
    for (std::size_t k = 0; k < unknown.size(); ++k) {
        field.v[k] = unknown[k] >= 0 ? x(unknown[k])
                                     : patch_v[grid.electrode[k]];
    }
    return field;
}

double electrode_current(const PotentialField& field, const PotentialGrid& grid,
                         int patch) {
    if (patch < 0 || patch >= grid.n_patches) {
        throw ArgumentError("unknown electrode patch");
    }
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    double current = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = grid.idx(i, j);
            if (grid.electrode[k] != patch) continue;
            for (int d = 0; d < 4; ++d) {
                const int ni = i + di[d], nj = j + dj[d];
                if (ni < 0 || ni >= grid.nx || nj < 0 || nj >= grid.ny) continue;
                const std::size_t nk = grid.idx(ni, nj);
                if (grid.electrode[nk] == patch) continue;  // internal face
                const double t = face_t(grid, k, nk);
                current += t * (field.v[k] - field.v[nk]);
            }
        }
    }
    return current;
}

std::vector<double> all_electrode_currents(const PotentialField& field,
                                           const PotentialGrid& grid) {
    std::vector<double> currents(grid.n_patches);
    for (int p = 0; p < grid.n_patches; ++p) {
        currents[p] = electrode_current(field, grid, p);
    }
    return currents;
}

double mean_interior_potential(const PotentialField& field,
                               const PotentialGrid& grid) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < field.v.size(); ++k) {
        if (grid.electrode[k] < 0) {
            sum += field.v[k];
            ++n;
        }
    }
    if (n == 0) throw ArgumentError("grid has no film cells");
    return sum / static_cast<double>(n);
}

double ring_conductance(const ArrayGeometry& geom, double h_um,
                        double rho_nno_ohm_m, double rho_hnno_ohm_m,
                        double thickness_nm, double v_drive,
                        const SolveOptions& opts) {
    ArrayGeometry pair = geom;
    pair.rows = 1;
    pair.cols = 2;
    PotentialGrid grid = build_grid(pair, h_um, rho_nno_ohm_m, rho_hnno_ohm_m,
                                    thickness_nm);
    PotentialField field = solve_potential(grid, {v_drive, 0.0}, opts);
    const double i_in = electrode_current(field, grid, 0);
    return 2.0 * i_in / v_drive;
}

DistanceSweep distance_sweep(const ArrayGeometry& geom, double h_um,
                             double rho_nno_ohm_m, double rho_hnno_ohm_m,
                             double thickness_nm, double v_drive,
                             const SolveOptions& opts) {
    ArrayGeometry row = geom;
    row.rows = 1;
    row.cols = std::max(row.cols, 3);
    PotentialGrid grid = build_grid(row, h_um, rho_nno_ohm_m, rho_hnno_ohm_m,
                                    thickness_nm);
    std::vector<double> v(row.n_pads(), 0.0);
    v[0] = v_drive;
    DistanceSweep sweep;
    {
        PotentialField field = solve_potential(grid, v, opts);
        sweep.baseline_a = std::abs(electrode_current(field, grid, 1));
    }
    for (int p = 2; p < row.n_pads(); ++p) {
        std::vector<double> vb = v;
        vb[p] = v_drive;
        PotentialField field = solve_potential(grid, vb, opts);
        sweep.with_neighbor_a.push_back(std::abs(electrode_current(field, grid, 1)));
    }
    return sweep;
}

void write_potential_csv(const PotentialField& field,
                         const std::filesystem::path& path) {
    std::vector<std::vector<double>> rows(field.ny);
    for (int j = 0; j < field.ny; ++j) {
        rows[j].resize(field.nx);
        for (int i = 0; i < field.nx; ++i) {
            rows[j][i] = field.v[static_cast<std::size_t>(j) * field.nx + i];
        }
    }
    write_csv(path, "", rows);
}

}  // namespace nnosim
