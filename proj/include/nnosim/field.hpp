#pragma once

// 2D quasi-static potential solver over a heterogeneous-conductance sheet:
// metal pads as Dirichlet patches, resistive rings around each pad, and a
// highly conductive film elsewhere.  Used to validate the lumped array
// model's coupling behavior.  SI units: S (sheet conductance), V, A, µm for
// lengths.

#include <filesystem>
#include <vector>

namespace nnosim {

struct ArrayGeometry {
    double pad_um = 120.0;
    double gap_um = 10.0;
    double ring_um = 3.5;  // ring extension beyond each pad side
    int rows = 2;
    int cols = 3;
    double margin_pitches = 2.0;  // domain margin in units of (pad + gap)

    double pitch_um() const { return pad_um + gap_um; }
    int n_pads() const { return rows * cols; }
    void validate() const;  // throws GeometryError
};

struct PotentialGrid {
    int nx = 0, ny = 0;
    double h_um = 1.0;
    double thickness_nm = 50.0;
    std::vector<double> g_sheet;   // S per cell, size nx*ny
    std::vector<int> electrode;    // patch id per cell, -1 for film
    int n_patches = 0;

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + i;
    }
    std::size_t cell_count(int patch) const;  // cells carrying this patch id
};

struct SolveOptions {
    double tol = 1e-8;       // relative residual bound, diagonally scaled norm
    int max_iter = 1000000;
};

struct PotentialField {
    std::vector<double> v;  // size nx*ny; electrode cells hold their patch V
    int nx = 0, ny = 0;
    double residual = 0.0;
    int iterations = 0;
};

// Rasterizes pads (Dirichlet), rings (hydrogenated sheet conductance, also
// under the pads), and surrounding film.  Patch ids follow row-major pad
// order.
PotentialGrid build_grid(const ArrayGeometry& geom, double h_um,
                         double rho_nno_ohm_m = 2.5e-6,
                         double rho_hnno_ohm_m = 8.85,
                         double thickness_nm = 50.0);

// Solves ∇·(g∇V) = 0 with harmonic-mean face conductances and an insulating
// outer boundary, by conjugate gradients on the Jacobi-equilibrated system
// with a two-level (incomplete-Cholesky + tiled coarse-correction)
// preconditioner.  The residual bound is verified against the recomputed
// residual in the equilibrated norm; SolverError (with residual and iteration
// count) if it cannot be met.
PotentialField solve_potential(const PotentialGrid& grid,
                               const std::vector<double>& patch_v,
                               const SolveOptions& opts = {});

// Sum of boundary face fluxes for one patch, in A; positive out of the
// electrode into the film.
double electrode_current(const PotentialField& field, const PotentialGrid& grid,
                         int patch);

std::vector<double> all_electrode_currents(const PotentialField& field,
                                           const PotentialGrid& grid);

// Mean potential over film (non-electrode) cells.
double mean_interior_potential(const PotentialField& field,
                               const PotentialGrid& grid);

// Effective pad-to-film conductance (S) from a two-pad solve: twice the
// transfer admittance of the symmetric pair.
double ring_conductance(const ArrayGeometry& geom, double h_um,
                        double rho_nno_ohm_m, double rho_hnno_ohm_m,
                        double thickness_nm, double v_drive,
                        const SolveOptions& opts = {});

struct DistanceSweep {
    double baseline_a = 0.0;            // measured-pad current, no neighbor
    std::vector<double> with_neighbor_a;  // one entry per neighbor position
};

// 1×n_pads row: pad 0 driven, pad 1 measured (grounded), and one of the
// remaining pads driven in turn.  Currents are magnitudes at the measured pad.
DistanceSweep distance_sweep(const ArrayGeometry& geom, double h_um,
                             double rho_nno_ohm_m, double rho_hnno_ohm_m,
                             double thickness_nm, double v_drive,
                             const SolveOptions& opts = {});

// ny rows × nx columns matrix of potentials.
void write_potential_csv(const PotentialField& field,
                         const std::filesystem::path& path);

}  // namespace nnosim
