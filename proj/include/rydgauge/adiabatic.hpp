#pragma once
// Adiabatic surfaces: eigensystems over spatial grids, continuity tracking
// through crossings, the parallel-transport phase convention, well detection,
// and the 2D potential maps.
//
// All scans live in the phi=0 half-plane where the Hamiltonian is real
// symmetric; eigensystems at general phi are produced by rotating the phi=0
// solution with the diagonal phases exp(-i M phi).

#include <string>
#include <vector>

#include "rydgauge/kernels.hpp"
#include "rydgauge/model.hpp"

namespace rydgauge::adiabatic {

using model::ModelParams;
using model::Position;

struct AdiabaticFrame {
    Position pos;
    std::array<double, kDim> energies{};   // ascending
    std::array<Vec16c, kDim> states{};     // states[k] pairs with energies[k]
    std::array<int, kDim> labels{};        // continuity label of column k
};

// One grid point of a phi=0 scan; vectors are real there.
struct ScanFrame {
    double rho = 0.0;
    double z = 0.0;
    std::array<double, kDim> energies{};        // ascending
    std::array<double, kDim * kDim> vec{};      // component i of column k at [k*16+i]
    std::array<int, kDim> labels{};
};

struct SurfaceScan {
    ModelParams params;
    std::vector<ScanFrame> frames;   // ordered along the scan coordinate
    bool tracked = false;
    bool phases_fixed = false;
    int seed_index = -1;

    const ScanFrame& frame(int k) const { return frames[k]; }
    int size() const { return static_cast<int>(frames.size()); }
    // Column currently carrying a label within frame k.
    int column_of(int k, int label) const;
    int nearest_frame(double rho) const;
};

struct WellDescriptor {
    int surface_label = -1;
    double rho_min = 0.0;     // location of the confining minimum
    double depth = 0.0;       // asymptote minus minimum (may be negative)
    double asymptote = 0.0;   // curve value at R = 50
    // Extensions used by selection and the bound-state solver:
    double min_energy = 0.0;
    double rim = 0.0;         // highest point right of the minimum
    double rim_depth = 0.0;   // rim minus minimum; > 0 for a usable well
    int min_index = -1;
    bool asym_matched = false;  // asymptote within 0.05 of -1
};

struct CrossingPair {
    int label_deep = -1;      // reported as state 1
    int label_shallow = -1;   // reported as state 2
    double rho_min_gap = 0.0; // location of the minimal gap
    double min_gap = 0.0;
};

// Full spectral decomposition at a point. Labels are ascending-energy ranks;
// phases follow the local canonical sign convention at phi=0 and the
// rotation phases at general phi.
AdiabaticFrame eigensystem_at(const Position& pos, const ModelParams& params);

// Apply exp(-i Jz phi) to every column of a phi=0 frame.
AdiabaticFrame rotate_state(const AdiabaticFrame& frame, double phi);

// Radial scan at fixed z (default 0) over [rho_min, rho_max], n points.
SurfaceScan scan_radial(const ModelParams& params, double rho_min, double rho_max,
                        int n, double z = 0.0, int threads = 1);

// Scan along z at fixed rho (grid ordered by z).
SurfaceScan scan_axial(const ModelParams& params, double rho, double z_min,
                       double z_max, int n, int threads = 1);

// Assign continuity labels, seeded at the interior grid point nearest
// rho = 1 (ascending-energy ranks there) and propagated outward by greedy
// max-|overlap| matching. Throws a tracking error when an assignment is
// ambiguous: two candidate overlaps within 1e-3 while the candidate energies
// differ by more than 1e-6 (exact degeneracies tie-break deterministically).
void track_surfaces(SurfaceScan& scan);

// Sign convention: at the reference frame each labeled vector has its
// largest-magnitude component positive; away from it signs are chosen so
// consecutive like-labeled overlaps are positive. Throws a degeneracy error
// if a consecutive overlap magnitude drops below 1e-3.
void fix_phases_parallel_transport(SurfaceScan& scan, const Position& reference);

// Well-curve selection on a tracked, phase-fixed radial scan at z=0; the
// asymptote is evaluated at R=50 by continuing the final frame outward
// through a geometric ladder of radii.
WellDescriptor find_well_state(const SurfaceScan& scan);

// The two tracked curves with the deepest interior minima in rho [0.9, 1.6];
// label_deep is the lower one.
CrossingPair find_crossing_pair(const SurfaceScan& scan);

// Well tables consumed by the gauge and boundstates modules.
struct WellTables {
    std::vector<double> rho;
    std::vector<double> energy;      // well curve
    std::vector<double> jz;          // <Jz> along the well curve
    std::vector<double> aphi;        // jz / rho
    WellDescriptor desc;
};
WellTables well_tables(const SurfaceScan& scan);

enum class MapPlane { xy, xz };

struct PotentialMap {
    MapPlane plane = MapPlane::xy;
    int n = 0;                   // n x n pixels, both axes span [-extent, extent]
    double extent = 0.0;
    std::vector<double> values;  // row-major [iy * n + ix]; NaN outside the domain
    double axis(int i) const;    // pixel center coordinate
};

// Well-state energy over a plane through the origin. The xy map reuses the
// radial identification per pixel radius; the xz map marches the well state
// upward in z column by column from the z=0 anchor row.
PotentialMap potential_map(MapPlane plane, double extent, int n,
                           const ModelParams& params, int threads = 1);

// Angular half-width (degrees) of the region around the x axis whose polar
// rays keep a well-curve minimum at or below -1: rays are walked away from
// the plane in 1-degree steps while continuing the well state pointwise.
int xz_half_width_deg(const ModelParams& params, int threads = 1);

}  // namespace rydgauge::adiabatic
