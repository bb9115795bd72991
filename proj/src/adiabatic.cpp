#include "rydgauge/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rydgauge/threadpool.hpp"

namespace rydgauge::adiabatic {

namespace {

constexpr double kAmbiguousOverlap = 1e-3;
constexpr double kDegenerateEnergy = 1e-6;
constexpr double kAsymTol = 0.05;

void solve_inplane(double rho, double z, const ModelParams& params, ScanFrame& out) {
    const Mat16d h = model::hint_inplane(rho, z, params);
    out.rho = rho;
    out.z = z;
    kernels::eigh16(h.data(), out.energies.data(), out.vec.data());
    for (int k = 0; k < kDim; ++k) out.labels[k] = k;
}

// Canonical local sign: largest-magnitude component of each column positive.
void canonical_signs(ScanFrame& f) {
    for (int k = 0; k < kDim; ++k) {
        double* v = f.vec.data() + k * kDim;
        int imax = 0;
        for (int i = 1; i < kDim; ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        if (v[imax] < 0)
            for (int i = 0; i < kDim; ++i) v[i] = -v[i];
    }
}

double overlap(const ScanFrame& a, int ka, const ScanFrame& b, int kb) {
    const double* x = a.vec.data() + ka * kDim;
    const double* y = b.vec.data() + kb * kDim;
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) s += x[i] * y[i];
    return s;
}

// Greedy max-|overlap| assignment from the columns of prev to the columns of
// cur; carries labels, flips signs to keep consecutive overlaps positive.
void match_frames(const ScanFrame& prev, ScanFrame& cur, const char* where_tag) {
    double absO[kDim][kDim];
    double O[kDim][kDim];
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) {
            O[a][b] = overlap(prev, a, cur, b);
            absO[a][b] = std::abs(O[a][b]);
        }
    bool row_used[kDim] = {}, col_used[kDim] = {};
    std::array<int, kDim> labels{};
    for (int pick = 0; pick < kDim; ++pick) {
        int ba = -1, bb = -1;
        double best = -1.0;
        for (int a = 0; a < kDim; ++a) {
            if (row_used[a]) continue;
            for (int b = 0; b < kDim; ++b) {
                if (col_used[b]) continue;
                if (absO[a][b] > best) {
                    best = absO[a][b];
                    ba = a;
                    bb = b;
                }
            }
        }
        // Ambiguity contract: a second candidate within 1e-3 of the winner in
        // the winner's row is fatal unless the two columns are energy
        // degenerate (then either choice names the same physical subspace and
        // the lower column index wins by construction of the scan order).
        double second = -1.0;
        int second_col = -1;
        for (int b = 0; b < kDim; ++b) {
            if (col_used[b] || b == bb) continue;
            if (absO[ba][b] > second) {
                second = absO[ba][b];
                second_col = b;
            }
        }
        if (second >= 0 && best - second < kAmbiguousOverlap &&
            std::abs(cur.energies[bb] - cur.energies[second_col]) > kDegenerateEnergy) {
            std::ostringstream msg;
            msg << "surface tracking ambiguous at " << where_tag << " rho=" << cur.rho
                << " z=" << cur.z << ": overlaps " << best << " and " << second
                << " within " << kAmbiguousOverlap;
            throw std::runtime_error(msg.str());
        }
        if (second >= 0 && best - second < kAmbiguousOverlap && second_col < bb) {
            std::swap(bb, second_col);  // degenerate pair: deterministic pick
        }
        row_used[ba] = true;
        col_used[bb] = true;
        labels[bb] = prev.labels[ba];
        if (O[ba][bb] < 0) {
            double* v = cur.vec.data() + bb * kDim;
            for (int i = 0; i < kDim; ++i) v[i] = -v[i];
        }
    }
    cur.labels = labels;
}

SurfaceScan scan_line(const ModelParams& params, int n, int threads,
                      const std::function<std::pair<double, double>(int)>& coord) {
    params.validate();
    if (n < 2) throw std::invalid_argument("scan needs at least 2 grid points");
    SurfaceScan scan;
    scan.params = params;
    scan.frames.resize(n);
    parallel_for(n, threads, [&](int k) {
        const auto [rho, z] = coord(k);
        solve_inplane(rho, z, params, scan.frames[k]);
    });
    return scan;
}

}  // namespace

int SurfaceScan::column_of(int k, int label) const {
    const auto& lab = frames[k].labels;
    for (int c = 0; c < kDim; ++c)
        if (lab[c] == label) return c;
    throw std::logic_error("label not present in frame");
}

int SurfaceScan::nearest_frame(double rho) const {
    int best = 0;
    double dist = std::numeric_limits<double>::max();
    for (int k = 0; k < size(); ++k) {
        const double d = std::abs(frames[k].rho - rho);
        if (d < dist) {
            dist = d;
            best = k;
        }
    }
    return best;
}

AdiabaticFrame eigensystem_at(const Position& pos, const ModelParams& params) {
    params.validate();
    if (!(pos.r() > 0)) throw std::domain_error("eigensystem_at: R = 0 is singular");
    ScanFrame f;
    solve_inplane(pos.rho, pos.z, params, f);
    canonical_signs(f);
    AdiabaticFrame out;
    out.pos = {pos.rho, pos.z, 0.0};
    out.energies = f.energies;
    out.labels = f.labels;
    for (int k = 0; k < kDim; ++k)
        for (int i = 0; i < kDim; ++i) out.states[k][i] = f.vec[k * kDim + i];
    return pos.phi == 0.0 ? out : rotate_state(out, pos.phi);
}

AdiabaticFrame rotate_state(const AdiabaticFrame& frame, double phi) {
    AdiabaticFrame out = frame;
    out.pos.phi = frame.pos.phi + phi;
    for (int i = 0; i < kDim; ++i) {
        const cplx ph = std::polar(1.0, -model::total_m(i) * phi);
        for (int k = 0; k < kDim; ++k) out.states[k][i] = frame.states[k][i] * ph;
    }
    return out;
}

SurfaceScan scan_radial(const ModelParams& params, double rho_min, double rho_max,
                        int n, double z, int threads) {
    if (!(rho_min > 0) || !(rho_max > rho_min))
        throw std::invalid_argument("scan_radial: need 0 < rho_min < rho_max");
    const double h = (rho_max - rho_min) / (n - 1);
    return scan_line(params, n, threads, [=](int k) {
        return std::pair<double, double>(rho_min + h * k, z);
    });
}

SurfaceScan scan_axial(const ModelParams& params, double rho, double z_min,
                       double z_max, int n, int threads) {
    if (!(rho > 0) || !(z_max > z_min))
        throw std::invalid_argument("scan_axial: need rho > 0 and z_max > z_min");
    const double h = (z_max - z_min) / (n - 1);
    return scan_line(params, n, threads, [=](int k) {
        return std::pair<double, double>(rho, z_min + h * k);
    });
}

void track_surfaces(SurfaceScan& scan) {
    const int n = scan.size();
    // Seed inside the scan at the point nearest rho = 1 (for axial scans all
    // frames share rho, so this lands on the z grid's first best match, which
    // is as good as any interior point). Never seed at the ends: the far
    // region is asymptotically degenerate and overlap assignment is ill-posed
    // there.
    int seed = 0;
    double dist = std::numeric_limits<double>::max();
    for (int k = 0; k < n; ++k) {
        const double d = std::hypot(scan.frames[k].rho - 1.0, scan.frames[k].z);
        if (d < dist) {
            dist = d;
            seed = k;
        }
    }
    seed = std::clamp(seed, 1, n - 2);
    scan.seed_index = seed;
    for (int k = 0; k < kDim; ++k) scan.frames[seed].labels[k] = k;
    canonical_signs(scan.frames[seed]);
    for (int k = seed + 1; k < n; ++k)
        match_frames(scan.frames[k - 1], scan.frames[k], "forward sweep");
    for (int k = seed - 1; k >= 0; --k)
        match_frames(scan.frames[k + 1], scan.frames[k], "backward sweep");
    scan.tracked = true;
    scan.phases_fixed = false;
}

void fix_phases_parallel_transport(SurfaceScan& scan, const Position& reference) {
    if (!scan.tracked)
        throw std::logic_error("fix_phases_parallel_transport: scan is not tracked");
    const int n = scan.size();
    int ref = -1;
    for (int k = 0; k < n; ++k) {
        if (std::abs(scan.frames[k].rho - reference.rho) < 1e-9 &&
            std::abs(scan.frames[k].z - reference.z) < 1e-9) {
            ref = k;
            break;
        }
    }
    if (ref < 0)
        throw std::invalid_argument("fix_phases_parallel_transport: reference is not a grid point");

    canonical_signs(scan.frames[ref]);
    for (int dir = -1; dir <= 1; dir += 2) {
        for (int k = ref + dir; k >= 0 && k < n; k += dir) {
            const ScanFrame& prev = scan.frames[k - dir];
            ScanFrame& cur = scan.frames[k];
            for (int lab = 0; lab < kDim; ++lab) {
                const int cp = scan.column_of(k - dir, lab);
                const int cc = scan.column_of(k, lab);
                const double o = overlap(prev, cp, cur, cc);
                if (std::abs(o) < kAmbiguousOverlap) {
                    std::ostringstream msg;
                    msg << "parallel transport sign ambiguous for label " << lab
                        << " at rho=" << cur.rho << " z=" << cur.z << " (overlap " << o << ")";
                    throw std::runtime_error(msg.str());
                }
                if (o < 0) {
                    double* v = cur.vec.data() + cc * kDim;
                    for (int i = 0; i < kDim; ++i) v[i] = -v[i];
                }
            }
        }
    }
    scan.phases_fixed = true;
}

namespace {

// Deepest strict interior local minimum of a curve; -1 when none exists.
int deepest_interior_min(const std::vector<double>& c) {
    int best = -1;
    for (int k = 1; k + 1 < static_cast<int>(c.size()); ++k)
        if (c[k - 1] > c[k] && c[k] < c[k + 1] && (best < 0 || c[k] < c[best])) best = k;
    return best;
}

std::vector<double> curve_of(const SurfaceScan& scan, int label) {
    std::vector<double> c(scan.size());
    for (int k = 0; k < scan.size(); ++k)
        c[k] = scan.frames[k].energies[scan.column_of(k, label)];
    return c;
}

// Continue one labeled state outward from the last scan frame through a
// radius ladder and report its energy at R = 50. Each rung re-solves and
// re-identifies the state by overlap; rung spacing is small enough in
// log-R that overlaps stay near 1.
double asymptote_at_50(const SurfaceScan& scan, int label) {
    static const double ladder[] = {8.0, 12.0, 20.0, 35.0, 50.0};
    const ScanFrame* prev = &scan.frames[scan.size() - 1];
    int col = scan.column_of(scan.size() - 1, label);
    ScanFrame cur;
    ScanFrame carry = *prev;
    for (const double r : ladder) {
        solve_inplane(r, carry.z, scan.params, cur);
        int bc = 0;
        double best = -1.0;
        for (int b = 0; b < kDim; ++b) {
            const double o = std::abs(overlap(carry, col, cur, b));
            if (o > best) {
                best = o;
                bc = b;
            }
        }
        carry = cur;
        col = bc;
    }
    return carry.energies[col];
}

}  // namespace

WellDescriptor find_well_state(const SurfaceScan& scan) {
    if (!scan.tracked) throw std::logic_error("find_well_state: scan is not tracked");
    std::vector<WellDescriptor> cands;
    for (int lab = 0; lab < kDim; ++lab) {
        const auto c = curve_of(scan, lab);
        const int k = deepest_interior_min(c);
        if (k < 0) continue;
        WellDescriptor w;
        w.surface_label = lab;
        w.min_index = k;
        w.rho_min = scan.frames[k].rho;
        w.min_energy = c[k];
        w.rim = *std::max_element(c.begin() + k, c.end());
        w.rim_depth = w.rim - w.min_energy;
        w.asym_matched = std::abs(c.back() - (-1.0)) < kAsymTol;
        cands.push_back(w);
    }
    if (cands.empty())
        throw std::runtime_error("find_well_state: no curve has an interior minimum");
    // Prefer curves that approach the -1 asymptote; the symmetric level
    // scheme has none, and then the deepest confinement wins outright.
    const bool any_primary =
        std::any_of(cands.begin(), cands.end(), [](const auto& w) { return w.asym_matched; });
    const WellDescriptor* best = nullptr;
    for (const auto& w : cands) {
        if (any_primary && !w.asym_matched) continue;
        if (!best || w.rim_depth > best->rim_depth) best = &w;
    }
    WellDescriptor w = *best;
    if (!(w.rim_depth > 0))
        throw std::runtime_error("find_well_state: no confining minimum found");
    w.asymptote = asymptote_at_50(scan, w.surface_label);
    w.depth = w.asymptote - w.min_energy;
    return w;
}

CrossingPair find_crossing_pair(const SurfaceScan& scan) {
    if (!scan.tracked) throw std::logic_error("find_crossing_pair: scan is not tracked");
    struct Cand {
        int label;
        double min_energy;
    };
    std::vector<Cand> cands;
    for (int lab = 0; lab < kDim; ++lab) {
        const auto c = curve_of(scan, lab);
        int best = -1;
        for (int k = 1; k + 1 < scan.size(); ++k) {
            const double rho = scan.frames[k].rho;
            if (rho < 0.9 || rho > 1.6) continue;
            if (c[k - 1] > c[k] && c[k] < c[k + 1] && (best < 0 || c[k] < c[best])) best = k;
        }
        if (best >= 0) cands.push_back({lab, c[best]});
    }
    if (cands.size() < 2)
        throw std::runtime_error("find_crossing_pair: fewer than two trapping curves");
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.min_energy < b.min_energy; });
    CrossingPair pair;
    pair.label_deep = cands[0].label;
    pair.label_shallow = cands[1].label;
    const auto c1 = curve_of(scan, pair.label_deep);
    const auto c2 = curve_of(scan, pair.label_shallow);
    pair.min_gap = std::numeric_limits<double>::max();
    for (int k = 0; k < scan.size(); ++k) {
        const double g = std::abs(c2[k] - c1[k]);
        if (g < pair.min_gap) {
            pair.min_gap = g;
            pair.rho_min_gap = scan.frames[k].rho;
        }
    }
    return pair;
}

WellTables well_tables(const SurfaceScan& scan) {
    WellTables t;
    t.desc = find_well_state(scan);
    const int n = scan.size();
    t.rho.resize(n);
    t.energy.resize(n);
    t.jz.resize(n);
    t.aphi.resize(n);
    const auto& jz = model::jz_matrix();
    for (int k = 0; k < n; ++k) {
        const int c = scan.column_of(k, t.desc.surface_label);
        const double* v = scan.frames[k].vec.data() + c * kDim;
        double s = 0.0;
        for (int i = 0; i < kDim; ++i) s += jz(i, i) * v[i] * v[i];
        t.rho[k] = scan.frames[k].rho;
        t.energy[k] = scan.frames[k].energies[c];
        t.jz[k] = s;
        t.aphi[k] = s / t.rho[k];
    }
    return t;
}

double PotentialMap::axis(int i) const {
    return -extent + 2.0 * extent * i / (n - 1);
}

namespace {

PotentialMap map_xy(double extent, int n, const ModelParams& params, int threads) {
    // The map is a function of the pixel radius alone; identify the well
    // column by the energy rank it holds at the nearest radial-scan frame,
    // then read the rank from a fresh solve at the exact pixel radius.
    SurfaceScan scan = scan_radial(params, 0.7, 6.0, 4000, 0.0, threads);
    track_surfaces(scan);
    const WellDescriptor well = find_well_state(scan);

    PotentialMap map;
    map.plane = MapPlane::xy;
    map.n = n;
    map.extent = extent;
    map.values.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());

    // Distinct radii: pixels are mirror images in both axes and in x<->y.
    std::map<std::pair<int, int>, double> cache;
    std::vector<std::pair<int, int>> keys;
    for (int iy = 0; iy <= (n - 1) / 2; ++iy)
        for (int ix = iy; ix <= (n - 1) / 2; ++ix)
            keys.emplace_back(ix, iy);
    std::vector<double> vals(keys.size());
    parallel_for(static_cast<int>(keys.size()), threads, [&](int idx) {
        const auto [ix, iy] = keys[idx];
        PotentialMap probe = map;  // for axis() only
        const double rho = std::hypot(probe.axis(ix), probe.axis(iy));
        if (rho < 0.7 || rho > 6.0) {
            vals[idx] = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const int kf = scan.nearest_frame(rho);
        const int rank = scan.column_of(kf, well.surface_label);
        ScanFrame f;
        solve_inplane(rho, 0.0, params, f);
        vals[idx] = f.energies[rank];
    });
    for (size_t i = 0; i < keys.size(); ++i) cache[keys[i]] = vals[i];

    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            int rx = std::min(ix, n - 1 - ix);
            int ry = std::min(iy, n - 1 - iy);
            if (rx < ry) std::swap(rx, ry);
            map.values[static_cast<size_t>(iy) * n + ix] = cache[{rx, ry}];
        }
    return map;
}

PotentialMap map_xz(double extent, int n, const ModelParams& params, int threads) {
    PotentialMap map;
    map.plane = MapPlane::xz;
    map.n = n;
    map.extent = extent;
    map.values.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());

    // Half-plane grid over the distinct (|x|, |z|) pairs. The anchor row
    // z=|z|_min is labeled from the radial scan; each column then marches
    // upward in z, following the well vector by pointwise overlap.
    std::vector<int> xs, zs;  // distinct |coordinate| pixel indices, ascending value
    for (int i = (n - 1) / 2; i >= 0; --i) xs.push_back(i);
    zs = xs;

    SurfaceScan scan = scan_radial(params, 0.7, 6.0, 4000, 0.0, threads);
    track_surfaces(scan);
    const WellDescriptor well = find_well_state(scan);

    const int nx = static_cast<int>(xs.size());
    const int nz = static_cast<int>(zs.size());
    std::vector<double> half(static_cast<size_t>(nx) * nz,
                             std::numeric_limits<double>::quiet_NaN());

    parallel_for(nx, threads, [&](int cx) {
        const double rho = std::abs(map.axis(xs[cx]));
        if (rho < 0.7 || rho > 6.0) return;  // outside the tracked window
        const int kf = scan.nearest_frame(rho);
        const int c0 = scan.column_of(kf, well.surface_label);
        std::array<double, kDim> carry;
        std::memcpy(carry.data(), scan.frames[kf].vec.data() + c0 * kDim,
                    kDim * sizeof(double));
        for (int cz = 0; cz < nz; ++cz) {
            const double z = std::abs(map.axis(zs[cz]));
            ScanFrame f;
            solve_inplane(rho, z, params, f);
            int bc = 0;
            double best = -1.0;
            for (int b = 0; b < kDim; ++b) {
                double o = 0.0;
                for (int i = 0; i < kDim; ++i) o += carry[i] * f.vec[b * kDim + i];
                if (std::abs(o) > best) {
                    best = std::abs(o);
                    bc = b;
                }
            }
            std::memcpy(carry.data(), f.vec.data() + bc * kDim, kDim * sizeof(double));
            half[static_cast<size_t>(cx) * nz + cz] = f.energies[bc];
        }
    });

    for (int iz = 0; iz < n; ++iz)
        for (int ix = 0; ix < n; ++ix) {
            const int rx = std::min(ix, n - 1 - ix);
            const int rz = std::min(iz, n - 1 - iz);
            // xs holds indices (n-1)/2 .. 0, i.e. ascending |coordinate|.
            const int cx = (n - 1) / 2 - rx;
            const int cz = (n - 1) / 2 - rz;
            map.values[static_cast<size_t>(iz) * n + ix] =
                half[static_cast<size_t>(cx) * nz + cz];
        }
    return map;
}

}  // namespace

PotentialMap potential_map(MapPlane plane, double extent, int n,
                           const ModelParams& params, int threads) {
    params.validate();
    if (n < 2 || !(extent > 0)) throw std::invalid_argument("potential_map: bad window");
    return plane == MapPlane::xy ? map_xy(extent, n, params, threads)
                                 : map_xz(extent, n, params, threads);
}

int xz_half_width_deg(const ModelParams& params, int threads) {
    // Polar rays (r sin(theta), 0, r cos(theta)); theta = 90 deg is the
    // radial line in the plane. March away from the plane one degree at a
    // time, continuing each ray point's well vector by overlap, until the
    // ray's curve minimum rises above -1.
    constexpr int kRayN = 2151;
    constexpr double kRayLo = 0.7, kRayHi = 5.0;
    SurfaceScan scan = scan_radial(params, kRayLo, kRayHi, kRayN, 0.0, threads);
    track_surfaces(scan);
    const WellDescriptor well = find_well_state(scan);

    std::vector<std::array<double, kDim>> carry(kRayN);
    for (int k = 0; k < kRayN; ++k) {
        const int c = scan.column_of(k, well.surface_label);
        std::memcpy(carry[k].data(), scan.frames[k].vec.data() + c * kDim,
                    kDim * sizeof(double));
    }

    const double pi = std::acos(-1.0);
    int half = 0;
    for (int step = 1; step < 90; ++step) {
        const double theta = (90.0 - step) * pi / 180.0;
        const double sn = std::sin(theta), cs = std::cos(theta);
        std::vector<double> ray_energy(kRayN);
        parallel_for(kRayN, threads, [&](int k) {
            const double r = kRayLo + (kRayHi - kRayLo) * k / (kRayN - 1);
            ScanFrame f;
            solve_inplane(r * sn, r * cs, params, f);
            int bc = 0;
            double best = -1.0;
            for (int b = 0; b < kDim; ++b) {
                double o = 0.0;
                for (int i = 0; i < kDim; ++i) o += carry[k][i] * f.vec[b * kDim + i];
                if (std::abs(o) > best) {
                    best = std::abs(o);
                    bc = b;
                }
            }
            std::memcpy(carry[k].data(), f.vec.data() + bc * kDim, kDim * sizeof(double));
            ray_energy[k] = f.energies[bc];
        });
        if (*std::min_element(ray_energy.begin(), ray_energy.end()) <= -1.0)
            half = step;
        else
            break;
    }
    return half;
}

}  // namespace rydgauge::adiabatic
