#pragma once
// Internal Hamiltonian of the atom pair: level-shift diagonal H_S, the
// dipole-dipole exchange coupling V_dd with its analytic gradient, and the
// total azimuthal angular momentum J_z. Dimensionless units throughout:
// energies in units of the magnitude of the lower p-level shift, lengths in
// units of the radius R0 where the exchange scale matches it.

#include <stdexcept>

#include "rydgauge/basis.hpp"
#include "rydgauge/matrix.hpp"

namespace rydgauge::model {

struct ModelParams {
    // Magnitude of the ratio of the two p-level shifts (both shifts are
    // negative in the regime treated here; 1 means a symmetric scheme).
    double delta_ratio = 3.0;
    // Kinetic scale: rotational constant over level-shift magnitude.
    double kappa = 2.8e-6;

    void validate() const {
        if (!(delta_ratio > 0)) throw std::invalid_argument("model.delta_ratio must be > 0");
        if (!(kappa > 0)) throw std::invalid_argument("model.kappa must be > 0");
    }
};

struct Position {
    double rho = 0.0;  // cylindrical radius, >= 0
    double z = 0.0;
    double phi = 0.0;  // radians
    double r() const;
};

// Diagonal level-shift operator: a pair state contributes -1 if its p atom
// sits in m=-1/2, -delta_ratio if in m=+1/2, and 0 for |m|=3/2.
Mat16d stark_hamiltonian(const ModelParams& params);

// Exchange coupling between |s,p> and |p,s> at Cartesian separation (x,y,z),
// in units where the prefactor is 1/R^3. Hermitian; zero inside each block.
Mat16c vdd_cartesian(double x, double y, double z);
Mat16c vdd_matrix(const Position& pos);

// Analytic Cartesian gradient components of vdd.
std::array<Mat16c, 3> grad_vdd_cartesian(double x, double y, double z);

Mat16c hint(const Position& pos, const ModelParams& params);
std::array<Mat16c, 3> grad_hint(const Position& pos, const ModelParams& params);

// Real symmetric specialization for the phi=0 half-plane (y = 0), where all
// matrix elements are real. This is the production eigensolver input.
Mat16d hint_inplane(double rho, double z, const ModelParams& params);

// Constant exchange matrix at unit separation along x; at z=0 the in-plane
// Hamiltonian is stark + w0/rho^3 exactly.
const Mat16d& w0_matrix();

// Diagonal J_z with the integer total azimuthal quantum number per state.
const Mat16d& jz_matrix();
int total_m(int state_index);

}  // namespace rydgauge::model
