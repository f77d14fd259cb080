#pragma once
#include <array>

#include "cwsim/contact_wave.hpp"
#include "cwsim/eigen_structure.hpp"
#include "cwsim/perturbation.hpp"

namespace cwsim {

// Characteristic frame built pointwise from the contact wave: left/right eigenvector
// matrices of the frozen-coefficient A1, the viscosity matrix entries, and the
// diagonal variables B = L (Phi, Psi, W)^t with x-derivatives up to third order.
struct DiagonalFrame {
    double t = 0.0;
    Field lambda3;
    std::array<Field, 9> L, R;  // row-major entries per node
    Field b11, b12, b13, b22;
    std::array<Field, 3> B;
    // dB[k][j] = k-th x-derivative of b_j, k = 0..3 (dB[0] aliases B's values)
    std::array<std::array<Field, 3>, 4> dB;
    Field v_bar;  // the frame's coefficient field

    Mat3 L_at(int i) const;
    Mat3 R_at(int i) const;
    Mat3 A4_at(int i) const;
};

// The frame coefficients come from the contact-wave volume as printed; pass
// v_override (e.g. the ansatz volume) to record the alternative-coefficient
// energies instead.
DiagonalFrame diagonal_frame(const PerturbationSet& pert, const ContactWave& cw,
                             const GasModel& gas, const Field* v_override = nullptr);

}  // namespace cwsim
