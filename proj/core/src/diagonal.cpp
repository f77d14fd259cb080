#include "cwsim/diagonal.hpp"

namespace cwsim {

Mat3 DiagonalFrame::L_at(int i) const {
    return Mat3{{{L[0][i], L[1][i], L[2][i]},
                 {L[3][i], L[4][i], L[5][i]},
                 {L[6][i], L[7][i], L[8][i]}}};
}

Mat3 DiagonalFrame::R_at(int i) const {
    return Mat3{{{R[0][i], R[1][i], R[2][i]},
                 {R[3][i], R[4][i], R[5][i]},
                 {R[6][i], R[7][i], R[8][i]}}};
}

Mat3 DiagonalFrame::A4_at(int i) const {
    return Mat3{{{b11[i], b12[i], b13[i]}, {b12[i], b22[i], b12[i]}, {b13[i], b12[i], b11[i]}}};
}

DiagonalFrame diagonal_frame(const PerturbationSet& pert, const ContactWave& cw,
                             const GasModel& gas, const Field* v_override) {
    const Grid1D& grid = *pert.Phi.grid;
    const Field& v_coef = v_override ? *v_override : cw.v_bar;
    DiagonalFrame f;
    f.t = pert.t;
    f.lambda3 = Field(grid);
    f.v_bar = v_coef;
    for (auto& e : f.L) e = Field(grid);
    for (auto& e : f.R) e = Field(grid);
    f.b11 = Field(grid);
    f.b12 = Field(grid);
    f.b13 = Field(grid);
    f.b22 = Field(grid);
    for (auto& b : f.B) b = Field(grid);

    for (int i = 0; i < grid.n_nodes; ++i) {
        const CharBasis cb = char_basis(v_coef[i], cw.p_plus, gas);
        f.lambda3[i] = cb.lambda3;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                f.L[static_cast<size_t>(3 * r + c)][i] = cb.L[static_cast<size_t>(r)][static_cast<size_t>(c)];
                f.R[static_cast<size_t>(3 * r + c)][i] = cb.R[static_cast<size_t>(r)][static_cast<size_t>(c)];
            }
        f.b11[i] = cb.b11;
        f.b12[i] = cb.b12;
        f.b13[i] = cb.b13;
        f.b22[i] = cb.b22;
        const Vec3 w{pert.Phi[i], pert.Psi[i], pert.W[i]};
        const Vec3 b = mat_vec(cb.L, w);
        f.B[0][i] = b[0];
        f.B[1][i] = b[1];
        f.B[2][i] = b[2];
    }

    for (int j = 0; j < 3; ++j) f.dB[0][static_cast<size_t>(j)] = f.B[static_cast<size_t>(j)];
    for (int k = 1; k <= 3; ++k)
        for (int j = 0; j < 3; ++j)
            f.dB[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                derivative(f.dB[static_cast<size_t>(k - 1)][static_cast<size_t>(j)], 1);
    return f;
}

}  // namespace cwsim
