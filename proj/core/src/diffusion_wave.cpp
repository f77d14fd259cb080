#include "cwsim/diffusion_wave.hpp"

#include <cmath>

namespace cwsim {

GaussianSample diffusion_wave_point(double lambda, double x, double t) {
    const double tau = 1.0 + t;
    const double z = x - lambda * tau;
    const double amp = 1.0 / std::sqrt(4.0 * M_PI * tau);
    const double w = amp * std::exp(-z * z / (4.0 * tau));
    GaussianSample s;
    s.value = w;
    s.d_x = -z / (2.0 * tau) * w;
    s.d_t = w * (z * z / (4.0 * tau * tau) - 0.5 / tau + lambda * z / (2.0 * tau));
    return s;
}

double lambda1_minus(const EndStates& ends, const GasModel& gas) {
    return -std::sqrt(gas.gamma * ends.p_minus(gas) / ends.v_minus);
}

double lambda3_plus(const EndStates& ends, const GasModel& gas) {
    return std::sqrt(gas.gamma * ends.p_plus(gas) / ends.v_plus);
}

DiffusionWaves diffusion_waves(const EndStates& ends, const GasModel& gas,
                               const Grid1D& grid, double t) {
    DiffusionWaves dw;
    dw.t = t;
    dw.lambda1 = lambda1_minus(ends, gas);
    dw.lambda3 = lambda3_plus(ends, gas);
    dw.theta1 = Field(grid);
    dw.theta3 = Field(grid);
    dw.theta1_x = Field(grid);
    dw.theta3_x = Field(grid);
    dw.theta1_t = Field(grid);
    dw.theta3_t = Field(grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double x = grid.x[static_cast<size_t>(i)];
        const GaussianSample s1 = diffusion_wave_point(dw.lambda1, x, t);
        const GaussianSample s3 = diffusion_wave_point(dw.lambda3, x, t);
        dw.theta1[i] = s1.value;
        dw.theta1_x[i] = s1.d_x;
        dw.theta1_t[i] = s1.d_t;
        dw.theta3[i] = s3.value;
        dw.theta3_x[i] = s3.d_x;
        dw.theta3_t[i] = s3.d_t;
    }
    return dw;
}

}  // namespace cwsim
