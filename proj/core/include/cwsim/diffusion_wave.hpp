#pragma once
#include "cwsim/gas.hpp"
#include "cwsim/grid.hpp"

namespace cwsim {

// Unit-mass Gaussians traveling at the endpoint acoustic speeds,
//   theta_i(x,t) = (4 pi (1+t))^{-1/2} exp(-(x - lambda_i (1+t))^2 / (4(1+t))),
// solving theta_t + lambda_i theta_x = theta_xx.
struct GaussianSample {
    double value = 0.0, d_x = 0.0, d_t = 0.0;
};

GaussianSample diffusion_wave_point(double lambda, double x, double t);

double lambda1_minus(const EndStates& ends, const GasModel& gas);
double lambda3_plus(const EndStates& ends, const GasModel& gas);

struct DiffusionWaves {
    double t = 0.0;
    double lambda1 = 0.0, lambda3 = 0.0;
    Field theta1, theta3;
    Field theta1_x, theta3_x;
    Field theta1_t, theta3_t;
};

DiffusionWaves diffusion_waves(const EndStates& ends, const GasModel& gas,
                               const Grid1D& grid, double t);

}  // namespace cwsim
