#pragma once

#include "sshd/model.hpp"

namespace sshd {

enum class Side { Plus, Minus }; // lambda + i0 or lambda - i0

struct PhaseGeometry {
  double yM = 0.0;
  double yL12 = 0.0, yR12 = 0.0; // |k'| = |k''|
  double yL23 = 0.0, yR23 = 0.0; // |k''| = |k'''|
  double cA = 0.0, cB = 0.0;
  double vMax = 0.0;
};

double k_of(double y, const HoppingParams &p);
double k2_of(double y, const HoppingParams &p);
cplx k2_of(cplx q, const HoppingParams &p); // analytic continuation of k^2

cplx h_of(cplx q, const HoppingParams &p);
cplx h_bar(cplx q, const HoppingParams &p); // conj(h(conj q)) = gamma1 + conj(gamma2) e^{iq}

int winding_number(const HoppingParams &p, int samples = 4096);

double eta_of(double lambda, const HoppingParams &p);
cplx eta_of_energy(cplx z, const HoppingParams &p);  // no domain check
cplx eta_of_omega(cplx omega, const HoppingParams &p);

double q_star_lambda(double lambda, const HoppingParams &p);
cplx q_star_complex(cplx omega, const HoppingParams &p);
double q_star_boundary(double lambda, Side side, const HoppingParams &p);

double k_derivative(double y, int order, const HoppingParams &p);
double A_of(double y, const HoppingParams &p); // k(y) - gamma-
double B_of(double y, const HoppingParams &p); // gamma+ - k(y)
double abs_k_prime(double y, const HoppingParams &p);

PhaseGeometry phase_geometry(const HoppingParams &p);

double chebyshev_T(int n, double x);

} // namespace sshd
