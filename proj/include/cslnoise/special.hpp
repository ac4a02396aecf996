#pragma once

namespace csl::special {

/// exp(-x) I_0(x) and exp(-x) I_1(x) for x >= 0. Finite for any finite x.
double bessel_i0e(double x);
double bessel_i1e(double x);

/// 1 - exp(-x) (I_0(x) + I_1(x)), the transverse part of the cylinder
/// diffusion constant at x = L^2 / 2 r_c^2. Accurate as x -> 0 (~ x/2).
double cylinder_transverse(double x);

}  // namespace csl::special
