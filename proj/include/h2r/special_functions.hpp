#ifndef H2R_SPECIAL_FUNCTIONS_HPP
#define H2R_SPECIAL_FUNCTIONS_HPP

namespace h2r {

// Parameter convention: F(z | m) = integral_0^z dt / sqrt(1 - m sin^2 t),
// with m the *parameter* multiplying sin^2 inside the radical (not the
// modulus k; m = k^2 in the usual modulus convention). Negative m is the
// common regime here.

/// Incomplete elliptic integral of the first kind, F(z | m). Odd in z;
/// F(z | 0) = z. Throws SingularIntegrand for m >= 1 with
/// |z| >= arcsin(1/sqrt(m)), where the integrand blows up.
double ellip_f(double z, double m);

/// Jacobi amplitude am(u | m): the inverse of F(. | m), i.e.
/// ellip_f(am(u|m), m) == u. Requires m < 1 so the amplitude is defined for
/// every real u. Safeguarded Newton; throws NoConvergence on failure.
double jacobi_am(double u, double m);

/// Fresnel integrals, C(z) = integral_0^z cos(pi t^2 / 2) dt and
/// S(z) = integral_0^z sin(pi t^2 / 2) dt. Both odd, C(0) = S(0) = 0.
double fresnel_c(double z);
double fresnel_s(double z);

}  // namespace h2r

#endif
