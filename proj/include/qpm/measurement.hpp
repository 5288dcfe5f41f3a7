#pragma once

#include <algorithm>
#include <cmath>

#include "qpm/hilbert.hpp"

namespace qpm {

inline constexpr double kBranchEps = 1e-12;
inline constexpr double kImagTol = 1e-9;

/// Outcome probability Tr(rho a). The raw trace must be real and inside
/// [-tol, 1+tol]; only then is it clamped to [0, 1].
inline double probability(const DensityMatrix& rho, const Projector& a) {
    require_same_dim(rho.matrix(), a.matrix());
    const Complex t = (rho.matrix() * a.matrix()).trace();
    if (std::abs(t.imag()) > kImagTol)
        throw Error(ErrorKind::NonRealTrace, "Tr(rho a) has a large imaginary part",
                    std::abs(t.imag()));
    const double p = t.real();
    const double tol = std::max(rho.tolerance(), a.tolerance());
    if (p < -tol || p > 1.0 + tol)
        throw Error(ErrorKind::NonRealTrace, "Tr(rho a) is outside [0,1] beyond tolerance",
                    std::max(-p, p - 1.0));
    return std::clamp(p, 0.0, 1.0);
}

/// Selective collapse onto the yes branch: a rho a / Tr(rho a).
inline DensityMatrix collapse_yes(const DensityMatrix& rho, const Projector& a,
                                  double eps = kBranchEps) {
    require_same_dim(rho.matrix(), a.matrix());
    const double p = probability(rho, a);
    if (p <= eps)
        throw Error(ErrorKind::ZeroProbabilityBranch, "yes branch has vanishing probability", p);
    ComplexMatrix m = a.matrix() * rho.matrix() * a.matrix() / p;
    return DensityMatrix::validate(m, std::max(rho.tolerance(), 1e-9));
}

/// Nonselective measurement: a rho a + a~ rho a~.
inline DensityMatrix luders_map(const DensityMatrix& rho, const Projector& a) {
    require_same_dim(rho.matrix(), a.matrix());
    const ComplexMatrix& p = a.matrix();
    const ComplexMatrix q = ComplexMatrix::Identity(a.dim(), a.dim()) - p;
    ComplexMatrix m = p * rho.matrix() * p + q * rho.matrix() * q;
    return DensityMatrix::validate(m, std::max(rho.tolerance(), 1e-9));
}

/// Joint probability of successive yes outcomes, Tr(rho a b a).
inline double wigner_joint(const DensityMatrix& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    const Complex t = (rho.matrix() * a.matrix() * b.matrix() * a.matrix()).trace();
    if (std::abs(t.imag()) > kImagTol)
        throw Error(ErrorKind::NonRealTrace, "Tr(rho a b a) has a large imaginary part",
                    std::abs(t.imag()));
    return std::clamp(t.real(), 0.0, 1.0);
}

/// Unitary conjugation by exp(i phi a) = 1 + (e^{i phi} - 1) a, exact for
/// idempotent a.
inline DensityMatrix phase_rotate(const DensityMatrix& rho, const Projector& a, double phi) {
    require_same_dim(rho.matrix(), a.matrix());
    if (!std::isfinite(phi))
        throw Error(ErrorKind::InvalidArgument, "phase angle must be finite");
    const Complex w = std::exp(Complex(0.0, phi)) - 1.0;
    const ComplexMatrix u =
        ComplexMatrix::Identity(a.dim(), a.dim()) + w * a.matrix();
    ComplexMatrix m = u * rho.matrix() * u.adjoint();
    return DensityMatrix::validate(m, std::max(rho.tolerance(), 1e-9));
}

/// True iff the nonselective measurement of a leaves sigma unchanged.
inline bool is_undisturbed(const DensityMatrix& sigma, const Projector& a, double tol) {
    return max_abs(luders_map(sigma, a).matrix() - sigma.matrix()) <= tol;
}

}  // namespace qpm
