#pragma once

#include <numbers>
#include <vector>

#include "qpm/hilbert.hpp"
#include "qpm/random.hpp"

namespace qpm::testing {

inline ComplexVector ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto& a : amps) v(i++) = a;
    return v.normalized();
}

inline DensityMatrix pure_state(const ComplexVector& v) {
    return DensityMatrix::validate(v * v.adjoint(), 1e-9);
}

inline Projector rank_one(const ComplexVector& v) {
    return Projector::validate(v * v.adjoint(), 1e-9);
}

inline ComplexVector ket0() { return ket({1.0, 0.0}); }
inline ComplexVector ket1() { return ket({0.0, 1.0}); }
inline ComplexVector ket_plus() { return ket({1.0, 1.0}); }
inline ComplexVector ket_minus() { return ket({1.0, -1.0}); }
inline ComplexVector ket_left() { return ket({1.0, Complex(0.0, 1.0)}); }

inline DensityMatrix maximally_mixed(Eigen::Index d) {
    return DensityMatrix::validate(ComplexMatrix::Identity(d, d) / static_cast<double>(d), 1e-9);
}

inline Pvm computational_pvm(Eigen::Index d) {
    std::vector<ComplexVector> basis;
    for (Eigen::Index i = 0; i < d; ++i) {
        ComplexVector e = ComplexVector::Zero(d);
        e(i) = 1.0;
        basis.push_back(e);
    }
    return Pvm::from_basis(basis);
}

inline Pvm hadamard_pvm() {
    return Pvm::from_basis({ket_plus(), ket_minus()});
}

/// Discrete Fourier basis, mutually unbiased with the computational basis.
inline Pvm fourier_pvm(Eigen::Index d) {
    std::vector<ComplexVector> basis;
    for (Eigen::Index k = 0; k < d; ++k) {
        ComplexVector v(d);
        for (Eigen::Index j = 0; j < d; ++j)
            v(j) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * k * j / d)) /
                   std::sqrt(static_cast<double>(d));
        basis.push_back(v);
    }
    return Pvm::from_basis(basis);
}

}  // namespace qpm::testing
