#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qpm/hilbert.hpp"

namespace qpm {

/// Seed for reproducible generation. Distinct stream ids give independent
/// sequences for parallel shards.
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;
};

inline std::mt19937_64 make_rng(Seed seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed.value & 0xffffffffu),
                      static_cast<std::uint32_t>(seed.value >> 32),
                      static_cast<std::uint32_t>(seed.stream & 0xffffffffu),
                      static_cast<std::uint32_t>(seed.stream >> 32)};
    return std::mt19937_64(seq);
}

inline Complex gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return Complex(re, im);
}

inline ComplexMatrix ginibre(Eigen::Index d, std::mt19937_64& rng) {
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gaussian_complex(rng);
    return g;
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal of R
/// phase-fixed to be real positive.
inline ComplexMatrix haar_unitary(Eigen::Index d, std::mt19937_64& rng) {
    ComplexMatrix g = ginibre(d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= (a > 0 ? rii / a : Complex(1.0));
    }
    return q;
}

inline ComplexVector haar_vector(Eigen::Index d, std::mt19937_64& rng) {
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = gaussian_complex(rng);
    v.normalize();
    return v;
}

enum class Purity { pure, mixed };

/// Pure: Haar-random unit vector's outer product. Mixed: normalized G G† for
/// Ginibre G. Deterministic per seed.
inline DensityMatrix random_density(Eigen::Index d, Purity purity, Seed seed) {
    auto rng = make_rng(seed);
    ComplexMatrix m;
    if (purity == Purity::pure) {
        ComplexVector v = haar_vector(d, rng);
        m = v * v.adjoint();
    } else {
        ComplexMatrix g = ginibre(d, rng);
        m = g * g.adjoint();
        m /= m.trace().real();
    }
    return DensityMatrix::validate(m, 1e-9);
}

inline DensityMatrix random_density(Eigen::Index d, Purity purity, std::mt19937_64& rng) {
    ComplexMatrix m;
    if (purity == Purity::pure) {
        ComplexVector v = haar_vector(d, rng);
        m = v * v.adjoint();
    } else {
        ComplexMatrix g = ginibre(d, rng);
        m = g * g.adjoint();
        m /= m.trace().real();
    }
    return DensityMatrix::validate(m, 1e-9);
}

/// Rank-one PVM from the columns of a Haar-random unitary.
inline Pvm random_pvm(Eigen::Index d, Seed seed) {
    auto rng = make_rng(seed);
    ComplexMatrix u = haar_unitary(d, rng);
    std::vector<ComplexVector> basis;
    basis.reserve(d);
    for (Eigen::Index i = 0; i < d; ++i) basis.push_back(u.col(i));
    return Pvm::from_basis(basis, 1e-9);
}

/// Random projector of the given rank (span of the first `rank` columns of a
/// Haar unitary).
inline Projector random_projector(Eigen::Index d, int rank, std::mt19937_64& rng) {
    ComplexMatrix u = haar_unitary(d, rng);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < rank; ++i) m += u.col(i) * u.col(i).adjoint();
    return Projector::validate(m, 1e-9);
}

}  // namespace qpm
