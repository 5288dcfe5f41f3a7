#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qpm/errors.hpp"

namespace qpm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

inline void require_square(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorKind::InvalidArgument, "matrix must be square and nonempty");
    if (!all_finite(m))
        throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "operands have different dimensions");
}

/// Hilbert-Schmidt inner product Tr(a† b).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    return (a.adjoint() * b).trace();
}

/// Validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    static DensityMatrix validate(const ComplexMatrix& m, double tol = kDefaultTol) {
        require_square(m);
        const double herm = max_abs(m - m.adjoint());
        if (herm > tol)
            throw Error(ErrorKind::NotHermitian, "state is not Hermitian", herm);
        const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
        if (trace_dev > tol)
            throw Error(ErrorKind::NotUnitTrace, "state trace differs from 1", trace_dev);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -tol)
            throw Error(ErrorKind::NotPositive, "state has a negative eigenvalue", -min_eig);
        return DensityMatrix(m, tol);
    }

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    double tolerance() const { return tol_; }

  private:
    DensityMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)), tol_(tol) {}
    ComplexMatrix mat_;
    double tol_;
};

/// Validated yes-no observable: Hermitian idempotent.
class Projector {
  public:
    static Projector validate(const ComplexMatrix& m, double tol = kDefaultTol) {
        require_square(m);
        const double herm = max_abs(m - m.adjoint());
        if (herm > tol)
            throw Error(ErrorKind::NotHermitian, "projector is not Hermitian", herm);
        const double idem = max_abs(m * m - m);
        if (idem > tol)
            throw Error(ErrorKind::NotIdempotent, "projector is not idempotent", idem);
        const double tr = m.trace().real();
        const long rank = std::lround(tr);
        const double rank_dev = std::abs(tr - static_cast<double>(rank));
        if (rank_dev > tol)
            throw Error(ErrorKind::NotIdempotent, "projector trace is not an integer", rank_dev);
        return Projector(m, static_cast<int>(rank), tol);
    }

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    int rank() const { return rank_; }
    double tolerance() const { return tol_; }

    /// Orthogonal complement 1 - p. Applying it twice recovers p exactly.
    Projector complement() const {
        ComplexMatrix c = ComplexMatrix::Identity(dim(), dim()) - mat_;
        return Projector(std::move(c), static_cast<int>(dim()) - rank_, tol_);
    }

  private:
    Projector(ComplexMatrix m, int rank, double tol)
        : mat_(std::move(m)), rank_(rank), tol_(tol) {}
    ComplexMatrix mat_;
    int rank_;
    double tol_;
};

/// Complete set of mutually orthogonal projectors summing to identity.
class Pvm {
  public:
    static Pvm validate(std::vector<Projector> elements, double tol = kDefaultTol) {
        if (elements.empty())
            throw Error(ErrorKind::InvalidArgument, "PVM needs at least one element");
        const Eigen::Index d = elements.front().dim();
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const auto& p : elements) {
            if (p.dim() != d)
                throw Error(ErrorKind::DimensionMismatch, "PVM elements have mixed dimensions");
            sum += p.matrix();
        }
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t j = i + 1; j < elements.size(); ++j) {
                const double ortho = max_abs(elements[i].matrix() * elements[j].matrix());
                if (ortho > tol)
                    throw Error(ErrorKind::NotOrthonormal, "PVM elements are not orthogonal", ortho);
            }
        const double complete = max_abs(sum - ComplexMatrix::Identity(d, d));
        if (complete > tol)
            throw Error(ErrorKind::NotOrthonormal, "PVM does not sum to identity", complete);
        bool rank_one = true;
        for (const auto& p : elements) rank_one = rank_one && p.rank() == 1;
        return Pvm(std::move(elements), rank_one);
    }

    /// Rank-one PVM from an orthonormal basis: element i is |v_i><v_i|.
    static Pvm from_basis(const std::vector<ComplexVector>& vectors, double tol = kDefaultTol) {
        if (vectors.empty())
            throw Error(ErrorKind::InvalidArgument, "empty basis");
        const Eigen::Index d = vectors.front().size();
        if (static_cast<Eigen::Index>(vectors.size()) != d)
            throw Error(ErrorKind::NotOrthonormal, "basis must contain exactly dim vectors");
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (vectors[i].size() != d)
                throw Error(ErrorKind::DimensionMismatch, "basis vectors have mixed dimensions");
            for (std::size_t j = 0; j <= i; ++j) {
                const Complex ov = vectors[j].dot(vectors[i]);  // <v_j|v_i>
                const double dev = std::abs(ov - (i == j ? Complex(1.0) : Complex(0.0)));
                if (dev > tol)
                    throw Error(ErrorKind::NotOrthonormal, "basis vectors are not orthonormal", dev);
            }
        }
        std::vector<Projector> elems;
        elems.reserve(vectors.size());
        for (const auto& v : vectors)
            elems.push_back(Projector::validate(v * v.adjoint(), tol));
        return Pvm(std::move(elems), true);
    }

    Eigen::Index dim() const { return elements_.front().dim(); }
    std::size_t size() const { return elements_.size(); }
    const Projector& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<Projector>& elements() const { return elements_; }
    bool rank_one() const { return rank_one_; }

  private:
    Pvm(std::vector<Projector> elements, bool rank_one)
        : elements_(std::move(elements)), rank_one_(rank_one) {}
    std::vector<Projector> elements_;
    bool rank_one_;
};

}  // namespace qpm
