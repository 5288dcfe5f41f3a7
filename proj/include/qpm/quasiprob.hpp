#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "qpm/measurement.hpp"

namespace qpm {

/// Margenau-Hill quasi-probability, (1/2) Tr[rho (ab + ba)]. Order-symmetric
/// by construction.
inline double mh(const DensityMatrix& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    const ComplexMatrix anti = a.matrix() * b.matrix() + b.matrix() * a.matrix();
    return 0.5 * (rho.matrix() * anti).trace().real();
}

/// Half the change in the b-probability caused by a prior nonselective a
/// measurement.
inline double disturbance(const DensityMatrix& rho, const Projector& a, const Projector& b) {
    return 0.5 * (probability(rho, b) - probability(luders_map(rho, a), b));
}

/// Wigner-rule joint probability plus the disturbance term; equals mh for all
/// inputs.
inline double mh_via_disturbance(const DensityMatrix& rho, const Projector& a,
                                 const Projector& b) {
    return wigner_joint(rho, a, b) + disturbance(rho, a, b);
}

/// Kirkwood-Dirac complex quasi-probability Tr(rho a b). Convention: the
/// first-measured projector sits leftmost; swapping the order conjugates.
inline Complex kd(const DensityMatrix& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    return (rho.matrix() * a.matrix() * b.matrix()).trace();
}

/// Imaginary part of kd obtained from the phase-rotated disturbance form,
/// (1/2)[Tr(rho^{pi/2}_a b) - Tr(Lambda_a(rho) b)].
inline double kd_imag_via_phase(const DensityMatrix& rho, const Projector& a,
                                const Projector& b) {
    const DensityMatrix rotated = phase_rotate(rho, a, std::numbers::pi / 2.0);
    return 0.5 * (probability(rotated, b) - probability(luders_map(rho, a), b));
}

/// Factorized reference distribution Tr(rho a) Tr(rho b). Nonnegative with
/// correct marginals, but fails the post-measurement condition.
inline double factorized_joint(const DensityMatrix& rho, const Projector& a,
                               const Projector& b) {
    return probability(rho, a) * probability(rho, b);
}

enum class TableKind { margenau_hill, kirkwood_dirac, wigner_rule, factorized };

inline const char* to_string(TableKind k) {
    switch (k) {
        case TableKind::margenau_hill: return "margenau_hill";
        case TableKind::kirkwood_dirac: return "kirkwood_dirac";
        case TableKind::wigner_rule: return "wigner_rule";
        case TableKind::factorized: return "factorized";
    }
    return "unknown";
}

inline constexpr double kTableTol = 1e-10;

/// Quasi-probability values over two PVMs, row index = first measurement.
/// Construction enforces the per-kind invariants: normalization always,
/// row/column marginality except for wigner_rule columns (that deviation is
/// the measurement disturbance), realness for the real-valued kinds.
class QuasiProbTable {
  public:
    static QuasiProbTable build(const DensityMatrix& rho, const Pvm& pa, const Pvm& pb,
                                TableKind kind) {
        require_same_dim(rho.matrix(), pa[0].matrix());
        require_same_dim(rho.matrix(), pb[0].matrix());
        const std::size_t m = pa.size();
        const std::size_t n = pb.size();
        ComplexMatrix values(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                switch (kind) {
                    case TableKind::margenau_hill:
                        values(i, j) = mh(rho, pa[i], pb[j]);
                        break;
                    case TableKind::kirkwood_dirac:
                        values(i, j) = kd(rho, pa[i], pb[j]);
                        break;
                    case TableKind::wigner_rule:
                        values(i, j) = wigner_joint(rho, pa[i], pb[j]);
                        break;
                    case TableKind::factorized:
                        values(i, j) = factorized_joint(rho, pa[i], pb[j]);
                        break;
                }
            }
        std::vector<double> row_marg(m), col_marg(n);
        for (std::size_t i = 0; i < m; ++i) row_marg[i] = probability(rho, pa[i]);
        for (std::size_t j = 0; j < n; ++j) col_marg[j] = probability(rho, pb[j]);
        QuasiProbTable t(pa, pb, std::move(values), kind, std::move(row_marg),
                         std::move(col_marg));
        t.check_invariants();
        return t;
    }

    /// Rebuild a table from stored values (file load). Marginals are taken
    /// from the row/column sums; the usual per-kind invariants still apply.
    static QuasiProbTable from_values(const Pvm& pa, const Pvm& pb, ComplexMatrix values,
                                      TableKind kind) {
        if (values.rows() != static_cast<Eigen::Index>(pa.size()) ||
            values.cols() != static_cast<Eigen::Index>(pb.size()))
            throw Error(ErrorKind::DimensionMismatch, "table shape does not match the PVMs");
        std::vector<double> row_marg(values.rows()), col_marg(values.cols());
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            row_marg[i] = values.row(i).sum().real();
        for (Eigen::Index j = 0; j < values.cols(); ++j)
            col_marg[j] = values.col(j).sum().real();
        QuasiProbTable t(pa, pb, std::move(values), kind, std::move(row_marg),
                         std::move(col_marg));
        t.check_invariants();
        return t;
    }

    const Pvm& pvm_a() const { return pvm_a_; }
    const Pvm& pvm_b() const { return pvm_b_; }
    const ComplexMatrix& values() const { return values_; }
    TableKind kind() const { return kind_; }
    const std::vector<double>& row_marginals() const { return row_marg_; }
    const std::vector<double>& col_marginals() const { return col_marg_; }

    Complex total() const { return values_.sum(); }

    /// Smallest real part over entries, the negativity witness.
    double min_real() const { return values_.real().minCoeff(); }
    /// Largest |Im| over entries, the imaginarity witness.
    double max_imag_abs() const { return values_.imag().cwiseAbs().maxCoeff(); }

  private:
    QuasiProbTable(Pvm pa, Pvm pb, ComplexMatrix values, TableKind kind,
                   std::vector<double> row_marg, std::vector<double> col_marg)
        : pvm_a_(std::move(pa)),
          pvm_b_(std::move(pb)),
          values_(std::move(values)),
          kind_(kind),
          row_marg_(std::move(row_marg)),
          col_marg_(std::move(col_marg)) {}

    void check_invariants() const {
        const double total_dev = std::abs(total() - Complex(1.0));
        if (total_dev > kTableTol)
            throw Error(ErrorKind::InvalidArgument, "table does not sum to 1", total_dev);
        const bool real_kind = kind_ != TableKind::kirkwood_dirac;
        if (real_kind && max_imag_abs() > kTableTol)
            throw Error(ErrorKind::NonRealTrace, "real-valued table has imaginary entries",
                        max_imag_abs());
        // Row sums hold for every kind; column sums only where there is no
        // sequential disturbance.
        for (Eigen::Index i = 0; i < values_.rows(); ++i) {
            const double dev = std::abs(values_.row(i).sum() - Complex(row_marg_[i]));
            if (dev > kTableTol)
                throw Error(ErrorKind::InvalidArgument, "row marginal violated", dev);
        }
        if (kind_ != TableKind::wigner_rule) {
            for (Eigen::Index j = 0; j < values_.cols(); ++j) {
                const double dev = std::abs(values_.col(j).sum() - Complex(col_marg_[j]));
                if (dev > kTableTol)
                    throw Error(ErrorKind::InvalidArgument, "column marginal violated", dev);
            }
        } else {
            for (Eigen::Index i = 0; i < values_.rows(); ++i)
                for (Eigen::Index j = 0; j < values_.cols(); ++j)
                    if (values_(i, j).real() < -kTableTol)
                        throw Error(ErrorKind::InvalidArgument,
                                    "sequential probability is negative",
                                    -values_(i, j).real());
        }
    }

    Pvm pvm_a_;
    Pvm pvm_b_;
    ComplexMatrix values_;
    TableKind kind_;
    std::vector<double> row_marg_;
    std::vector<double> col_marg_;
};

inline QuasiProbTable mh_table(const DensityMatrix& rho, const Pvm& pa, const Pvm& pb) {
    return QuasiProbTable::build(rho, pa, pb, TableKind::margenau_hill);
}
inline QuasiProbTable kd_table(const DensityMatrix& rho, const Pvm& pa, const Pvm& pb) {
    return QuasiProbTable::build(rho, pa, pb, TableKind::kirkwood_dirac);
}
inline QuasiProbTable wigner_table(const DensityMatrix& rho, const Pvm& pa, const Pvm& pb) {
    return QuasiProbTable::build(rho, pa, pb, TableKind::wigner_rule);
}

}  // namespace qpm
