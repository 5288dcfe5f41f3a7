#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "qpm/quasiprob.hpp"
#include "qpm/random.hpp"

namespace qpm {

/// Generating vector of a rank-one projector: dominant eigenvector with the
/// first nonzero component made real positive.
inline ComplexVector projector_vector(const Projector& p) {
    if (p.rank() != 1)
        throw Error(ErrorKind::NotRankOne, "projector is not rank one",
                    static_cast<double>(p.rank()));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p.matrix());
    ComplexVector v = es.eigenvectors().col(p.dim() - 1);  // eigenvalues ascending
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > 1e-12) {
            v *= std::conj(v(i)) / a;
            break;
        }
    }
    return v;
}

/// Basis-change overlaps <a_i|b_j> between the generating vectors of two
/// rank-one PVMs.
struct OverlapMatrix {
    ComplexMatrix entries;
    double min_abs = 0.0;
    std::vector<ComplexVector> basis_a;
    std::vector<ComplexVector> basis_b;
};

/// Checks the conditioning of the direct Kirkwood-Dirac inversion: every
/// overlap <a_i|b_j> must have modulus at least eta. A shared PVM element
/// forces a zero overlap somewhere and is always rejected.
inline OverlapMatrix completeness_check(const Pvm& pa, const Pvm& pb, double eta = 1e-6) {
    if (!pa.rank_one() || !pb.rank_one())
        throw Error(ErrorKind::NotRankOne, "both PVMs must be rank one");
    require_same_dim(pa[0].matrix(), pb[0].matrix());
    const Eigen::Index d = pa.dim();
    OverlapMatrix ov;
    ov.entries.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) ov.basis_a.push_back(projector_vector(pa[i]));
    for (Eigen::Index j = 0; j < d; ++j) ov.basis_b.push_back(projector_vector(pb[j]));
    ov.min_abs = 1.0;
    Eigen::Index wi = 0, wj = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            ov.entries(i, j) = ov.basis_a[i].dot(ov.basis_b[j]);  // <a_i|b_j>
            const double a = std::abs(ov.entries(i, j));
            if (a < ov.min_abs) {
                ov.min_abs = a;
                wi = i;
                wj = j;
            }
        }
    if (ov.min_abs < eta)
        throw Error(ErrorKind::DegenerateOverlap,
                    "overlap <a_" + std::to_string(wi) + "|b_" + std::to_string(wj) +
                        "> has modulus below eta",
                    ov.min_abs);
    return ov;
}

/// Direct inversion of the Kirkwood-Dirac table over two rank-one PVMs:
/// rho = sum_ij G_ij / <a_i|b_j> |b_j><a_i|.
inline DensityMatrix reconstruct_state(const QuasiProbTable& table, const Pvm& pa,
                                       const Pvm& pb, double eta = 1e-6) {
    if (table.kind() != TableKind::kirkwood_dirac)
        throw Error(ErrorKind::InvalidArgument, "reconstruction needs a kirkwood_dirac table");
    const OverlapMatrix ov = completeness_check(pa, pb, eta);
    const Eigen::Index d = pa.dim();
    if (table.values().rows() != d || table.values().cols() != d)
        throw Error(ErrorKind::DimensionMismatch, "table shape does not match the PVMs");
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            rho += table.values()(i, j) / ov.entries(i, j) *
                   (ov.basis_b[j] * ov.basis_a[i].adjoint());
    rho = 0.5 * (rho + rho.adjoint().eval());
    try {
        return DensityMatrix::validate(rho, 1e-8);
    } catch (const Error& e) {
        throw Error(ErrorKind::ReconstructionNotPhysical,
                    std::string("reconstructed matrix is not a state: ") + e.what(),
                    e.magnitude());
    }
}

/// Witness that the real table underdetermines the state while the complex
/// table does not.
struct WitnessReport {
    ComplexMatrix state_1;
    ComplexMatrix state_2;
    double phi_1 = 0.0;
    double phi_2 = 0.0;
    double mh_diff = 0.0;  // max entry difference of the two mh tables
    double kd_diff = 0.0;  // max entry difference of the two kd tables
    ComplexMatrix kd_table_1;
    ComplexMatrix kd_table_2;
};

/// Searches the selective-phase-rotation family rho^phi_a for two states with
/// identical Margenau-Hill tables but visibly different Kirkwood-Dirac
/// tables. Uses the computational basis against a seeded real orthogonal
/// basis; the scan runs over a grid of 10^3 phase angles.
inline WitnessReport parameter_count_demo(Eigen::Index d, Seed seed = {20240901, 0}) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "need dimension >= 2");
    auto rng = make_rng(seed);

    // A state with a real matrix keeps the mh table invariant under
    // phi -> -phi while flipping the sign of Im G.
    ComplexMatrix raw = random_density(d, Purity::mixed, rng).matrix();
    ComplexMatrix real_state = 0.5 * (raw + raw.transpose().eval());
    const DensityMatrix rho = DensityMatrix::validate(real_state, 1e-9);

    std::vector<ComplexVector> comp;
    for (Eigen::Index i = 0; i < d; ++i) {
        ComplexVector e = ComplexVector::Zero(d);
        e(i) = 1.0;
        comp.push_back(e);
    }
    const Pvm pa = Pvm::from_basis(comp);

    // Real orthogonal second basis with generically nonzero overlaps.
    Eigen::MatrixXd g(d, d);
    std::normal_distribution<double> n(0.0, 1.0);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    std::vector<ComplexVector> second;
    for (Eigen::Index i = 0; i < d; ++i) second.push_back(q.col(i).cast<Complex>());
    const Pvm pb = Pvm::from_basis(second);

    const Projector& alpha = pa[0];
    constexpr int kGrid = 1000;
    for (int k = 1; k <= kGrid / 2; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / kGrid;
        const double phi2 = 2.0 * std::numbers::pi - phi;
        const DensityMatrix s1 = phase_rotate(rho, alpha, phi);
        const DensityMatrix s2 = phase_rotate(rho, alpha, phi2);
        const QuasiProbTable mh1 = mh_table(s1, pa, pb);
        const QuasiProbTable mh2 = mh_table(s2, pa, pb);
        const double mh_diff = max_abs(mh1.values() - mh2.values());
        if (mh_diff > 1e-10) continue;
        const QuasiProbTable kd1 = kd_table(s1, pa, pb);
        const QuasiProbTable kd2 = kd_table(s2, pa, pb);
        const double kd_diff = max_abs(kd1.values() - kd2.values());
        if (kd_diff < 1e-3) continue;
        WitnessReport r;
        r.state_1 = s1.matrix();
        r.state_2 = s2.matrix();
        r.phi_1 = phi;
        r.phi_2 = phi2;
        r.mh_diff = mh_diff;
        r.kd_diff = kd_diff;
        r.kd_table_1 = kd1.values();
        r.kd_table_2 = kd2.values();
        return r;
    }
    throw Error(ErrorKind::WitnessNotFound,
                "no phase pair with equal real tables and distinct complex tables; retry "
                "with another seed");
}

}  // namespace qpm
