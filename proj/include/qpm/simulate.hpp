#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "qpm/quasiprob.hpp"
#include "qpm/random.hpp"

namespace qpm {

/// Gaussian pointer with centers at the projector eigenvalues 0 and 1;
/// large spread means weak coupling.
struct PointerModel {
    double spread = 1.0;
};

inline void require_valid(const PointerModel& m) {
    if (!(m.spread > 0.0) || !std::isfinite(m.spread))
        throw Error(ErrorKind::InvalidArgument, "pointer spread must be positive and finite");
}

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct SimulationReport {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t n = 0;
    std::map<std::string, Estimate> estimates;
    Seed seed;
    double sigma = 0.0;  // 0 when no pointer model is involved
};

inline double binomial_stderr(double freq, std::uint64_t n) {
    return std::sqrt(freq * (1.0 - freq) / static_cast<double>(n));
}

/// Samples successive projective measurements of a then b, tallying the four
/// outcome patterns. The yy frequency estimates Tr(rho a b a).
inline SimulationReport sample_projective_sequence(const DensityMatrix& rho, const Projector& a,
                                                   const Projector& b, std::uint64_t n,
                                                   Seed seed) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    const double p_a = probability(rho, a);
    // Conditional b probabilities on the two collapsed branches.
    double pb_given_yes = 0.0, pb_given_no = 0.0;
    if (p_a > kBranchEps) pb_given_yes = probability(collapse_yes(rho, a), b);
    if (1.0 - p_a > kBranchEps) pb_given_no = probability(collapse_yes(rho, a.complement()), b);

    SimulationReport rep;
    rep.n = n;
    rep.seed = seed;
    std::uint64_t yy = 0, yn = 0, ny = 0, nn = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const bool first = u(rng) < p_a;
        const bool second = u(rng) < (first ? pb_given_yes : pb_given_no);
        if (first)
            (second ? yy : yn)++;
        else
            (second ? ny : nn)++;
    }
    rep.counts = {{"yy", yy}, {"yn", yn}, {"ny", ny}, {"nn", nn}};
    const double f = static_cast<double>(yy) / static_cast<double>(n);
    rep.estimates["p_yy"] = {f, binomial_stderr(f, n)};
    return rep;
}

/// Operational disturbance estimate: compares b statistics with and without a
/// prior nonselective a measurement, (1/2)[freq_direct - freq_after_a].
inline SimulationReport estimate_disturbance(const DensityMatrix& rho, const Projector& a,
                                             const Projector& b, std::uint64_t n, Seed seed) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    const double p_direct = probability(rho, b);
    const double p_after = probability(luders_map(rho, a), b);

    std::uint64_t yes_direct = 0, yes_after = 0;
    for (std::uint64_t t = 0; t < n; ++t)
        if (u(rng) < p_direct) ++yes_direct;
    for (std::uint64_t t = 0; t < n; ++t)
        if (u(rng) < p_after) ++yes_after;

    const double f1 = static_cast<double>(yes_direct) / static_cast<double>(n);
    const double f2 = static_cast<double>(yes_after) / static_cast<double>(n);
    SimulationReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.counts = {{"direct_yes", yes_direct}, {"after_yes", yes_after}};
    const double se =
        0.5 * std::sqrt(f1 * (1.0 - f1) / static_cast<double>(n) +
                        f2 * (1.0 - f2) / static_cast<double>(n));
    rep.estimates["disturbance"] = {0.5 * (f1 - f2), se};
    return rep;
}

/// Closed-form pointer correlation E[x 1(b = yes)] for the Gaussian-pointer
/// first measurement followed by projective b:
///   E = Tr[b a rho a] + exp(-1/(8 sigma^2)) Re Tr[b a rho a~].
/// Interpolates between the Wigner rule (sigma -> 0) and the Margenau-Hill
/// value (sigma -> infinity).
inline double pointer_correlation_exact(const DensityMatrix& rho, const Projector& a,
                                        const Projector& b, const PointerModel& model) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    require_valid(model);
    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix pc = ComplexMatrix::Identity(a.dim(), a.dim()) - pa;
    const double strong = (b.matrix() * pa * rho.matrix() * pa).trace().real();
    const double cross = (b.matrix() * pa * rho.matrix() * pc).trace().real();
    const double s2 = model.spread * model.spread;
    return strong + std::exp(-1.0 / (8.0 * s2)) * cross;
}

/// Samples the Gaussian-pointer measurement of a followed by projective b and
/// reports the mean of x 1(b = yes). Branch-then-Gaussian sampling of the
/// pointer density is exact: p(x) = c1(x)^2 Tr(rho a) + c0(x)^2 Tr(rho a~)
/// because the cross term Tr(a rho a~) vanishes by orthogonality.
inline SimulationReport sample_weak_pointer(const DensityMatrix& rho, const Projector& a,
                                            const Projector& b, const PointerModel& model,
                                            std::uint64_t n, Seed seed) {
    require_same_dim(rho.matrix(), a.matrix());
    require_same_dim(rho.matrix(), b.matrix());
    require_valid(model);
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, model.spread);

    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix pc = ComplexMatrix::Identity(a.dim(), a.dim()) - pa;
    const double p_yes = probability(rho, a);
    const double p_no = 1.0 - p_yes;
    // Trace constants so each trial reduces to scalar arithmetic:
    // Tr[b M_x rho M_x'] = c1^2 tA + c0^2 tB + 2 c0 c1 tC.
    const double t_a = (b.matrix() * pa * rho.matrix() * pa).trace().real();
    const double t_b = (b.matrix() * pc * rho.matrix() * pc).trace().real();
    const double t_c = (b.matrix() * pa * rho.matrix() * pc).trace().real();
    const double s2 = model.spread * model.spread;

    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t beta_yes = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const bool yes_branch = u(rng) < p_yes;
        const double x = (yes_branch ? 1.0 : 0.0) + gauss(rng);
        // Unnormalized Gaussian weights; shared prefactors cancel in ratios.
        const double w1 = std::exp(-(x - 1.0) * (x - 1.0) / (2.0 * s2));
        const double w0 = std::exp(-x * x / (2.0 * s2));
        const double px = w1 * p_yes + w0 * p_no;
        const double pb = (w1 * t_a + w0 * t_b + 2.0 * std::sqrt(w0 * w1) * t_c) / px;
        const bool b_yes = u(rng) < pb;
        if (b_yes) ++beta_yes;
        const double v = b_yes ? x : 0.0;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = (sum_sq / static_cast<double>(n) - mean * mean) *
                       static_cast<double>(n) / static_cast<double>(n - 1 ? n - 1 : 1);
    SimulationReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.sigma = model.spread;
    rep.counts = {{"beta_yes", beta_yes}, {"beta_no", n - beta_yes}};
    rep.estimates["pointer_correlation"] = {mean, std::sqrt(var / static_cast<double>(n))};
    return rep;
}

}  // namespace qpm
