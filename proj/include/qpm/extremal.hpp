#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>

#include "qpm/quasiprob.hpp"
#include "qpm/random.hpp"

namespace qpm {

/// A (state, first projector, second projector) triple together with its
/// Margenau-Hill value. Generating vectors are kept when the triple is pure /
/// rank-one, which is what the refiner perturbs.
struct Configuration {
    DensityMatrix rho;
    Projector a;
    Projector b;
    double value;
    std::optional<std::array<ComplexVector, 3>> vectors;
};

/// mh of a pure rank-one triple from its generating vectors:
/// Re <v0|v1><v1|v2><v2|v0>.
inline double mh_from_vectors(const ComplexVector& v0, const ComplexVector& v1,
                              const ComplexVector& v2) {
    return (v0.dot(v1) * v1.dot(v2) * v2.dot(v0)).real();
}

inline Configuration configuration_from_vectors(const ComplexVector& v0,
                                                const ComplexVector& v1,
                                                const ComplexVector& v2) {
    Configuration c{DensityMatrix::validate(v0 * v0.adjoint(), 1e-9),
                    Projector::validate(v1 * v1.adjoint(), 1e-9),
                    Projector::validate(v2 * v2.adjoint(), 1e-9),
                    0.0,
                    std::array<ComplexVector, 3>{v0, v1, v2}};
    c.value = mh(c.rho, c.a, c.b);
    return c;
}

/// The qubit triple of real vectors at mutual angle 120 degrees. Attains
/// the Margenau-Hill minimum of -1/8.
inline Configuration trine_config() {
    std::array<ComplexVector, 3> t;
    for (int k = 0; k < 3; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / 3.0;
        ComplexVector v(2);
        v << std::cos(theta), std::sin(theta);
        t[k] = v;
    }
    return configuration_from_vectors(t[0], t[1], t[2]);
}

struct ScanReport {
    Configuration min_config;
    Configuration max_config;
    Eigen::Index dim;
    std::uint64_t n_samples;
    Seed seed;
};

inline constexpr double kBoundSlack = 1e-10;
inline constexpr double kMhLowerBound = -0.125;

/// Samples random triples and records the extremal mh values. Pure states and
/// rank-one projectors by default (mh is linear in rho, so extrema over
/// states sit at pure states); set mixed/rank flags to explore anyway.
/// Throws BoundViolation if any sample leaves [-1/8, 1], which would falsify
/// the implementation.
inline ScanReport scan_bounds(Eigen::Index d, std::uint64_t n_samples, Seed seed,
                              bool mixed = false, int rank_a = 1, int rank_b = 1) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "need dimension >= 2");
    if (n_samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
    auto rng = make_rng(seed);

    double min_v = std::numeric_limits<double>::infinity();
    double max_v = -std::numeric_limits<double>::infinity();
    std::optional<Configuration> min_c, max_c;

    const bool fast = !mixed && rank_a == 1 && rank_b == 1;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        double v;
        std::optional<Configuration> full;
        std::array<ComplexVector, 3> vecs;
        if (fast) {
            vecs = {haar_vector(d, rng), haar_vector(d, rng), haar_vector(d, rng)};
            v = mh_from_vectors(vecs[0], vecs[1], vecs[2]);
        } else {
            DensityMatrix rho = random_density(d, mixed ? Purity::mixed : Purity::pure, rng);
            Projector a = random_projector(d, rank_a, rng);
            Projector b = random_projector(d, rank_b, rng);
            v = mh(rho, a, b);
            full = Configuration{std::move(rho), std::move(a), std::move(b), v, std::nullopt};
        }
        if (v < kMhLowerBound - kBoundSlack || v > 1.0 + kBoundSlack) {
            if (!full) full = configuration_from_vectors(vecs[0], vecs[1], vecs[2]);
            throw Error(ErrorKind::BoundViolation, "sampled mh value outside [-1/8, 1]", v);
        }
        // Strict comparisons keep the earlier-sampled configuration on ties.
        if (v < min_v) {
            min_v = v;
            min_c = fast ? configuration_from_vectors(vecs[0], vecs[1], vecs[2]) : *full;
        }
        if (v > max_v) {
            max_v = v;
            max_c = fast ? configuration_from_vectors(vecs[0], vecs[1], vecs[2]) : *full;
        }
    }
    return ScanReport{std::move(*min_c), std::move(*max_c), d, n_samples, seed};
}

/// Derivative-free local descent: perturb the three generating vectors by
/// random tangent steps, halve the step after 20 consecutive
/// non-improvements, stop below step 1e-8 or when the budget is spent.
/// Accepted values are monotone non-increasing.
inline Configuration refine_minimum(const Configuration& start, std::uint64_t budget,
                                    Seed seed) {
    if (!start.vectors)
        throw Error(ErrorKind::InvalidArgument,
                    "refinement needs a pure rank-one configuration with generating vectors");
    auto rng = make_rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);

    std::array<ComplexVector, 3> v = *start.vectors;
    double best = mh_from_vectors(v[0], v[1], v[2]);
    double step = 0.1;
    int stale = 0;
    const Eigen::Index d = v[0].size();

    for (std::uint64_t it = 0; it < budget && step >= 1e-8; ++it) {
        const std::size_t k = it % 3;
        ComplexVector g(d);
        for (Eigen::Index i = 0; i < d; ++i) g(i) = Complex(n(rng), n(rng));
        g -= v[k] * v[k].dot(g);  // tangent component only
        ComplexVector trial = (v[k] + step * g).normalized();
        std::array<ComplexVector, 3> w = v;
        w[k] = trial;
        const double val = mh_from_vectors(w[0], w[1], w[2]);
        if (val < best) {
            best = val;
            v = w;
            stale = 0;
        } else if (++stale >= 20) {
            step *= 0.5;
            stale = 0;
        }
    }
    Configuration out = configuration_from_vectors(v[0], v[1], v[2]);
    if (out.value < kMhLowerBound - kBoundSlack)
        throw Error(ErrorKind::BoundViolation, "refined mh value below -1/8", out.value);
    return out;
}

}  // namespace qpm
