#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "entwit/eig.hpp"
#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"
#include "entwit/states.hpp"
#include "entwit/witness.hpp"

namespace entwit {

// Lost-event detector model: a fraction 1 - eta_minus of true events is
// never registered. Additional events are assumed absent (eta_plus = 1),
// and losses are spread equally over the measurement outlets.
struct DetectorModel {
    double eta_minus = 1.0;

    static DetectorModel with_efficiency(double eta) {
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::domain_error("DetectorModel: eta_minus must lie in (0, 1]");
        return DetectorModel{eta};
    }
};

struct MeasuredTriple {
    double w_m = 0.0; // measured linear-witness value
    double h_m = 0.0; // measured <H>
    double a_m = 0.0; // measured <A>
};

// The scalars that fix the loophole algebra for one witness.
struct WitnessConstants {
    double c00 = 0.0;
    double s = 1.0; // quadratic-term constant is 1/s
    double c0h = 0.0;
    double c0a = 0.0;
};

inline WitnessConstants constants_of(const LinearWitness& w) {
    return {w.c00(), 1.0, 0.0, 0.0};
}

inline WitnessConstants constants_of(const NonlinearWitness& f,
                                     SConvention conv = SConvention::Schmidt) {
    return {f.linear.c00(), f.s_for(conv), f.c0h, f.c0a};
}

// <S>_m = C_0 (1 - 1/eta) + <S>_t / eta, written so the C_0 terms cancel
// exactly when <S>_t = 0.
inline double measured_from_true(double true_val, double c0, DetectorModel det) {
    return c0 + (true_val - c0) / det.eta_minus;
}

inline double true_from_measured(double measured, double c0, DetectorModel det) {
    return c0 + det.eta_minus * (measured - c0);
}

// A measured linear-witness value below C00 (1 - 1/eta) certifies
// entanglement despite the losses.
inline double linear_threshold(double c00, DetectorModel det) {
    return c00 - c00 / det.eta_minus;
}

namespace detail {

inline double quadratic_term(const WitnessConstants& c, double h_m, double a_m,
                             DetectorModel det) {
    if (!(c.s > 0.0))
        throw std::domain_error("nonlinear threshold: s must be positive");
    const double k_h = c.c0h - c.c0h / det.eta_minus;
    const double k_a = c.c0a - c.c0a / det.eta_minus;
    const double dh = h_m - k_h;
    const double da = a_m - k_a;
    return det.eta_minus / c.s * (dh * dh + da * da);
}

} // namespace detail

// Threshold on the measured linear-witness value <W>_m, i.e. the measured
// triple certifies entanglement when
//   w_m < C00 (1 - 1/eta) + (eta/s) [(h_m - k_H)^2 + (a_m - k_A)^2]
// with k_H = C_0H (1 - 1/eta), k_A = C_0A (1 - 1/eta).
inline double nonlinear_threshold_witness_form(const WitnessConstants& c, double h_m,
                                               double a_m, DetectorModel det) {
    return linear_threshold(c.c00, det) + detail::quadratic_term(c, h_m, a_m, det);
}

// Same condition expressed as a threshold on the measured nonlinear value
// <F>_m = <W>_m - (1/s)(h_m^2 + a_m^2).
inline double nonlinear_threshold(const WitnessConstants& c, double h_m, double a_m,
                                  DetectorModel det) {
    return nonlinear_threshold_witness_form(c, h_m, a_m, det) -
           (h_m * h_m + a_m * a_m) / c.s;
}

enum class CertifyMode { Linear, Nonlinear };

inline std::string to_string(CertifyMode m) {
    return m == CertifyMode::Linear ? "linear" : "nonlinear";
}

enum class Verdict { Entangled, Inconclusive };

inline std::string to_string(Verdict v) {
    return v == Verdict::Entangled ? "Entangled" : "Inconclusive";
}

struct CertifyResult {
    Verdict verdict = Verdict::Inconclusive;
    double threshold = 0.0; // guard band already subtracted
    double margin = 0.0;    // threshold - w_m; positive means certified
};

// Strict-inequality certification with an optional guard band subtracted
// from the threshold.
inline CertifyResult certify(const MeasuredTriple& t, const WitnessConstants& c,
                             DetectorModel det, CertifyMode mode,
                             double guard_band = 0.0) {
    double threshold = mode == CertifyMode::Linear
                           ? linear_threshold(c.c00, det)
                           : nonlinear_threshold_witness_form(c, t.h_m, t.a_m, det);
    threshold -= guard_band;
    const double margin = threshold - t.w_m;
    return CertifyResult{margin > 0.0 ? Verdict::Entangled : Verdict::Inconclusive,
                         threshold, margin};
}

// How simulated clicks get lost: the paper's model removes an equal count
// from every outlet; the Bernoulli variant drops each click independently.
// Only the equal-count model obeys the exact <S>_m = <S>_t / eta identity
// for traceless observables.
enum class LossModel { EqualCount, Bernoulli };

struct ClickRecord {
    std::vector<double> eigenvalues;        // outlet eigenvalues, ascending
    std::vector<std::int64_t> true_counts;  // clicks with ideal detectors
    std::vector<std::int64_t> lost_counts;  // removed per outlet
    std::int64_t shots = 0;                 // total true events
    std::int64_t kept = 0;                  // shots - sum(lost)
    double nominal_eta = 1.0;
    double realized_eta = 1.0; // kept / shots, differs from nominal by rounding
    LossModel model = LossModel::EqualCount;
};

struct SimulationResult {
    ClickRecord record;
    double measured_mean = 0.0;
};

// Samples Born-rule outcomes of a traceless Hermitian observable, applies
// the loss model, and reports the empirical measured mean
// sum_i (n_i - eps_i) lambda_i / (N - sum eps_i).
inline SimulationResult simulate_clicks(const DensityMatrix& rho,
                                        const CMatrix& observable, std::int64_t shots,
                                        DetectorModel det, std::uint64_t seed,
                                        LossModel model = LossModel::EqualCount,
                                        const Tolerances& tol = default_tolerances()) {
    observable.require_hermitian("simulate_clicks", tol.structural);
    if (observable.rows() != rho.matrix.rows())
        throw DimensionError("simulate_clicks: observable does not match state");
    const double tr = std::abs(observable.trace().real());
    if (tr > tol.structural)
        throw std::invalid_argument(
            "simulate_clicks: observable must be traceless (|tr| = " +
            std::to_string(tr) + ")");
    if (shots <= 0) throw std::domain_error("simulate_clicks: shots must be positive");

    const EigResult eig = hermitian_eig(observable, tol);
    const int n = observable.rows();

    // Born probabilities p_i = <v_i| rho |v_i>
    std::vector<double> cum(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx p = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                p += std::conj(eig.vectors(r, i)) * rho.matrix(r, c) * eig.vectors(c, i);
        total += std::max(0.0, p.real());
        cum[i] = total;
    }

    Rng rng(seed);
    ClickRecord rec;
    rec.eigenvalues = eig.values;
    rec.true_counts.assign(n, 0);
    rec.lost_counts.assign(n, 0);
    rec.shots = shots;
    rec.nominal_eta = det.eta_minus;
    rec.model = model;

    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * total;
        int i = 0;
        while (i < n - 1 && u >= cum[i]) ++i;
        ++rec.true_counts[i];
        if (model == LossModel::Bernoulli && !rng.bernoulli(det.eta_minus))
            ++rec.lost_counts[i];
    }

    if (model == LossModel::EqualCount) {
        // floor with a relative nudge so values that are integers up to
        // binary representation error are not knocked down by one
        const double per_outlet =
            (1.0 - det.eta_minus) * static_cast<double>(shots) / n;
        const auto eps = static_cast<std::int64_t>(std::floor(per_outlet * (1.0 + 1e-12)));
        for (int i = 0; i < n; ++i)
            rec.lost_counts[i] = std::min<std::int64_t>(eps, rec.true_counts[i]);
    }

    std::int64_t lost = 0;
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
        lost += rec.lost_counts[i];
        num += static_cast<double>(rec.true_counts[i] - rec.lost_counts[i]) *
               rec.eigenvalues[i];
    }
    rec.kept = shots - lost;
    if (rec.kept <= 0)
        throw std::runtime_error("simulate_clicks: every click was lost");
    rec.realized_eta = static_cast<double>(rec.kept) / static_cast<double>(shots);

    return SimulationResult{rec, num / static_cast<double>(rec.kept)};
}

// Standard error of the measured mean implied by the record. Under the
// equal-count model the measured mean is sum n_i lambda_i / (eta N~), so its
// standard error is sd(lambda) / (eta sqrt(N~)); under Bernoulli losses it
// is the plain iid error over the surviving clicks.
inline double measured_standard_error(const ClickRecord& rec) {
    const double nshots = static_cast<double>(rec.shots);
    double m1 = 0.0, m2 = 0.0;
    for (size_t i = 0; i < rec.eigenvalues.size(); ++i) {
        const double w = static_cast<double>(rec.true_counts[i]) / nshots;
        m1 += w * rec.eigenvalues[i];
        m2 += w * rec.eigenvalues[i] * rec.eigenvalues[i];
    }
    const double var = std::max(0.0, m2 - m1 * m1);
    if (rec.model == LossModel::EqualCount)
        return std::sqrt(var) / (rec.realized_eta * std::sqrt(nshots));
    return std::sqrt(var / static_cast<double>(rec.kept));
}

struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1; // number of samples, endpoints included
};

struct SurfacePoint {
    double eta_minus = 0.0;
    double x_nl = 0.0;
    double boundary_w_m = 0.0;
};

namespace detail {

inline double grid_value(const GridRange& r, int k) {
    if (r.steps == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * static_cast<double>(k) / (r.steps - 1);
}

} // namespace detail

// Boundary value of the measured witness coordinate over an
// (eta, X_nl) grid; X_nl^2 = h_m^2 + a_m^2 is split equally between the
// two measured quadratic contributions.
inline std::vector<SurfacePoint> surface_grid(const WitnessConstants& c,
                                              const GridRange& eta_range,
                                              const GridRange& xnl_range,
                                              CertifyMode mode) {
    if (eta_range.steps < 1 || xnl_range.steps < 1)
        throw std::domain_error("surface_grid: steps must be >= 1");
    if (!(eta_range.lo > 0.0 && eta_range.hi <= 1.0 && eta_range.lo <= eta_range.hi))
        throw std::domain_error("surface_grid: eta range must lie in (0, 1]");
    if (!(xnl_range.lo >= 0.0 && xnl_range.lo <= xnl_range.hi))
        throw std::domain_error("surface_grid: X_nl range must be nonnegative");

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<SurfacePoint> out;
    out.reserve(static_cast<size_t>(eta_range.steps) * xnl_range.steps);
    for (int i = 0; i < eta_range.steps; ++i) {
        const double eta = detail::grid_value(eta_range, i);
        const DetectorModel det{eta};
        for (int j = 0; j < xnl_range.steps; ++j) {
            const double xnl = detail::grid_value(xnl_range, j);
            const double hm = xnl * inv_sqrt2;
            const double boundary =
                mode == CertifyMode::Linear
                    ? linear_threshold(c.c00, det)
                    : nonlinear_threshold_witness_form(c, hm, hm, det);
            out.push_back({eta, xnl, boundary});
        }
    }
    return out;
}

} // namespace entwit
