#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwlab/norms.hpp"
#include "qwlab/pairs.hpp"
#include "qwlab/walk.hpp"

namespace qwlab {

// One sample of an estimate's implicit constant. ratio = lhs/rhs, rhs > 0.
struct RatioRecord {
    double delta = 0.0;
    double mass = 0.0;
    std::optional<double> lambda;
    double t_or_T = 0.0;
    std::optional<AdmissiblePair> pair;
    std::optional<AdmissiblePair> pair_tilde;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool wrap_ok = true;
    std::optional<std::uint64_t> seed;
};

inline constexpr const char* ratio_csv_header =
    "delta,mass,lambda,t_or_T,p,q,ptilde,qtilde,lhs,rhs,ratio,wrap_ok,seed";

void write_ratio_csv_row(std::ostream& os, const RatioRecord& r);
void write_ratio_json_line(std::ostream& os, const RatioRecord& r);

// ||U(t) P_lambda u||_inf / (lambda^{1/3} <lambda> t^{-1/3} ||u||_1).
// t >= delta (t=0 has no decay factor), lambda in (0, 2pi/delta), u nonzero.
RatioRecord dispersive_ratio(const SpinorField& u, double lambda, double t);

// Evolves P_lambda(u) incrementally across a geometric time ladder (the group
// property makes the whole ladder cost one evolution to t_max) and records one
// dispersive ratio per rung. Ladder: round(t_min/delta * 2^{k/per_octave}),
// deduplicated, capped at t_max/delta.
std::vector<RatioRecord> decay_ladder(const SpinorField& u, double lambda,
                                      double t_min, double t_max,
                                      int per_octave = 4);

struct SlopeFit {
    double slope;
    double intercept;
    double residual; // rms of log-log residuals
};
// OLS of log(lhs) against log(t) over the records. FitError under 3 points.
SlopeFit decay_slope_fit(const std::vector<RatioRecord>& records);
SlopeFit slope_fit_xy(const std::vector<double>& logt, const std::vector<double>& logy);

// sum_{s in [0,t] cap delta*Z} U(t-s) f(s), UNWEIGHTED (no delta factor);
// weighted=true multiplies by delta for continuum-limit experiments. Streaming
// recursion D(t+delta) = U D(t) + f(t+delta), O(steps * N).
SpinorField duhamel(const SpaceTimeField& f, double t, bool weighted = false);

// lhs = mixed (p,q) norm of {U(t)u : t in [0,T]}, streamed; rhs = || |D|^{1/p}
// <D>^{3/p} u ||_2. Pair must be discrete-admissible.
RatioRecord homogeneous_ratio(const SpinorField& u, const AdmissiblePair& pair,
                              double T);

// lhs = mixed (p,q) norm of the Duhamel trajectory over [0,T]; rhs = mixed
// (ptilde', qtilde') norm of |D|^{1/p+1/pt} <D>^{3/p+3/pt} f, slice-wise.
RatioRecord inhomogeneous_ratio(const SpaceTimeField& f, const AdmissiblePair& pair,
                                const AdmissiblePair& pair_tilde, double T,
                                bool weighted = false);

// || P~_lambda v ||_inf / (lambda^{1/6} || v ||_6): the Bernstein ratio.
double bernstein_ratio(const SpinorField& v, double lambda);

// ||U(t) P_lambda u||_q * t^{1/2 - 1/q} streamed over a ladder; returns the sup.
double interpolated_decay_sup(const SpinorField& u, double lambda,
                              const Exponent& q, double t_min, double t_max,
                              int per_octave = 4);

}
