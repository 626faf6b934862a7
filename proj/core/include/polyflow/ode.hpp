#pragma once

#include "polyflow/integral.hpp"
#include "polyflow/vector_field.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace polyflow {

using State = std::array<double, 3>;

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    double step = 0;
    int order = 4;
    /// Richardson estimate of the final-state error from a half-step rerun.
    double error_estimate = 0;
    bool truncated = false;
    std::string truncation_reason;
};

/// Classical fixed-step RK4 on [t0, t1]. The step is adjusted down so it
/// divides the interval evenly. The clock is s = e^t for fields with clock
/// rate 0; otherwise s is integrated alongside (ds/dt = s^{1+c}, s(t0) = e^{t0}).
/// A state with magnitude above 1e12 or a non-finite value truncates the run.
Trajectory integrate(const VectorField& X, const State& x0, double t0, double t1, double h);

struct DriftReport {
    /// max_t |I(t) − I0| / max(1, |I0|) over valid samples.
    double max_relative_drift = 0;
    double initial_value = 0;
    std::vector<double> series;  ///< I(t) − I0, NaN at skipped samples
    std::size_t skipped = 0;     ///< samples lost to domain errors
    bool defined = false;        ///< false when no sample could be evaluated
};

DriftReport drift(const FirstIntegral& integral, const Trajectory& traj);
/// Time-dependent polynomial with s = e^t.
DriftReport drift(const Polynomial& quantity, const Trajectory& traj);

struct DissipationReport {
    double max_abs_dh = 0;
    double max_abs_ds = 0;
    std::size_t ds_positive = 0, ds_negative = 0, ds_zero = 0;
    std::vector<double> dh, ds;
};

/// Central finite differences of H and S along the trajectory.
DissipationReport dissipation_probe(const Polynomial& H, const Polynomial& S, const Trajectory& traj);

/// The fixed drift probe: seeded random starts in [-box, box]^3.
struct ProbeConfig {
    int starts = 5;
    double box = 1.0;
    double h = 1e-4;
    double t1 = 2.0;
    std::uint64_t seed = 0;
};

std::vector<State> probe_starts(const ProbeConfig& cfg);

struct ProbeResult {
    std::vector<State> starts;
    std::vector<DriftReport> drifts;
    std::vector<bool> truncated;
    /// Maximum over starts that were neither truncated nor undefined.
    double max_drift = 0;
    std::size_t usable = 0;
};

ProbeResult probe_drift(const VectorField& X, const FirstIntegral& integral, const ProbeConfig& cfg = {});
ProbeResult probe_drift(const VectorField& X, const Polynomial& quantity, const ProbeConfig& cfg = {});

}  // namespace polyflow
