#include "polyflow/ode.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>

namespace polyflow {

namespace {

constexpr double kBlowup = 1e12;

using Aug = std::array<double, 4>;  // x, y, z, s

struct Rhs {
    const VectorField& X;
    bool integrate_clock;

    Aug operator()(double t, const Aug& u) const {
        const Aug pt{u[0], u[1], u[2], integrate_clock ? u[3] : std::exp(t)};
        Aug d{X[0].eval(pt), X[1].eval(pt), X[2].eval(pt), 0.0};
        if (integrate_clock) d[3] = std::pow(u[3], 1.0 + X.clock_rate());
        return d;
    }
};

Aug axpy(const Aug& a, double h, const Aug& b) {
    return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2], a[3] + h * b[3]};
}

Trajectory run(const VectorField& X, const State& x0, double t0, double t1, std::size_t n) {
    Trajectory tr;
    const double h = (t1 - t0) / static_cast<double>(n);
    tr.step = h;
    const Rhs f{X, X.clock_rate() != 0};
    Aug u{x0[0], x0[1], x0[2], std::exp(t0)};
    tr.times.reserve(n + 1);
    tr.states.reserve(n + 1);
    tr.times.push_back(t0);
    tr.states.push_back(x0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * h;
        const Aug k1 = f(t, u);
        const Aug k2 = f(t + h / 2, axpy(u, h / 2, k1));
        const Aug k3 = f(t + h / 2, axpy(u, h / 2, k2));
        const Aug k4 = f(t + h, axpy(u, h, k3));
        for (int i = 0; i < 4; ++i) u[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        const State s{u[0], u[1], u[2]};
        bool finite = true;
        double mag = 0;
        for (double v : s) {
            finite = finite && std::isfinite(v);
            mag = std::max(mag, std::abs(v));
        }
        if (!finite || mag > kBlowup) {
            tr.truncated = true;
            tr.truncation_reason = finite ? "state magnitude exceeded 1e12" : "non-finite state";
            break;
        }
        tr.times.push_back(t0 + static_cast<double>(k + 1) * h);
        tr.states.push_back(s);
    }
    return tr;
}

}  // namespace

Trajectory integrate(const VectorField& X, const State& x0, double t0, double t1, double h) {
    if (!(h > 0)) throw std::invalid_argument("integrate: step must be positive");
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / h - 1e-9));
    Trajectory tr = run(X, x0, t0, t1, n);
    if (tr.truncated) {
        tr.error_estimate = std::numeric_limits<double>::quiet_NaN();
        return tr;
    }
    const Trajectory fine = run(X, x0, t0, t1, 2 * n);
    if (fine.truncated) {
        tr.error_estimate = std::numeric_limits<double>::quiet_NaN();
        return tr;
    }
    double err = 0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(tr.states.back()[i] - fine.states.back()[i]));
    tr.error_estimate = err / 15.0;
    return tr;
}

namespace {

DriftReport drift_impl(const std::function<double(double, const State&)>& value, const Trajectory& traj) {
    DriftReport rep;
    rep.series.assign(traj.times.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> vals(traj.times.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<bool> ok(traj.times.size(), false);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        try {
            vals[k] = value(traj.times[k], traj.states[k]);
            ok[k] = std::isfinite(vals[k]);
        } catch (const DomainError&) {
        }
        if (!ok[k]) ++rep.skipped;
    }
    std::size_t first = 0;
    while (first < vals.size() && !ok[first]) ++first;
    if (first == vals.size()) return rep;
    rep.defined = true;
    rep.initial_value = vals[first];
    const double scale = std::max(1.0, std::abs(rep.initial_value));
    for (std::size_t k = first; k < vals.size(); ++k) {
        if (!ok[k]) continue;
        rep.series[k] = vals[k] - rep.initial_value;
        rep.max_relative_drift = std::max(rep.max_relative_drift, std::abs(rep.series[k]) / scale);
    }
    return rep;
}

}  // namespace

DriftReport drift(const FirstIntegral& integral, const Trajectory& traj) {
    return drift_impl([&](double t, const State& s) { return evaluate(integral, t, s[0], s[1], s[2]); }, traj);
}

DriftReport drift(const Polynomial& quantity, const Trajectory& traj) {
    return drift_impl([&](double t, const State& s) { return quantity.eval(Aug{s[0], s[1], s[2], std::exp(t)}); },
                      traj);
}

DissipationReport dissipation_probe(const Polynomial& H, const Polynomial& S, const Trajectory& traj) {
    DissipationReport rep;
    const std::size_t n = traj.times.size();
    if (n < 3) return rep;
    auto eval = [&](const Polynomial& p, std::size_t k) {
        const auto& s = traj.states[k];
        return p.eval(Aug{s[0], s[1], s[2], std::exp(traj.times[k])});
    };
    const double scale = 1e-9;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double dt = traj.times[k + 1] - traj.times[k - 1];
        const double dh = (eval(H, k + 1) - eval(H, k - 1)) / dt;
        const double ds = (eval(S, k + 1) - eval(S, k - 1)) / dt;
        rep.dh.push_back(dh);
        rep.ds.push_back(ds);
        rep.max_abs_dh = std::max(rep.max_abs_dh, std::abs(dh));
        rep.max_abs_ds = std::max(rep.max_abs_ds, std::abs(ds));
        if (ds > scale) ++rep.ds_positive;
        else if (ds < -scale) ++rep.ds_negative;
        else ++rep.ds_zero;
    }
    return rep;
}

std::vector<State> probe_starts(const ProbeConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-cfg.box, cfg.box);
    std::vector<State> out;
    for (int i = 0; i < cfg.starts; ++i) {
        State s{};
        for (auto& v : s) v = u(rng);
        out.push_back(s);
    }
    return out;
}

namespace {

template <typename Quantity>
ProbeResult probe_impl(const VectorField& X, const Quantity& q, const ProbeConfig& cfg) {
    ProbeResult res;
    res.starts = probe_starts(cfg);
    std::vector<std::future<std::pair<DriftReport, bool>>> jobs;
    for (const auto& x0 : res.starts)
        jobs.push_back(std::async(std::launch::async, [&, x0] {
            const Trajectory tr = integrate(X, x0, 0.0, cfg.t1, cfg.h);
            return std::pair{drift(q, tr), tr.truncated};
        }));
    for (auto& j : jobs) {
        auto [d, truncated] = j.get();
        if (!truncated && d.defined) {
            res.max_drift = std::max(res.max_drift, d.max_relative_drift);
            ++res.usable;
        }
        res.drifts.push_back(std::move(d));
        res.truncated.push_back(truncated);
    }
    return res;
}

}  // namespace

ProbeResult probe_drift(const VectorField& X, const FirstIntegral& integral, const ProbeConfig& cfg) {
    return probe_impl(X, integral, cfg);
}

ProbeResult probe_drift(const VectorField& X, const Polynomial& quantity, const ProbeConfig& cfg) {
    return probe_impl(X, quantity, cfg);
}

}  // namespace polyflow
