#include "nnosim/device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnosim/errors.hpp"
#include "nnosim/reservoir.hpp"

namespace nnosim {

void CloudDynParams::validate() const {
    if (!(eta_plus > 0.0) || !(eta_minus > eta_plus)) {
        throw ArgumentError("cloud dynamics require eta_minus > eta_plus > 0");
    }
    if (!(v_th >= 0.0)) {
        throw ArgumentError("cloud drift threshold must be >= 0");
    }
    if (!(tau_x > 0.0)) {
        throw ArgumentError("cloud relaxation constant must be > 0");
    }
}

void NonVolatileCell::validate() const {
    if (!(g_min > 0.0) || !(g_max > g_min)) {
        throw ArgumentError("cell conductance range must satisfy 0 < g_min < g_max");
    }
    if (g < g_min || g > g_max) {
        throw StateError("cell conductance outside its range");
    }
    if (!(v_th_set > 0.0) || !(v_th_reset > 0.0)) {
        throw ArgumentError("programming thresholds must be positive");
    }
    if (!(k_set > 0.0) || !(k_reset > 0.0)) {
        throw ArgumentError("programming rate constants must be positive");
    }
    if (!(v_lin > 0.0)) {
        throw ArgumentError("linear read window must be positive");
    }
}

void PulseSpec::validate() const {
    if (!(width > 0.0)) {
        throw ArgumentError("pulse width must be > 0");
    }
    if (!(interval >= 0.0)) {
        throw ArgumentError("pulse interval must be >= 0");
    }
    if (!std::isfinite(amplitude)) {
        throw ArgumentError("pulse amplitude must be finite");
    }
    if (count < 1) {
        throw ArgumentError("pulse count must be >= 1");
    }
}

double PulseSpec::train_duration() const {
    return count * width + (count - 1) * interval;
}

double cloud_resistance(const CloudState& c) {
    if (c.x < c.x_min || c.x > c.x_max) {
        throw StateError("cloud thickness outside [x_min, x_max]");
    }
    return c.r_x * c.x;
}

double cloud_conductance(const CloudState& c) {
    return 1.0 / cloud_resistance(c);
}

CloudState step_cloud(const CloudState& c, const CloudDynParams& p,
                      double v_local, double dt_us) {
    if (!(dt_us > 0.0)) {
        throw ArgumentError("cloud step requires dt > 0");
    }
    double drift = 0.0;
    if (v_local > p.v_th) {
        drift = p.eta_plus * (v_local - p.v_th);
    } else if (v_local < -p.v_th) {
        drift = p.eta_minus * (v_local + p.v_th);
    }
    CloudState next = c;
    double x = c.x + drift * dt_us + (c.x_rest - c.x) * dt_us / p.tau_x;
    next.x = std::clamp(x, c.x_min, c.x_max);
    return next;
}

NonVolatileCell program_nonvolatile(const NonVolatileCell& cell,
                                    const PulseSpec& pulse) {
    pulse.validate();
    const double r_min = 1.0 / cell.g_max;  // MΩ
    const double r_max = 1.0 / cell.g_min;
    const double range = r_max - r_min;
    if (pulse.amplitude > cell.v_th_reset) {
        double q = cell.k_reset * (pulse.amplitude - cell.v_th_reset) *
                   pulse.width / range;
        q = std::min(q, 1.0);
        NonVolatileCell next = cell;
        double r = 1.0 / next.g;
        for (int k = 0; k < pulse.count; ++k) {
            r += q * (r_max - r);
        }
        next.g = 1.0 / r;
        return next;
    }
    if (pulse.amplitude < -cell.v_th_set) {
        double q = cell.k_set * (-pulse.amplitude - cell.v_th_set) *
                   pulse.width / range;
        q = std::min(q, 1.0);
        NonVolatileCell next = cell;
        double r = 1.0 / next.g;
        for (int k = 0; k < pulse.count; ++k) {
            r -= q * (r - r_min);
        }
        next.g = 1.0 / r;
        return next;
    }
    return cell;  // sub-threshold: bit-identical retention
}

double read_cell(const NonVolatileCell& cell, double v_read) {
    if (std::abs(v_read) > cell.v_lin) {
        throw ReadRangeError("read voltage outside the linear window");
    }
    return cell.g * v_read;
}

double calibrate_film_capacitance(double tau_target_us, double r_driver_mohm,
                                  double r_ground_mohm) {
    if (!(tau_target_us > 0.0)) {
        throw ArgumentError("target time constant must be > 0");
    }
    if (!(r_driver_mohm > 0.0) || !(r_ground_mohm > 0.0)) {
        throw ArgumentError("terminal resistances must be > 0");
    }
    return tau_target_us * (1.0 / r_driver_mohm + 1.0 / r_ground_mohm);
}

CurrentTrace simulate_pair_transient(const PulseSpec& pulses,
                                     const PairParams& params) {
    pulses.validate();
    params.dyn.validate();
    if (!(params.sample_dt_us > 0.0)) {
        throw ArgumentError("sample step must be > 0");
    }

    ArrayParams ap;
    ap.n = 2;
    ap.mode = ArrayMode::spatiotemporal;
    ap.dt_us = params.sample_dt_us;
    ap.pulse_width_us = params.sample_dt_us;  // edges handled by sub-stepping
    ap.tau_film_us = params.tau_target_us;
    ap.c_f_pf = params.c_f_pf;
    ap.cloud = params.driver;
    ap.dyn = params.dyn;
    ap.x_init = {params.driver.x, params.ground.x};
    ReservoirArray arr = ReservoirArray::create(ap);

    const double dt = params.sample_dt_us;
    const double period = pulses.width + pulses.interval;
    const double train_end = pulses.train_duration();
    const double total = train_end + params.tail_us;
    const int n_steps = static_cast<int>(std::ceil(total / dt - 1e-9));

    // Drive at time t: inside a pulse-on window or not.
    auto drive_at = [&](double t) {
        if (t >= train_end) return 0.0;
        double phase = std::fmod(t, period);
        return phase < pulses.width ? pulses.amplitude : 0.0;
    };

    CurrentTrace trace;
    trace.dt_us = dt;
    trace.t_us.reserve(n_steps);
    trace.i_ua.reserve(n_steps);

    std::vector<double> v(2, 0.0);
    for (int k = 0; k < n_steps; ++k) {
        const double t0 = k * dt;
        const double t1 = t0 + dt;
        // Split the step at a drive transition inside (t0, t1), if any.
        double i_ground = 0.0;
        double v0 = drive_at(t0);
        double t_edge = t1;
        // Candidate edges: pulse rise/fall instants within this step.
        for (int p = 0; p <= pulses.count; ++p) {
            double rise = p * period;
            double fall = rise + pulses.width;
            for (double e : {rise, fall}) {
                if (e > t0 + 1e-12 && e < t1 - 1e-12) {
                    t_edge = std::min(t_edge, e);
                }
            }
        }
        if (t_edge < t1) {
            v[0] = v0;
            arr.step(v, t_edge - t0);
            v[0] = drive_at(t_edge);
            auto cur = arr.step(v, t1 - t_edge);
            i_ground = cur[1];
        } else {
            v[0] = v0;
            auto cur = arr.step(v, dt);
            i_ground = cur[1];
        }
        trace.t_us.push_back(t1);
        trace.i_ua.push_back(-i_ground);  // positive out of the film
    }
    return trace;
}

CurrentTrace slice_after(const CurrentTrace& trace, double t_cut_us) {
    CurrentTrace out;
    out.dt_us = trace.dt_us;
    double t0 = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < trace.t_us.size(); ++k) {
        if (trace.t_us[k] > t_cut_us + 1e-12) {
            if (std::isnan(t0)) t0 = trace.t_us[k];
            out.t_us.push_back(trace.t_us[k] - t0);
            out.i_ua.push_back(trace.i_ua[k]);
        }
    }
    return out;
}

DecayFit fit_decay_constant(const CurrentTrace& trace) {
    const std::size_t n = trace.t_us.size();
    if (n != trace.i_ua.size() || n < 3) {
        throw FitError("decay fit needs at least three samples");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(trace.i_ua[k] > 0.0)) {
            throw FitError("decay fit requires strictly positive currents");
        }
        double x = trace.t_us[k];
        double y = std::log(trace.i_ua[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (!(denom > 0.0)) {
        throw FitError("degenerate time axis in decay fit");
    }
    const double slope = (dn * sxy - sx * sy) / denom;
    const double inter = (sy - slope * sx) / dn;
    if (!(slope < 0.0)) {
        throw FitError("trace does not decay");
    }
    DecayFit fit;
    fit.tau_us = -1.0 / slope;
    fit.i0_ua = std::exp(inter);

    const double span = trace.t_us.back() - trace.t_us.front();
    if (span < 3.0 * fit.tau_us) {
        throw FitError("trace shorter than three fitted time constants");
    }

    double ss_res = 0, ss_tot = 0;
    const double mean_i = [&] {
        double s = 0;
        for (double i : trace.i_ua) s += i;
        return s / dn;
    }();
    for (std::size_t k = 0; k < n; ++k) {
        double model = fit.i0_ua * std::exp(-trace.t_us[k] / fit.tau_us);
        ss_res += (trace.i_ua[k] - model) * (trace.i_ua[k] - model);
        ss_tot += (trace.i_ua[k] - mean_i) * (trace.i_ua[k] - mean_i);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

MultilevelResult program_multilevel(const NonVolatileCell& base, int levels,
                                    const MultilevelSchedule& sched) {
    if (levels < 2) {
        throw ArgumentError("multilevel programming needs at least two levels");
    }
    base.validate();
    const double r_min = 1.0 / base.g_max;
    const double r_max = 1.0 / base.g_min;
    const double range = r_max - r_min;
    const double over = -sched.v_set - base.v_th_set;
    if (!(over > 0.0)) {
        throw ArgumentError("SET amplitude does not exceed its threshold");
    }
    const double g_step = (base.g_max - base.g_min) / (levels - 1);

    MultilevelResult result;
    result.cells.reserve(levels);
    result.pulse_counts.reserve(levels);
    result.targets_us_g.reserve(levels);

    for (int lvl = 0; lvl < levels; ++lvl) {
        const double g_target = base.g_min + lvl * g_step;
        result.targets_us_g.push_back(g_target);

        // Deep RESET until the conductance stops moving.
        NonVolatileCell cell = base;
        int pulses = 0;
        PulseSpec reset{sched.v_reset, sched.w_reset, 0.0, 1};
        for (; pulses < sched.max_reset_pulses; ++pulses) {
            NonVolatileCell next = program_nonvolatile(cell, reset);
            if (next.g == cell.g) break;
            cell = next;
        }

        // Coarse SET pulses while the next one cannot overshoot the target.
        PulseSpec coarse{sched.v_set, sched.w_set, 0.0, 1};
        const double q_coarse =
            std::min(cell.k_set * over * sched.w_set / range, 1.0);
        int set_pulses = 0;
        const double r_target = 1.0 / g_target;
        while (set_pulses < sched.max_set_pulses) {
            double r = 1.0 / cell.g;
            if (r <= r_target) break;
            double r_next = r - q_coarse * (r - r_min);
            if (r_next < r_target) break;  // would overshoot; trim instead
            NonVolatileCell next = program_nonvolatile(cell, coarse);
            if (next.g == cell.g) break;  // stalled at FP resolution
            cell = next;
            ++set_pulses;
        }
        // One computed-width trim pulse lands exactly on the target.
        double r = 1.0 / cell.g;
        if (r > r_target) {
            double w_trim = (r - r_target) * range / (cell.k_set * over * (r - r_min));
            cell = program_nonvolatile(cell, PulseSpec{sched.v_set, w_trim, 0.0, 1});
            ++set_pulses;
        }
        result.cells.push_back(cell);
        result.pulse_counts.push_back(pulses + set_pulses);
    }
    return result;
}

}  // namespace nnosim
