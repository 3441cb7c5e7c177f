#include "nnosim/reservoir.hpp"

#include <algorithm>
#include <cmath>

#include "nnosim/encode.hpp"
#include "nnosim/errors.hpp"
#include "nnosim/rng.hpp"

namespace nnosim {

const char* to_string(ArrayMode mode) {
    switch (mode) {
        case ArrayMode::spatiotemporal: return "spatiotemporal";
        case ArrayMode::temporal_only: return "temporal-only";
        case ArrayMode::bypass: return "bypass";
    }
    throw ArgumentError("unhandled array mode");
}

ArrayMode array_mode_from_string(const std::string& name) {
    if (name == "spatiotemporal") return ArrayMode::spatiotemporal;
    if (name == "temporal-only") return ArrayMode::temporal_only;
    if (name == "bypass") return ArrayMode::bypass;
    throw ConfigError("unknown array mode '" + name +
                      "' (expected spatiotemporal, temporal-only, or bypass)");
}

void ArrayParams::validate() const {
    if (n < 2 || n % 2 != 0) {
        throw ConfigError("array size must be even and >= 2");
    }
    if (!(dt_us > 0.0)) {
        throw ConfigError("array step must be > 0");
    }
    if (!(pulse_width_us > 0.0) || pulse_width_us > dt_us + 1e-12) {
        throw ConfigError("pulse width must lie in (0, dt]");
    }
    if (c_f_pf <= 0.0 && !(tau_film_us > 0.0)) {
        throw ConfigError("either c_f_pf or a positive film time constant is required");
    }
    if (!(x_init_lo <= x_init_hi) || x_init_lo < cloud.x_min ||
        x_init_hi > cloud.x_max) {
        throw ConfigError("initial thickness range must lie within the cloud bounds");
    }
    if (!x_init.empty() && static_cast<int>(x_init.size()) != n) {
        throw ConfigError("explicit thickness list must have one entry per node");
    }
    for (double x : x_init) {
        if (x < cloud.x_min || x > cloud.x_max) {
            throw ConfigError("explicit thickness outside the cloud bounds");
        }
    }
    dyn.validate();
}

double film_equilibrium(const std::vector<double>& voltages,
                        const std::vector<double>& conductances) {
    if (voltages.empty() || voltages.size() != conductances.size()) {
        throw ArgumentError("equilibrium needs matching non-empty voltage/conductance lists");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < voltages.size(); ++i) {
        if (!(conductances[i] > 0.0)) {
            throw ArgumentError("equilibrium requires positive conductances");
        }
        num += conductances[i] * voltages[i];
        den += conductances[i];
    }
    return num / den;
}

FilmState step_film(const FilmState& f, double v_eq, double g_tot, double dt_us) {
    if (!(g_tot > 0.0)) {
        throw ArgumentError("film update requires positive total conductance");
    }
    if (dt_us < 0.0) {
        throw ArgumentError("film update requires dt >= 0");
    }
    if (!(f.c_f > 0.0)) {
        throw ConfigError("film capacitance must be positive");
    }
    if (dt_us == 0.0) return f;
    FilmState next = f;
    const double e = std::exp(-dt_us * g_tot / f.c_f);
    next.v_f = v_eq + (f.v_f - v_eq) * e;
    return next;
}

ReservoirArray ReservoirArray::create(const ArrayParams& params) {
    params.validate();
    ReservoirArray arr;
    arr.params_ = params;

    arr.clouds_.resize(params.n, params.cloud);
    Rng rng(params.seed);
    for (int i = 0; i < params.n; ++i) {
        double x = params.x_init.empty()
                       ? rng.uniform(params.x_init_lo, params.x_init_hi)
                       : params.x_init[i];
        arr.clouds_[i].x = x;
        arr.clouds_[i].x_rest = x;
    }

    const int n_groups =
        params.mode == ArrayMode::temporal_only ? params.n / 2 : 1;
    arr.film_of_node_.resize(params.n);
    std::vector<double> group_g(n_groups, 0.0);
    double g_all = 0.0;
    for (int i = 0; i < params.n; ++i) {
        int g = params.mode == ArrayMode::temporal_only ? i / 2 : 0;
        arr.film_of_node_[i] = g;
        double gi = cloud_conductance(arr.clouds_[i]);
        group_g[g] += gi;
        g_all += gi;
    }
    const double c_total =
        params.c_f_pf > 0.0 ? params.c_f_pf : params.tau_film_us * g_all;
    arr.films_.resize(n_groups);
    for (int g = 0; g < n_groups; ++g) {
        arr.films_[g].v_f = 0.0;
        arr.films_[g].c_f = c_total * group_g[g] / g_all;
    }

    arr.clouds_init_ = arr.clouds_;
    arr.films_init_ = arr.films_;
    return arr;
}

std::vector<double> ReservoirArray::step(const std::vector<double>& voltages,
                                         double dt_us) {
    const int nn = n();
    if (static_cast<int>(voltages.size()) != nn) {
        throw ArgumentError("drive frame length does not match node count");
    }
    if (!(dt_us > 0.0)) {
        throw ArgumentError("array step requires dt > 0");
    }
    for (double v : voltages) {
        if (!std::isfinite(v)) {
            throw ArgumentError("drive frame entries must be finite");
        }
    }

    const int n_groups = static_cast<int>(films_.size());
    std::vector<double> g_node(nn);
    std::vector<double> g_sum(n_groups, 0.0), gv_sum(n_groups, 0.0);
    for (int i = 0; i < nn; ++i) {
        g_node[i] = cloud_conductance(clouds_[i]);
        g_sum[film_of_node_[i]] += g_node[i];
        gv_sum[film_of_node_[i]] += g_node[i] * voltages[i];
    }

    // Phase 1: exact-exponential film update; v_avg is the time average of the
    // film potential over the step, which makes the returned currents satisfy
    // per-group charge conservation exactly.
    std::vector<double> v_end(n_groups), v_avg(n_groups);
    for (int g = 0; g < n_groups; ++g) {
        const double v_eq = gv_sum[g] / g_sum[g];
        const double h = dt_us * g_sum[g] / films_[g].c_f;
        const double e = std::exp(-h);
        const double v0 = films_[g].v_f;
        v_end[g] = v_eq + (v0 - v_eq) * e;
        v_avg[g] = v_eq + (v0 - v_eq) * (-std::expm1(-h)) / h;
        films_[g].v_f = v_end[g];
    }

    // Phase 2: cloud drift against the updated film potential.
    // Phase 3: step-average currents with start-of-step conductances.
    std::vector<double> currents(nn);
    for (int i = 0; i < nn; ++i) {
        const int g = film_of_node_[i];
        clouds_[i] = step_cloud(clouds_[i], params_.dyn,
                                voltages[i] - v_end[g], dt_us);
        currents[i] = (voltages[i] - v_avg[g]) * g_node[i];
    }
    return currents;
}

std::vector<double> ReservoirArray::step(const std::vector<double>& voltages) {
    return step(voltages, params_.dt_us);
}

std::vector<double> ReservoirArray::read_frame() const {
    std::vector<double> v(n(), 0.0);
    for (int i = 1; i < n(); i += 2) v[i] = params_.v_read;
    return v;
}

FeatureVector ReservoirArray::run_spike_train(const SpikeTrain& train,
                                              const std::vector<int>& schedule,
                                              double* energy_pj) const {
    const int nn = n();
    if (train.channels != nn / 2) {
        throw ArgumentError("spike train channel count must equal half the node count");
    }
    if (schedule.empty()) {
        throw ArgumentError("sample schedule must not be empty");
    }
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        if (schedule[s] < 0 || schedule[s] >= train.steps) {
            throw ArgumentError("sample schedule index outside the train");
        }
        if (s > 0 && schedule[s] <= schedule[s - 1]) {
            throw ArgumentError("sample schedule must be strictly increasing");
        }
    }

    FeatureVector fv;
    fv.n_nodes = nn;
    fv.n_samples = static_cast<int>(schedule.size());
    fv.values.assign(static_cast<std::size_t>(nn) * schedule.size(), 0.0);
    fv.t_us.resize(schedule.size());

    if (params_.mode == ArrayMode::bypass) {
        for (std::size_t s = 0; s < schedule.size(); ++s) {
            fv.t_us[s] = (schedule[s] + 1) * params_.dt_us;
            for (int c = 0; c < train.channels; ++c) {
                fv.values[s * nn + 2 * c] =
                    train.at(c, schedule[s]) ? 1.0 : 0.0;
            }
        }
        if (energy_pj) *energy_pj = 0.0;
        return fv;
    }

    const double dt = params_.dt_us;
    const double width = params_.pulse_width_us;
    const bool split = width < dt - 1e-12;

    // One pass over the clip; `record` captures currents at read steps.
    auto run_once = [&](const SpikeTrain* spikes, std::vector<double>* out,
                        double* energy) {
        ReservoirArray sim = *this;
        std::vector<double> frame(nn, 0.0);
        const std::vector<double> zeros(nn, 0.0);
        const std::vector<double> reads = read_frame();
        std::size_t s = 0;
        for (int t = 0; t < train.steps; ++t) {
            for (int c = 0; c < train.channels; ++c) {
                bool on = spikes && spikes->at(c, t);
                frame[2 * c] = on ? params_.v_pulse : 0.0;
            }
            if (energy) *energy += sim.energy_per_frame_pj(frame);
            if (split) {
                sim.step(frame, width);
                sim.step(zeros, dt - width);
            } else {
                sim.step(frame, dt);
            }
            if (s < schedule.size() && schedule[s] == t) {
                if (energy) *energy += sim.energy_per_frame_pj(reads);
                auto cur = sim.step(reads, dt);
                std::copy(cur.begin(), cur.end(), out->begin() + s * nn);
                ++s;
            }
        }
    };

    std::vector<double> raw(fv.values.size(), 0.0);
    std::vector<double> base(fv.values.size(), 0.0);
    double energy = 0.0;
    run_once(&train, &raw, energy_pj ? &energy : nullptr);
    run_once(nullptr, &base, nullptr);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        fv.values[k] = raw[k] - base[k];
    }
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        fv.t_us[s] = (schedule[s] + 2 + static_cast<int>(s)) * dt;
    }
    if (energy_pj) *energy_pj = energy;
    return fv;
}

double ReservoirArray::energy_per_frame_pj(const std::vector<double>& voltages) const {
    const int nn = n();
    if (static_cast<int>(voltages.size()) != nn) {
        throw ArgumentError("drive frame length does not match node count");
    }
    const double width = params_.pulse_width_us;
    double e_res = 0.0;
    for (int i = 0; i < nn; ++i) {
        const double dv = voltages[i] - films_[film_of_node_[i]].v_f;
        e_res += dv * dv * cloud_conductance(clouds_[i]) * width;
    }
    ReservoirArray probe = *this;
    probe.step(voltages, width);
    double e_cap = 0.0;
    for (std::size_t g = 0; g < films_.size(); ++g) {
        e_cap += 0.5 * films_[g].c_f *
                 (probe.films_[g].v_f * probe.films_[g].v_f -
                  films_[g].v_f * films_[g].v_f);
    }
    return e_res + e_cap;
}

ReservoirArray ReservoirArray::with_mode(ArrayMode mode) const {
    ArrayParams p = params_;
    p.mode = mode;
    return create(p);
}

void ReservoirArray::reset() {
    clouds_ = clouds_init_;
    films_ = films_init_;
}

std::vector<double> ReservoirArray::conductances() const {
    std::vector<double> g(clouds_.size());
    for (std::size_t i = 0; i < clouds_.size(); ++i) {
        g[i] = cloud_conductance(clouds_[i]);
    }
    return g;
}

}  // namespace nnosim
