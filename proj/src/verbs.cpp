#include "nnosim/verbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "nnosim/config.hpp"
#include "nnosim/csv.hpp"
#include "nnosim/device.hpp"
#include "nnosim/encode.hpp"
#include "nnosim/errors.hpp"
#include "nnosim/field.hpp"
#include "nnosim/readout.hpp"
#include "nnosim/reservoir.hpp"
#include "nnosim/version.hpp"

namespace nnosim {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw ArgumentError("correlation needs two equal-length series");
    }
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sab += (a[k] - ma) * (b[k] - mb);
        saa += (a[k] - ma) * (a[k] - ma);
        sbb += (b[k] - mb) * (b[k] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// Config sections.  Every key lives here exactly once, so defaults stay
// consistent across verbs and config-print can resolve the full document.

struct DeviceCfg {
    CloudState cloud;
    CloudDynParams dyn;
    NonVolatileCell nv;
};

DeviceCfg parse_device(ConfigReader& cfg) {
    DeviceCfg d;
    d.cloud.r_x = cfg.number("device.r_x_mohm_per_um", 0.4);
    d.cloud.x_rest = cfg.number("device.x_rest_um", 2.25);
    d.cloud.x_min = cfg.number("device.x_min_um", 1.5);
    d.cloud.x_max = cfg.number("device.x_max_um", 3.0);
    d.cloud.x = d.cloud.x_rest;
    d.dyn.eta_plus = cfg.number("device.eta_plus_um_per_v_us", 0.002);
    d.dyn.eta_minus = cfg.number("device.eta_minus_um_per_v_us", 0.004);
    d.dyn.v_th = cfg.number("device.v_th_v", 1.0);
    d.dyn.tau_x = cfg.number("device.tau_x_us", 20.0);
    d.dyn.validate();
    const double r_min = cfg.number("device.nv_r_min_kohm", 40.0);
    const double r_max = cfg.number("device.nv_r_max_kohm", 350.0);
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw ConfigError("device.nv_r_min_kohm: need 0 < r_min < nv_r_max_kohm");
    }
    d.nv.g_max = 1000.0 / r_min;  // kΩ -> µS
    d.nv.g_min = 1000.0 / r_max;
    d.nv.g = d.nv.g_min;
    d.nv.v_th_set = cfg.number("device.nv_v_th_set_v", 2.5);
    d.nv.v_th_reset = cfg.number("device.nv_v_th_reset_v", 3.0);
    d.nv.k_set = cfg.number("device.nv_k_set", 5.0e-4);
    d.nv.k_reset = cfg.number("device.nv_k_reset", 3.5e-4);
    d.nv.v_lin = cfg.number("device.nv_v_lin_v", 0.1);
    d.nv.validate();
    return d;
}

// array.n = 0 leaves the node count to the verb (derived from the task).
ArrayParams parse_array(ConfigReader& cfg, const DeviceCfg& dev) {
    ArrayParams p;
    p.n = cfg.integer("array.n", 0);
    p.mode = array_mode_from_string(cfg.text("array.mode", "spatiotemporal"));
    p.dt_us = cfg.number("array.dt_us", 0.5);
    p.seed = cfg.unsigned_integer("array.seed", 42);
    p.tau_film_us = cfg.number("array.tau_film_us", 5.0);
    p.c_f_pf = cfg.number("array.c_f_pf", 0.0);
    p.v_pulse = cfg.number("array.v_pulse_v", 5.0);
    p.pulse_width_us = cfg.number("array.pulse_width_us", 0.5);
    p.v_read = cfg.number("array.v_read_v", 0.1);
    p.x_init_lo = cfg.number("array.x_init_lo_um", 2.0);
    p.x_init_hi = cfg.number("array.x_init_hi_um", 2.5);
    p.cloud = dev.cloud;
    p.dyn = dev.dyn;
    return p;
}

struct FitCfg {
    double amplitude_v = 5.0;
    double width_us = 0.5;
    int count = 10;
    std::vector<double> intervals_us{0.5, 1.5, 2.5, 3.5};
    double tau_target_us = 5.0;
    double sample_dt_us = 0.1;
    double tail_us = 25.0;
};

FitCfg parse_fit(ConfigReader& cfg) {
    FitCfg f;
    f.amplitude_v = cfg.number("fit.amplitude_v", f.amplitude_v);
    f.width_us = cfg.number("fit.width_us", f.width_us);
    f.count = cfg.integer("fit.count", f.count);
    f.intervals_us = cfg.number_list("fit.intervals_us", f.intervals_us);
    f.tau_target_us = cfg.number("fit.tau_target_us", f.tau_target_us);
    f.sample_dt_us = cfg.number("fit.sample_dt_us", f.sample_dt_us);
    f.tail_us = cfg.number("fit.tail_us", f.tail_us);
    if (f.intervals_us.empty()) {
        throw ConfigError("fit.intervals_us: need at least one interval");
    }
    return f;
}

struct PatternCfg {
    int relax_steps = 5;
    double gain_v_per_ua = 0.01;
};

PatternCfg parse_pattern(ConfigReader& cfg) {
    PatternCfg p;
    p.relax_steps = cfg.integer("pattern.relax_steps", p.relax_steps);
    p.gain_v_per_ua = cfg.number("pattern.gain_v_per_ua", p.gain_v_per_ua);
    if (p.relax_steps < 0) throw ConfigError("pattern.relax_steps: must be >= 0");
    return p;
}

struct ReadoutCfg {
    int k_folds = 5;
    double lambda = 1e-6;
    int levels = 16;
};

ReadoutCfg parse_readout(ConfigReader& cfg) {
    ReadoutCfg r;
    r.k_folds = cfg.integer("readout.k_folds", r.k_folds);
    r.lambda = cfg.number("readout.lambda", r.lambda);
    r.levels = cfg.integer("readout.levels", r.levels);
    return r;
}

struct TaskCfg {
    std::string manifest;
    MotifGenParams gen;
};

TaskCfg parse_task(ConfigReader& cfg) {
    TaskCfg t;
    t.manifest = cfg.text("task.manifest", "");
    t.gen.n_classes = cfg.integer("task.n_classes", t.gen.n_classes);
    t.gen.n_channels = cfg.integer("task.n_channels", t.gen.n_channels);
    t.gen.t_steps = cfg.integer("task.t_steps", t.gen.t_steps);
    t.gen.n_clips = cfg.integer("task.n_clips", t.gen.n_clips);
    t.gen.seed = cfg.unsigned_integer("task.gen_seed", t.gen.seed);
    t.gen.pool = cfg.integer("task.pool", t.gen.pool);
    t.gen.motifs_per_class = cfg.integer("task.motifs_per_class", t.gen.motifs_per_class);
    t.gen.delta_max = cfg.integer("task.delta_max", t.gen.delta_max);
    t.gen.events_per_clip = cfg.integer("task.events_per_clip", t.gen.events_per_clip);
    t.gen.event_stagger = cfg.integer("task.event_stagger", t.gen.event_stagger);
    t.gen.isolated_reps = cfg.integer("task.isolated_reps", t.gen.isolated_reps);
    t.gen.p_noise = cfg.number("task.p_noise", t.gen.p_noise);
    return t;
}

struct ScheduleCfg {
    std::vector<int> n_sample_sweep{1, 2, 4};
    std::vector<std::string> modes{"bypass", "temporal-only", "spatiotemporal"};
};

ScheduleCfg parse_schedule(ConfigReader& cfg, const VerbOptions& opts) {
    if (opts.mode) {
        cfg.override_value("schedule.modes",
                           nlohmann::ordered_json::array({*opts.mode}));
    }
    ScheduleCfg s;
    s.n_sample_sweep = cfg.integer_list("schedule.n_sample_sweep", s.n_sample_sweep);
    s.modes = cfg.text_list("schedule.modes", s.modes);
    if (s.n_sample_sweep.empty()) {
        throw ConfigError("schedule.n_sample_sweep: need at least one entry");
    }
    for (int ns : s.n_sample_sweep) {
        if (ns < 1) throw ConfigError("schedule.n_sample_sweep: entries must be >= 1");
    }
    std::sort(s.n_sample_sweep.begin(), s.n_sample_sweep.end());
    if (s.modes.empty()) throw ConfigError("schedule.modes: need at least one mode");
    for (const auto& m : s.modes) array_mode_from_string(m);
    return s;
}

struct SeizureCfg {
    std::string manifest;
    EegGenParams gen;
    std::vector<double> horizons_s{1.0, 2.0, 3.0, 10.0};
    std::vector<double> theta_sweep{0.3, 0.45, 0.6, 0.75, 0.9, 1.05, 1.2, 1.5};
    int n_sample = 10;
    std::vector<std::string> modes{"bypass", "temporal-only", "spatiotemporal"};
};

SeizureCfg parse_seizure(ConfigReader& cfg, const VerbOptions& opts) {
    if (opts.mode) {
        cfg.override_value("seizure.modes",
                           nlohmann::ordered_json::array({*opts.mode}));
    }
    SeizureCfg s;
    s.manifest = cfg.text("seizure.manifest", "");
    s.gen.channels = cfg.integer("seizure.channels", s.gen.channels);
    s.gen.rate_hz = cfg.integer("seizure.rate_hz", s.gen.rate_hz);
    s.gen.clip_s = cfg.number("seizure.clip_s", s.gen.clip_s);
    s.gen.n_per_class = cfg.integer("seizure.n_per_class", s.gen.n_per_class);
    s.gen.seed = cfg.unsigned_integer("seizure.gen_seed", s.gen.seed);
    s.gen.noise_sigma = cfg.number("seizure.noise_sigma", s.gen.noise_sigma);
    s.gen.artifact_amp = cfg.number("seizure.artifact_amp", s.gen.artifact_amp);
    s.gen.artifact_per_s = cfg.number("seizure.artifact_per_s", s.gen.artifact_per_s);
    s.gen.burst_amp = cfg.number("seizure.burst_amp", s.gen.burst_amp);
    s.gen.burst_jitter = cfg.number("seizure.burst_jitter", s.gen.burst_jitter);
    s.gen.burst_channels = cfg.integer("seizure.burst_channels", s.gen.burst_channels);
    s.gen.burst_len = cfg.integer("seizure.burst_len", s.gen.burst_len);
    s.gen.bursts_first_s = cfg.number("seizure.bursts_first_s", s.gen.bursts_first_s);
    s.gen.bursts_last_s = cfg.number("seizure.bursts_last_s", s.gen.bursts_last_s);
    s.gen.decoy_per_s = cfg.number("seizure.decoy_per_s", s.gen.decoy_per_s);
    s.horizons_s = cfg.number_list("seizure.horizons_s", s.horizons_s);
    s.theta_sweep = cfg.number_list("seizure.theta_sweep", s.theta_sweep);
    s.n_sample = cfg.integer("seizure.n_sample", s.n_sample);
    s.modes = cfg.text_list("seizure.modes", s.modes);
    if (s.horizons_s.empty()) throw ConfigError("seizure.horizons_s: need at least one horizon");
    if (s.theta_sweep.size() < 3) {
        throw ConfigError("seizure.theta_sweep: need at least three thresholds");
    }
    if (s.n_sample < 1) throw ConfigError("seizure.n_sample: must be >= 1");
    if (s.modes.empty()) throw ConfigError("seizure.modes: need at least one mode");
    for (const auto& m : s.modes) array_mode_from_string(m);
    return s;
}

struct FieldCfg {
    ArrayGeometry geom;
    double h_um = 1.0;
    double rho_nno_ohm_m = 2.5e-6;
    double rho_hnno_ohm_m = 8.85;
    double thickness_nm = 50.0;
    SolveOptions solve;
    double v_drive_v = 5.0;
    int sweep_pads = 6;
    bool refine = true;
    bool write_maps = true;
};

FieldCfg parse_field(ConfigReader& cfg) {
    FieldCfg f;
    f.geom.pad_um = cfg.number("field.pad_um", f.geom.pad_um);
    f.geom.gap_um = cfg.number("field.gap_um", f.geom.gap_um);
    f.geom.ring_um = cfg.number("field.ring_um", f.geom.ring_um);
    f.geom.rows = cfg.integer("field.rows", f.geom.rows);
    f.geom.cols = cfg.integer("field.cols", f.geom.cols);
    f.geom.margin_pitches = cfg.number("field.margin_pitches", f.geom.margin_pitches);
    f.geom.validate();
    f.h_um = cfg.number("field.h_um", f.h_um);
    f.rho_nno_ohm_m = cfg.number("field.rho_nno_ohm_m", f.rho_nno_ohm_m);
    f.rho_hnno_ohm_m = cfg.number("field.rho_hnno_ohm_m", f.rho_hnno_ohm_m);
    f.thickness_nm = cfg.number("field.thickness_nm", f.thickness_nm);
    f.solve.tol = cfg.number("field.tol", f.solve.tol);
    f.solve.max_iter = cfg.integer("field.max_iter", f.solve.max_iter);
    f.v_drive_v = cfg.number("field.v_drive_v", f.v_drive_v);
    f.sweep_pads = cfg.integer("field.sweep_pads", f.sweep_pads);
    f.refine = cfg.boolean("field.refine", f.refine);
    f.write_maps = cfg.boolean("field.write_maps", f.write_maps);
    if (f.sweep_pads < 3) throw ConfigError("field.sweep_pads: need at least 3 pads");
    return f;
}

struct EncodingCfg {
    double theta = 0.5;
};

EncodingCfg parse_encoding(ConfigReader& cfg) {
    EncodingCfg e;
    e.theta = cfg.number("encoding.theta", e.theta);
    return e;
}

void finish_parse(ConfigReader& cfg, RunReport& rep) {
    cfg.reject_unknown();
    rep.config = cfg.resolved();
    rep.config_hash = config_hash(rep.config);
}

// Feature matrix over a fixed schedule length; one row per clip.
Eigen::MatrixXd feature_matrix(const ReservoirArray& arr,
                               const std::vector<SpikeTrain>& trains,
                               int n_sample, double* mean_energy_pj) {
    Eigen::MatrixXd x;
    double e_sum = 0.0;
    for (std::size_t c = 0; c < trains.size(); ++c) {
        const std::vector<int> schedule = sample_schedule(trains[c].steps, n_sample);
        double e = 0.0;
        FeatureVector fv = arr.run_spike_train(trains[c], schedule, &e);
        e_sum += e;
        if (x.size() == 0) {
            x.resize(static_cast<Eigen::Index>(trains.size()), fv.values.size());
        }
        if (static_cast<Eigen::Index>(fv.values.size()) != x.cols()) {
            throw StateError("inconsistent feature length across clips");
        }
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(c, j) = fv.values[j];
    }
    if (mean_energy_pj) {
        *mean_energy_pj = trains.empty() ? 0.0 : e_sum / trains.size();
    }
    return x;
}

LabeledClip clip_prefix(const LabeledClip& clip, int steps) {
    if (steps >= clip.steps) return clip;
    LabeledClip out = make_clip(clip.channels, steps, clip.label, clip.id);
    for (int c = 0; c < clip.channels; ++c) {
        for (int t = 0; t < steps; ++t) out.at(c, t) = clip.at(c, t);
    }
    return out;
}

int uniform_channels(const std::vector<LabeledClip>& clips) {
    if (clips.empty()) throw IngestError("dataset contains no clips");
    const int channels = clips.front().channels;
    for (const auto& c : clips) {
        if (c.channels != channels) {
            throw IngestError("clip '" + c.id + "': channel count differs from the rest");
        }
    }
    return channels;
}

int count_classes(const std::vector<int>& labels) {
    int top = -1;
    for (int l : labels) {
        if (l < 0) throw IngestError("negative class label");
        top = std::max(top, l);
    }
    return top + 1;
}

nlohmann::ordered_json cv_to_json(const CVReport& cv) {
    nlohmann::ordered_json j;
    j["mean_accuracy"] = cv.mean_accuracy;
    j["fold_accuracy"] = cv.fold_accuracy;
    j["fold_size"] = cv.fold_size;
    j["seed"] = cv.seed;
    return j;
}

int argmax_row(const Eigen::RowVectorXd& scores) {
    int best = 0;
    for (int j = 1; j < scores.size(); ++j) {
        if (scores(j) > scores(best)) best = j;
    }
    return best;
}

// ---------------------------------------------------------------------------
// device-fit

void verb_device_fit(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    const DeviceCfg dev = parse_device(cfg);
    const FitCfg fit = parse_fit(cfg);
    finish_parse(cfg, rep);
    rep.seed = opts.seed.value_or(0);

    PairParams pair;
    pair.driver = dev.cloud;
    pair.ground = dev.cloud;
    pair.dyn = dev.dyn;
    pair.tau_target_us = fit.tau_target_us;
    pair.sample_dt_us = fit.sample_dt_us;
    pair.tail_us = fit.tail_us;
    const double r0 = cloud_resistance(dev.cloud);
    pair.c_f_pf = calibrate_film_capacitance(fit.tau_target_us, r0, r0);
    rep.metrics["c_f_pf"] = pair.c_f_pf;
    rep.metrics["tau_target_us"] = fit.tau_target_us;

    // Single pulse: the tail after the drive window decays with the film
    // time constant.
    PulseSpec one;
    one.amplitude = fit.amplitude_v;
    one.width = fit.width_us;
    one.interval = fit.intervals_us.front();
    one.count = 1;
    const CurrentTrace single = simulate_pair_transient(one, pair);
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < single.t_us.size(); ++k) {
            rows.push_back({single.t_us[k], single.i_ua[k]});
        }
        const auto path = opts.out_dir / "pulse_trace.csv";
        write_csv(path, "t_us,i_uA", rows);
        rep.note_output(opts.out_dir, path);
    }
    const DecayFit tail_fit = fit_decay_constant(slice_after(single, one.train_duration()));
    rep.metrics["tau_us"] = tail_fit.tau_us;
    rep.metrics["r_squared"] = tail_fit.r_squared;
    rep.metrics["i0_uA"] = tail_fit.i0_ua;
    rep.check("tau_within_5pct",
              std::abs(tail_fit.tau_us - fit.tau_target_us) <= 0.05 * fit.tau_target_us,
              "tau=" + fmt_g(tail_fit.tau_us) + " us, target=" +
                  fmt_g(fit.tau_target_us) + " us");

    // Interval sweep at fixed pulse count: shorter gaps leave less time to
    // decay between pulses, so the post-train current accumulates higher.
    std::vector<std::vector<double>> table;
    std::vector<double> post;
    for (double interval : fit.intervals_us) {
        PulseSpec train;
        train.amplitude = fit.amplitude_v;
        train.width = fit.width_us;
        train.interval = interval;
        train.count = fit.count;
        const CurrentTrace trace = simulate_pair_transient(train, pair);
        const CurrentTrace tail = slice_after(trace, train.train_duration());
        if (tail.i_ua.empty()) throw FitError("empty post-train tail");
        const double i_post = tail.i_ua.front();
        const DecayFit f = fit_decay_constant(tail);
        post.push_back(i_post);
        table.push_back({interval, i_post, f.tau_us, f.r_squared, f.i0_ua});

        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < trace.t_us.size(); ++k) {
            rows.push_back({trace.t_us[k], trace.i_ua[k]});
        }
        const auto path =
            opts.out_dir / ("trace_interval_" + fmt_g(interval) + "us.csv");
        write_csv(path, "t_us,i_uA", rows);
        rep.note_output(opts.out_dir, path);
    }
    const auto table_path = opts.out_dir / "fit_table.csv";
    write_csv(table_path, "interval_us,i_post_uA,tau_us,r_squared,i0_uA", table);
    rep.note_output(opts.out_dir, table_path);
    rep.metrics["intervals_us"] = fit.intervals_us;
    rep.metrics["i_post_uA"] = post;

    bool decreasing = true;
    for (std::size_t k = 1; k < post.size(); ++k) {
        if (!(post[k] < post[k - 1])) decreasing = false;
    }
    std::string detail;
    for (std::size_t k = 0; k < post.size(); ++k) {
        detail += (k ? " " : "") + fmt_g(fit.intervals_us[k]) + "us:" + fmt_g(post[k]);
    }
    rep.check("accumulation_decreasing", decreasing, detail);
}

// ---------------------------------------------------------------------------
// pattern-demo

void verb_pattern_demo(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    const DeviceCfg dev = parse_device(cfg);
    if (opts.mode) cfg.override_value("array.mode", *opts.mode);
    ArrayParams ap = parse_array(cfg, dev);
    const PatternCfg pat = parse_pattern(cfg);
    const ReadoutCfg ro = parse_readout(cfg);
    finish_parse(cfg, rep);
    rep.seed = ap.seed;

    if (ap.n != 0 && ap.n != 6) {
        throw ConfigError("array.n: the pattern demo runs on a fixed 6-node row");
    }
    ap.n = 6;
    ap.x_init.assign(6, dev.cloud.x_rest);
    const ReservoirArray base = ReservoirArray::create(ap);

    const std::string classes = "UCSD";
    const int n_input = 5;
    const int n_steps = n_input + pat.relax_steps;
    const double gap_us = ap.dt_us - ap.pulse_width_us;

    std::vector<std::vector<double>> i2_traces(4);
    std::vector<double> accumulated_pc(4, 0.0);
    std::vector<double> peak_ua(4, 0.0);
    std::vector<double> mean_ua(4, 0.0);
    std::vector<double> energy_pj(4, 0.0);
    Eigen::MatrixXd x;  // one feature row per glyph

    for (int g = 0; g < 4; ++g) {
        const PatternGrid glyph = pattern_glyph(classes[g]);
        ReservoirArray arr = base;
        std::vector<std::vector<double>> rows;
        std::vector<double> i1s, i2s;
        double t = 0.0;
        auto record = [&](const std::vector<double>& cur, double span) {
            t += span;
            const double i1 = cur[4];
            const double i2 = -cur[5];
            rows.push_back({t, i1, i2});
            i1s.push_back(i1);
            i2s.push_back(i2);
            accumulated_pc[g] += i2 * span;  // µA·µs = pC
        };
        for (int s = 0; s < n_steps; ++s) {
            std::vector<double> v(6, 0.0);
            if (s < n_input) {
                for (int r = 0; r < 5; ++r) {
                    if (glyph.cells[r][s]) v[r] = ap.v_pulse;
                }
                energy_pj[g] += arr.energy_per_frame_pj(v);
            }
            record(arr.step(v, ap.pulse_width_us), ap.pulse_width_us);
            if (gap_us > 0.0) {
                record(arr.step(std::vector<double>(6, 0.0), gap_us), gap_us);
            }
        }
        i2_traces[g] = i2s;
        for (double i : i2s) peak_ua[g] = std::max(peak_ua[g], std::abs(i));
        mean_ua[g] = accumulated_pc[g] / (n_steps * ap.dt_us);

        const auto path = opts.out_dir / (std::string("trajectory_") + classes[g] + ".csv");
        write_csv(path, "t_us,i1_uA,i2_uA", rows);
        rep.note_output(opts.out_dir, path);

        if (x.size() == 0) x.resize(4, 2 * static_cast<Eigen::Index>(i1s.size()));
        for (std::size_t k = 0; k < i1s.size(); ++k) {
            x(g, static_cast<Eigen::Index>(k)) = pat.gain_v_per_ua * i1s[k];
            x(g, static_cast<Eigen::Index>(i1s.size() + k)) = pat.gain_v_per_ua * i2s[k];
        }
    }

    const std::vector<int> labels = {0, 1, 2, 3};
    const LinearModel model = train_linear(x, one_hot(labels, 4), ro.lambda);
    const Crossbar cb = quantize_to_crossbar(model, ro.levels, dev.nv);

    std::vector<std::vector<double>> confusion(4, std::vector<double>(4, 0.0));
    int correct = 0;
    for (int g = 0; g < 4; ++g) {
        const Eigen::RowVectorXd scores = crossbar_scores(cb, x.row(g).transpose());
        const int pred = argmax_row(scores);
        confusion[g][pred] += 1.0;
        if (pred == g) ++correct;
    }

    {
        std::vector<std::vector<double>> rows;
        for (Eigen::Index i = 0; i < model.w.rows(); ++i) {
            std::vector<double> r;
            for (Eigen::Index j = 0; j < model.w.cols(); ++j) r.push_back(model.w(i, j));
            rows.push_back(r);
        }
        std::vector<double> br;
        for (Eigen::Index j = 0; j < model.b.size(); ++j) br.push_back(model.b(j));
        rows.push_back(br);
        const auto path = opts.out_dir / "model.csv";
        write_csv(path, "", rows);
        rep.note_output(opts.out_dir, path);
    }
    {
        std::string header;
        for (int j = 0; j < cb.cols; ++j) {
            header += (j ? "," : "") + std::string("g_plus_") + std::to_string(j) +
                      ",g_minus_" + std::to_string(j);
        }
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < cb.rows; ++i) {
            std::vector<double> r;
            for (int j = 0; j < cb.cols; ++j) {
                r.push_back(cb.plus[static_cast<std::size_t>(i) * cb.cols + j].g);
                r.push_back(cb.minus[static_cast<std::size_t>(i) * cb.cols + j].g);
            }
            rows.push_back(r);
        }
        const auto path = opts.out_dir / "crossbar.csv";
        write_csv(path, header, rows);
        rep.note_output(opts.out_dir, path);
    }
    {
        const auto path = opts.out_dir / "confusion.csv";
        write_csv(path, "pred_U,pred_C,pred_S,pred_D", confusion);
        rep.note_output(opts.out_dir, path);
    }

    rep.metrics["classes"] = {"U", "C", "S", "D"};
    rep.metrics["accuracy"] = correct / 4.0;
    rep.metrics["crossbar_scale"] = cb.scale;
    rep.metrics["crossbar_levels"] = cb.levels;
    for (int g = 0; g < 4; ++g) {
        const std::string key(1, classes[g]);
        rep.metrics["accumulated_pc"][key] = accumulated_pc[g];
        rep.metrics["peak_uA"][key] = peak_ua[g];
        rep.metrics["mean_uA"][key] = mean_ua[g];
        rep.metrics["energy_per_input_pj"][key] = energy_pj[g];
    }

    rep.check("all_patterns_classified", correct == 4,
              std::to_string(correct) + "/4 with " + std::to_string(ro.levels) +
                  "-level crossbar");
    const double acc_s = accumulated_pc[2];
    const bool s_max = acc_s > accumulated_pc[0] && acc_s > accumulated_pc[1] &&
                       acc_s > accumulated_pc[3];
    rep.check("s_max_accumulated_charge", s_max,
              "U:" + fmt_g(accumulated_pc[0]) + " C:" + fmt_g(accumulated_pc[1]) +
                  " S:" + fmt_g(accumulated_pc[2]) + " D:" + fmt_g(accumulated_pc[3]) +
                  " pC");
    const double corr_ud = pearson(i2_traces[0], i2_traces[3]);
    rep.metrics["u_d_correlation"] = corr_ud;
    rep.check("u_d_shape_correlated", corr_ud > 0.9, "corr=" + fmt_g(corr_ud));
    // Amplitude = time-averaged readout current; correlation is level-blind,
    // so shape and level are independent claims.
    const double amp_hi = std::max(mean_ua[0], mean_ua[3]);
    const double amp_diff =
        amp_hi > 0.0 ? std::abs(mean_ua[0] - mean_ua[3]) / amp_hi : 0.0;
    rep.metrics["u_d_amplitude_rel_diff"] = amp_diff;
    rep.check("u_d_amplitude_distinct", amp_diff > 0.05,
              "mean-level rel diff=" + fmt_g(amp_diff));
}

// ---------------------------------------------------------------------------
// classify

std::vector<LabeledClip> load_task_clips(const TaskCfg& task,
                                         const VerbOptions& opts) {
    if (!task.manifest.empty()) {
        std::filesystem::path m = task.manifest;
        if (m.is_relative() && !opts.config_path.empty()) {
            m = opts.config_path.parent_path() / m;
        }
        return load_clips(m);
    }
    return synth_benchmark(task.gen);
}

void verb_classify(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    if (opts.seed) {
        cfg.override_value("array.seed", *opts.seed);
        cfg.override_value("task.gen_seed", *opts.seed);
    }
    const DeviceCfg dev = parse_device(cfg);
    ArrayParams ap = parse_array(cfg, dev);
    const EncodingCfg enc = parse_encoding(cfg);
    const ScheduleCfg sched = parse_schedule(cfg, opts);
    const TaskCfg task = parse_task(cfg);
    const ReadoutCfg ro = parse_readout(cfg);
    finish_parse(cfg, rep);
    rep.seed = ap.seed;

    const std::vector<LabeledClip> clips = load_task_clips(task, opts);
    const int channels = uniform_channels(clips);
    if (ap.n != 0 && ap.n != 2 * channels) {
        throw ConfigError("array.n: must be twice the channel count (" +
                          std::to_string(2 * channels) + ") or omitted");
    }
    ap.n = 2 * channels;

    std::vector<int> labels;
    std::vector<SpikeTrain> trains;
    for (const auto& clip : clips) {
        labels.push_back(clip.label);
        trains.push_back(threshold_encode(clip, enc.theta, ap.dt_us, ap.v_pulse,
                                          ap.pulse_width_us));
    }
    rep.metrics["n_clips"] = clips.size();
    rep.metrics["channels"] = channels;
    rep.metrics["n_classes"] = count_classes(labels);
    rep.metrics["theta"] = enc.theta;

    const int ns_max = sched.n_sample_sweep.back();
    nlohmann::ordered_json details;
    std::map<std::string, std::map<int, double>> acc;
    std::ostringstream table;
    table << "mode,n_sample,mean_accuracy";
    for (int f = 0; f < ro.k_folds; ++f) table << ",fold_" << f;
    table << "\n";

    for (const std::string& mode_name : sched.modes) {
        ArrayParams mp = ap;
        mp.mode = array_mode_from_string(mode_name);
        const ReservoirArray arr = ReservoirArray::create(mp);
        for (int ns : sched.n_sample_sweep) {
            double mean_e = 0.0;
            const Eigen::MatrixXd x = feature_matrix(arr, trains, ns, &mean_e);
            const CVReport cv = kfold_cv(x, labels, ro.k_folds, mp.seed, ro.lambda);
            acc[mode_name][ns] = cv.mean_accuracy;
            details[mode_name][std::to_string(ns)] = cv_to_json(cv);
            if (ns == ns_max) {
                rep.metrics["energy_mean_pj"][mode_name] = mean_e;
            }
            rep.metrics["accuracy"][mode_name][std::to_string(ns)] = cv.mean_accuracy;
            table << mode_name << "," << ns << "," << fmt_double(cv.mean_accuracy);
            for (double fa : cv.fold_accuracy) table << "," << fmt_double(fa);
            table << "\n";
        }
    }

    const auto table_path = opts.out_dir / "accuracy_table.csv";
    write_text_file(table_path, table.str());
    rep.note_output(opts.out_dir, table_path);
    const auto details_path = opts.out_dir / "cv_details.json";
    write_text_file(details_path, details.dump(2) + "\n");
    rep.note_output(opts.out_dir, details_path);

    for (const std::string& mode_name : sched.modes) {
        bool monotone = true;
        std::string detail;
        double prev = -1.0;
        for (int ns : sched.n_sample_sweep) {
            const double a = acc[mode_name][ns];
            if (a < prev) monotone = false;
            prev = a;
            detail += (detail.empty() ? "" : " ") + std::to_string(ns) + ":" + fmt_g(a);
        }
        rep.check("monotone_in_samples_" + mode_name, monotone, detail);
    }
    const bool have_all = acc.count("bypass") && acc.count("temporal-only") &&
                          acc.count("spatiotemporal");
    if (have_all) {
        for (int ns : sched.n_sample_sweep) {
            const double b = acc["bypass"][ns];
            const double t = acc["temporal-only"][ns];
            const double s = acc["spatiotemporal"][ns];
            rep.check("mode_ordering_n" + std::to_string(ns), s >= t && t >= b,
                      "spatiotemporal=" + fmt_g(s) + " temporal-only=" + fmt_g(t) +
                          " bypass=" + fmt_g(b));
        }
    }
    if (acc.count("bypass") && acc.count("spatiotemporal")) {
        const double gap = acc["spatiotemporal"][ns_max] - acc["bypass"][ns_max];
        rep.metrics["spatiotemporal_bypass_gap"] = gap;
        rep.check("spatiotemporal_bypass_gap", gap >= 0.03,
                  "gap=" + fmt_g(gap) + " at n_sample=" + std::to_string(ns_max));
    }
}

// ---------------------------------------------------------------------------
// seizure-demo

void verb_seizure_demo(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    if (opts.seed) {
        cfg.override_value("array.seed", *opts.seed);
        cfg.override_value("seizure.gen_seed", *opts.seed);
    }
    const DeviceCfg dev = parse_device(cfg);
    ArrayParams ap = parse_array(cfg, dev);
    const SeizureCfg sz = parse_seizure(cfg, opts);
    const ReadoutCfg ro = parse_readout(cfg);
    finish_parse(cfg, rep);
    rep.seed = ap.seed;

    std::vector<LabeledClip> clips;
    if (!sz.manifest.empty()) {
        std::filesystem::path m = sz.manifest;
        if (m.is_relative() && !opts.config_path.empty()) {
            m = opts.config_path.parent_path() / m;
        }
        clips = load_clips(m);
    } else {
        clips = synth_eeg(sz.gen);
    }
    const int channels = uniform_channels(clips);
    if (ap.n != 0 && ap.n != 2 * channels) {
        throw ConfigError("array.n: must be twice the channel count (" +
                          std::to_string(2 * channels) + ") or omitted");
    }
    ap.n = 2 * channels;
    std::vector<int> labels;
    for (const auto& c : clips) labels.push_back(c.label);

    rep.metrics["n_clips"] = clips.size();
    rep.metrics["channels"] = channels;
    rep.metrics["n_nodes"] = ap.n;

    auto features_at = [&](const ReservoirArray& arr, double theta, int steps,
                           double* mean_e) {
        std::vector<SpikeTrain> trains;
        for (const auto& clip : clips) {
            trains.push_back(threshold_encode(clip_prefix(clip, steps), theta,
                                              ap.dt_us, ap.v_pulse,
                                              ap.pulse_width_us));
        }
        return feature_matrix(arr, trains, sz.n_sample, mean_e);
    };
    auto horizon_steps = [&](double h_s) {
        const int steps = static_cast<int>(std::lround(h_s * sz.gen.rate_hz));
        return std::max(1, std::min(steps, clips.front().steps));
    };

    // Threshold sweep at the longest horizon, spatiotemporal mode.
    const double h_max = *std::max_element(sz.horizons_s.begin(), sz.horizons_s.end());
    ArrayParams sp = ap;
    sp.mode = ArrayMode::spatiotemporal;
    const ReservoirArray spatio = ReservoirArray::create(sp);
    std::vector<double> sweep_acc;
    std::size_t best = 0;
    for (std::size_t k = 0; k < sz.theta_sweep.size(); ++k) {
        const Eigen::MatrixXd x =
            features_at(spatio, sz.theta_sweep[k], horizon_steps(h_max), nullptr);
        const CVReport cv = kfold_cv(x, labels, ro.k_folds, sp.seed, ro.lambda);
        sweep_acc.push_back(cv.mean_accuracy);
        if (cv.mean_accuracy > sweep_acc[best]) best = k;
    }
    const double theta_star = sz.theta_sweep[best];
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < sweep_acc.size(); ++k) {
            rows.push_back({sz.theta_sweep[k], sweep_acc[k]});
        }
        const auto path = opts.out_dir / "theta_sweep.csv";
        write_csv(path, "theta,accuracy", rows);
        rep.note_output(opts.out_dir, path);
    }
    rep.metrics["theta_star"] = theta_star;
    rep.metrics["theta_sweep_accuracy"] = sweep_acc;
    rep.check("theta_interior_maximum",
              best > 0 && best + 1 < sz.theta_sweep.size() &&
                  sweep_acc[best] > sweep_acc.front() &&
                  sweep_acc[best] > sweep_acc.back(),
              "theta*=" + fmt_g(theta_star) + " acc=" + fmt_g(sweep_acc[best]));

    // Horizon table at theta*.
    nlohmann::ordered_json details;
    std::map<std::string, std::vector<double>> acc;
    std::vector<double> horizons = sz.horizons_s;
    std::sort(horizons.begin(), horizons.end());
    for (const std::string& mode_name : sz.modes) {
        ArrayParams mp = ap;
        mp.mode = array_mode_from_string(mode_name);
        const ReservoirArray arr = ReservoirArray::create(mp);
        for (double h : horizons) {
            double mean_e = 0.0;
            const Eigen::MatrixXd x =
                features_at(arr, theta_star, horizon_steps(h), &mean_e);
            const CVReport cv = kfold_cv(x, labels, ro.k_folds, mp.seed, ro.lambda);
            acc[mode_name].push_back(cv.mean_accuracy);
            details[mode_name][fmt_g(h) + "s"] = cv_to_json(cv);
            rep.metrics["accuracy"][mode_name][fmt_g(h) + "s"] = cv.mean_accuracy;
            if (h == horizons.back() && mode_name == "spatiotemporal") {
                rep.metrics["energy_mean_pj"] = mean_e;
            }
        }
    }
    {
        std::ostringstream tbl;
        tbl << "horizon_s";
        for (const auto& m : sz.modes) tbl << "," << m;
        tbl << "\n";
        for (std::size_t k = 0; k < horizons.size(); ++k) {
            tbl << fmt_double(horizons[k]);
            for (const auto& m : sz.modes) tbl << "," << fmt_double(acc[m][k]);
            tbl << "\n";
        }
        const auto path = opts.out_dir / "horizon_table.csv";
        write_text_file(path, tbl.str());
        rep.note_output(opts.out_dir, path);
    }
    const auto details_path = opts.out_dir / "cv_details.json";
    write_text_file(details_path, details.dump(2) + "\n");
    rep.note_output(opts.out_dir, details_path);

    if (acc.count("spatiotemporal")) {
        const auto& a = acc["spatiotemporal"];
        rep.check("horizon_monotone", a.back() >= a.front(),
                  fmt_g(horizons.front()) + "s:" + fmt_g(a.front()) + " " +
                      fmt_g(horizons.back()) + "s:" + fmt_g(a.back()));
    }
    if (acc.count("spatiotemporal") && acc.count("bypass")) {
        bool all = true;
        std::string detail;
        for (std::size_t k = 0; k < horizons.size(); ++k) {
            if (acc["spatiotemporal"][k] < acc["bypass"][k]) all = false;
            detail += (k ? " " : "") + fmt_g(horizons[k]) + "s:" +
                      fmt_g(acc["spatiotemporal"][k]) + "/" + fmt_g(acc["bypass"][k]);
        }
        rep.check("spatiotemporal_ge_bypass", all, detail);
    }
}

// ---------------------------------------------------------------------------
// field-validate

void verb_field_validate(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    const FieldCfg f = parse_field(cfg);
    finish_parse(cfg, rep);
    rep.seed = opts.seed.value_or(0);

    // Effective pad-to-film conductance from the two-pad geometry; this is
    // the node conductance of the lumped equivalent.
    const double g_pad_s =
        ring_conductance(f.geom, f.h_um, f.rho_nno_ohm_m, f.rho_hnno_ohm_m,
                         f.thickness_nm, f.v_drive_v, f.solve);
    rep.metrics["g_pad_s"] = g_pad_s;
    if (f.refine) {
        const double g_coarse =
            ring_conductance(f.geom, 2.0 * f.h_um, f.rho_nno_ohm_m,
                             f.rho_hnno_ohm_m, f.thickness_nm, f.v_drive_v, f.solve);
        const double rel = std::abs(g_pad_s - g_coarse) / g_pad_s;
        rep.metrics["refinement_rel_change"] = rel;
        rep.check("grid_refinement", rel < 0.02,
                  "pad conductance changes " + fmt_g(100.0 * rel) + "% from h=" +
                      fmt_g(2.0 * f.h_um) + "um to h=" + fmt_g(f.h_um) + "um");
    }

    // Neighbor-count configurations on the full grid.  Pad layout is
    // row-major; the reference driver sits between the two switchable
    // neighbors, the read pad faces it in the second row.
    if (f.geom.rows < 2 || f.geom.cols < 3) {
        throw ConfigError("field.rows/field.cols: the neighbor study needs at least 2x3 pads");
    }
    const PotentialGrid grid =
        build_grid(f.geom, f.h_um, f.rho_nno_ohm_m, f.rho_hnno_ohm_m, f.thickness_nm);
    const int ref_pad = 1;
    const int read_pad = f.geom.cols + 1;
    const std::vector<std::vector<int>> driven_sets = {{ref_pad}, {ref_pad, 0}, {ref_pad, 0, 2}};
    const std::vector<std::string> config_names = {"none", "one", "two"};
    std::vector<PotentialField> fields;
    std::vector<double> i_field, i_lumped, v_mean;
    for (std::size_t k = 0; k < driven_sets.size(); ++k) {
        std::vector<double> pv(static_cast<std::size_t>(f.geom.n_pads()), 0.0);
        for (int p : driven_sets[k]) pv[static_cast<std::size_t>(p)] = f.v_drive_v;
        fields.push_back(solve_potential(grid, pv, f.solve));
        i_field.push_back(std::abs(electrode_current(fields[k], grid, read_pad)));
        v_mean.push_back(mean_interior_potential(fields[k], grid));

        // Lumped star: every pad couples to one film node through g_pad.
        const std::vector<double> g_us(pv.size(), g_pad_s * 1e6);
        const double v_eq = film_equilibrium(pv, g_us);
        i_lumped.push_back(g_pad_s * v_eq);

        if (f.write_maps) {
            const auto path = opts.out_dir / ("potential_" + config_names[k] + ".csv");
            write_potential_csv(fields[k], path);
            rep.note_output(opts.out_dir, path);
        }
        rep.metrics["i_field_a"][config_names[k]] = i_field[k];
        rep.metrics["i_lumped_a"][config_names[k]] = i_lumped[k];
        rep.metrics["mean_potential_v"][config_names[k]] = v_mean[k];
    }

    rep.check("field_ordering", i_field[2] > i_field[1] && i_field[1] > i_field[0],
              "two=" + fmt_g(i_field[2]) + " one=" + fmt_g(i_field[1]) +
                  " none=" + fmt_g(i_field[0]) + " A");
    rep.check("lumped_ordering", i_lumped[2] > i_lumped[1] && i_lumped[1] > i_lumped[0],
              "two=" + fmt_g(i_lumped[2]) + " one=" + fmt_g(i_lumped[1]) +
                  " none=" + fmt_g(i_lumped[0]) + " A");

    const double map_tol = 1e-6 * f.v_drive_v;
    bool maps_ordered = true;
    for (std::size_t c = 0; c + 1 < fields.size() && maps_ordered; ++c) {
        for (std::size_t k = 0; k < fields[c].v.size(); ++k) {
            if (fields[c + 1].v[k] < fields[c].v[k] - map_tol) {
                maps_ordered = false;
                break;
            }
        }
    }
    rep.check("maps_ordered", maps_ordered && v_mean[2] > v_mean[1] && v_mean[1] > v_mean[0],
              "mean potentials " + fmt_g(v_mean[0]) + " < " + fmt_g(v_mean[1]) +
                  " < " + fmt_g(v_mean[2]) + " V");

    double worst_rel = 0.0;
    std::vector<std::vector<double>> cmp_rows;
    for (std::size_t k = 0; k < i_field.size(); ++k) {
        const double rel = std::abs(i_lumped[k] - i_field[k]) / i_field[k];
        worst_rel = std::max(worst_rel, rel);
        cmp_rows.push_back({static_cast<double>(k), i_field[k], i_lumped[k], rel});
    }
    const auto cmp_path = opts.out_dir / "lumped_vs_field.csv";
    write_csv(cmp_path, "n_neighbors,i_field_a,i_lumped_a,rel_err", cmp_rows);
    rep.note_output(opts.out_dir, cmp_path);
    rep.metrics["lumped_field_worst_rel_err"] = worst_rel;
    rep.check("lumped_field_match", worst_rel < 0.05,
              "worst rel err=" + fmt_g(100.0 * worst_rel) + "%");

    // Distance sweep on a single row: how much does it matter where the
    // second driven pad sits?
    ArrayGeometry row_geom = f.geom;
    row_geom.rows = 1;
    row_geom.cols = f.sweep_pads;
    const DistanceSweep sweep =
        distance_sweep(row_geom, f.h_um, f.rho_nno_ohm_m, f.rho_hnno_ohm_m,
                       f.thickness_nm, f.v_drive_v, f.solve);
    {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < sweep.with_neighbor_a.size(); ++k) {
            rows.push_back({static_cast<double>(k + 1), sweep.with_neighbor_a[k]});
        }
        const auto path = opts.out_dir / "distance_sweep.csv";
        write_csv(path, "position,i_neighbor_a", rows);
        rep.note_output(opts.out_dir, path);
    }
    const double lo =
        *std::min_element(sweep.with_neighbor_a.begin(), sweep.with_neighbor_a.end());
    const double hi =
        *std::max_element(sweep.with_neighbor_a.begin(), sweep.with_neighbor_a.end());
    double mean = 0.0;
    for (double v : sweep.with_neighbor_a) mean += v;
    mean /= static_cast<double>(sweep.with_neighbor_a.size());
    const double spread = hi - lo;
    const double diff = mean - sweep.baseline_a;
    rep.metrics["sweep_baseline_a"] = sweep.baseline_a;
    rep.metrics["sweep_spread_a"] = spread;
    rep.metrics["sweep_mean_boost_a"] = diff;
    rep.check("distance_spread", diff > 0.0 && spread < 0.25 * diff,
              "spread=" + fmt_g(spread) + " A vs boost=" + fmt_g(diff) + " A (" +
                  fmt_g(diff > 0.0 ? 100.0 * spread / diff : 0.0) + "%)");
}

// ---------------------------------------------------------------------------
// gen-data

bool clips_equal(const std::vector<LabeledClip>& a, const std::vector<LabeledClip>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].id != b[k].id || a[k].label != b[k].label ||
            a[k].channels != b[k].channels || a[k].steps != b[k].steps ||
            a[k].data != b[k].data) {
            return false;
        }
    }
    return true;
}

void verb_gen_data(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    if (opts.seed) {
        cfg.override_value("task.gen_seed", *opts.seed);
        cfg.override_value("seizure.gen_seed", *opts.seed);
    }
    TaskCfg task = parse_task(cfg);
    SeizureCfg sz = parse_seizure(cfg, opts);
    finish_parse(cfg, rep);
    rep.seed = task.gen.seed;

    const std::vector<LabeledClip> bench = synth_benchmark(task.gen);
    const auto bench_manifest = export_clips(bench, opts.out_dir / "benchmark");
    rep.note_output(opts.out_dir, bench_manifest);
    rep.check("benchmark_round_trip", clips_equal(bench, load_clips(bench_manifest)),
              std::to_string(bench.size()) + " clips");

    const std::vector<LabeledClip> eeg = synth_eeg(sz.gen);
    const auto eeg_manifest = export_clips(eeg, opts.out_dir / "eeg");
    rep.note_output(opts.out_dir, eeg_manifest);
    rep.check("eeg_round_trip", clips_equal(eeg, load_clips(eeg_manifest)),
              std::to_string(eeg.size()) + " clips");

    rep.metrics["benchmark_clips"] = bench.size();
    rep.metrics["benchmark_channels"] = task.gen.n_channels;
    rep.metrics["benchmark_steps"] = task.gen.t_steps;
    rep.metrics["eeg_clips"] = eeg.size();
    rep.metrics["eeg_channels"] = sz.gen.channels;
    rep.metrics["eeg_steps"] = eeg.empty() ? 0 : eeg.front().steps;
}

// ---------------------------------------------------------------------------
// config-print

void verb_config_print(ConfigReader& cfg, const VerbOptions& opts, RunReport& rep) {
    const DeviceCfg dev = parse_device(cfg);
    parse_array(cfg, dev);
    parse_fit(cfg);
    parse_pattern(cfg);
    parse_encoding(cfg);
    parse_schedule(cfg, opts);
    parse_task(cfg);
    parse_readout(cfg);
    parse_seizure(cfg, VerbOptions{});  // seizure keeps its own mode list
    parse_field(cfg);
    finish_parse(cfg, rep);
    rep.seed = opts.seed.value_or(0);

    const auto path = opts.out_dir / "config.json";
    write_text_file(path, rep.config.dump(2) + "\n");
    rep.note_output(opts.out_dir, path);
}

using VerbFn = void (*)(ConfigReader&, const VerbOptions&, RunReport&);

const std::vector<std::pair<std::string, VerbFn>>& verb_table() {
    static const std::vector<std::pair<std::string, VerbFn>> table = {
        {"device-fit", verb_device_fit},
        {"pattern-demo", verb_pattern_demo},
        {"classify", verb_classify},
        {"seizure-demo", verb_seizure_demo},
        {"field-validate", verb_field_validate},
        {"gen-data", verb_gen_data},
        {"config-print", verb_config_print},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& verb_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : verb_table()) v.push_back(name);
        return v;
    }();
    return names;
}

RunReport run_verb(const std::string& verb, const VerbOptions& opts) {
    RunReport rep;
    rep.verb = verb;
    rep.version = kVersion;
    std::filesystem::create_directories(opts.out_dir);
    try {
        VerbFn fn = nullptr;
        for (const auto& [name, candidate] : verb_table()) {
            if (name == verb) fn = candidate;
        }
        if (!fn) throw ArgumentError("unknown verb: " + verb);
        ConfigReader cfg = opts.config_path.empty()
                               ? ConfigReader()
                               : ConfigReader::from_file(opts.config_path);
        fn(cfg, opts, rep);
        rep.ok = true;
        for (const auto& c : rep.checks) rep.ok = rep.ok && c.pass;
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    rep.write(opts.out_dir);
    return rep;
}

}  // namespace nnosim
