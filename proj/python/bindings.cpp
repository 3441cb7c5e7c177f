#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nnosim/device.hpp"
#include "nnosim/encode.hpp"
#include "nnosim/errors.hpp"
#include "nnosim/field.hpp"
#include "nnosim/readout.hpp"
#include "nnosim/report.hpp"
#include "nnosim/reservoir.hpp"
#include "nnosim/verbs.hpp"
#include "nnosim/version.hpp"

namespace py = pybind11;
using namespace nnosim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Protonic-device array simulator core";
    m.attr("__version__") = kVersion;

    static py::exception<Error> exc(m, "SimError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    // ---- device ----
    py::class_<CloudState>(m, "CloudState")
        .def(py::init<>())
        .def_readwrite("x", &CloudState::x)
        .def_readwrite("x_rest", &CloudState::x_rest)
        .def_readwrite("x_min", &CloudState::x_min)
        .def_readwrite("x_max", &CloudState::x_max)
        .def_readwrite("r_x", &CloudState::r_x);

    py::class_<CloudDynParams>(m, "CloudDynParams")
        .def(py::init<>())
        .def_readwrite("eta_plus", &CloudDynParams::eta_plus)
        .def_readwrite("eta_minus", &CloudDynParams::eta_minus)
        .def_readwrite("v_th", &CloudDynParams::v_th)
        .def_readwrite("tau_x", &CloudDynParams::tau_x);

    py::class_<NonVolatileCell>(m, "NonVolatileCell")
        .def(py::init<>())
        .def_readwrite("g", &NonVolatileCell::g)
        .def_readwrite("g_min", &NonVolatileCell::g_min)
        .def_readwrite("g_max", &NonVolatileCell::g_max)
        .def_readwrite("v_th_set", &NonVolatileCell::v_th_set)
        .def_readwrite("v_th_reset", &NonVolatileCell::v_th_reset)
        .def_readwrite("k_set", &NonVolatileCell::k_set)
        .def_readwrite("k_reset", &NonVolatileCell::k_reset)
        .def_readwrite("v_lin", &NonVolatileCell::v_lin);

    py::class_<PulseSpec>(m, "PulseSpec")
        .def(py::init<>())
        .def(py::init([](double amplitude, double width, double interval, int count) {
                 PulseSpec p;
                 p.amplitude = amplitude;
                 p.width = width;
                 p.interval = interval;
                 p.count = count;
                 return p;
             }),
             py::arg("amplitude"), py::arg("width"), py::arg("interval") = 0.5,
             py::arg("count") = 1)
        .def_readwrite("amplitude", &PulseSpec::amplitude)
        .def_readwrite("width", &PulseSpec::width)
        .def_readwrite("interval", &PulseSpec::interval)
        .def_readwrite("count", &PulseSpec::count)
        .def("train_duration", &PulseSpec::train_duration);

    py::class_<CurrentTrace>(m, "CurrentTrace")
        .def(py::init<>())
        .def_readwrite("t_us", &CurrentTrace::t_us)
        .def_readwrite("i_ua", &CurrentTrace::i_ua)
        .def_readwrite("dt_us", &CurrentTrace::dt_us);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("tau_us", &DecayFit::tau_us)
        .def_readonly("r_squared", &DecayFit::r_squared)
        .def_readonly("i0_ua", &DecayFit::i0_ua);

    py::class_<PairParams>(m, "PairParams")
        .def(py::init<>())
        .def_readwrite("driver", &PairParams::driver)
        .def_readwrite("ground", &PairParams::ground)
        .def_readwrite("dyn", &PairParams::dyn)
        .def_readwrite("tau_target_us", &PairParams::tau_target_us)
        .def_readwrite("c_f_pf", &PairParams::c_f_pf)
        .def_readwrite("sample_dt_us", &PairParams::sample_dt_us)
        .def_readwrite("tail_us", &PairParams::tail_us);

    py::class_<MultilevelSchedule>(m, "MultilevelSchedule")
        .def(py::init<>())
        .def_readwrite("v_reset", &MultilevelSchedule::v_reset)
        .def_readwrite("w_reset", &MultilevelSchedule::w_reset)
        .def_readwrite("max_reset_pulses", &MultilevelSchedule::max_reset_pulses)
        .def_readwrite("v_set", &MultilevelSchedule::v_set)
        .def_readwrite("w_set", &MultilevelSchedule::w_set)
        .def_readwrite("max_set_pulses", &MultilevelSchedule::max_set_pulses);

    py::class_<MultilevelResult>(m, "MultilevelResult")
        .def_readonly("cells", &MultilevelResult::cells)
        .def_readonly("pulse_counts", &MultilevelResult::pulse_counts)
        .def_readonly("targets_us_g", &MultilevelResult::targets_us_g);

    m.def("cloud_resistance", &cloud_resistance);
    m.def("cloud_conductance", &cloud_conductance);
    m.def("step_cloud", &step_cloud, py::arg("cloud"), py::arg("dyn"),
          py::arg("v_local"), py::arg("dt_us"));
    m.def("program_nonvolatile", &program_nonvolatile, py::arg("cell"),
          py::arg("pulse"));
    m.def("read_cell", &read_cell, py::arg("cell"), py::arg("v_read"));
    m.def("calibrate_film_capacitance", &calibrate_film_capacitance,
          py::arg("tau_target_us"), py::arg("r_driver_mohm"),
          py::arg("r_ground_mohm"));
    m.def("simulate_pair_transient", &simulate_pair_transient, py::arg("pulses"),
          py::arg("params"));
    m.def("slice_after", &slice_after, py::arg("trace"), py::arg("t_cut_us"));
    m.def("fit_decay_constant", &fit_decay_constant, py::arg("trace"));
    m.def("program_multilevel", &program_multilevel, py::arg("base"),
          py::arg("levels"), py::arg("schedule") = MultilevelSchedule{});

    // ---- reservoir ----
    py::enum_<ArrayMode>(m, "ArrayMode")
        .value("spatiotemporal", ArrayMode::spatiotemporal)
        .value("temporal_only", ArrayMode::temporal_only)
        .value("bypass", ArrayMode::bypass);
    m.def("array_mode_from_string", &array_mode_from_string);

    py::class_<FilmState>(m, "FilmState")
        .def_readonly("v_f", &FilmState::v_f)
        .def_readonly("c_f", &FilmState::c_f);

    py::class_<ArrayParams>(m, "ArrayParams")
        .def(py::init<>())
        .def_readwrite("n", &ArrayParams::n)
        .def_readwrite("mode", &ArrayParams::mode)
        .def_readwrite("dt_us", &ArrayParams::dt_us)
        .def_readwrite("seed", &ArrayParams::seed)
        .def_readwrite("tau_film_us", &ArrayParams::tau_film_us)
        .def_readwrite("c_f_pf", &ArrayParams::c_f_pf)
        .def_readwrite("v_pulse", &ArrayParams::v_pulse)
        .def_readwrite("pulse_width_us", &ArrayParams::pulse_width_us)
        .def_readwrite("v_read", &ArrayParams::v_read)
        .def_readwrite("x_init_lo", &ArrayParams::x_init_lo)
        .def_readwrite("x_init_hi", &ArrayParams::x_init_hi)
        .def_readwrite("cloud", &ArrayParams::cloud)
        .def_readwrite("dyn", &ArrayParams::dyn)
        .def_readwrite("x_init", &ArrayParams::x_init);

    py::class_<FeatureVector>(m, "FeatureVector")
        .def_readonly("values", &FeatureVector::values)
        .def_readonly("t_us", &FeatureVector::t_us)
        .def_readonly("n_nodes", &FeatureVector::n_nodes)
        .def_readonly("n_samples", &FeatureVector::n_samples);

    py::class_<ReservoirArray>(m, "ReservoirArray")
        .def_static("create", &ReservoirArray::create)
        .def("step",
             py::overload_cast<const std::vector<double>&, double>(
                 &ReservoirArray::step),
             py::arg("voltages"), py::arg("dt_us"))
        .def("step",
             py::overload_cast<const std::vector<double>&>(&ReservoirArray::step),
             py::arg("voltages"))
        .def("run_spike_train",
             [](const ReservoirArray& arr, const SpikeTrain& train,
                const std::vector<int>& schedule) {
                 double energy = 0.0;
                 FeatureVector fv = arr.run_spike_train(train, schedule, &energy);
                 return py::make_tuple(fv, energy);
             },
             py::arg("train"), py::arg("schedule"))
        .def("energy_per_frame_pj", &ReservoirArray::energy_per_frame_pj)
        .def("with_mode", &ReservoirArray::with_mode)
        .def("reset", &ReservoirArray::reset)
        .def_property_readonly("n", &ReservoirArray::n)
        .def_property_readonly("n_channels", &ReservoirArray::n_channels)
        .def_property_readonly("mode", &ReservoirArray::mode)
        .def("conductances", &ReservoirArray::conductances)
        .def("films", &ReservoirArray::films);

    // ---- encode ----
    py::class_<SpikeTrain>(m, "SpikeTrain")
        .def_readwrite("channels", &SpikeTrain::channels)
        .def_readwrite("steps", &SpikeTrain::steps)
        .def_readwrite("data", &SpikeTrain::data)
        .def_readwrite("step_us", &SpikeTrain::step_us)
        .def_readwrite("v_pulse", &SpikeTrain::v_pulse)
        .def_readwrite("width_us", &SpikeTrain::width_us)
        .def("at", &SpikeTrain::at)
        .def("set", &SpikeTrain::set)
        .def("count_ones", &SpikeTrain::count_ones);
    m.def("make_spike_train", &make_spike_train, py::arg("channels"),
          py::arg("steps"));

    py::class_<LabeledClip>(m, "LabeledClip")
        .def_readwrite("channels", &LabeledClip::channels)
        .def_readwrite("steps", &LabeledClip::steps)
        .def_readwrite("data", &LabeledClip::data)
        .def_readwrite("label", &LabeledClip::label)
        .def_readwrite("id", &LabeledClip::id)
        .def("at", py::overload_cast<int, int>(&LabeledClip::at, py::const_));
    m.def("make_clip", &make_clip, py::arg("channels"), py::arg("steps"),
          py::arg("label"), py::arg("id"));

    py::class_<PatternGrid>(m, "PatternGrid")
        .def_readonly("cls", &PatternGrid::cls);
    m.def("pattern_glyph", &pattern_glyph);
    m.def("pattern_encode", &pattern_encode);
    m.def("threshold_encode", &threshold_encode, py::arg("clip"),
          py::arg("theta"), py::arg("step_us") = 0.5, py::arg("v_pulse") = 5.0,
          py::arg("width_us") = 0.5);
    m.def("sample_schedule", &sample_schedule, py::arg("t_steps"),
          py::arg("n_sample"));
    m.def("load_clips", &load_clips, py::arg("manifest"));
    m.def("export_clips", &export_clips, py::arg("clips"), py::arg("dir"),
          py::arg("manifest_name") = "manifest.jsonl");

    py::class_<MotifGenParams>(m, "MotifGenParams")
        .def(py::init<>())
        .def_readwrite("n_classes", &MotifGenParams::n_classes)
        .def_readwrite("n_channels", &MotifGenParams::n_channels)
        .def_readwrite("t_steps", &MotifGenParams::t_steps)
        .def_readwrite("n_clips", &MotifGenParams::n_clips)
        .def_readwrite("seed", &MotifGenParams::seed)
        .def_readwrite("pool", &MotifGenParams::pool)
        .def_readwrite("motifs_per_class", &MotifGenParams::motifs_per_class)
        .def_readwrite("delta_max", &MotifGenParams::delta_max)
        .def_readwrite("events_per_clip", &MotifGenParams::events_per_clip)
        .def_readwrite("event_stagger", &MotifGenParams::event_stagger)
        .def_readwrite("isolated_reps", &MotifGenParams::isolated_reps)
        .def_readwrite("p_noise", &MotifGenParams::p_noise);
    m.def("synth_benchmark", &synth_benchmark);

    py::class_<EegGenParams>(m, "EegGenParams")
        .def(py::init<>())
        .def_readwrite("channels", &EegGenParams::channels)
        .def_readwrite("rate_hz", &EegGenParams::rate_hz)
        .def_readwrite("clip_s", &EegGenParams::clip_s)
        .def_readwrite("n_per_class", &EegGenParams::n_per_class)
        .def_readwrite("seed", &EegGenParams::seed)
        .def_readwrite("noise_sigma", &EegGenParams::noise_sigma)
        .def_readwrite("artifact_amp", &EegGenParams::artifact_amp)
        .def_readwrite("artifact_per_s", &EegGenParams::artifact_per_s)
        .def_readwrite("burst_amp", &EegGenParams::burst_amp)
        .def_readwrite("burst_jitter", &EegGenParams::burst_jitter)
        .def_readwrite("burst_channels", &EegGenParams::burst_channels)
        .def_readwrite("burst_len", &EegGenParams::burst_len)
        .def_readwrite("bursts_first_s", &EegGenParams::bursts_first_s)
        .def_readwrite("bursts_last_s", &EegGenParams::bursts_last_s)
        .def_readwrite("decoy_per_s", &EegGenParams::decoy_per_s);
    m.def("synth_eeg", &synth_eeg);

    // ---- readout ----
    py::class_<LinearModel>(m, "LinearModel")
        .def(py::init<>())
        .def_readwrite("w", &LinearModel::w)
        .def_readwrite("b", &LinearModel::b);

    py::class_<CVReport>(m, "CVReport")
        .def_readonly("fold_accuracy", &CVReport::fold_accuracy)
        .def_readonly("fold_size", &CVReport::fold_size)
        .def_readonly("mean_accuracy", &CVReport::mean_accuracy)
        .def_readonly("seed", &CVReport::seed);

    py::class_<Crossbar>(m, "Crossbar")
        .def_readonly("rows", &Crossbar::rows)
        .def_readonly("cols", &Crossbar::cols)
        .def_readonly("scale", &Crossbar::scale)
        .def_readonly("levels", &Crossbar::levels)
        .def_readonly("bias", &Crossbar::bias)
        .def("realized_weights", &Crossbar::realized_weights);

    m.def("one_hot", &one_hot, py::arg("labels"), py::arg("n_classes"));
    m.def("train_linear", &train_linear, py::arg("x"), py::arg("y"),
          py::arg("lambda_") = 0.0);
    m.def("predict", &predict, py::arg("model"), py::arg("x"));
    m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"));
    m.def("stratified_folds", &stratified_folds, py::arg("labels"), py::arg("k"),
          py::arg("seed"));
    m.def("kfold_cv", &kfold_cv, py::arg("x"), py::arg("labels"), py::arg("k"),
          py::arg("seed"), py::arg("lambda_"));
    m.def("quantize_to_crossbar", &quantize_to_crossbar, py::arg("model"),
          py::arg("levels"), py::arg("cell_template") = NonVolatileCell{});
    m.def("continuous_crossbar", &continuous_crossbar, py::arg("model"),
          py::arg("cell_template") = NonVolatileCell{});
    m.def("crossbar_mvm", &crossbar_mvm, py::arg("crossbar"), py::arg("v"));
    m.def("crossbar_scores", &crossbar_scores, py::arg("crossbar"), py::arg("v"));

    // ---- field ----
    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def(py::init<>())
        .def_readwrite("pad_um", &ArrayGeometry::pad_um)
        .def_readwrite("gap_um", &ArrayGeometry::gap_um)
        .def_readwrite("ring_um", &ArrayGeometry::ring_um)
        .def_readwrite("rows", &ArrayGeometry::rows)
        .def_readwrite("cols", &ArrayGeometry::cols)
        .def_readwrite("margin_pitches", &ArrayGeometry::margin_pitches)
        .def("pitch_um", &ArrayGeometry::pitch_um)
        .def("n_pads", &ArrayGeometry::n_pads);

    py::class_<PotentialGrid>(m, "PotentialGrid")
        .def_readonly("nx", &PotentialGrid::nx)
        .def_readonly("ny", &PotentialGrid::ny)
        .def_readonly("h_um", &PotentialGrid::h_um)
        .def_readonly("n_patches", &PotentialGrid::n_patches);

    py::class_<SolveOptions>(m, "SolveOptions")
        .def(py::init<>())
        .def_readwrite("tol", &SolveOptions::tol)
        .def_readwrite("max_iter", &SolveOptions::max_iter);

    py::class_<PotentialField>(m, "PotentialField")
        .def_readonly("v", &PotentialField::v)
        .def_readonly("nx", &PotentialField::nx)
        .def_readonly("ny", &PotentialField::ny)
        .def_readonly("residual", &PotentialField::residual)
        .def_readonly("iterations", &PotentialField::iterations);

    py::class_<DistanceSweep>(m, "DistanceSweep")
        .def_readonly("baseline_a", &DistanceSweep::baseline_a)
        .def_readonly("with_neighbor_a", &DistanceSweep::with_neighbor_a);

    m.def("build_grid", &build_grid, py::arg("geom"), py::arg("h_um"),
          py::arg("rho_nno_ohm_m") = 2.5e-6, py::arg("rho_hnno_ohm_m") = 8.85,
          py::arg("thickness_nm") = 50.0);
    m.def("solve_potential", &solve_potential, py::arg("grid"),
          py::arg("patch_v"), py::arg("opts") = SolveOptions{});
    m.def("electrode_current", &electrode_current, py::arg("field"),
          py::arg("grid"), py::arg("patch"));
    m.def("all_electrode_currents", &all_electrode_currents, py::arg("field"),
          py::arg("grid"));
    m.def("mean_interior_potential", &mean_interior_potential, py::arg("field"),
          py::arg("grid"));
    m.def("ring_conductance", &ring_conductance, py::arg("geom"),
          py::arg("h_um"), py::arg("rho_nno_ohm_m") = 2.5e-6,
          py::arg("rho_hnno_ohm_m") = 8.85, py::arg("thickness_nm") = 50.0,
          py::arg("v_drive") = 5.0, py::arg("opts") = SolveOptions{});
    m.def("distance_sweep", &distance_sweep, py::arg("geom"), py::arg("h_um"),
          py::arg("rho_nno_ohm_m") = 2.5e-6, py::arg("rho_hnno_ohm_m") = 8.85,
          py::arg("thickness_nm") = 50.0, py::arg("v_drive") = 5.0,
          py::arg("opts") = SolveOptions{});

    // ---- verbs ----
    py::class_<VerbOptions>(m, "VerbOptions")
        .def(py::init<>())
        .def_readwrite("config_path", &VerbOptions::config_path)
        .def_readwrite("out_dir", &VerbOptions::out_dir)
        .def_readwrite("seed", &VerbOptions::seed)
        .def_readwrite("mode", &VerbOptions::mode);

    // `pass` is a python keyword; expose the flag as `passed`.
    py::class_<RunCheck>(m, "RunCheck")
        .def_readonly("name", &RunCheck::name)
        .def_readonly("passed", &RunCheck::pass)
        .def_readonly("detail", &RunCheck::detail);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("verb", &RunReport::verb)
        .def_readonly("version", &RunReport::version)
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("config_hash", &RunReport::config_hash)
        .def_readonly("checks", &RunReport::checks)
        .def_readonly("outputs", &RunReport::outputs)
        .def_readonly("ok", &RunReport::ok)
        .def_readonly("error", &RunReport::error)
        .def("to_json", [](const RunReport& r) { return r.to_json().dump(2); },
             "Full report (config, metrics, checks) as a JSON string.");

    m.def("verb_names", &verb_names);
    m.def("run_verb", &run_verb, py::arg("verb"), py::arg("opts") = VerbOptions{},
          "Run one CLI verb end to end; writes outputs and report.json into "
          "opts.out_dir and returns the report.");
}
