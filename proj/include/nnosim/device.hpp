#pragma once

// Compact models for the two junction types: volatile metal-metal nodes whose
// series resistance is set by a hydrogen-cloud thickness, and non-volatile
// programmable cells used as synaptic weights.  Units throughout: V, µs, µm,
// MΩ, µS, µA, pF (so MΩ·pF = µs and V·µS = µA).

#include <optional>
#include <vector>

namespace nnosim {

// Volatile node state: cloud thickness x sets the series resistance.
struct CloudState {
    double x = 2.25;       // µm, current thickness
    double x_rest = 2.25;  // µm, zero-field rest thickness
    double x_min = 1.5;    // µm
    double x_max = 3.0;    // µm
    double r_x = 0.4;      // MΩ/µm, resistance per unit thickness
};

// Threshold-drift dynamics for the cloud thickness.
struct CloudDynParams {
    double eta_plus = 0.002;   // µm·V⁻¹·µs⁻¹, expansion rate above +v_th
    double eta_minus = 0.004;  // µm·V⁻¹·µs⁻¹, shrink rate below -v_th
    double v_th = 1.0;         // V
    double tau_x = 20.0;       // µs, relaxation toward x_rest (inf allowed)

    void validate() const;  // throws ArgumentError on violated constraints
};

// Non-volatile cell: conductance g retained between programming pulses,
// linear reads below v_lin.
struct NonVolatileCell {
    double g = 1.0 / 0.35;      // µS
    double g_min = 1.0 / 0.35;  // µS (350 kΩ)
    double g_max = 25.0;        // µS (40 kΩ)
    double v_th_set = 2.5;      // V, |negative amplitude| threshold, g up
    double v_th_reset = 3.0;    // V, positive amplitude threshold, g down
    double k_set = 5.0e-4;      // MΩ·V⁻¹·µs⁻¹
    double k_reset = 3.5e-4;    // MΩ·V⁻¹·µs⁻¹
    double v_lin = 0.1;         // V, linear read window

    void validate() const;
};

struct PulseSpec {
    double amplitude = 5.0;  // V
    double width = 0.5;      // µs
    double interval = 0.5;   // µs between pulse falls and next rise
    int count = 1;

    void validate() const;
    double train_duration() const;  // count·width + (count-1)·interval
};

// Uniformly sampled current record.
struct CurrentTrace {
    std::vector<double> t_us;
    std::vector<double> i_ua;
    double dt_us = 0.1;
};

struct DecayFit {
    double tau_us = 0.0;
    double r_squared = 0.0;
    double i0_ua = 0.0;
};

// Two-node transient setup: one driven and one grounded cloud node sharing a
// capacitive film node.  c_f_pf <= 0 derives the capacitance from tau_target
// at the initial conductances.
struct PairParams {
    CloudState driver;
    CloudState ground;
    CloudDynParams dyn;
    double tau_target_us = 5.0;
    double c_f_pf = 0.0;
    double sample_dt_us = 0.1;
    double tail_us = 25.0;  // zero-drive time appended after the train
};

struct MultilevelSchedule {
    double v_reset = 9.0;       // V
    double w_reset = 10.0;      // µs
    int max_reset_pulses = 4000;
    double v_set = -8.0;        // V
    double w_set = 0.5;         // µs, coarse step width
    int max_set_pulses = 100000;
};

struct MultilevelResult {
    std::vector<NonVolatileCell> cells;  // one per level, ascending g
    std::vector<int> pulse_counts;       // total pulses spent per level
    std::vector<double> targets_us_g;    // µS targets, evenly spaced
};

double cloud_resistance(const CloudState& c);   // MΩ; throws StateError off-bounds
double cloud_conductance(const CloudState& c);  // µS

// One explicit-Euler drift/relaxation step with clamping.
CloudState step_cloud(const CloudState& c, const CloudDynParams& p,
                      double v_local, double dt_us);

// Applies pulse.count programming pulses; sub-threshold amplitudes leave the
// cell bit-identical.
NonVolatileCell program_nonvolatile(const NonVolatileCell& cell,
                                    const PulseSpec& pulse);

double read_cell(const NonVolatileCell& cell, double v_read);  // µA

// C_f = tau·(1/r_driver + 1/r_ground), pF for MΩ inputs.
double calibrate_film_capacitance(double tau_target_us, double r_driver_mohm,
                                  double r_ground_mohm);

// Drives the pair with the pulse train plus tail and returns the outward
// current at the grounded terminal (positive during positive-drive charging).
CurrentTrace simulate_pair_transient(const PulseSpec& pulses,
                                     const PairParams& params);

// Sub-trace strictly after t_cut_us, times rebased to start at zero.
CurrentTrace slice_after(const CurrentTrace& trace, double t_cut_us);

// ln-linear least squares fit of i(t) = i0·exp(-t/tau) over the whole trace.
// Throws FitError on non-positive samples, non-decaying data, or a trace
// shorter than three fitted time constants.
DecayFit fit_decay_constant(const CurrentTrace& trace);

// Program-and-verify schedule: per level, deep RESET to the conductance floor
// followed by coarse SET pulses and one computed-width trim pulse landing on
// the target.  Targets are `levels` evenly spaced conductances spanning
// [g_min, g_max].
MultilevelResult program_multilevel(const NonVolatileCell& base, int levels,
                                    const MultilevelSchedule& sched = {});

}  // namespace nnosim
