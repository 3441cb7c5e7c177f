#pragma once

// N-node processing array: per-node volatile cloud devices coupled through one
// shared capacitive film node (spatiotemporal mode) or through per-pair film
// nodes (temporal-only mode).  Even node indices are driven by input channels,
// odd indices are their grounded read partners.

#include <cstdint>
#include <string>
#include <vector>

#include "nnosim/device.hpp"

namespace nnosim {

struct SpikeTrain;  // encode.hpp

enum class ArrayMode { spatiotemporal, temporal_only, bypass };

const char* to_string(ArrayMode mode);
ArrayMode array_mode_from_string(const std::string& name);

struct FilmState {
    double v_f = 0.0;   // V
    double c_f = 0.0;   // pF
};

struct ArrayParams {
    int n = 128;
    ArrayMode mode = ArrayMode::spatiotemporal;
    double dt_us = 0.5;
    std::uint64_t seed = 42;
    double tau_film_us = 5.0;
    double c_f_pf = 0.0;        // <= 0: derive from tau_film at initial G
    double v_pulse = 5.0;       // V
    double pulse_width_us = 0.5;
    double v_read = 0.1;        // V
    double x_init_lo = 2.0;     // µm, seeded initial thickness range
    double x_init_hi = 2.5;
    CloudState cloud;           // template: bounds and r_x
    CloudDynParams dyn;
    std::vector<double> x_init;  // optional explicit thicknesses (size n)

    void validate() const;
};

// Flat feature layout: values[s*n_nodes + i] is node i at sample s.
struct FeatureVector {
    std::vector<double> values;  // µA (bypass mode: raw spike values)
    std::vector<double> t_us;    // one entry per sample
    int n_nodes = 0;
    int n_samples = 0;
};

double film_equilibrium(const std::vector<double>& voltages,
                        const std::vector<double>& conductances);

// Exact exponential relaxation toward v_eq with tau = c_f/g_tot.
FilmState step_film(const FilmState& f, double v_eq, double g_tot, double dt_us);

class ReservoirArray {
  public:
    static ReservoirArray create(const ArrayParams& params);

    // Advances every film group and cloud by dt under the per-node applied
    // voltages and returns per-node step-average currents (µA, positive into
    // the film).  Charge conservation holds exactly per film group:
    // sum_i I_i·dt = C_f·ΔV_f.
    std::vector<double> step(const std::vector<double>& voltages, double dt_us);
    std::vector<double> step(const std::vector<double>& voltages);  // params dt

    // Runs a clip against a copy of the current state: spike frames drive even
    // nodes at v_pulse for the pulse width; after each scheduled input step an
    // extra read step (odd nodes at v_read) records all N currents.  Features
    // are baseline-subtracted: an identical run over an all-zero train is
    // subtracted sample-by-sample, so an empty train maps to exactly zero.
    // Bypass mode skips simulation and returns raw spike values at the sample
    // steps (read nodes zero).  energy_pj, when given, accumulates the clip's
    // drive plus read energy.
    FeatureVector run_spike_train(const SpikeTrain& train,
                                  const std::vector<int>& schedule,
                                  double* energy_pj = nullptr) const;

    // Dissipation of one frame held for the pulse width from the current
    // state, plus the film capacitor energy change over that window.  Does not
    // advance the array.
    double energy_per_frame_pj(const std::vector<double>& voltages) const;

    ReservoirArray with_mode(ArrayMode mode) const;  // fresh array, same params
    void reset();                                    // back to post-create state

    int n() const { return static_cast<int>(clouds_.size()); }
    int n_channels() const { return n() / 2; }
    ArrayMode mode() const { return params_.mode; }
    double dt_us() const { return params_.dt_us; }
    const ArrayParams& params() const { return params_; }
    const std::vector<CloudState>& clouds() const { return clouds_; }
    const std::vector<FilmState>& films() const { return films_; }
    const std::vector<int>& film_of_node() const { return film_of_node_; }
    std::vector<double> conductances() const;  // µS per node

  private:
    ReservoirArray() = default;

    std::vector<double> frame_for_spikes(const std::vector<std::uint8_t>& spikes) const;
    std::vector<double> read_frame() const;

    ArrayParams params_;
    std::vector<CloudState> clouds_;
    std::vector<FilmState> films_;
    std::vector<int> film_of_node_;
    std::vector<CloudState> clouds_init_;
    std::vector<FilmState> films_init_;
};

}  // namespace nnosim
