#pragma once

// Signal-to-spike conversion, dataset file formats, sample schedules, and the
// two seeded synthetic dataset generators used by the benchmark verbs.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nnosim {

// Binary channels × timesteps matrix, channel-major storage.
struct SpikeTrain {
    int channels = 0;
    int steps = 0;
    std::vector<std::uint8_t> data;  // data[c*steps + t] ∈ {0,1}
    double step_us = 0.5;
    double v_pulse = 5.0;
    double width_us = 0.5;

    std::uint8_t at(int c, int t) const { return data[static_cast<std::size_t>(c) * steps + t]; }
    void set(int c, int t, std::uint8_t v) { data[static_cast<std::size_t>(c) * steps + t] = v; }
    std::size_t count_ones() const;
};

SpikeTrain make_spike_train(int channels, int steps);

// Real-valued channels × timesteps clip with a class label.
struct LabeledClip {
    int channels = 0;
    int steps = 0;
    std::vector<double> data;  // data[c*steps + t]
    int label = 0;
    std::string id;

    double at(int c, int t) const { return data[static_cast<std::size_t>(c) * steps + t]; }
    double& at(int c, int t) { return data[static_cast<std::size_t>(c) * steps + t]; }
};

LabeledClip make_clip(int channels, int steps, int label, std::string id);

// 5×5 binary glyph; cells[row][col], row 0 at the top.
struct PatternGrid {
    std::array<std::array<std::uint8_t, 5>, 5> cells{};
    char cls = '?';
};

SpikeTrain threshold_encode(const LabeledClip& clip, double theta,
                            double step_us = 0.5, double v_pulse = 5.0,
                            double width_us = 0.5);

// Row r becomes channel r, column t becomes timestep t.
SpikeTrain pattern_encode(const PatternGrid& grid);

PatternGrid pattern_glyph(char cls);  // 'U', 'C', 'S', or 'D'

// n evenly spaced step indices ending at t_steps-1.
std::vector<int> sample_schedule(int t_steps, int n_sample);

// JSON-lines manifest {"path","label","id"}, clip CSVs with one row per
// timestep and one column per channel.  Paths resolve relative to the
// manifest's directory.
std::vector<LabeledClip> load_clips(const std::filesystem::path& manifest);

// Writes one CSV per clip plus a manifest; returns the manifest path.
// Round-trips through load_clips bit-exactly.
std::filesystem::path export_clips(const std::vector<LabeledClip>& clips,
                                   const std::filesystem::path& dir,
                                   const std::string& manifest_name = "manifest.jsonl");

// Sparse spike export: header `channel,t_step`, one row per set entry.
void export_spike_train_csv(const SpikeTrain& train,
                            const std::filesystem::path& path);
SpikeTrain import_spike_train_csv(const std::filesystem::path& path,
                                  int channels, int steps,
                                  double step_us = 0.5, double v_pulse = 5.0,
                                  double width_us = 0.5);

// Multi-class benchmark: each class is a fixed seeded set of channel-pair
// motifs (spike on channel a at t, spike on channel b at t+Δ) drawn from a
// shared channel pool.  Per clip every motif of the class is inserted at a few
// shared event windows (staggered onsets, so events pile up activity across
// channels) plus a number of isolated onsets, all over Bernoulli background
// noise.
struct MotifGenParams {
    int n_classes = 10;
    int n_channels = 64;
    int t_steps = 100;
    int n_clips = 500;
    std::uint64_t seed = 42;
    int pool = 16;             // motif channels drawn from [0, pool)
    int motifs_per_class = 6;
    int delta_max = 2;         // motif lag Δ ∈ {1..delta_max}
    int events_per_clip = 4;   // shared event windows per clip
    int event_stagger = 2;     // steps between motif onsets within an event
    int isolated_reps = 2;     // extra isolated onsets per motif per clip
    double p_noise = 0.01;     // background Bernoulli rate
};

std::vector<LabeledClip> synth_benchmark(const MotifGenParams& params);

// Two-class surrogate with EEG-like shape: shared Gaussian noise floor and
// rare large artifacts in both classes; the positive class adds grouped
// mid-amplitude channel bursts whose density grows toward the clip end.
struct EegGenParams {
    int channels = 23;
    int rate_hz = 256;
    double clip_s = 10.0;
    int n_per_class = 20;
    std::uint64_t seed = 7;
    double noise_sigma = 0.2;
    double artifact_amp = 5.0;
    double artifact_per_s = 0.5;   // expected artifacts per second per clip
    double burst_amp = 1.0;
    double burst_jitter = 0.15;    // relative amplitude jitter within bursts
    int burst_channels = 5;        // adjacent channels per burst
    int burst_len = 48;            // steps per burst
    double bursts_first_s = 1.0;   // positive-class bursts in the first second
    double bursts_last_s = 4.0;    // ... rising linearly to this in the last
    double decoy_per_s = 0.5;      // single-channel weak bursts, both classes
};

std::vector<LabeledClip> synth_eeg(const EegGenParams& params);

}  // namespace nnosim
