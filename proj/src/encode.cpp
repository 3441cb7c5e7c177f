#include "nnosim/encode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "nnosim/csv.hpp"
#include "nnosim/errors.hpp"
#include "nnosim/rng.hpp"

namespace nnosim {

std::size_t SpikeTrain::count_ones() const {
    std::size_t n = 0;
    for (auto v : data) n += v;
    return n;
}

SpikeTrain make_spike_train(int channels, int steps) {
    if (channels < 1 || steps < 1) {
        throw ArgumentError("spike train dimensions must be positive");
    }
    SpikeTrain t;
    t.channels = channels;
    t.steps = steps;
    t.data.assign(static_cast<std::size_t>(channels) * steps, 0);
    return t;
}

LabeledClip make_clip(int channels, int steps, int label, std::string id) {
    if (channels < 1 || steps < 1) {
        throw ArgumentError("clip dimensions must be positive");
    }
    LabeledClip c;
    c.channels = channels;
    c.steps = steps;
    c.data.assign(static_cast<std::size_t>(channels) * steps, 0.0);
    c.label = label;
    c.id = std::move(id);
    return c;
}

SpikeTrain threshold_encode(const LabeledClip& clip, double theta,
                            double step_us, double v_pulse, double width_us) {
    if (!std::isfinite(theta)) {
        throw ArgumentError("threshold must be finite");
    }
    SpikeTrain train = make_spike_train(clip.channels, clip.steps);
    train.step_us = step_us;
    train.v_pulse = v_pulse;
    train.width_us = width_us;
    for (std::size_t k = 0; k < clip.data.size(); ++k) {
        train.data[k] = clip.data[k] > theta ? 1 : 0;
    }
    return train;
}

SpikeTrain pattern_encode(const PatternGrid& grid) {
    SpikeTrain train = make_spike_train(5, 5);
    for (int r = 0; r < 5; ++r) {
        for (int t = 0; t < 5; ++t) {
            train.set(r, t, grid.cells[r][t] ? 1 : 0);
        }
    }
    return train;
}

PatternGrid pattern_glyph(char cls) {
    auto from_rows = [&](std::array<const char*, 5> rows) {
        PatternGrid g;
        g.cls = cls;
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 5; ++c) {
                g.cells[r][c] = rows[r][c] == 'X' ? 1 : 0;
            }
        }
        return g;
    };
    switch (cls) {
        case 'U':
            return from_rows({"X...X",
                              "X...X",
                              "X...X",
                              "X...X",
                              "XXXXX"});
        case 'C':
            return from_rows({"XXXXX",
                              "X....",
                              "X....",
                              "X....",
                              "XXXXX"});
        case 'S':
            return from_rows({"XXXXX",
                              "X....",
                              "XXXXX",
                              "....X",
                              "XXXXX"});
        case 'D':
            return from_rows({"XXXX.",
                              "X...X",
                              "X...X",
                              "X...X",
                              "XXXX."});
        default:
            throw ArgumentError(std::string("unknown glyph class '") + cls + "'");
    }
}

std::vector<int> sample_schedule(int t_steps, int n_sample) {
    if (n_sample < 1 || n_sample > t_steps) {
        throw ArgumentError("sample count must lie in [1, t_steps]");
    }
    std::vector<int> idx(n_sample);
    for (int i = 0; i < n_sample; ++i) {
        idx[i] = static_cast<int>(
                     (static_cast<long long>(i + 1) * t_steps) / n_sample) - 1;
    }
    return idx;
}

std::vector<LabeledClip> load_clips(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) {
        throw IngestError("cannot open manifest: " + manifest.string());
    }
    const auto base = manifest.parent_path();
    std::vector<LabeledClip> clips;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(manifest.string() + ":" + std::to_string(lineno) +
                              ": bad manifest entry: " + e.what());
        }
        if (!j.contains("path") || !j.contains("label") || !j.contains("id")) {
            throw IngestError(manifest.string() + ":" + std::to_string(lineno) +
                              ": manifest entry needs path, label, and id");
        }
        const std::filesystem::path clip_path = base / j["path"].get<std::string>();
        if (!std::filesystem::exists(clip_path)) {
            throw IngestError("missing clip file: " + clip_path.string());
        }
        auto rows = read_csv(clip_path);  // timestep-major
        if (rows.empty()) {
            throw IngestError("empty clip file: " + clip_path.string());
        }
        const int steps = static_cast<int>(rows.size());
        const int channels = static_cast<int>(rows.front().size());
        LabeledClip clip = make_clip(channels, steps, j["label"].get<int>(),
                                     j["id"].get<std::string>());
        for (int t = 0; t < steps; ++t) {
            for (int c = 0; c < channels; ++c) {
                clip.at(c, t) = rows[t][c];
            }
        }
        if (!clips.empty() && clip.channels != clips.front().channels) {
            throw IngestError(clip_path.string() + ": channel count " +
                              std::to_string(clip.channels) +
                              " does not match the set's " +
                              std::to_string(clips.front().channels));
        }
        clips.push_back(std::move(clip));
    }
    return clips;
}

std::filesystem::path export_clips(const std::vector<LabeledClip>& clips,
                                   const std::filesystem::path& dir,
                                   const std::string& manifest_name) {
    std::filesystem::create_directories(dir);
    const auto manifest = dir / manifest_name;
    std::ofstream out(manifest);
    if (!out) {
        throw IngestError("cannot open for writing: " + manifest.string());
    }
    for (const auto& clip : clips) {
        const std::string file = clip.id + ".csv";
        std::vector<std::vector<double>> rows(
            clip.steps, std::vector<double>(clip.channels));
        for (int t = 0; t < clip.steps; ++t) {
            for (int c = 0; c < clip.channels; ++c) {
                rows[t][c] = clip.at(c, t);
            }
        }
        write_csv(dir / file, "", rows);
        nlohmann::ordered_json j;
        j["path"] = file;
        j["label"] = clip.label;
        j["id"] = clip.id;
        out << j.dump() << '\n';
    }
    return manifest;
}

void export_spike_train_csv(const SpikeTrain& train,
                            const std::filesystem::path& path) {
    std::vector<std::vector<double>> rows;
    for (int c = 0; c < train.channels; ++c) {
        for (int t = 0; t < train.steps; ++t) {
            if (train.at(c, t)) {
                rows.push_back({static_cast<double>(c), static_cast<double>(t)});
            }
        }
    }
    write_csv(path, "channel,t_step", rows);
}

SpikeTrain import_spike_train_csv(const std::filesystem::path& path,
                                  int channels, int steps, double step_us,
                                  double v_pulse, double width_us) {
    SpikeTrain train = make_spike_train(channels, steps);
    train.step_us = step_us;
    train.v_pulse = v_pulse;
    train.width_us = width_us;
    auto rows = read_csv(path, 1);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        if (row.size() != 2) {
            throw IngestError(path.string() + ": expected channel,t_step rows");
        }
        const int c = static_cast<int>(row[0]);
        const int t = static_cast<int>(row[1]);
        if (c < 0 || c >= channels || t < 0 || t >= steps) {
            throw IngestError(path.string() + ": spike coordinate outside the train");
        }
        train.set(c, t, 1);
    }
    return train;
}

std::vector<LabeledClip> synth_benchmark(const MotifGenParams& params) {
    if (params.n_classes < 2) {
        throw ArgumentError("benchmark needs at least two classes");
    }
    if (params.pool < 4 || params.pool > params.n_channels) {
        throw ArgumentError("motif pool must lie in [4, n_channels]");
    }
    if (params.delta_max < 1) {
        throw ArgumentError("motif lag bound must be >= 1");
    }
    Rng rng(params.seed);

    struct Motif {
        int a, b, delta;
    };
    std::vector<std::vector<Motif>> class_motifs(params.n_classes);
    for (int c = 0; c < params.n_classes; ++c) {
        for (int m = 0; m < params.motifs_per_class; ++m) {
            int a = static_cast<int>(rng.index(params.pool));
            int b = static_cast<int>(rng.index(params.pool - 1));
            if (b >= a) ++b;  // b ≠ a
            int delta = 1 + static_cast<int>(rng.index(params.delta_max));
            class_motifs[c].push_back({a, b, delta});
        }
    }

    const int event_span =
        params.motifs_per_class * params.event_stagger + params.delta_max + 1;
    if (event_span >= params.t_steps) {
        throw ArgumentError("event window does not fit in the clip");
    }

    std::vector<LabeledClip> clips;
    clips.reserve(params.n_clips);
    for (int k = 0; k < params.n_clips; ++k) {
        const int label = k % params.n_classes;
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "clip-%04d", k);
        LabeledClip clip = make_clip(params.n_channels, params.t_steps, label, idbuf);

        auto put = [&](int c, int t) {
            if (t >= 0 && t < params.t_steps) clip.at(c, t) = 1.0;
        };
        const auto& motifs = class_motifs[label];
        for (int e = 0; e < params.events_per_clip; ++e) {
            const int t0 = static_cast<int>(rng.index(params.t_steps - event_span));
            for (std::size_t m = 0; m < motifs.size(); ++m) {
                const int on = t0 + static_cast<int>(m) * params.event_stagger;
                put(motifs[m].a, on);
                put(motifs[m].b, on + motifs[m].delta);
            }
        }
        for (const auto& mo : motifs) {
            for (int r = 0; r < params.isolated_reps; ++r) {
                const int on = static_cast<int>(rng.index(params.t_steps - mo.delta));
                put(mo.a, on);
                put(mo.b, on + mo.delta);
            }
        }
        for (int c = 0; c < params.n_channels; ++c) {
            for (int t = 0; t < params.t_steps; ++t) {
                if (rng.bernoulli(params.p_noise)) clip.at(c, t) = 1.0;
            }
        }
        clips.push_back(std::move(clip));
    }
    return clips;
}

std::vector<LabeledClip> synth_eeg(const EegGenParams& params) {
    const int steps = static_cast<int>(params.clip_s * params.rate_hz);
    if (steps < params.rate_hz || params.channels < 1) {
        throw ArgumentError("surrogate set needs >= 1 s of samples and >= 1 channel");
    }
    Rng rng(params.seed);
    std::vector<LabeledClip> clips;
    clips.reserve(2 * params.n_per_class);

    const int n_seconds = static_cast<int>(params.clip_s);
    for (int k = 0; k < 2 * params.n_per_class; ++k) {
        const int label = k % 2;
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "eeg-%03d", k);
        LabeledClip clip = make_clip(params.channels, steps, label, idbuf);

        for (auto& v : clip.data) v = params.noise_sigma * rng.normal();

        // Large artifacts, identical statistics in both classes.
        const int n_artifacts = static_cast<int>(
            std::lround(params.artifact_per_s * params.clip_s));
        for (int a = 0; a < n_artifacts; ++a) {
            const int c = static_cast<int>(rng.index(params.channels));
            const int t0 = static_cast<int>(rng.index(steps - 8));
            for (int t = t0; t < t0 + 8; ++t) {
                clip.at(c, t) += params.artifact_amp;
            }
        }
        // Weak single-channel decoy bursts, both classes.
        const int n_decoys = static_cast<int>(
            std::lround(params.decoy_per_s * params.clip_s));
        for (int d = 0; d < n_decoys; ++d) {
            const int c = static_cast<int>(rng.index(params.channels));
            const int t0 = static_cast<int>(rng.index(steps - params.burst_len));
            for (int t = t0; t < t0 + params.burst_len; ++t) {
                clip.at(c, t) += 0.5 * params.burst_amp *
                                 (1.0 + params.burst_jitter * rng.normal());
            }
        }
        if (label == 1) {
            // Grouped bursts with density rising linearly over the clip.
            for (int s = 0; s < n_seconds; ++s) {
                const double frac = n_seconds > 1
                                        ? static_cast<double>(s) / (n_seconds - 1)
                                        : 0.0;
                const double rate = params.bursts_first_s +
                                    frac * (params.bursts_last_s - params.bursts_first_s);
                const int n_bursts = static_cast<int>(std::floor(rate)) +
                                     (rng.uniform() < rate - std::floor(rate) ? 1 : 0);
                for (int b = 0; b < n_bursts; ++b) {
                    const int c0 = static_cast<int>(
                        rng.index(params.channels - params.burst_channels + 1));
                    const int lo = s * params.rate_hz;
                    const int hi = std::min((s + 1) * params.rate_hz, steps) -
                                   params.burst_len;
                    if (hi <= lo) continue;
                    const int t0 = lo + static_cast<int>(rng.index(hi - lo));
                    for (int c = c0; c < c0 + params.burst_channels; ++c) {
                        for (int t = t0; t < t0 + params.burst_len; ++t) {
                            clip.at(c, t) += params.burst_amp *
                                             (1.0 + params.burst_jitter * rng.normal());
                        }
                    }
                }
            }
        }
        clips.push_back(std::move(clip));
    }
    return clips;
}

}  // namespace nnosim
