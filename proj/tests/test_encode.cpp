#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>

#include "nnosim/csv.hpp"
#include "nnosim/encode.hpp"
#include "nnosim/errors.hpp"

using namespace nnosim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("nnosim-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("spike train construction and access") {
    SpikeTrain t = make_spike_train(3, 4);
    CHECK(t.count_ones() == 0);
    t.set(2, 3, 1);
    t.set(0, 0, 1);
    CHECK(t.at(2, 3) == 1);
    CHECK(t.at(1, 2) == 0);
    CHECK(t.count_ones() == 2);
    CHECK_THROWS_AS(make_spike_train(0, 4), ArgumentError);
    CHECK_THROWS_AS(make_clip(3, 0, 0, "x"), ArgumentError);
}

TEST_CASE("threshold encoding is a strict comparison") {
    LabeledClip clip = make_clip(2, 3, 0, "clip");
    const double vals[2][3] = {{0.1, 0.6, 0.2}, {0.9, 0.0, 0.7}};
    for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 3; ++t) clip.at(c, t) = vals[c][t];
    SpikeTrain s = threshold_encode(clip, 0.5);
    const std::uint8_t want[2][3] = {{0, 1, 0}, {1, 0, 1}};
    for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 3; ++t) CHECK(s.at(c, t) == want[c][t]);
    // Equality does not fire a spike.
    clip.at(0, 0) = 0.5;
    CHECK(threshold_encode(clip, 0.5).at(0, 0) == 0);
}

TEST_CASE("letter glyphs: distinct shapes, S densest") {
    std::map<char, std::size_t> ones;
    for (char cls : {'U', 'C', 'S', 'D'}) {
        PatternGrid g = pattern_glyph(cls);
        CHECK(g.cls == cls);
        SpikeTrain t = pattern_encode(g);
        CHECK(t.channels == 5);
        CHECK(t.steps == 5);
        ones[cls] = t.count_ones();
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) CHECK(t.at(r, c) == g.cells[r][c]);
    }
    CHECK(ones['U'] == 13);
    CHECK(ones['C'] == 13);
    CHECK(ones['S'] == 17);
    CHECK(ones['D'] == 14);
    for (char a : {'U', 'C', 'D'}) CHECK(ones['S'] > ones[a]);
    // All four differ somewhere even where the totals tie.
    CHECK(pattern_glyph('U').cells != pattern_glyph('C').cells);
    CHECK_THROWS_AS(pattern_glyph('Z'), ArgumentError);
}

TEST_CASE("sample schedules end at the last step") {
    CHECK(sample_schedule(100, 4) == std::vector<int>({24, 49, 74, 99}));
    CHECK(sample_schedule(100, 1) == std::vector<int>({99}));
    CHECK(sample_schedule(100, 2) == std::vector<int>({49, 99}));
    CHECK(sample_schedule(10, 10) == std::vector<int>({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
    CHECK(sample_schedule(7, 3) == std::vector<int>({1, 3, 6}));
    CHECK_THROWS_AS(sample_schedule(10, 0), ArgumentError);
    CHECK_THROWS_AS(sample_schedule(10, 11), ArgumentError);
}

TEST_CASE("sparse spike CSV round-trips") {
    fs::path dir = scratch_dir("spikes");
    SpikeTrain t = make_spike_train(6, 9);
    t.set(0, 0, 1);
    t.set(5, 8, 1);
    t.set(3, 4, 1);
    export_spike_train_csv(t, dir / "train.csv");
    SpikeTrain back = import_spike_train_csv(dir / "train.csv", 6, 9);
    CHECK(back.data == t.data);

    // Out-of-range coordinates are rejected on import.
    write_text_file(dir / "bad.csv", "channel,t_step\n2,9\n");
    CHECK_THROWS_AS(import_spike_train_csv(dir / "bad.csv", 6, 9), IngestError);
}

TEST_CASE("clip export and load round-trip bit-exactly") {
    fs::path dir = scratch_dir("clips");
    std::vector<LabeledClip> clips;
    LabeledClip a = make_clip(3, 4, 1, "alpha");
    a.at(0, 0) = 1.0 / 3.0;
    a.at(1, 2) = -7.25e-17;
    a.at(2, 3) = 123456.75;
    LabeledClip b = make_clip(3, 2, 0, "beta");
    b.at(2, 1) = std::nextafter(1.0, 2.0);
    clips.push_back(a);
    clips.push_back(b);

    fs::path manifest = export_clips(clips, dir);
    auto loaded = load_clips(manifest);
    REQUIRE(loaded.size() == 2);
    for (std::size_t k = 0; k < clips.size(); ++k) {
        CHECK(loaded[k].data == clips[k].data);
        CHECK(loaded[k].label == clips[k].label);
        CHECK(loaded[k].id == clips[k].id);
        CHECK(loaded[k].channels == clips[k].channels);
        CHECK(loaded[k].steps == clips[k].steps);
    }
}

TEST_CASE("clip loading rejects malformed inputs") {
    fs::path dir = scratch_dir("badclips");
    CHECK_THROWS_AS(load_clips(dir / "nope.jsonl"), IngestError);

    write_text_file(dir / "m1.jsonl", "{not json\n");
    CHECK_THROWS_AS(load_clips(dir / "m1.jsonl"), IngestError);

    write_text_file(dir / "m2.jsonl", R"({"path":"gone.csv","label":0,"id":"x"})"
                                      "\n");
    CHECK_THROWS_AS(load_clips(dir / "m2.jsonl"), IngestError);

    write_text_file(dir / "m3.jsonl", R"({"path":"c.csv","label":0})"
                                      "\n");
    CHECK_THROWS_AS(load_clips(dir / "m3.jsonl"), IngestError);

    // Mixed channel counts across the set.
    write_text_file(dir / "a.csv", "1,2\n3,4\n");
    write_text_file(dir / "b.csv", "1,2,3\n");
    write_text_file(dir / "m4.jsonl",
                    R"({"path":"a.csv","label":0,"id":"a"})"
                    "\n"
                    R"({"path":"b.csv","label":1,"id":"b"})"
                    "\n");
    CHECK_THROWS_AS(load_clips(dir / "m4.jsonl"), IngestError);

    // Non-numeric cell names file and line.
    write_text_file(dir / "c.csv", "1,2\n1,oops\n");
    write_text_file(dir / "m5.jsonl", R"({"path":"c.csv","label":0,"id":"c"})"
                                      "\n");
    try {
        load_clips(dir / "m5.jsonl");
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("c.csv") != std::string::npos);
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("motif benchmark generator: deterministic, labelled, pool-focused") {
    MotifGenParams p;
    p.n_classes = 4;
    p.n_channels = 32;
    p.t_steps = 60;
    p.n_clips = 40;
    p.pool = 8;
    auto a = synth_benchmark(p);
    auto b = synth_benchmark(p);
    REQUIRE(a.size() == 40);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].data == b[k].data);
        CHECK(a[k].label == static_cast<int>(k) % 4);
        CHECK(a[k].id == b[k].id);
    }
    p.seed = 99;
    auto c = synth_benchmark(p);
    bool any_diff = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].data != c[k].data) any_diff = true;
    }
    CHECK(any_diff);

    // Binary clips; motif activity lives inside the channel pool, the rest is
    // sparse background.
    double in_pool = 0.0, out_pool = 0.0;
    for (const auto& clip : a) {
        for (int ch = 0; ch < clip.channels; ++ch) {
            for (int t = 0; t < clip.steps; ++t) {
                double v = clip.at(ch, t);
                CHECK((v == 0.0 || v == 1.0));
                (ch < p.pool ? in_pool : out_pool) += v;
            }
        }
    }
    double per_pool_ch = in_pool / p.pool;
    double per_other_ch = out_pool / (p.n_channels - p.pool);
    CHECK(per_pool_ch > 5.0 * per_other_ch);

    p.pool = 2;
    CHECK_THROWS_AS(synth_benchmark(p), ArgumentError);
}

TEST_CASE("surrogate recording generator: growing grouped bursts in class 1") {
    EegGenParams p;
    p.channels = 12;
    p.clip_s = 4.0;
    p.n_per_class = 6;
    p.bursts_first_s = 1.0;
    p.bursts_last_s = 4.0;
    auto a = synth_eeg(p);
    auto b = synth_eeg(p);
    REQUIRE(a.size() == 12);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].data == b[k].data);
        CHECK(a[k].label == static_cast<int>(k) % 2);
    }

    const int steps = static_cast<int>(p.clip_s * p.rate_hz);
    const int sec = p.rate_hz;
    auto mean_abs = [&](const LabeledClip& clip, int t0, int t1) {
        double s = 0.0;
        for (int c = 0; c < clip.channels; ++c)
            for (int t = t0; t < t1; ++t) s += std::abs(clip.at(c, t));
        return s / (clip.channels * (t1 - t0));
    };
    double c1_first = 0.0, c1_last = 0.0, c0_total = 0.0, c1_total = 0.0;
    int n0 = 0, n1 = 0;
    for (const auto& clip : a) {
        if (clip.label == 1) {
            c1_first += mean_abs(clip, 0, sec);
            c1_last += mean_abs(clip, steps - sec, steps);
            c1_total += mean_abs(clip, 0, steps);
            ++n1;
        } else {
            c0_total += mean_abs(clip, 0, steps);
            ++n0;
        }
    }
    CHECK(n0 == 6);
    CHECK(n1 == 6);
    // Density rises toward the clip end, and only class 1 carries the bursts.
    CHECK(c1_last / n1 > 1.2 * (c1_first / n1));
    CHECK(c1_total / n1 > c0_total / n0);
}
