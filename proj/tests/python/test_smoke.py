import math

import numpy as np
import pytest

import prosowave as pw


def test_normalize_matches_known_values():
    out = pw.normalize(np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(out, [-1.2247448714, 0.0, 1.2247448714], atol=1e-9)


def test_constant_signal_has_zero_scalogram():
    grid = pw.ScaleGrid(a0=0.05, count=5)
    sg = pw.cwt(np.full(400, 3.0), 0.005, grid)
    assert sg.coeffs.shape == (5, 400)
    assert np.abs(sg.coeffs).max() < 1e-9


def test_mexican_hat_closed_form():
    assert pw.mexican_hat(0.0) == pytest.approx(0.8673250706, abs=1e-7)
    assert pw.mexican_hat(1.0) == pytest.approx(0.0, abs=1e-12)


def test_loma_finds_a_gaussian_bump():
    dt = 0.005
    t = np.arange(800) * dt
    signal = np.exp(-0.5 * ((t - 2.0) / 0.15) ** 2)
    sg = pw.cwt(signal, dt, pw.ScaleGrid(a0=0.075, count=7))
    lines = pw.maxima_lines(sg)
    full = [l for l in lines if l.points[-1].scale_index == 6]
    assert len(full) == 1
    assert abs(full[0].anchor_time - 2.0) <= 0.05


def test_reconstruction_roundtrip_is_close():
    dt = 0.005
    t = np.arange(1000) * dt
    signal = np.cos(2 * np.pi * 2.0 * t) + 0.5 * np.cos(2 * np.pi * 4.0 * t + 0.3)
    sg = pw.cwt(signal, dt, pw.ScaleGrid(a0=0.02, count=11))
    rec = pw.reconstruct(sg, pw.fit_c(signal, sg))
    err = np.linalg.norm(rec - signal) / np.linalg.norm(signal)
    assert err <= 0.15


def test_kmeans_binarization():
    (lo, hi), labels = pw.binarize_kmeans([0.0, 0.1, 10.0, 10.2])
    assert lo == pytest.approx(0.05)
    assert hi == pytest.approx(10.1)
    assert labels == [False, False, True, True]


def test_annotate_picks_the_bumped_word():
    dt = 0.005
    word_dur = 0.35
    n_words = 5
    frames = int(math.ceil(n_words * word_dur / dt)) + 1
    t = np.arange(frames) * dt
    centre = 2.5 * word_dur  # middle of word index 2
    f0 = 120.0 + 30.0 * np.exp(-0.5 * ((t - centre) / 0.08) ** 2)
    energy = 1.0 + 1.2 * np.exp(-0.5 * ((t - centre) / 0.08) ** 2)
    alignment = [
        (i * word_dur, (i + 1) * word_dur, f"w{i}", "word") for i in range(n_words)
    ]
    words = pw.annotate(f0, energy, alignment, dt)
    assert len(words) == n_words
    best = max(words, key=lambda w: w.prominence)
    assert best.word_index == 2


def test_metrics_dict():
    m = pw.metrics([True, False, True], [True, True, True])
    assert m["accuracy"] == pytest.approx(2.0 / 3.0)
    assert m["tp"] == 2 and m["fn"] == 1
