import itertools
import math

import numpy as np
import pytest

import indictts


def test_parse_and_transliterate():
    assert indictts.parse_to_cls("कमल", "hindi") == ["k", "a", "m", "a", "l"]
    assert indictts.parse_to_cls("அடி", "tamil") == ["a", "dx", "i"]
    assert indictts.transliterate("कमल", "hindi", "bengali") == "কমল"
    assert indictts.detect_script("அடி") == "Tamil"


def test_errors_carry_code_names():
    with pytest.raises(indictts.Error, match="MixedScript"):
        indictts.parse_to_cls("कமல", "hindi")
    assert indictts.exit_code("UnknownSubcommand") == 51


def _brute_mcd(x, y):
    # every monotone path, plain python
    local = [[10 / math.log(10) * math.sqrt(2 * sum((a - b) ** 2 for a, b in zip(r[1:], s[1:]))) for s in y] for r in x]
    best = (math.inf, 0)

    def walk(i, j, acc, steps):
        nonlocal best
        acc += local[i][j]
        if i == len(x) - 1 and j == len(y) - 1:
            if acc < best[0]:
                best = (acc, steps)
            return
        if i + 1 < len(x) and j + 1 < len(y):
            walk(i + 1, j + 1, acc, steps + 1)
        if i + 1 < len(x):
            walk(i + 1, j, acc, steps + 1)
        if j + 1 < len(y):
            walk(i, j + 1, acc, steps + 1)

    walk(0, 0, 0.0, 1)
    return best[0] / best[1]


def test_mcd_against_brute_force():
    rng = np.random.default_rng(4)
    for _ in range(20):
        d = int(rng.integers(2, 5))
        x = rng.uniform(-1, 1, (int(rng.integers(1, 6)), d))
        y = rng.uniform(-1, 1, (int(rng.integers(1, 6)), d))
        assert abs(indictts.mcd(x, y) - _brute_mcd(x.tolist(), y.tolist())) < 1e-9
    assert indictts.mcd(np.zeros((1, 2)), np.array([[0.0, 1.0]])) == pytest.approx(6.1419, abs=1e-3)


def test_statistics():
    assert indictts.round_to_hundredths(3.975) == 3.98
    a, b = indictts.preference_percentages(90, 20)
    assert a == 81.82
    assert a + b == pytest.approx(100.0, abs=0.01)


def test_guided_and_gradcheck():
    assert indictts.guided_attention_weight(3, 10, 3, 10) == 0.0
    assert indictts.guided_attention_weight(2, 10, 0, 10, 0.2) == pytest.approx(0.393469, abs=1e-6)
    for seed in range(1, 4):
        assert indictts.attention_grad_check(seed) < 1e-4
        assert indictts.attention_grad_check(seed, mutate=True) > 1e-2


def test_mel_frame_count():
    sr = 22050
    t = np.arange(sr) / sr
    mel = indictts.mel_spectrogram(0.5 * np.sin(2 * np.pi * 1000 * t))
    assert mel.shape == (87, 80)
    torch = pytest.importorskip("torch")
    spec = torch.stft(torch.tensor(0.5 * np.sin(2 * np.pi * 1000 * t)), 1024, 256, 1024,
                      window=torch.hann_window(1024, dtype=torch.float64), center=True, return_complex=True)
    assert spec.shape[-1] == mel.shape[0]


def test_subset_nesting():
    utts = [(f"u{i:03d}", 2.0 + (i * 7919 % 13)) for i in range(200)]
    small = indictts.select_adaptation_subset(utts, 7, 5)
    big = indictts.select_adaptation_subset(utts, 15, 5)
    assert big[: len(small)] == small
