import math
import random

import pytest

from nrowrl.board import O, X, GameStatus
from nrowrl.values import (
    CHECKPOINT_MAGIC,
    DRAW_VALUE,
    LOSS_VALUE,
    WIN_VALUE,
    CheckpointError,
    CheckpointMeta,
    TrainingDivergedError,
    TrainingExample,
    evaluate,
    initial_weights,
    lms_update,
    load_checkpoint,
    save_checkpoint,
    squared_error,
    terminal_value,
)


def test_outcome_values():
    assert (WIN_VALUE, DRAW_VALUE, LOSS_VALUE) == (100.0, 0.0, -100.0)


def test_initial_weights_all_half():
    assert initial_weights(3) == (0.5,) * 7
    assert initial_weights(5) == (0.5,) * 11


def test_evaluate_is_a_plain_dot_product():
    weights = (93.4, -168.2, -27.3, 12.4, -6.0, 18.9, -198.6)
    features = (1, 0, 1, 0, 0, 1, 0)
    # 93.4 - 27.3 + 18.9, accumulated left to right
    assert evaluate(weights, features) == 85.0
    assert evaluate((0.0,) * 7, (1, 4, 0, 0, 0, 0, 0)) == 0.0


def test_terminal_value_by_perspective():
    assert terminal_value(GameStatus.WON_BY_X, X) == WIN_VALUE
    assert terminal_value(GameStatus.WON_BY_X, O) == LOSS_VALUE
    assert terminal_value(GameStatus.WON_BY_O, O) == WIN_VALUE
    assert terminal_value(GameStatus.WON_BY_O, X) == LOSS_VALUE
    assert terminal_value(GameStatus.DRAW, X) == DRAW_VALUE
    assert terminal_value(GameStatus.DRAW, O) == DRAW_VALUE
    with pytest.raises(ValueError):
        terminal_value(GameStatus.ONGOING, X)


def test_lms_update_frozen_example():
    """Hand-computed single step, frozen before the implementation existed.

    x = (1,0,1,0,0,1,0), w = all 0.5, target +100, eta 0.4:
    prediction 1.5, error 98.5, so the three active weights each move by
    0.4 * 98.5 = 39.4 and the residual scales by 1 - 0.4 * 3.
    """
    example = TrainingExample(features=(1, 0, 1, 0, 0, 1, 0), target=100.0)
    updated = lms_update(initial_weights(3), example, 0.4)
    assert updated[0] == pytest.approx(39.900000000000006, abs=0)
    assert updated[2] == updated[0] and updated[5] == updated[0]
    assert updated[1] == 0.5 and updated[3] == 0.5
    residual = example.target - evaluate(updated, example.features)
    assert residual == pytest.approx(98.5 * (1 - 0.4 * 3), rel=1e-12)


def test_lms_residual_identity_property():
    """After one step the error shrinks by exactly (1 - eta * ||x||^2)."""
    rng = random.Random(4)
    for _ in range(300):
        k = rng.choice((3, 4, 5))
        dim = 2 * k + 1
        weights = tuple(rng.uniform(-5, 5) for _ in range(dim))
        features = tuple(rng.randrange(0, 4) for _ in range(dim))
        target = rng.uniform(-100, 100)
        eta = rng.uniform(0.0, 0.05)
        example = TrainingExample(features=features, target=target)
        before = target - evaluate(weights, features)
        after_w = lms_update(weights, example, eta)
        after = target - evaluate(after_w, features)
        norm_sq = sum(v * v for v in features)
        assert after == pytest.approx(before * (1 - eta * norm_sq), abs=1e-9)


def test_lms_zero_eta_is_identity():
    weights = (1.0, -2.0, 3.0, 0.0, 0.0, 1.0, 2.0)
    example = TrainingExample(features=(1, 1, 0, 0, 2, 0, 1), target=50.0)
    assert lms_update(weights, example, 0.0) == weights


def test_repeated_lms_fits_a_known_linear_function():
    rng = random.Random(11)
    true_w = (4.0, -1.5, 2.0, 0.25, -3.0, 1.0, 0.5)
    data = []
    for _ in range(60):
        features = (1,) + tuple(rng.randrange(0, 4) for _ in range(6))
        data.append(TrainingExample(features=features, target=evaluate(true_w, features)))
    max_norm = max(sum(v * v for v in ex.features) for ex in data)
    eta = 1.0 / max_norm
    weights = initial_weights(3)
    for _ in range(400):
        for ex in data:
            weights = lms_update(weights, ex, eta)
        if squared_error(weights, data) < 1e-6:
            break
    assert squared_error(weights, data) < 1e-6


def test_divergence_raises_with_diagnostic():
    example = TrainingExample(features=(1, 5, 2, 0, 0, 0, 0), target=100.0)
    weights = initial_weights(3)
    with pytest.raises(TrainingDivergedError):
        for _ in range(10000):
            weights = lms_update(weights, example, 0.4)
            # keep feeding the residual-expanding step until overflow


def meta3(**overrides) -> CheckpointMeta:
    base = dict(board_size=3, win_length=3, feature_dim=7, eta=0.4, games_trained=12, seed=5)
    base.update(overrides)
    return CheckpointMeta(**base)


def test_checkpoint_round_trip(tmp_path):
    weights = (0.5, -1.25, 3.0000000000000004, 0.0, 2.5e-17, -100.0, 99.99999999999999)
    path = tmp_path / "w.txt"
    save_checkpoint(weights, meta3(), path)
    loaded, meta = load_checkpoint(path)
    assert loaded == weights          # bit-exact via repr round trip
    assert meta == meta3()
    text = path.read_text()
    assert text.splitlines()[0] == CHECKPOINT_MAGIC
    assert text.endswith("\n")


def test_checkpoint_rejects_mismatched_dim(tmp_path):
    with pytest.raises(CheckpointError):
        save_checkpoint((0.5,) * 6, meta3(), tmp_path / "w.txt")
    with pytest.raises(CheckpointError):
        save_checkpoint((0.5,) * 9, meta3(feature_dim=9), tmp_path / "w.txt")


@pytest.mark.parametrize(
    "mangle",
    [
        lambda lines: ["not-a-checkpoint"] + lines[1:],          # bad magic
        lambda lines: lines[:-1],                                # truncated
        lambda lines: lines + ["extra=1"],                       # trailing junk
        lambda lines: [lines[0], lines[2], lines[1]] + lines[3:],  # key order
        lambda lines: lines[:-1] + ["weights=1.0,2.0"],          # wrong count
        lambda lines: lines[:-1] + [lines[-1].replace("0.5", "nan", 1)],  # non-finite
    ],
)
def test_checkpoint_rejects_corruption(tmp_path, mangle):
    path = tmp_path / "w.txt"
    save_checkpoint((0.5,) * 7, meta3(), path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(mangle(lines)) + "\n")
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def test_checkpoint_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / "absent.txt")


def test_squared_error_definition():
    data = [
        TrainingExample(features=(1, 0, 0, 0, 0, 0, 0), target=1.0),
        TrainingExample(features=(1, 1, 0, 0, 0, 0, 0), target=3.0),
    ]
    weights = (0.0,) * 7
    assert squared_error(weights, data) == 1.0 + 9.0
