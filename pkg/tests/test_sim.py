import numpy as np

from coded_gray.baselines import make_scheme
from coded_gray.channel import BscChannel
from coded_gray.sim import run_trials, survival, trial_error


def test_trials_are_order_independent():
    sc = make_scheme("coded-gray", 2, 4, 2)
    ch = BscChannel(0.08, 3)
    errors = run_trials(sc, ch, 50)
    assert [trial_error(sc, ch, i) for i in reversed(range(50))][::-1] == errors.tolist()


def test_parallel_matches_serial():
    sc = make_scheme("fw", 2, 4, 2)
    ch = BscChannel(0.05, 1)
    np.testing.assert_array_equal(run_trials(sc, ch, 40, workers=2), run_trials(sc, ch, 40))


def test_survival_counts():
    rows = survival(np.array([0, 0, 1, 5, 9]), [0, 1, 4, 9])
    assert [r.exceed for r in rows] == [3, 2, 2, 0]
    assert rows[0].survival == 0.6
    assert rows[-1].ci_low == 0.0 and 0 < rows[-1].ci_high < 0.6


def test_tail_drops_then_floors_at_low_noise():
    """At p = 0.005 the t-dependent part of the tail is gone within a few
    steps, leaving the floor set by inner-block decoding failures."""
    from coded_gray.rgc import CodeLayout

    lay = CodeLayout.build(4, 8, 4)
    rows = {r.t: r.survival for r in survival(run_trials(lay, BscChannel(0.005, 1), 5000), [0, 2, lay.M // 2, 3 * lay.M])}
    assert rows[2] < rows[0] / 3
    assert rows[lay.M // 2] < 0.02
    assert rows[3 * lay.M] <= rows[lay.M // 2]
