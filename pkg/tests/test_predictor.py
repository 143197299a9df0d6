"""Parameter-index prediction tests against a row-scan oracle."""

import numpy as np
import pytest

from invpat import (
    NoEvidenceError,
    ParamHistogram,
    ValidationError,
    build_param_index,
    histogram_spread,
    predict_histogram,
    predict_value,
)


def row_scan(rows, x):
    """Brute-force double sum over training rows."""
    counts = {}
    for vec, t in rows:
        for k, v in enumerate(vec):
            if v == x[k]:
                counts[t] = counts.get(t, 0) + 1
    return counts


class TestBuild:
    def test_single_row(self):
        idx = build_param_index([((0, 0), 7)], X=4)
        tables = idx.tables()
        assert tables[0][0] == {7: 1}
        assert tables[1][0] == {7: 1}

    def test_duplicate_rows_accumulate(self):
        idx = build_param_index([((0, 0), 7), ((0, 0), 7)], X=4)
        assert idx.tables()[0][0] == {7: 2}

    def test_mass_conservation(self):
        rng = np.random.default_rng(41)
        rows = [(tuple(int(v) for v in rng.integers(0, 8, size=3)), int(rng.integers(0, 50)))
                for _ in range(500)]
        idx = build_param_index(rows, X=8)
        for table in idx.tables():
            assert sum(c for counter in table.values() for c in counter.values()) == 500

    def test_errors(self):
        with pytest.raises(ValidationError):
            build_param_index([((0, 0), 1), ((0, 0, 0), 2)], X=4)
        with pytest.raises(ValidationError):
            build_param_index([((0, 9), 1)], X=4)
        with pytest.raises(ValidationError):
            build_param_index([], X=4)


class TestPredictHistogram:
    def test_single_row(self):
        idx = build_param_index([((0, 0), 7)], X=4)
        h = predict_histogram(idx, (0, 0))
        assert h.counts == {7: 2} and h.argmax_t == 7

    def test_no_evidence(self):
        idx = build_param_index([((0, 0), 7)], X=4)
        h = predict_histogram(idx, (1, 1))
        assert h.counts == {}
        with pytest.raises(NoEvidenceError):
            predict_value(idx, (1, 1))

    def test_row_scan_oracle(self):
        rng = np.random.default_rng(43)
        for _ in range(40):
            k = int(rng.integers(1, 11))
            x_range = int(rng.integers(2, 33))
            n = int(rng.integers(1, 501))
            rows = [(tuple(int(v) for v in rng.integers(0, x_range, size=k)),
                     int(rng.integers(0, 80))) for _ in range(n)]
            idx = build_param_index(rows, X=x_range)
            q = tuple(int(v) for v in rng.integers(0, x_range, size=k))
            assert predict_histogram(idx, q).counts == row_scan(rows, q)

    def test_query_mass(self):
        rng = np.random.default_rng(47)
        rows = [(tuple(int(v) for v in rng.integers(0, 8, size=4)), int(rng.integers(0, 30)))
                for _ in range(200)]
        idx = build_param_index(rows, X=8)
        q = tuple(int(v) for v in rng.integers(0, 8, size=4))
        expected = sum(sum(1 for vec, _ in rows if vec[k] == q[k]) for k in range(4))
        assert predict_histogram(idx, q).total == expected


class TestPredictValue:
    def test_simple(self):
        idx = build_param_index([((0, 0), 7)], X=4)
        assert predict_value(idx, (0, 0)) == 7

    def test_conservative_tie_break(self):
        rows = [((0,), 21)] * 5 + [((0,), 40)] * 5
        idx = build_param_index(rows, X=4)
        assert predict_value(idx, (0,)) == 21
        assert predict_histogram(idx, (0,)).argmax_t == 21


class TestSpread:
    def test_symmetric(self):
        mode, mean, skew = histogram_spread(ParamHistogram({5: 1, 6: 2, 7: 1}))
        assert (mode, mean, skew) == (6, 6.0, 0)

    def test_positive_skew(self):
        mode, mean, skew = histogram_spread(ParamHistogram({5: 3, 6: 2, 7: 1}))
        assert mode == 5 and mean == pytest.approx(17 / 3) and skew == 1

    def test_negative_skew(self):
        mode, mean, skew = histogram_spread(ParamHistogram({3: 1, 6: 2}))
        assert (mode, mean, skew) == (6, 5.0, -1)

    def test_empty(self):
        with pytest.raises(NoEvidenceError):
            histogram_spread(ParamHistogram({}))
