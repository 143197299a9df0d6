"""Core index tests: construction, voting, instant training, fast path."""

import numpy as np
import pytest

from invpat import CategoricalModel, ConfigError, Model, ValidationError


def brute_force_counts(model, x, radius=None):
    """Per-class vote count via a direct scan of all prototypes."""
    r = model.R if radius is None else radius
    counts = {}
    for n, proto in enumerate(model.prototypes, start=1):
        c = sum(1 for k in range(model.K) if abs(x[k] - proto[k]) <= r)
        if c:
            counts[n] = c
    return counts


def check_partition(model):
    """Both per-dimension index properties, by direct scan."""
    for k in range(model.K):
        total = 0
        seen = set()
        for v, ids in model.postings[k].items():
            assert ids == sorted(ids)
            total += len(ids)
            for n in ids:
                assert n not in seen, f"class {n} in two lists of dimension {k}"
                seen.add(n)
        assert total == model.N
        assert seen == set(range(1, model.N + 1))


class TestConstruction:
    def test_empty_model(self):
        m = Model(3, 256, 0)
        assert m.N == 0 and m.K == 3
        assert all(not p for p in m.postings)

    def test_engine_sized_model(self):
        m = Model(26, 256, 25)
        assert (m.K, m.X, m.R) == (26, 256, 25)

    @pytest.mark.parametrize("k,x,r", [(3, 256, 256), (0, 256, 0), (3, 1, 0), (3, 256, -1)])
    def test_bad_config(self, k, x, r):
        with pytest.raises(ConfigError):
            Model(k, x, r)


class TestInsert:
    def test_first_insertion(self):
        m = Model(2, 10, 0)
        assert m.insert_class((5, 7)) == 1
        assert m.postings[0][5] == [1]
        assert m.postings[1][7] == [1]

    def test_shared_value(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 7))
        assert m.insert_class((5, 2)) == 2
        assert m.postings[0][5] == [1, 2]

    def test_partition_after_random_inserts(self):
        rng = np.random.default_rng(7)
        m = Model(4, 16, 2)
        for row in rng.integers(0, 16, size=(100, 4)):
            m.insert_class(row.tolist())
        check_partition(m)

    def test_rejects_bad_vectors(self):
        m = Model(2, 10, 0)
        with pytest.raises(ValidationError):
            m.insert_class((5,))
        with pytest.raises(ValidationError):
            m.insert_class((5, 10))
        with pytest.raises(ValidationError):
            m.insert_class((-1, 5))


class TestClassify:
    def test_self_match(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 5))
        h = m.classify((5, 5))
        assert h.counts == {1: 2} and h.max_count == 2 and h.argmax == 1

    def test_within_radius(self):
        m = Model(2, 10, 1)
        m.insert_class((5, 5))
        h = m.classify((6, 4))
        assert h.counts == {1: 2} and h.max_count == 2

    def test_empty_model(self):
        m = Model(2, 10, 0)
        h = m.classify((5, 5))
        assert h.counts == {} and h.max_count == 0 and h.argmax is None

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            k = int(rng.integers(1, 9))
            x_range = int(rng.integers(2, 65))
            r = int(rng.integers(0, min(9, x_range)))
            n = int(rng.integers(1, 201))
            m = Model(k, x_range, r)
            for row in rng.integers(0, x_range, size=(n, k)):
                m.insert_class(row.tolist())
            q = rng.integers(0, x_range, size=k).tolist()
            assert m.classify(q).counts == brute_force_counts(m, q)

    def test_max_bound_and_full_match(self):
        rng = np.random.default_rng(3)
        m = Model(3, 32, 2)
        for row in rng.integers(0, 32, size=(50, 3)):
            m.insert_class(row.tolist())
        for row in rng.integers(0, 32, size=(100, 3)):
            q = row.tolist()
            h = m.classify(q)
            assert h.max_count <= m.K
            within = min(max(abs(q[k] - p[k]) for k in range(3)) for p in m.prototypes)
            assert (h.max_count == m.K) == (within <= m.R)

    def test_radius_monotonicity(self):
        rng = np.random.default_rng(5)
        m = Model(3, 32, 0)
        for row in rng.integers(0, 32, size=(40, 3)):
            m.insert_class(row.tolist())
        queries = [row.tolist() for row in rng.integers(0, 32, size=(100, 3))]
        prev = set()
        for r in range(0, 6):
            full = {i for i, q in enumerate(queries) if m.classify(q, radius=r).max_count == m.K}
            assert prev <= full
            prev = full

    def test_determinism(self):
        rows = np.random.default_rng(9).integers(0, 16, size=(50, 3)).tolist()
        a, b = Model(3, 16, 1), Model(3, 16, 1)
        for row in rows:
            a.insert_class(row)
            b.insert_class(row)
        assert a.postings == b.postings
        q = rows[10]
        assert a.classify(q).argmax == b.classify(q).argmax


class TestTrain:
    def test_first_pattern(self):
        m = Model(2, 10, 0)
        assert m.train_step((3, 3)) == (1, True)

    def test_idempotence(self):
        m = Model(2, 10, 0)
        m.train_step((3, 3))
        assert m.train_step((3, 3)) == (1, False)

    def test_distinct_count_oracle(self):
        rng = np.random.default_rng(13)
        m = Model(2, 16, 0)
        stream = [tuple(row) for row in rng.integers(0, 16, size=(1000, 2)).tolist()]
        for v in stream:
            m.train_step(v)
        assert m.N == len(set(stream))

    def test_retrain_always_full_match(self):
        rng = np.random.default_rng(17)
        m = Model(3, 32, 3)
        for row in rng.integers(0, 32, size=(200, 3)):
            v = row.tolist()
            m.train_step(v)
            assert m.classify(v).max_count == m.K
            assert m.train_step(v)[1] is False


class TestExactFast:
    def test_trivial_agreement(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 5))
        assert m.classify_exact_fast((5, 5)) == 1
        assert m.classify_exact_fast((5, 6)) is None

    def test_equivalence_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            k = int(rng.integers(1, 7))
            x_range = int(rng.integers(4, 33))
            r = int(rng.integers(0, 4))
            m = Model(k, x_range, r)
            for row in rng.integers(0, x_range, size=(int(rng.integers(1, 120)), k)):
                m.insert_class(row.tolist())
            for row in rng.integers(0, x_range, size=(50, k)):
                q = row.tolist()
                h = m.classify(q)
                expected = h.argmax if h.max_count == m.K else None
                assert m.classify_exact_fast(q) == expected


class TestInstrumentation:
    def test_single_class_height(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 7))
        assert m.avg_height() == 1.0

    def test_hand_counted_height(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 7))
        m.insert_class((5, 2))
        assert m.avg_height() == pytest.approx(4 / 3)

    def test_perfect_spread(self):
        m = Model(2, 16, 0)
        for i in range(10):
            m.insert_class((i, 15 - i))
        assert m.avg_height() == 1.0

    def test_empty_model_height(self):
        with pytest.raises(ValidationError):
            Model(2, 10, 0).avg_height()

    def test_touched_mass_examples(self):
        m = Model(2, 10, 0)
        m.insert_class((5, 5))
        assert m.touched_mass((5, 5)) == 2
        assert m.touched_mass((0, 0)) == 0

    def test_touched_mass_matches_counter(self):
        rng = np.random.default_rng(29)
        m = Model(4, 32, 3)
        for row in rng.integers(0, 32, size=(150, 4)):
            m.insert_class(row.tolist())
        for row in rng.integers(0, 32, size=(50, 4)):
            q = row.tolist()
            _, touched = m.classify_counted(q)
            assert touched == m.touched_mass(q)


class TestCategorical:
    def toy_model(self):
        # four classes linked as: b -> {3, 4}, g -> {1, 2, 3}
        m = CategoricalModel(2, 2)
        b, g = 1, 2
        m.N = 4
        m.postings = {b: [3, 4], g: [1, 2, 3]}
        m.stored = [frozenset({g}), frozenset({g}), frozenset({b, g}), frozenset({b})]
        return m, b, g

    def test_toy_voting(self):
        m, b, g = self.toy_model()
        h = m.classify({b, g})
        assert h.counts == {3: 2, 4: 1, 1: 1, 2: 1}
        assert h.argmax == 3

    def test_empty_pattern(self):
        m, _, _ = self.toy_model()
        h = m.classify(frozenset())
        assert h.counts == {} and h.max_count == 0

    def test_intersection_oracle(self):
        rng = np.random.default_rng(31)
        m = CategoricalModel(30, 3)
        stored = []
        for _ in range(40):
            size = int(rng.integers(1, 8))
            p = frozenset(int(v) for v in rng.choice(30, size=size, replace=False) + 1)
            m.train_step(p)
            stored = m.stored
        for _ in range(50):
            size = int(rng.integers(0, 10))
            q = frozenset(int(v) for v in rng.choice(30, size=size, replace=False) + 1)
            h = m.classify(q)
            expected = {n: len(s & q) for n, s in enumerate(stored, start=1) if s & q}
            assert h.counts == expected

    def test_train_threshold(self):
        m = CategoricalModel(10, 2)
        assert m.train_step({1, 4, 9}) == (1, True)
        assert m.train_step({1, 4}) == (1, False)     # two shared categories
        assert m.train_step({9}) == (2, True)         # one shared vote < 2

    def test_empty_creation_rejected(self):
        m = CategoricalModel(10, 2)
        with pytest.raises(ValidationError):
            m.train_step(frozenset())

    def test_category_out_of_range(self):
        m = CategoricalModel(5, 1)
        with pytest.raises(ValidationError):
            m.classify({6})
        with pytest.raises(ValidationError):
            m.classify({0})
