import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ValidationError
from src.process import execute
from src.rng import make_rng
from src.sketch import (
    CountingSketch,
    HashFamily,
    key_bytes,
    new_sketch,
    peeling_threshold,
    guarantee_dimensions,
    guarantee_trial,
    threshold_width,
)

keys = st.one_of(st.integers(min_value=0, max_value=10**6), st.text(max_size=8), st.binary(max_size=8))


class TestHashing:

    def test_key_encodings(self):
        assert key_bytes(b'\x00ab') == b'\x00ab'
        assert key_bytes('clé') == 'clé'.encode('utf-8')
        assert key_bytes(42) == b'42'
        assert key_bytes(np.int64(42)) == b'42'
        with pytest.raises(TypeError):
            key_bytes(4.2)

    def test_same_seed_same_positions(self):
        first, second = HashFamily(97, 4, hash_seed=5), HashFamily(97, 4, hash_seed=5)
        for key in ('alpha', b'beta', 7):
            assert first.raw_positions(key) == second.raw_positions(key)

    @settings(max_examples=100)
    @given(keys, st.integers(min_value=1, max_value=1000), st.integers(min_value=1, max_value=6))
    def test_positions_are_distinct_and_in_range(self, key, n, k):
        positions = HashFamily(n, k, hash_seed=3).positions(key)
        assert list(positions) == sorted(set(positions))
        assert 1 <= len(positions) <= k
        assert all(0 <= p < n for p in positions)


class TestSketch:

    def test_single_counter_collides_everything(self):
        sketch = new_sketch(1, 1, hash_seed=0, strategy='cm')
        for key in ('a', 'b', 'c', 'd', 'e'):
            sketch.update(key)
        assert sketch.query('anything') == 5

    @pytest.mark.parametrize('strategy', ['cm', 'cu'])
    def test_three_inserts(self, strategy):
        sketch = new_sketch(64, 3, hash_seed=1, strategy=strategy)
        for _ in range(3):
            sketch.update('p')
        assert sketch.query('p') == 3

    def test_rejects_bad_dimensions(self):
        with pytest.raises(ValidationError):
            new_sketch(0, 3, hash_seed=1, strategy='cu')
        with pytest.raises(ValidationError):
            new_sketch(10, 0, hash_seed=1, strategy='cu')
        with pytest.raises(ValidationError):
            new_sketch(10, 3, hash_seed=-1, strategy='cu')
        with pytest.raises(ValidationError):
            new_sketch(10, 3, hash_seed=1, strategy='minmax')

    def test_bulk_cm_matches_single_updates(self):
        stream = make_rng(4).integers(0, 50, size=500).tolist()
        bulk = new_sketch(40, 3, hash_seed=2, strategy='cm')
        bulk.extend(stream)
        single = new_sketch(40, 3, hash_seed=2, strategy='cm')
        for key in stream:
            single.update(key)
        assert np.array_equal(bulk.counters, single.counters)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(keys, max_size=60), st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=4))
    def test_never_undercounts_and_cu_stays_below_cm(self, stream, n, k):
        cu = new_sketch(n, k, hash_seed=9, strategy='cu')
        cm = new_sketch(n, k, hash_seed=9, strategy='cm')
        truth = {}
        for key in stream:
            cu.update(key)
            cm.update(key)
            truth[key] = truth.get(key, 0) + 1
            assert np.all(cu.counters <= cm.counters)
        for key, count in truth.items():
            assert count <= cu.query(key) <= cm.query(key)

    @pytest.mark.parametrize('strategy', ['cm', 'cu'])
    def test_matches_the_process_on_its_hypergraph(self, strategy):
        # GIVEN a keyed stream and the hypergraph the sketch induces on its distinct keys
        rng = make_rng(21)
        distinct = [f"key-{i}" for i in range(150)]
        order = rng.integers(0, len(distinct), size=3000)
        sketch = new_sketch(200, 3, hash_seed=77, strategy=strategy)
        hypergraph = sketch.hash_hypergraph(distinct)

        # WHEN the same order goes through the sketch and through the process
        sketch.extend([distinct[i] for i in order])
        state = execute(hypergraph, order, strategy)

        # THEN counters and estimates agree exactly
        assert np.array_equal(sketch.counters, state.vertex_counter)
        estimates = [sketch.query(key) for key in distinct]
        assert estimates == state.edge_counters().tolist()

    def test_hash_hypergraph(self):
        sketch = new_sketch(1000, 3, hash_seed=5, strategy='cu')
        assert sketch.hash_hypergraph(['only']).m == 1
        induced = sketch.hash_hypergraph(range(818))
        assert induced.density == pytest.approx(0.818)
        with pytest.raises(ValidationError):
            sketch.hash_hypergraph(['a', 'a'])

    def test_colliding_positions_make_short_edges(self):
        sketch = new_sketch(2, 3, hash_seed=5, strategy='cu')
        degenerate = sketch.degenerate_keys(range(20))
        assert degenerate
        induced = sketch.hash_hypergraph(range(20))
        assert not induced.is_uniform

    def test_state_round_trip(self, tmp_path):
        sketch = new_sketch(33, 4, hash_seed=12, strategy='cu')
        sketch.extend(make_rng(1).integers(0, 100, size=400).tolist())
        path = str(tmp_path / 'sketch.bin')
        sketch.save(path)
        loaded = CountingSketch.load(path)
        assert loaded.header() == sketch.header()
        assert np.array_equal(loaded.counters, sketch.counters)
        assert loaded.to_bytes() == sketch.to_bytes()
        with open(path, 'rb') as f:
            assert f.read() == sketch.to_bytes()

    def test_state_layout(self):
        sketch = new_sketch(2, 1, hash_seed=0, strategy='cm', counters=np.array([1, 258], dtype=np.int64))
        data = sketch.to_bytes()
        head, body = data.split(b'\n', 1)
        assert head == b'{"hash_seed": 0, "k": 1, "n": 2, "strategy": "cm"}'
        assert body == bytes([1, 0, 0, 0, 0, 0, 0, 0, 2, 1, 0, 0, 0, 0, 0, 0])

    @pytest.mark.parametrize('data', [
        b'no header',
        b'{"n": 2}\n',
        b'{"hash_seed": 0, "k": 1, "n": 2, "strategy": "cm"}\n\x00\x00',
    ])
    def test_rejects_corrupt_state(self, data):
        with pytest.raises(ValidationError):
            CountingSketch.from_bytes(data)


class TestSizing:

    def test_classical_dimensions(self):
        assert guarantee_dimensions(0.1, 0.05) == (3, 82)

    def test_rejects_out_of_range_parameters(self):
        with pytest.raises(ValidationError):
            guarantee_dimensions(0.0, 0.5)
        with pytest.raises(ValidationError):
            guarantee_dimensions(0.1, 1.0)

    def test_peeling_thresholds(self):
        assert peeling_threshold(2) == 0.5
        assert peeling_threshold(3) == pytest.approx(0.818, abs=1e-3)
        assert peeling_threshold(4) == pytest.approx(0.772, abs=1e-3)

    def test_order_three_needs_the_narrowest_array(self):
        widths = {k: threshold_width(1000, k) for k in (2, 3, 4, 5)}
        assert min(widths, key=widths.get) == 3
        assert 1000 / widths[3] < peeling_threshold(3)

    def test_empty_stream_never_fails(self):
        result = guarantee_trial(0.1, 0.05, [], ['a', 'b'], trials=5, seed=1)
        assert result.failures == 0
        assert result.failure_rate == 0.0
        assert (result.k, result.n, result.checks) == (3, 82, 10)

    @pytest.mark.slow
    def test_failure_rate_on_uniform_streams(self):
        stream = make_rng(8).integers(0, 1000, size=10_000).tolist()
        result = guarantee_trial(0.1, 0.05, stream, [0], trials=200, seed=8)
        assert result.failure_rate <= 0.08
