import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_thermal.ising import (
    IsingModel,
    ModelFormatError,
    ResourceLimitError,
    energy,
    enumerate_energies,
    generate_sk,
    load_model,
    save_model,
)
from oracles import naive_energy


class TestGenerateSk:
    def test_structure_n2(self):
        model = generate_sk(2, seed=123)
        assert model.n == 2
        assert set(model.couplings) == {(0, 1)}
        assert model.couplings[(0, 1)] in (-1.0, 1.0)
        assert all(h in (-1.0, 1.0) for h in model.fields)

    def test_fifteen_spin_instance_counts(self):
        model = generate_sk(15, seed=0)
        assert len(model.couplings) == math.comb(15, 2) == 105
        assert model.fields.shape == (15,)

    def test_all_values_pm1_and_all_pairs_present(self):
        model = generate_sk(7, seed=9)
        assert set(model.couplings) == {(i, j) for i in range(7) for j in range(i + 1, 7)}
        assert all(v in (-1.0, 1.0) for v in model.couplings.values())
        assert set(np.unique(model.fields)) <= {-1.0, 1.0}

    def test_determinism(self):
        assert generate_sk(3, seed=7) == generate_sk(3, seed=7)
        assert generate_sk(8, seed=1) != generate_sk(8, seed=2)

    def test_n_zero_rejected(self):
        with pytest.raises(ValueError, match="n"):
            generate_sk(0, seed=1)


class TestEnergy:
    def test_single_spin_field(self):
        model = IsingModel(n=1, couplings={}, fields=np.array([1.0]))
        assert energy(model, 0) == 1.0
        assert energy(model, 1) == -1.0

    def test_two_spin_direct(self):
        model = IsingModel(n=2, couplings={(0, 1): 1.0}, fields=np.array([1.0, -1.0]))
        # bits 0b00: both spins +1 -> J + h0 + h1 = 1 + 1 - 1
        assert energy(model, 0b00) == 1.0

    def test_out_of_range_config_rejected(self):
        model = generate_sk(3, seed=0)
        with pytest.raises(ValueError):
            energy(model, 8)
        with pytest.raises(ValueError):
            energy(model, -1)

    @given(st.integers(0, 2**6 - 1), st.integers(0, 1000))
    @settings(max_examples=50, deadline=None)
    def test_matches_naive_oracle(self, config, seed):
        model = generate_sk(6, seed=seed)
        assert energy(model, config) == pytest.approx(naive_energy(model, config), abs=1e-12)


class TestEnumerateEnergies:
    def test_single_spin_table(self):
        model = IsingModel(n=1, couplings={}, fields=np.array([1.0]))
        table = enumerate_energies(model)
        assert list(table.energies) == [1.0, -1.0]
        assert table.e_min == -1.0
        assert table.e_max == 1.0
        assert table.levels == [(-1.0, 1), (1.0, 1)]

    def test_two_spin_coupling_only(self):
        model = IsingModel(n=2, couplings={(0, 1): 1.0}, fields=np.zeros(2))
        table = enumerate_energies(model)
        assert list(table.energies) == [1.0, -1.0, -1.0, 1.0]
        assert table.levels == [(-1.0, 2), (1.0, 2)]

    def test_matches_per_config_energy(self):
        model = generate_sk(10, seed=5)
        table = enumerate_energies(model)
        for config in range(1 << 10):
            assert table.energies[config] == energy(model, config)

    def test_degeneracies_sum_to_size(self):
        table = enumerate_energies(generate_sk(8, seed=3))
        assert sum(c for _, c in table.levels) == 1 << 8

    def test_cap_exceeded(self):
        model = generate_sk(6, seed=0)
        with pytest.raises(ResourceLimitError):
            enumerate_energies(model, cap=5)

    @given(st.integers(0, 500))
    @settings(max_examples=20, deadline=None)
    def test_sk_integer_energies_share_parity(self, seed):
        n = 6
        table = enumerate_energies(generate_sk(n, seed=seed))
        as_int = table.energies.astype(np.int64)
        assert np.array_equal(as_int, table.energies)
        parity = (math.comb(n, 2) + n) % 2
        assert np.all(as_int % 2 == parity)

    @given(st.integers(0, 500))
    @settings(max_examples=10, deadline=None)
    def test_global_flip_negates_field_part(self, seed):
        model = generate_sk(5, seed=seed)
        no_field = IsingModel(n=5, couplings=model.couplings, fields=np.zeros(5))
        full = enumerate_energies(model).energies
        coupling_part = enumerate_energies(no_field).energies
        field_part = full - coupling_part
        flip_mask = (1 << 5) - 1
        flipped = np.array([full[x ^ flip_mask] for x in range(1 << 5)])
        # J-part is flip-invariant, h-part changes sign
        assert np.allclose(flipped, coupling_part - field_part)


class TestModelFiles:
    def test_round_trip(self, tmp_path):
        model = generate_sk(9, seed=11)
        path = tmp_path / "m.json"
        save_model(model, path)
        assert load_model(path) == model

    def test_round_trip_general_real_couplings(self, tmp_path):
        model = IsingModel(
            n=3, couplings={(0, 2): 0.25, (1, 2): -1.75}, fields=np.array([0.0, 0.5, -2.0])
        )
        path = tmp_path / "m.json"
        save_model(model, path)
        assert load_model(path) == model

    @pytest.mark.parametrize(
        "doc",
        [
            '{"n": 2, "h": [1, -1], "couplings": [{"i": 3, "j": 3, "value": 1}]}',
            '{"n": 2, "h": [1, -1], "couplings": [{"i": 0, "j": 5, "value": 1}]}',
            '{"n": 2, "h": [1, -1], "couplings": [{"i": 1, "j": 0, "value": 1}]}',
            '{"n": 2, "h": [1], "couplings": []}',
            '{"n": 2, "h": [1, -1]}',
            '{"n": 0, "h": [], "couplings": []}',
            "not json",
            '{"n": 2, "h": [1, -1], "couplings": [{"i": 0, "j": 1, "value": 1}, {"i": 0, "j": 1, "value": -1}]}',
        ],
    )
    def test_malformed_files_rejected(self, tmp_path, doc):
        path = tmp_path / "bad.json"
        path.write_text(doc)
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_error_names_offending_field(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2, "h": [1, -1], "couplings": [{"i": 0, "j": 5, "value": 1}]}')
        with pytest.raises(ModelFormatError, match=r"\(0, 5\)"):
            load_model(path)
