import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import (
    CNOT_CONTROL_HIGH,
    CNOT_CONTROL_LOW,
    SWAP_4,
    argument_tuples,
    bit_swap_permutation,
    perm_matrix,
    random_unitary,
    semantic_lift,
    unit,
)
from qorder import gates
from qorder.linalg import DimensionError, identity, is_unitary, kron
from qorder.lifting import (
    GateApplication,
    NonUnitaryError,
    QubitError,
    initial_factor_order,
    lift,
    reinterpret,
    sequence_matrix,
    sequence_permutation,
    tau_matrix,
    tau_permutation,
    transposition_sequence,
)

ONE_QUBIT = ["I", "X", "Y", "Z", "H"]
TWO_QUBIT = ["CNOT", "SWAP", "CZ"]


def apply_taus_to_order(order, seq):
    """Move factors around directly: tau[i] swaps right-positions i and i+1."""
    order = list(order)
    n = len(order)
    for i in seq:
        a, b = n - 1 - i, n - 2 - i
        order[a], order[b] = order[b], order[a]
    return tuple(order)


class TestGateApplication:
    def test_builtin(self):
        app = GateApplication.builtin("CNOT", 1, 3)
        assert app.qubits == (1, 3) and app.arity == 2 and app.name == "CNOT"

    def test_arity_mismatch(self):
        with pytest.raises(DimensionError):
            GateApplication.builtin("CNOT", 1)

    def test_duplicate_qubits(self):
        with pytest.raises(QubitError):
            GateApplication.builtin("CNOT", 1, 1)

    def test_non_power_of_two(self):
        with pytest.raises(DimensionError):
            GateApplication(np.eye(3), (0,))


class TestInitialFactorOrder:
    def test_cnot_1_3(self):
        assert initial_factor_order((1, 3), 5) == (4, 2, 0, 1, 3)

    def test_single(self):
        assert initial_factor_order((0,), 1) == (0,)

    def test_descending_rest_then_args(self):
        assert initial_factor_order((2, 0), 3) == (1, 2, 0)

    @pytest.mark.parametrize("qubits, n", [((1, 1), 3), ((3,), 3), ((-1,), 2)])
    def test_errors(self, qubits, n):
        with pytest.raises(QubitError):
            initial_factor_order(qubits, n)


class TestTranspositionSequence:
    def test_cnot_1_3_example(self):
        # tau2 . tau1 . tau0 . tau1 read right to left
        assert transposition_sequence((4, 2, 0, 1, 3)) == [1, 0, 1, 2]

    def test_sorted(self):
        assert transposition_sequence((4, 3, 2, 1, 0)) == []

    def test_single_swap(self):
        seq = transposition_sequence((0, 1))
        assert seq == [0]
        assert apply_taus_to_order((0, 1), seq) == (1, 0)

    @given(st.integers(1, 8).flatmap(lambda n: st.permutations(range(n))),
           st.sampled_from(["bubble", "insertion"]))
    def test_sorts_and_is_bounded(self, order, method):
        n = len(order)
        seq = transposition_sequence(order, method)
        assert apply_taus_to_order(order, seq) == tuple(range(n - 1, -1, -1))
        assert len(seq) <= n * (n - 1) // 2
        assert all(0 <= i <= n - 2 for i in seq)

    def test_rejects_non_permutation(self):
        with pytest.raises(QubitError):
            transposition_sequence((0, 0, 1))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            transposition_sequence((0, 1), "quick")


class TestTau:
    def test_n2_is_swap(self):
        assert np.array_equal(tau_matrix(0, 2), SWAP_4)

    def test_n3_i1(self):
        expected = perm_matrix(bit_swap_permutation(1, 3))
        assert np.array_equal(tau_matrix(1, 3), expected)
        assert np.array_equal(tau_matrix(1, 3), kron(SWAP_4, identity(2)))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_involution_and_bit_swap(self, n):
        for i in range(n - 1):
            t = tau_matrix(i, n)
            assert np.array_equal(t @ t, identity(2 ** n))
            assert np.array_equal(t, perm_matrix(bit_swap_permutation(i, n)))
            assert tau_permutation(i, n).tolist() == bit_swap_permutation(i, n)

    @pytest.mark.parametrize("i, n", [(-1, 3), (2, 3), (0, 1)])
    def test_out_of_range(self, i, n):
        with pytest.raises(ValueError):
            tau_matrix(i, n)

    def test_dense_cap(self):
        with pytest.raises(DimensionError):
            tau_matrix(0, 13)

    def test_sequence_matrix_matches_permutation(self):
        seq = transposition_sequence((4, 2, 0, 1, 3))
        assert np.array_equal(sequence_matrix(seq, 5), perm_matrix(sequence_permutation(seq, 5)))


class TestLift:
    def test_cnot_control_high(self):
        assert np.array_equal(lift(GateApplication.builtin("CNOT", 1, 0), 2), CNOT_CONTROL_HIGH)

    def test_cnot_control_low(self):
        assert np.array_equal(lift(GateApplication.builtin("CNOT", 0, 1), 2), CNOT_CONTROL_LOW)

    def test_trivial(self):
        assert np.array_equal(lift(GateApplication.builtin("X", 0), 1), gates.BUILTINS["X"])

    def test_cnot_1_3_on_four_qubits(self):
        m = lift(GateApplication.builtin("CNOT", 1, 3), 4)
        assert np.array_equal(m @ unit(0b0010, 16), unit(0b1010, 16))
        assert np.array_equal(m @ unit(0, 16), unit(0, 16))

    def test_literal_construction(self):
        # multiply the tau matrices out and conjugate the identity-padded gate
        app = GateApplication.builtin("CNOT", 1, 3)
        seq = transposition_sequence(initial_factor_order((1, 3), 5))
        p = sequence_matrix(seq, 5)
        padded = kron(identity(8), CNOT_CONTROL_HIGH)
        assert np.array_equal(lift(app, 5), p @ padded @ p.T)
        assert np.array_equal(lift(app, 5), semantic_lift(CNOT_CONTROL_HIGH, (1, 3), 5))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_builtins_against_semantics(self, n):
        for name in ONE_QUBIT + TWO_QUBIT:
            g = gates.BUILTINS[name]
            k = gates.arity(g)
            for qs in argument_tuples(k, n):
                got = lift(GateApplication(g, qs, name), n)
                assert np.max(np.abs(got - semantic_lift(g, qs, n))) <= 1e-12, (name, qs, n)

    def test_random_three_qubit_gate(self, rng):
        u = random_unitary(8, rng)
        for qs in [(0, 1, 2), (4, 0, 2), (1, 3, 0)]:
            got = lift(GateApplication(u, qs), 5)
            assert np.max(np.abs(got - semantic_lift(u, qs, 5))) <= 1e-12

    @given(st.integers(0, 2 ** 32 - 1), st.integers(2, 6), st.data())
    def test_preserves_unitarity(self, seed, n, data):
        rng = np.random.default_rng(seed)
        k = data.draw(st.integers(1, 2))
        qs = data.draw(st.permutations(range(n)))[:k]
        u = random_unitary(2 ** k, rng)
        assert is_unitary(u, 1e-12)
        assert is_unitary(lift(GateApplication(u, qs), n), 1e-10)

    def test_dense_cap(self):
        with pytest.raises(DimensionError):
            lift(GateApplication.builtin("X", 0), 13)
        with pytest.raises(DimensionError):
            lift(GateApplication.builtin("X", 0), 5, max_qubits=4)

    def test_qubit_out_of_range(self):
        with pytest.raises(QubitError):
            lift(GateApplication.builtin("CNOT", 1, 3), 3)

    def test_unitarity_policy(self):
        app = GateApplication(np.diag([1, 2]), (0,), "BAD")
        with pytest.warns(UserWarning, match="not unitary"):
            lift(app, 2)
        with pytest.raises(NonUnitaryError):
            lift(app, 2, unitary="error")
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            lift(app, 2, unitary="ignore")


class TestSequenceIndependence:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_every_order(self, n):
        for order in itertools.permutations(range(n)):
            bubble = transposition_sequence(order, "bubble")
            insertion = transposition_sequence(order, "insertion")
            assert np.array_equal(sequence_matrix(bubble, n), sequence_matrix(insertion, n))

    @given(st.integers(2, 5).flatmap(lambda n: st.permutations(range(n))), st.data())
    def test_random_valid_sequences(self, order, data):
        # any random walk of adjacent swaps that ends sorted gives the same P
        n = len(order)
        cur, seq = list(order), []
        for _ in range(data.draw(st.integers(0, 12))):
            i = data.draw(st.integers(0, n - 2))
            seq.append(i)
            cur = list(apply_taus_to_order(cur, [i]))
        seq += transposition_sequence(cur)
        assert apply_taus_to_order(order, seq) == tuple(range(n - 1, -1, -1))
        ref = transposition_sequence(order)
        assert np.array_equal(sequence_permutation(seq, n), sequence_permutation(ref, n))


class TestReinterpret:
    def test_cnot_swapped_factors(self):
        assert np.array_equal(reinterpret(CNOT_CONTROL_HIGH, (1, 0), (0, 1)), CNOT_CONTROL_LOW)

    def test_same_order(self, rng):
        g = random_unitary(8, rng)
        assert np.array_equal(reinterpret(g, (2, 0, 5), (2, 0, 5)), g)

    def test_swap_is_symmetric(self):
        assert np.array_equal(reinterpret(SWAP_4, (1, 0), (0, 1)), SWAP_4)

    def test_label_mismatch(self):
        with pytest.raises(QubitError):
            reinterpret(SWAP_4, (1, 0), (0, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            reinterpret(SWAP_4, (0,), (0,))

    @given(st.permutations(range(3)), st.permutations(range(3)), st.permutations(range(3)),
           st.integers(0, 2 ** 32 - 1))
    def test_composes(self, a, b, c, seed):
        g = random_unitary(8, np.random.default_rng(seed))
        two_step = reinterpret(reinterpret(g, a, b), b, c)
        assert np.max(np.abs(two_step - reinterpret(g, a, c))) <= 1e-12

    @given(st.permutations(range(3)), st.integers(0, 2 ** 32 - 1))
    def test_agrees_with_lift(self, order, seed):
        # a gate on `order` lifted to Q3 is the gate reinterpreted into (2, 1, 0)
        g = random_unitary(8, np.random.default_rng(seed))
        got = reinterpret(g, order, (2, 1, 0))
        assert np.max(np.abs(got - lift(GateApplication(g, order), 3))) <= 1e-12
