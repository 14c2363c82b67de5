"""Circuit IR: gate validation, reversal, statistics, permutations."""

import pytest

from syrec.circuit import (
    DEFAULT_COST_MODEL,
    Circuit,
    Gate,
    concatenate,
    mcf,
    mct,
    permutation,
    reverse_circuit,
    statistics,
)


def make_circuit(n: int) -> Circuit:
    circuit = Circuit()
    for i in range(n):
        circuit.add_line(f"q{i}")
    return circuit


def test_append_simple_gate():
    circuit = make_circuit(2)
    circuit.append_mct({0}, 1)
    assert len(circuit.gates) == 1
    assert circuit.gates[0] == Gate("mct", (0,), (1,))


def test_control_equals_target_rejected():
    circuit = make_circuit(2)
    with pytest.raises(ValueError, match="control equals target"):
        circuit.append_mct({0}, 0)


def test_out_of_range_rejected():
    circuit = make_circuit(2)
    with pytest.raises(ValueError, match="out of range"):
        circuit.append_mct({0}, 5)


def test_uncontrolled_fredkin_is_swap():
    circuit = make_circuit(2)
    circuit.append_mcf((), 0, 1)
    assert permutation(circuit) == [0, 2, 1, 3]


def test_append_preserves_prior_gates():
    circuit = make_circuit(3)
    circuit.append_mct((), 0)
    snapshot = list(circuit.gates)
    circuit.append_mct({0}, 1)
    assert circuit.gates[:1] == snapshot


def test_reverse_circuit_reverses_order():
    circuit = make_circuit(2)
    circuit.append_mct((), 0)          # NOT(0)
    circuit.append_mct({0}, 1)         # CNOT(0 -> 1)
    rev = reverse_circuit(circuit)
    assert rev.gates == [Gate("mct", (0,), (1,)), Gate("mct", (), (0,))]
    assert circuit.gates[0] == Gate("mct", (), (0,))  # original untouched


def test_reverse_of_empty_circuit():
    circuit = make_circuit(1)
    assert reverse_circuit(circuit).gates == []


def test_compose_with_reverse_is_identity():
    circuit = make_circuit(3)
    circuit.append_mct({0}, 1)
    circuit.append_mct({1, 2}, 0)
    circuit.append_mcf({0}, 1, 2)
    combined = concatenate(circuit, reverse_circuit(circuit))
    assert permutation(combined) == list(range(8))


def test_default_cost_table():
    assert DEFAULT_COST_MODEL.mct_cost(0) == 1
    assert DEFAULT_COST_MODEL.mct_cost(1) == 1
    assert DEFAULT_COST_MODEL.mct_cost(2) == 5
    assert DEFAULT_COST_MODEL.mct_cost(3) == 13    # 2^4 - 3
    assert DEFAULT_COST_MODEL.mct_cost(4) == 29
    assert DEFAULT_COST_MODEL.mcf_cost(0) == 3     # swap = 3 CNOTs
    assert DEFAULT_COST_MODEL.mcf_cost(1) == 7


def test_statistics_counts():
    circuit = make_circuit(2)
    circuit.append_mct({0}, 1)
    stats = statistics(circuit)
    assert stats.gate_count == 1 and stats.quantum_cost == 1
    assert stats.line_count == 2 and stats.constant_line_count == 0


def test_statistics_toffoli_cost():
    circuit = make_circuit(3)
    circuit.append_mct({0, 1}, 2)
    assert statistics(circuit).quantum_cost == 5


def test_statistics_three_control_cost():
    circuit = make_circuit(4)
    circuit.append_mct({0, 1, 2}, 3)
    assert statistics(circuit).quantum_cost == 13


def test_statistics_additive_over_concatenation():
    a = make_circuit(3)
    a.append_mct({0, 1}, 2)
    b = make_circuit(3)
    b.append_mct((), 0)
    b.append_mcf((), 1, 2)
    combined = concatenate(a, b)
    assert statistics(combined).quantum_cost == \
        statistics(a).quantum_cost + statistics(b).quantum_cost
    assert statistics(combined).gate_count == 3


def test_permutation_not_gate():
    circuit = make_circuit(1)
    circuit.append_mct((), 0)
    assert permutation(circuit) == [1, 0]


def test_permutation_cnot():
    circuit = make_circuit(2)
    circuit.append_mct({0}, 1)   # line 0 is the low bit
    assert permutation(circuit) == [0, 3, 2, 1]


def test_permutation_is_bijection():
    circuit = make_circuit(3)
    circuit.append_mct({0, 1}, 2)
    circuit.append_mcf({2}, 0, 1)
    circuit.append_mct((), 1)
    image = permutation(circuit)
    assert sorted(image) == list(range(8))


def test_permutation_line_limit():
    circuit = make_circuit(21)
    with pytest.raises(ValueError, match="limited to 20 lines"):
        permutation(circuit)


def test_line_metadata_defaults():
    circuit = Circuit()
    idx = circuit.add_line("x.0", input_name="x.0")
    line = circuit.lines[idx]
    assert (line.label, line.is_constant, line.is_garbage) == ("x.0", False, False)
    assert line.input_name == "x.0" and line.output_name is None
