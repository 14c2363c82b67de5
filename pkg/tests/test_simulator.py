"""Word-level circuit execution and reversibility checking."""

import pytest

from syrec.circuit import Circuit, mcf, mct, reverse_circuit
from syrec.simulator import apply_gate, check_reversible, dump_truth_table, run, truth_table
from syrec.synthesis import SynthesisMode, synthesize

from conftest import compile_ok, ALU_SOURCE


def make_circuit(n: int) -> Circuit:
    circuit = Circuit()
    for i in range(n):
        circuit.add_line(f"q{i}")
    return circuit


def test_not_flips_bit():
    assert apply_gate(0, mct((), 0)) == 1


def test_toffoli_fires_only_with_both_controls():
    gate = mct({0, 1}, 2)
    assert apply_gate(0b011, gate) == 0b111
    assert apply_gate(0b001, gate) == 0b001
    assert apply_gate(0b010, gate) == 0b010


def test_controlled_swap():
    gate = mcf({2}, 0, 1)
    assert apply_gate(0b110, gate) == 0b101
    assert apply_gate(0b010, gate) == 0b010   # control low: no swap


def test_every_gate_is_self_inverse():
    gates = [mct((), 0), mct({1}, 0), mct({1, 2}, 0), mcf((), 0, 1), mcf({2}, 0, 1)]
    for gate in gates:
        for word in range(8):
            assert apply_gate(apply_gate(word, gate), gate) == word


def test_run_empty_circuit_is_identity():
    circuit = make_circuit(3)
    for word in range(8):
        assert run(circuit, word) == word


def test_run_double_not_is_identity():
    circuit = make_circuit(1)
    circuit.append_mct((), 0)
    circuit.append_mct((), 0)
    assert run(circuit, 0) == 0 and run(circuit, 1) == 1


def test_run_rejects_oversized_word():
    with pytest.raises(ValueError):
        run(make_circuit(2), 4)


def test_run_then_reverse_restores_word():
    circuit = make_circuit(3)
    circuit.append_mct({0}, 1)
    circuit.append_mct({1, 2}, 0)
    circuit.append_mcf((), 1, 2)
    rev = reverse_circuit(circuit)
    for word in range(8):
        assert run(rev, run(circuit, word)) == word


def test_alu_circuit_difference_case():
    program = compile_ok(ALU_SOURCE)
    from syrec.synthesis import embed_inputs, extract_outputs
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    word = embed_inputs(result.binding, {"op": 0, "x1": 1, "x2": 2}, result.circuit.line_count)
    assert extract_outputs(result.binding, run(result.circuit, word))["x0"] == 3


def test_check_reversible_on_synthesized_circuit():
    program = compile_ok(ALU_SOURCE)
    for mode in SynthesisMode:
        ok, witness = check_reversible(synthesize(program, mode).circuit)
        assert ok and witness is None


def test_check_reversible_empty_circuit():
    ok, witness = check_reversible(make_circuit(4))
    assert ok and witness is None


def test_check_reversible_line_limit():
    with pytest.raises(ValueError, match="limited to 20"):
        check_reversible(make_circuit(21))


def test_truth_table_matches_run():
    circuit = make_circuit(2)
    circuit.append_mct({0}, 1)
    assert truth_table(circuit) == [run(circuit, w) for w in range(4)]


def test_truth_table_dump_format():
    circuit = make_circuit(2)
    circuit.append_mct({0}, 1)   # word 1 (binary 01) -> 11
    dump = dump_truth_table(circuit)
    assert dump.splitlines() == ["00 -> 00", "01 -> 11", "10 -> 10", "11 -> 01"]
