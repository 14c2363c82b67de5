"""Synthesis strategies: lowering correctness, line accounting, determinism."""

import pytest

from syrec.circuit import Gate, permutation
from syrec.diagnostics import SynthesisError
from syrec.interpreter import interpret
from syrec.realfmt import emit_real
from syrec.simulator import run
from syrec.synthesis import (
    SynthesisMode,
    SynthesisSettings,
    embed_inputs,
    extract_outputs,
    extract_signal,
    synthesize,
)

from conftest import ALU_SOURCE, all_input_assignments, compile_ok, total_input_bits

MODES = list(SynthesisMode)


def test_xor_program_is_single_cnot():
    program = compile_ok("module main(inout a(1), in b(1)) a ^= b")
    for mode in MODES:
        result = synthesize(program, mode)
        assert result.circuit.line_count == 2
        b_line = result.binding.lines_of("b")[0]
        a_line = result.binding.lines_of("a")[0]
        assert result.circuit.gates == [Gate("mct", (b_line,), (a_line,))]


def test_alu_cost_aware_line_budget(alu_program):
    result = synthesize(alu_program, SynthesisMode.COST_AWARE)
    assert result.stats.line_count == 11
    assert result.stats.constant_line_count == 4
    # seven signal lines plus two 2-bit intermediates
    labels = [line.label for line in result.circuit.lines]
    assert labels[:7] == ["op.0", "x0.0", "x0.1", "x1.0", "x1.1", "x2.0", "x2.1"]
    assert labels[7:] == ["const_0", "const_1", "const_2", "const_3"]


def test_alu_line_aware_line_budget(alu_program):
    result = synthesize(alu_program, SynthesisMode.LINE_AWARE)
    assert result.stats.line_count == 7
    assert result.stats.constant_line_count == 0
    assert result.stats.garbage_count == 0


def test_alu_trade_off_ordering(alu_program):
    cost_aware = synthesize(alu_program, SynthesisMode.COST_AWARE).stats
    line_aware = synthesize(alu_program, SynthesisMode.LINE_AWARE).stats
    assert cost_aware.gate_count < line_aware.gate_count
    assert cost_aware.quantum_cost < line_aware.quantum_cost


def test_binding_covers_entry_signals(alu_program):
    binding = synthesize(alu_program, SynthesisMode.LINE_AWARE).binding
    assert set(binding.signals) == {"op", "x0", "x1", "x2"}
    seen: set[int] = set()
    for bound in binding.signals.values():
        assert not (seen & set(bound.lines))   # injective over lines
        seen.update(bound.lines)


def test_garbage_marking_cost_aware(alu_program):
    circuit = synthesize(alu_program, SynthesisMode.COST_AWARE).circuit
    garbage = [line.label for line in circuit.lines if line.is_garbage]
    assert garbage == ["const_0", "const_1", "const_2", "const_3"]


def test_input_lines_carry_names(alu_program):
    circuit = synthesize(alu_program, SynthesisMode.LINE_AWARE).circuit
    assert circuit.lines[0].input_name == "op.0"
    assert circuit.lines[1].output_name == "x0.0"
    assert circuit.lines[1].input_name is None      # x0 is an output


def test_wire_left_dirty_is_garbage():
    program = compile_ok("module main(in a(2), out r(2)) wire w(2) w ^= a; r ^= w")
    for mode in MODES:
        circuit = synthesize(program, mode).circuit
        garbage = {line.label for line in circuit.lines if line.is_garbage}
        assert garbage == {"w.0", "w.1"}


@pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
def test_corpus_end_to_end_equivalence(corpus_program, mode):
    name, program = corpus_program
    if total_input_bits(program) > 10:
        pytest.skip("outside exhaustive range")
    result = synthesize(program, mode)
    for inputs in all_input_assignments(program):
        expected = interpret(program, inputs).final_state
        word = run(result.circuit, embed_inputs(result.binding, inputs, result.circuit.line_count))
        outputs = extract_outputs(result.binding, word)
        for signal, value in outputs.items():
            assert value == expected[signal], (name, mode.value, inputs, signal)


def test_line_aware_preserves_pure_inputs(corpus_program):
    name, program = corpus_program
    if total_input_bits(program) > 10:
        pytest.skip("outside exhaustive range")
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    pure_inputs = [n for n, info in program.entry_symbols().items() if info.kind == "in"]
    for inputs in all_input_assignments(program):
        word = run(result.circuit, embed_inputs(result.binding, inputs, result.circuit.line_count))
        for signal in pure_inputs:
            assert extract_signal(result.binding, word, signal) == inputs[signal], (name, inputs)


def test_line_aware_never_needs_more_lines(corpus_program):
    name, program = corpus_program
    cost_aware = synthesize(program, SynthesisMode.COST_AWARE).stats.line_count
    line_aware = synthesize(program, SynthesisMode.LINE_AWARE).stats.line_count
    assert line_aware <= cost_aware, name


@pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
def test_synthesized_circuits_are_bijective(corpus_program, mode):
    name, program = corpus_program
    circuit = synthesize(program, mode).circuit
    if circuit.line_count > 12:
        pytest.skip("outside enumeration range")
    image = permutation(circuit)
    assert sorted(image) == list(range(1 << circuit.line_count)), (name, mode.value)


@pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
def test_determinism_byte_identical(corpus_program, mode):
    name, program = corpus_program
    first = emit_real(synthesize(program, mode).circuit)
    second = emit_real(synthesize(program, mode).circuit)
    assert first == second


def test_call_then_uncall_is_identity():
    program = compile_ok(
        "module bump(inout x(2)) ++= x\n"
        "module main(inout a(2)) call bump(a); uncall bump(a)")
    for mode in MODES:
        circuit = synthesize(program, mode).circuit
        assert permutation(circuit) == list(range(1 << circuit.line_count))


def test_uncall_of_nontrivial_module():
    program = compile_ok(
        "module mix(inout x(2), in d(2)) x += d; ~= x\n"
        "module main(inout a(2), in d(2)) call mix(a, d); uncall mix(a, d)")
    for mode in MODES:
        circuit = synthesize(program, mode).circuit
        assert permutation(circuit) == list(range(1 << circuit.line_count))


def test_condition_line_reused_after_fi_line_aware():
    # two sequential compound conditions share one pooled helper line
    source = ("module main(in a(2), in b(2), inout r(2))\n"
              "    if (a < b) then ++= r else skip fi (a < b)\n"
              "    if (a = b) then --= r else skip fi (a = b)")
    program = compile_ok(source)
    line_aware = synthesize(program, SynthesisMode.LINE_AWARE)
    cost_aware = synthesize(program, SynthesisMode.COST_AWARE)
    assert line_aware.stats.line_count < cost_aware.stats.line_count
    assert line_aware.stats.garbage_count == 0
    assert line_aware.binding.free_pool  # helpers returned to the pool


def test_condition_bit_read_in_else_branch():
    # the NOT-conjugation holds a directly-used condition line inverted
    # during the else branch, so reads there must force a copied condition
    source = ("module main(inout s0(1), out s2(2), in s3(2))\n"
              "    if (s3.0) then s0 ^= 1 else s2 += (s3 ^ 1) fi (s3.0)")
    program = compile_ok(source)
    for mode in MODES:
        result = synthesize(program, mode)
        for inputs in all_input_assignments(program):
            expected = interpret(program, inputs).final_state
            word = run(result.circuit,
                       embed_inputs(result.binding, inputs, result.circuit.line_count))
            assert extract_outputs(result.binding, word) == {
                "s0": expected["s0"], "s2": expected["s2"]}, (mode.value, inputs)


def test_self_cancelling_condition_line_budget():
    # width-1 arithmetic conditions compute straight onto the condition line
    source = ("module main(inout r(2), in b(1), in c(1))\n"
              "    if (b ^ c) then ++= r else --= r fi (b ^ c)")
    program = compile_ok(source)
    line_aware = synthesize(program, SynthesisMode.LINE_AWARE).stats
    cost_aware = synthesize(program, SynthesisMode.COST_AWARE).stats
    assert line_aware.line_count <= cost_aware.line_count
    for mode in MODES:
        result = synthesize(program, mode)
        for inputs in all_input_assignments(program):
            expected = interpret(program, inputs).final_state
            word = run(result.circuit,
                       embed_inputs(result.binding, inputs, result.circuit.line_count))
            assert extract_outputs(result.binding, word)["r"] == expected["r"]


def test_line_budget_enforced(alu_program):
    with pytest.raises(SynthesisError, match="budget"):
        synthesize(alu_program, SynthesisMode.COST_AWARE, SynthesisSettings(max_lines=8))


def test_embed_extract_round_trip(alu_program):
    result = synthesize(alu_program, SynthesisMode.LINE_AWARE)
    n = result.circuit.line_count
    for inputs in all_input_assignments(alu_program):
        word = embed_inputs(result.binding, inputs, n)
        assert extract_signal(result.binding, word, "op") == inputs["op"]
        assert extract_signal(result.binding, word, "x1") == inputs["x1"]
        assert extract_outputs(result.binding, word)["x0"] == 0


def test_embed_missing_signal():
    program = compile_ok(ALU_SOURCE)
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    with pytest.raises(ValueError, match="unassigned input"):
        embed_inputs(result.binding, {"op": 1}, result.circuit.line_count)


def test_embed_oversized_value():
    program = compile_ok(ALU_SOURCE)
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    with pytest.raises(ValueError, match="does not fit"):
        embed_inputs(result.binding, {"op": 2, "x1": 0, "x2": 0}, result.circuit.line_count)


def test_all_inputs_zero_embed_to_zero_word(alu_program):
    result = synthesize(alu_program, SynthesisMode.COST_AWARE)
    assert embed_inputs(result.binding, {"op": 0, "x1": 0, "x2": 0},
                        result.circuit.line_count) == 0


def test_state_signal_is_input_and_output():
    program = compile_ok("module main(in d(2)) state s(2) s += d")
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    line = result.circuit.lines[result.binding.lines_of("s")[0]]
    assert line.input_name == "s.0" and line.output_name == "s.0"
    word = embed_inputs(result.binding, {"d": 1, "s": 2}, result.circuit.line_count)
    out = extract_outputs(result.binding, run(result.circuit, word))
    assert out["s"] == 3


def test_helper_pool_reported():
    program = compile_ok("module main(in a(2), in b(2), out r(1)) r ^= (a < b)")
    result = synthesize(program, SynthesisMode.LINE_AWARE)
    assert result.helper_pool_size == len(result.binding.free_pool)
    assert result.helper_pool_size > 0
