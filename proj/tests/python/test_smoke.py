import json
from fractions import Fraction

import pytest

import halting_workbench as hwb


def test_program_round_trip():
    p = hwb.Program("INC INC INC OUT END")
    assert p.bits == "010010010001000"
    assert hwb.Program(p.bits) == p
    assert p.bit_length == 15
    assert p.mass == Fraction(1, 2**15)


def test_invalid_programs():
    assert hwb.invalid_reason("110000") == "unbalanced-loop"
    assert hwb.invalid_reason("0001") == "not-multiple-of-3"
    assert hwb.invalid_reason("000") is None
    with pytest.raises(ValueError):
        hwb.Program("110000")


def test_run_and_decide():
    assert hwb.run(hwb.Program("INC INC INC OUT END"), fuel=100)["output"] == "3"
    spin = hwb.Program("INC LOOP_OPEN LOOP_CLOSE END")
    assert hwb.run(spin, fuel=50)["kind"] == "out-of-fuel"
    assert hwb.decide(spin)["kind"] == "never-halts"


def test_census_and_enumeration():
    assert [hwb.count_valid(t) for t in range(1, 5)] == [1, 5, 26, 140]
    assert len(hwb.programs_up_to(4)) == 172
    assert hwb.program_at(1).mnemonics == "END"
    assert hwb.program_index(hwb.program_at(100)) == 100


def test_omega_bounds():
    b = hwb.omega_bounds(3, 6)
    assert b["lower"] == Fraction(65, 256)
    assert b["undecided"] == 0
    assert b["tail_bound"] == Fraction(343, 512)
    bounded = hwb.omega_bounds(4, 8, width=16, jobs=2)
    assert bounded["lower"] == Fraction(589, 2048)


def test_decode_with_exact_prefix():
    universe = hwb.programs_up_to(4)
    prefix = "010010011010"
    assert hwb.decode(prefix, universe, hwb.Program("000")) == "halts"
    assert hwb.decode(prefix, universe, hwb.Program("DEC LOOP_OPEN LOOP_CLOSE END")) == "never-halts"


def test_complexity_and_borel():
    assert hwb.h_upper("3", 5)["bound_bits"] == 15
    assert hwb.literal_program("31").bit_length == 42
    x = hwb.borel_encode("101")
    assert x == Fraction(5, 8)
    assert [hwb.borel_answer(x, n) for n in (1, 2, 3)] == [True, False, True]


def test_cli_in_process():
    code, out, err = hwb.cli(["run", "--program", "010010010001000"])
    assert code == 0 and json.loads(out) == {"kind": "halted", "output": "3", "steps": 5}
    code, out, err = hwb.cli(["frobnicate"])
    assert code == 2 and out == "" and err
