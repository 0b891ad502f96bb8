import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ftspread.circuits.circuit import Circuit
from ftspread.pauli import PauliOperator

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ONE_QUBIT = ("H", "S", "SDG", "X", "Y", "Z", "SX")
TWO_QUBIT = ("CNOT", "CZ", "SWAP")


@st.composite
def paulis(draw, n=None, max_n=8):
    n = n or draw(st.integers(1, max_n))
    full = (1 << n) - 1
    return PauliOperator(n, draw(st.integers(0, full)), draw(st.integers(0, full)), draw(st.integers(0, 3)))


@st.composite
def pauli_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(paulis(n)), draw(paulis(n))


def random_clifford_circuit(n: int, depth: int, rng: random.Random) -> Circuit:
    c = Circuit(n)
    for _ in range(depth):
        if n > 1 and rng.random() < 0.5:
            a, b = rng.sample(range(n), 2)
            c.gate(rng.choice(TWO_QUBIT), a, b)
        else:
            c.gate(rng.choice(ONE_QUBIT), rng.randrange(n))
    return c


@st.composite
def clifford_circuits(draw, max_n=6, max_depth=12):
    n = draw(st.integers(1, max_n))
    depth = draw(st.integers(0, max_depth))
    return random_clifford_circuit(n, depth, random.Random(draw(st.integers(0, 2**32 - 1))))


@pytest.fixture(scope="session")
def steane():
    from ftspread.codes import build_steane

    return build_steane()


@pytest.fixture(scope="session")
def reed_muller():
    from ftspread.codes import build_reed_muller

    return build_reed_muller()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
