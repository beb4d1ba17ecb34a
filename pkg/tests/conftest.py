import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parent.parent / "data"

JW8 = ["XXXX", "XXYY", "XYXY", "XYYX", "YXXY", "YXYX", "YYXX", "YYYY"]
JW8_TSP = ["XXXX", "XXYY", "XYXY", "XYYX", "YXYX", "YXXY", "YYXX", "YYYY"]


def pauli_text(min_width=1, max_width=12):
    return st.integers(min_width, max_width).flatmap(
        lambda w: st.text(alphabet="IXYZ", min_size=w, max_size=w)
    )


def same_width_paulis(n, min_width=1, max_width=12):
    return st.integers(min_width, max_width).flatmap(
        lambda w: st.tuples(*[st.text(alphabet="IXYZ", min_size=w, max_size=w)] * n)
    )


# acceptance results collected by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")


@pytest.fixture
def jw8():
    from hsim.hamiltonian import Hamiltonian

    return Hamiltonian.from_pairs([(1.0, s) for s in JW8])
