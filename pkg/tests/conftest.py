import numpy as np
import pytest

from horoclif.clifford import Multivector, Signature


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_mv(rng, sig: Signature) -> Multivector:
    return Multivector(sig, rng.standard_normal(sig.dim))


def random_paravector(rng, n: int) -> Multivector:
    return Multivector.paravector(Signature(0, n), rng.standard_normal(n + 1))


def close(a: Multivector, b: Multivector, tol: float = 1e-10) -> bool:
    scale = max(1.0, a.magnitude(), b.magnitude())
    return float(np.linalg.norm(a.coeffs - b.coeffs)) <= tol * scale


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def criterion(request):
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
