import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("spirallog", deadline=None, max_examples=40)
settings.load_profile("spirallog")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_coeffs(rng, order, c0=None, scale=1.0, decay=1.0):
    """Complex coefficients with |c_k| <= scale * decay**k; ``c0`` pins the constant."""
    mod = scale * rng.random(order + 1) * decay ** np.arange(order + 1)
    c = mod * np.exp(2j * np.pi * rng.random(order + 1))
    if c0 is not None:
        c[0] = c0
    return c


# acceptance verdicts, echoed at the end of the run whatever the capture mode
ACCEPTANCE: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> str:
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
