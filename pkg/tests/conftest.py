import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from entanglib.hermitian_tensors import HermitianTensor
from entanglib.sym_poly import SymTensor, sym_dim

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_unit_sym(rng, n, d, real=False):
    K = sym_dim(n, d)
    f = rng.normal(size=K) if real else rng.normal(size=K) + 1j * rng.normal(size=K)
    return SymTensor.from_dicke(n, d, f / np.linalg.norm(f), "real" if real else "complex")


def random_density(rng, shape, rank=None, mix=True):
    """Ginibre density of random rank, optionally mixed with the identity."""
    N = int(np.prod(shape))
    k = int(rng.integers(1, N + 1)) if rank is None else rank
    G = rng.normal(size=(N, k)) + 1j * rng.normal(size=(N, k))
    M = G @ G.conj().T
    M /= np.trace(M).real
    if mix:
        p = rng.uniform()
        M = p * M + (1 - p) * np.eye(N) / N
    return HermitianTensor(tuple(shape), M)


def random_unitary(rng, n):
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
