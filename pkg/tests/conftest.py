import pytest

from submult.core import build_spf_table
from submult.functions import builtin_registry


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


@pytest.fixture(scope="session")
def table_10k():
    return build_spf_table(10_000)


@pytest.fixture(scope="session")
def table_1m():
    # covers k-sweeps up to m, n <= 100 with k = 3
    return build_spf_table(1_000_000)


@pytest.fixture(scope="session")
def table_8m():
    # covers k-sweeps up to m, n <= 200 with k = 3
    return build_spf_table(8_000_000)
