import pytest

from libs.excitation_states.settings import set_budgets


@pytest.fixture(autouse=True)
def fresh_budgets(monkeypatch):
    for name in (
        "MAX_GROUP_ORDER",
        "MAX_AUTOMORPHISM_VERTICES",
        "MAX_STABILIZER_QUBITS",
        "MAX_ORBIT_QUBITS",
        "MAX_REDUCED_QUBITS",
        "MAX_PRODUCT_VERTICES",
        "MAX_SECTOR_DIM",
        "MAX_DENSE_QUBITS",
    ):
        monkeypatch.delenv(f"EXCITATION_STATES_{name}", raising=False)
    set_budgets(None)
    yield
    set_budgets(None)
