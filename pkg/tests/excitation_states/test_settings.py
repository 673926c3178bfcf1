import pytest

from libs.excitation_states.exceptions import ExcitationStateConfigError
from libs.excitation_states.settings import (
    Budgets,
    env_var,
    get_budgets,
    initialize_budgets,
    set_budgets,
)


def test_defaults():
    budgets = Budgets.from_env()
    assert budgets.max_group_order == 1_000_000
    assert budgets.max_stabilizer_qubits == 8
    assert budgets.max_reduced_qubits == 12


def test_env_var():
    assert env_var("max_sector_dim") == "EXCITATION_STATES_MAX_SECTOR_DIM"


def test_from_env(monkeypatch):
    monkeypatch.setenv("EXCITATION_STATES_MAX_SECTOR_DIM", "250")
    monkeypatch.setenv("EXCITATION_STATES_MAX_GROUP_ORDER", " ")
    budgets = Budgets.from_env()
    assert budgets.max_sector_dim == 250
    assert budgets.max_group_order == 1_000_000


@pytest.mark.parametrize("raw", ["many", "1.5", "0", "-3"])
def test_from_env_rejects(monkeypatch, raw):
    monkeypatch.setenv("EXCITATION_STATES_MAX_DENSE_QUBITS", raw)
    with pytest.raises(ExcitationStateConfigError):
        Budgets.from_env()


def test_limit_unknown():
    with pytest.raises(ExcitationStateConfigError):
        Budgets().limit("max_patience")


def test_initialize_and_get(monkeypatch):
    monkeypatch.setenv("EXCITATION_STATES_MAX_ORBIT_QUBITS", "10")
    budgets = initialize_budgets(max_stabilizer_qubits=6)
    assert budgets.max_orbit_qubits == 10
    assert budgets.max_stabilizer_qubits == 6
    assert get_budgets() is budgets


def test_get_budgets_lazy(monkeypatch):
    set_budgets(None)
    monkeypatch.setenv("EXCITATION_STATES_MAX_REDUCED_QUBITS", "4")
    assert get_budgets().max_reduced_qubits == 4


def test_get_budgets_reads_environment_once(mocker):
    spy = mocker.spy(Budgets, "from_env")
    first = get_budgets()
    assert get_budgets() is first
    assert spy.call_count == 1

