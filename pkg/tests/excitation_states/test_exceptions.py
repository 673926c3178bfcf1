import pytest

from libs.excitation_states.exceptions import (
    BudgetExceededError,
    ConvergenceError,
    ExcitationStateConfigError,
    ExcitationStateError,
    HypergraphValidationError,
    PreconditionError,
    ShapeMismatchError,
)


def test_excitation_state_error():
    with pytest.raises(ExcitationStateError):
        raise ExcitationStateError()


@pytest.mark.parametrize(
    "error",
    [
        HypergraphValidationError,
        BudgetExceededError,
        ShapeMismatchError,
        PreconditionError,
        ConvergenceError,
        ExcitationStateConfigError,
    ],
)
def test_errors_share_base(error):
    with pytest.raises(ExcitationStateError):
        raise error("boom")
