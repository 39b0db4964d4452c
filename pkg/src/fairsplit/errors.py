"""Shared exception types.

InputError        malformed instance data (CLI exit code 2)
ResourceBudget    a face/node/size budget was exceeded (CLI exit code 3)
ContractError     a pluggable component violated its stated guarantee
"""


class InputError(ValueError):
    pass


class ResourceBudget(RuntimeError):
    pass


class ContractError(AssertionError):
    pass
