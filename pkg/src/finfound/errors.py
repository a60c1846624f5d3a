"""Exception hierarchy shared by every module.

Two families matter to callers (and to the CLI exit codes):

* ``InputError``: the input is malformed or violates a precondition.
* ``NegativeResult``: the input is well formed but the answer is "no"
  (not a lattice, not a cover, not a filter base, ...).
"""


class FinfoundError(Exception):
    pass


class InputError(FinfoundError, ValueError):
    pass


class NegativeResult(FinfoundError):
    pass


class BoundExceeded(InputError):
    """An enumeration would exceed its configured size bound."""

    def __init__(self, what, size, bound):
        super().__init__(f"{what}: size {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound
