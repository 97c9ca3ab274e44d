"""Exception types raised by qspline."""

import numpy as np


class InputError(ValueError):
    """Invalid user input (bad mesh, wrong arity, out-of-domain point...)."""


class SingularSystemError(np.linalg.LinAlgError):
    """A linear system that should be solvable turned out singular."""
