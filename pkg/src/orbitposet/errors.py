"""Exception hierarchy shared by all orbitposet modules.

Everything the library raises on bad input derives from DomainError, so
callers (in particular the command line front end) can distinguish domain
problems from genuine bugs with a single except clause.
"""


class DomainError(Exception):
    """Base class for all orbitposet domain errors."""


class InvariantError(DomainError):
    """A value violates a structural invariant (bad signature, bad class)."""


class BoundsError(DomainError):
    """A guard on problem size or search bound was violated."""


class MismatchError(DomainError):
    """Two values that must belong together do not (signatures, groups,
    bundles, moduli)."""


class DescriptorError(DomainError):
    """A manifold descriptor failed to parse or validate."""
