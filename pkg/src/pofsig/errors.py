"""Exception hierarchy shared across the package."""


class PofsigError(Exception):
    """Base class for all package-specific errors."""


class InvalidParams(PofsigError):
    """Scheme parameters violate a structural constraint."""


class FormatError(PofsigError):
    """A serialized file is malformed; message carries line/field diagnostics."""


class DomainError(PofsigError):
    """A bit string has the wrong length for the operation's declared domain."""


class EntropyError(PofsigError):
    """The injected randomness source failed."""


class BudgetExceeded(PofsigError):
    """An exhaustive search would exceed the configured domain-size cap."""


class EmptyPreimageSet(PofsigError):
    """Requested a preimage from a set that has no members."""


class NotAValidSignature(PofsigError):
    """Forgery detection was invoked on a pair that does not even verify."""
