"""Exception hierarchy with stable error codes.

Precondition errors signal bad input and map to CLI exit code 1.
Internal invariant errors signal a bug and map to exit code 2.
"""


class StutterError(Exception):
    code = "error"


class PreconditionError(StutterError, ValueError):
    code = "precondition"


class InvalidModulus(PreconditionError):
    code = "invalid-modulus"


class InvalidPartition(PreconditionError):
    code = "invalid-partition"


class InvalidBeta(PreconditionError):
    code = "invalid-beta"


class InvalidHook(PreconditionError):
    code = "invalid-hook"


class NotACore(PreconditionError):
    code = "not-a-core"


class InvalidParams(PreconditionError):
    code = "invalid-params"


class ConfigError(PreconditionError):
    code = "config"


class Incompatible(PreconditionError):
    code = "incompatible-multicharge"


class NotStable(PreconditionError):
    code = "not-stable"


class DomainError(PreconditionError):
    code = "domain"


class ShapeMismatch(PreconditionError):
    code = "shape-mismatch"


class InvalidTriple(PreconditionError):
    code = "invalid-triple"


class Infeasible(PreconditionError):
    code = "infeasible"


class TooLarge(PreconditionError):
    code = "too-large"


class InternalInvariantError(StutterError, RuntimeError):
    code = "internal-invariant"
