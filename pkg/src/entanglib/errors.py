"""Exception hierarchy shared by all modules."""


class EntanglibError(Exception):
    """Base class; ``kind`` is the machine-readable tag used by the CLI."""

    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class ValidationError(EntanglibError, ValueError):
    kind = "validation"


class DimensionError(ValidationError):
    kind = "dimension"


class ArgumentError(ValidationError):
    kind = "argument"


class ParameterError(ValidationError):
    kind = "parameter"


class UnsupportedError(ValidationError):
    kind = "unsupported"


class CapacityError(EntanglibError):
    """Sizes beyond the supported range or the enumeration budget."""

    kind = "capacity"


class BudgetError(CapacityError):
    kind = "budget"


class LPError(EntanglibError):
    kind = "lp"
