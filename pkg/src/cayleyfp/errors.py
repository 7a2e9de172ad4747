class CayleyFPError(Exception):
    """Base class for domain errors raised by cayleyfp."""


class ParameterError(CayleyFPError, ValueError):
    """An argument is outside its admissible range, or moduli disagree."""


class RefusalError(CayleyFPError):
    """The request exceeds a configured enumeration or size cap."""
