"""
Errors raised while building, validating, generating or parsing influence networks.
"""


class NetworkError(Exception):
    """Base class for influence-network errors."""


class NegativeWeight(NetworkError):
    def __init__(self, i: int, j: int, weight: float):
        self.i, self.j, self.weight = i, j, weight
        super().__init__(f"negative weight w[{i},{j}] = {weight!r}")


class RowSumOff(NetworkError):
    def __init__(self, i: int, total: float):
        self.i, self.total = i, total
        super().__init__(f"row {i} sums to {total!r}, expected 1")


class ZeroRow(NetworkError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"row {i} has no positive weight to normalize")


class InsufficientSelfWeight(NetworkError):
    def __init__(self, i: int, self_weight: float, delta: float):
        self.i, self.self_weight, self.delta = i, self_weight, delta
        super().__init__(f"agent {i} self weight {self_weight!r} is smaller than delta {delta!r}")


class IsolatedAgent(NetworkError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"agent {i} has no neighbor other than itself")


class BadParameters(NetworkError):
    """Generator parameters outside their domain."""


class ParseError(NetworkError):
    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        self.line, self.offset = line, offset
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", offset {offset})" if offset is not None else ")")
        super().__init__(f"{message}{where}")
