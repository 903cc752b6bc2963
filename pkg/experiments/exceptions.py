class ExperimentError(Exception):
    """Base class for experiment and metric errors."""


class UnknownDistribution(ExperimentError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown initial-opinion distribution {name!r}")


class OutOfRange(ExperimentError):
    def __init__(self, index: int, value: float):
        self.index, self.value = index, value
        super().__init__(f"opinion {value!r} of agent {index} lies outside [-1, 1]")


class PowerIterationDiverged(ExperimentError):
    def __init__(self, iterations: int, residual: float):
        self.iterations, self.residual = iterations, residual
        super().__init__(f"power iteration did not converge in {iterations} iterations (residual {residual:.3e})")
