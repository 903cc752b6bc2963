class DynamicsError(Exception):
    """Base class for errors raised by the opinion-dynamics engines."""


class ScheduleExhausted(DynamicsError):
    def __init__(self, result):
        self.result = result
        super().__init__(f"prescribed schedule ended after {result.steps_taken} activations without reaching an equilibrium")


class StepCapReached(DynamicsError):
    def __init__(self, result):
        self.result = result
        super().__init__(f"{result.model} run stopped at the cap of {result.steps_taken} steps without converging")


class UnknownModel(DynamicsError):
    def __init__(self, model: str):
        self.model = model
        super().__init__(f"unknown opinion model {model!r}")
