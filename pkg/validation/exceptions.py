class ValidationPipelineError(Exception):
    """Base class for errors of the empirical prediction pipeline."""


class MissingData(ValidationPipelineError):
    """Input lacks the columns, rounds or answers a computation needs."""


class DegenerateRegression(ValidationPipelineError):
    def __init__(self, participant, reason: str):
        self.participant = participant
        super().__init__(f"cannot fit participant {participant}: {reason}")


class ZeroTruth(ValidationPipelineError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"observation {index} is zero, its error rate is undefined")


class TooFewSamples(ValidationPipelineError):
    def __init__(self, size: int, minimum: int):
        self.size, self.minimum = size, minimum
        super().__init__(f"need at least {minimum} samples, got {size}")
