class CohesionError(Exception):
    """Base class for cohesive-set and decisive-link errors."""


class EmptySet(CohesionError):
    def __init__(self):
        super().__init__("node set must not be empty")


class TooLarge(CohesionError):
    def __init__(self, n: int, limit: int):
        self.n, self.limit = n, limit
        super().__init__(f"exhaustive enumeration is limited to n <= {limit}, got n = {n}")


class UncheckedLinks(CohesionError):
    def __init__(self, links):
        self.links = tuple(links)
        super().__init__(f"{len(self.links)} links could not be classified (rows too long for subset search)")
