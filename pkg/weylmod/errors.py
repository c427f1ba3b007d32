from __future__ import annotations


class WeylModError(RuntimeError):
    pass


class InvalidInputError(WeylModError, ValueError):
    pass


class ResourceCapError(WeylModError):
    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded the configured cap of {cap}.")
        self.what = what
        self.cap = cap


class CacheError(WeylModError):
    pass
