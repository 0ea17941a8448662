# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from typing import Optional


class DickeError(Exception):
    pass


class DomainError(DickeError, ValueError):
    def __init__(self, quantity: str, reason: str) -> None:
        super().__init__(f"invalid {quantity}: {reason}")
        self.quantity = quantity
        self.reason = reason


class IntegrationError(DickeError):
    def __init__(self, time: float, method: str, reason: str) -> None:
        super().__init__(f"{method} integration failed at t={time:.6g}: {reason}")
        self.time = time
        self.method = method
        self.reason = reason


class SteadyStateNotReachedError(DickeError):
    def __init__(self, attempts: int, drift: float, tolerance: float) -> None:
        super().__init__(
            f"orbit still drifting after {attempts} attempt(s): "
            f"window drift {drift:.3g} exceeds tolerance {tolerance:.3g}"
        )
        self.attempts = attempts
        self.drift = drift
        self.tolerance = tolerance


class NewtonError(DickeError):
    def __init__(self, iterations: int, residual: float, reason: str) -> None:
        super().__init__(
            f"Newton iteration stopped after {iterations} iteration(s) "
            f"with residual {residual:.3g}: {reason}"
        )
        self.iterations = iterations
        self.residual = residual
        self.reason = reason


class SingularJacobianError(NewtonError):
    pass


class SpectrumError(DickeError):
    pass


class PhaseLockingError(SpectrumError):
    def __init__(self, axis_ratio: Optional[float]) -> None:
        if axis_ratio is None:
            detail = "empty field cloud"
        else:
            detail = f"axis ratio {axis_ratio:.3g}"
        super().__init__(f"light field is not phase locked ({detail})")
        self.axis_ratio = axis_ratio


class ConfigError(DickeError):
    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        where = ""
        if field is not None:
            where = f" [{field}]"
        elif line is not None:
            where = f" [line {line}, column {column}]"
        super().__init__(f"configuration error{where}: {message}")
        self.field = field
        self.line = line
        self.column = column
