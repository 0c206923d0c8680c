# std
from abc import ABC, abstractmethod
from enum import Enum
from typing import Optional, Tuple

# lib
import numpy as np
import scipy.linalg

# project
from src.exceptions import ConfigError, ConvergenceError
from src.lie.metric import MetricOperator

# caps for the generic implicit (xi1, mu1) solve
MAX_IMPLICIT_ITERATIONS = 50
IMPLICIT_TOLERANCE = 1e-13


class LagrangianKind(Enum):
    SQUARED_VELOCITY = "squared_velocity"
    CUBIC = "cubic"


class Lagrangian(ABC):
    """Reduced second-order Lagrangian l(xi0, xi1) on g x g.

    Hyperregular in xi1: inverse_legendre recovers xi1 from the momentum
    mu1 = dl/dxi1 at fixed xi0.
    """

    kind: LagrangianKind

    def __init__(self, metric: MetricOperator):
        self.metric = metric
        self.group = metric.group

    @abstractmethod
    def value(self, xi0: np.ndarray, xi1: np.ndarray) -> float:
        pass

    @abstractmethod
    def d_xi0(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def d_xi1(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def inverse_legendre(self, xi0: np.ndarray, mu1: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def reflected(self) -> "Lagrangian":
        """The Lagrangian (a, b) -> l(-a, -b), used to flip the reduction side"""

    @abstractmethod
    def to_config(self) -> dict:
        pass

    def solve_momentum_balance(self, xi0: np.ndarray, rhs: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
        """Find xi1 with dl/dxi1(xi0, xi1) = rhs + h dl/dxi0(xi0, xi1).

        Returns (xi1, mu1) where mu1 is that common value. The default is a
        fixed-point iteration; quadratic Lagrangians override it with a
        linear solve.
        """
        xi1 = self.inverse_legendre(xi0, rhs)
        for _ in range(MAX_IMPLICIT_ITERATIONS):
            updated = self.inverse_legendre(xi0, rhs + h * self.d_xi0(xi0, xi1))
            if np.linalg.norm(updated - xi1) <= IMPLICIT_TOLERANCE * (1.0 + np.linalg.norm(updated)):
                return updated, self.d_xi1(xi0, updated)
            xi1 = updated
        raise ConvergenceError(f"Implicit momentum solve did not converge in {MAX_IMPLICIT_ITERATIONS} iterations")


class SquaredVelocity(Lagrangian):
    """l = |xi1|^2_gamma / 2, the Riemannian cubic Lagrangian for a bi-invariant metric"""

    kind = LagrangianKind.SQUARED_VELOCITY

    def value(self, xi0: np.ndarray, xi1: np.ndarray) -> float:
        return 0.5 * self.metric.norm_squared(xi1)

    def d_xi0(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        return np.zeros(self.group.dim)

    def d_xi1(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        return self.metric.flat(xi1)

    def inverse_legendre(self, xi0: np.ndarray, mu1: np.ndarray) -> np.ndarray:
        return self.metric.sharp(mu1)

    def solve_momentum_balance(self, xi0: np.ndarray, rhs: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
        return self.metric.sharp(rhs), np.array(rhs, dtype=float)

    def reflected(self) -> "SquaredVelocity":
        return self

    def to_config(self) -> dict:
        return {"kind": self.kind.value}


class CubicReduced(Lagrangian):
    """l = |xi1 + s ad^dagger_{xi0}(xi0 - z)|^2_W / 2.

    ad^dagger is taken with respect to gamma and W defaults to gamma.
    z = 0 gives the reduced cubic Lagrangian of a one-sided invariant
    metric; the strand model adds the intrinsic offset z.
    """

    kind = LagrangianKind.CUBIC

    def __init__(
        self,
        metric: MetricOperator,
        sign: int = -1,
        offset: Optional[np.ndarray] = None,
        weight: Optional[MetricOperator] = None,
    ):
        super().__init__(metric)
        if sign not in (-1, 1):
            raise ConfigError(f"Invalid lagrangian - sign must be +1 or -1, got {sign}")
        self.sign = sign
        self.offset = np.zeros(self.group.dim) if offset is None else np.array(offset, dtype=float)
        if self.offset.shape != (self.group.dim,):
            raise ConfigError(f"Invalid lagrangian - offset needs {self.group.dim} entries")
        self.weight = weight
        self._weight = metric if weight is None else weight

    def drift(self, xi0: np.ndarray) -> np.ndarray:
        return self.sign * self.metric.ad_dagger(xi0, xi0 - self.offset)

    def drift_jacobian(self, xi0: np.ndarray) -> np.ndarray:
        """Derivative of drift with respect to xi0"""
        lowered = self.metric.flat(xi0 - self.offset)
        through_ad = np.einsum("ijk,k->ji", self.group.structure_constants, lowered)
        through_argument = self.group.ad_matrix(xi0).T @ self.metric.gamma
        return self.sign * self.metric.gamma_inv @ (through_ad + through_argument)

    def residual(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        return xi1 + self.drift(xi0)

    def value(self, xi0: np.ndarray, xi1: np.ndarray) -> float:
        return 0.5 * self._weight.norm_squared(self.residual(xi0, xi1))

    def d_xi1(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        return self._weight.flat(self.residual(xi0, xi1))

    def d_xi0(self, xi0: np.ndarray, xi1: np.ndarray) -> np.ndarray:
        return self.drift_jacobian(xi0).T @ self.d_xi1(xi0, xi1)

    def inverse_legendre(self, xi0: np.ndarray, mu1: np.ndarray) -> np.ndarray:
        return self._weight.sharp(mu1) - self.drift(xi0)

    def solve_momentum_balance(self, xi0: np.ndarray, rhs: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
        # dl/dxi0 = A^T mu1 with A independent of xi1, so the balance is linear in mu1
        system = np.eye(self.group.dim) - h * self.drift_jacobian(xi0).T
        mu1 = scipy.linalg.solve(system, rhs)
        return self.inverse_legendre(xi0, mu1), mu1

    def reflected(self) -> "CubicReduced":
        return CubicReduced(self.metric, -self.sign, -self.offset, self.weight)

    def to_config(self) -> dict:
        out = {"kind": self.kind.value, "sign": self.sign, "offset": [float(x) for x in self.offset]}
        if self.weight is not None:
            out["weight"] = self.weight.gamma.tolist()
        return out


def lagrangian_from_config(metric: MetricOperator, raw: Optional[dict]) -> Lagrangian:
    raw = raw or {"kind": LagrangianKind.SQUARED_VELOCITY.value}
    kind = raw.get("kind", LagrangianKind.SQUARED_VELOCITY.value)
    if kind == LagrangianKind.SQUARED_VELOCITY.value:
        return SquaredVelocity(metric)
    if kind == LagrangianKind.CUBIC.value:
        weight = raw.get("weight")
        return CubicReduced(
            metric,
            sign=int(raw.get("sign", -1)),
            offset=raw.get("offset"),
            weight=None if weight is None else MetricOperator(metric.group, np.array(weight, dtype=float)),
        )
    raise ConfigError(f"Invalid config - unknown lagrangian kind {kind}")
