"""Complex projective space CP^n with the Fubini-Study distance.

Points are unit representatives psi in C^(n+1); everything below only
looks at |<phi|psi>| so the global phase never matters. With
s = |<phi|psi>| and theta = arccos(s) the distance is d = 2 theta and
the penalty F = d^2 / 2 = 2 theta^2 is handled as a function f(s).
"""

# lib
import numpy as np

# project
from src.exceptions import SingularityError
from src.lie.groups import GroupDescriptor, GroupName
from . import ObjectManifold

# below this overlap the target is on the cut locus and d1d is undefined
CUT_LOCUS_OVERLAP = 1e-12
SMALL_ANGLE = 1e-4


def _penalty_profile(s: float):
    """First and second derivatives of f(s) = 2 arccos(s)^2"""
    theta = float(np.arccos(min(max(s, 0.0), 1.0)))
    if theta < SMALL_ANGLE:
        return -4.0 * (1.0 + theta**2 / 6.0), 4.0 / 3.0 + 8.0 * theta**2 / 15.0
    sin = np.sin(theta)
    return -4.0 * theta / sin, 4.0 * (sin - theta * np.cos(theta)) / sin**3


class ProjectiveSpace(ObjectManifold):
    is_complex = True

    def __init__(self, n: int = 1):
        self.n = n

    @staticmethod
    def config_name() -> str:
        return "cpn"

    @property
    def label(self) -> str:
        return f"cpn:{self.n}"

    def supports(self, group: GroupDescriptor) -> bool:
        return group.name is GroupName.SUN and group.parameter == self.n + 1

    def normalize(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=complex)
        return q / np.linalg.norm(q)

    def apply(self, matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
        return matrix @ q

    def overlap(self, q1: np.ndarray, q2: np.ndarray) -> float:
        return float(abs(np.vdot(q2, q1)) / (np.linalg.norm(q1) * np.linalg.norm(q2)))

    def distance(self, q1: np.ndarray, q2: np.ndarray) -> float:
        return 2.0 * float(np.arccos(min(self.overlap(q1, q2), 1.0)))

    def _overlap_terms(self, q: np.ndarray, target: np.ndarray):
        phi = target / np.linalg.norm(target)
        w = np.vdot(phi, q)
        s = abs(w)
        if s < CUT_LOCUS_OVERLAP:
            raise SingularityError("Fubini-Study derivative requested on the cut locus (orthogonal states)")
        return phi, w, s

    def penalty_gradient(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        phi, w, s = self._overlap_terms(q, target)
        f1, _ = _penalty_profile(s)
        return f1 * (phi * (w / s) - s * q)

    def penalty_hessian(self, q: np.ndarray, target: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        # valid for directions with Re<q|u> = Re<q|v> = 0, which all group motions satisfy
        phi, w, s = self._overlap_terms(q, target)
        f1, f2 = _penalty_profile(s)
        a_u = np.vdot(phi, u)
        a_v = np.vdot(phi, v)
        ds_u = np.real(np.conj(w) * a_u) / s - s * np.real(np.vdot(q, u))
        ds_v = np.real(np.conj(w) * a_v) / s - s * np.real(np.vdot(q, v))
        d2s = (
            np.real(np.conj(a_v) * a_u) / s
            - np.real(np.conj(w) * a_u) * np.real(np.conj(w) * a_v) / s**3
            - s * np.real(np.vdot(u, v))
        )
        return float(f2 * ds_u * ds_v + f1 * d2s)

    def tangent_project(self, q: np.ndarray, v: np.ndarray) -> np.ndarray:
        # horizontal part: drop the phase direction i*q along with the radial one
        return v - q * np.vdot(q, v)

    def residual(self, q: np.ndarray) -> float:
        return abs(float(np.linalg.norm(q)) - 1.0)
