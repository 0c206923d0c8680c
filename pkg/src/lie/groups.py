# std
import logging
import re
from enum import Enum
from typing import List

# lib
import numpy as np
import scipy.linalg

# project
from src.exceptions import ConfigError, DescriptorMismatchError, SingularityError

# condition number above which (e -+ xi/2) or (e + g) is treated as singular
CONDITION_LIMIT = 1e12


class GroupName(Enum):
    """Matrix groups shipped with hpsplines"""

    SO3 = "so3"
    SE3 = "se3"
    SUN = "sun"
    ABELIAN = "abelian"


def hat3(v: np.ndarray) -> np.ndarray:
    """Skew matrix with hat3(v) @ x == cross(v, x)"""
    return np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )


def gell_mann(n: int) -> List[np.ndarray]:
    """Generalized Gell-Mann matrices, normalized to tr(l_a l_b) = 2 delta_ab.

    Off-diagonal pairs come first (symmetric then antisymmetric), then
    the diagonal ones. For n = 2 this is the Pauli triple x, y, z.
    """
    matrices = []
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((n, n), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            matrices.extend([sym, anti])
    for level in range(1, n):
        diag = np.zeros((n, n), dtype=complex)
        for j in range(level):
            diag[j, j] = 1.0
        diag[level, level] = -level
        matrices.append(np.sqrt(2.0 / (level * (level + 1))) * diag)
    return matrices


class GroupDescriptor:
    """A matrix Lie group together with a fixed basis of its Lie algebra.

    Algebra and dual vectors are plain real coordinate arrays of length
    ``dim``; group elements are ``matrix_size`` square arrays. The dual
    pairing is the coordinate dot product, so every starred operator is
    the transpose of its unstarred matrix.
    """

    def __init__(self, name: GroupName, parameter: int, basis: List[np.ndarray]):
        self.name = name
        self.parameter = parameter
        self.basis = np.array(basis)
        self.dim = self.basis.shape[0]
        self.matrix_size = self.basis.shape[1]
        self.is_complex = bool(np.iscomplexobj(self.basis))
        # Cayley of a trace-free generator is unitary but its det is only a unit phase for n > 2
        self.det_drift = name is GroupName.SUN and parameter > 2

        flat = self._realify(self.basis.reshape(self.dim, -1))
        self._vee_map = np.linalg.pinv(flat.T)
        self._identity = np.eye(self.matrix_size, dtype=self.basis.dtype)

        brackets = self.basis[:, None] @ self.basis[None, :] - self.basis[None, :] @ self.basis[:, None]
        sc = self.vee_stack(brackets.reshape(self.dim * self.dim, self.matrix_size, self.matrix_size))
        self.structure_constants = sc.reshape(self.dim, self.dim, self.dim)

    @property
    def label(self) -> str:
        if self.name in (GroupName.SUN, GroupName.ABELIAN):
            return f"{self.name.value}:{self.parameter}"
        return self.name.value

    def __repr__(self) -> str:
        return f"GroupDescriptor({self.label}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupDescriptor) and other.label == self.label

    def __hash__(self) -> int:
        return hash(self.label)

    def _realify(self, rows: np.ndarray) -> np.ndarray:
        if self.is_complex:
            return np.concatenate([rows.real, rows.imag], axis=-1)
        return np.real(rows)

    def _coords(self, v: np.ndarray) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.shape != (self.dim,):
            raise DescriptorMismatchError(f"Expected {self.dim} coordinates for {self.label}, got shape {arr.shape}")
        return arr

    def _element(self, g: np.ndarray) -> np.ndarray:
        arr = np.asarray(g)
        if arr.shape != (self.matrix_size, self.matrix_size):
            raise DescriptorMismatchError(f"Expected a {self.matrix_size}x{self.matrix_size} matrix for {self.label}")
        return arr

    # -- coordinates --------------------------------------------------------

    def hat(self, v: np.ndarray) -> np.ndarray:
        if self.name is not GroupName.SO3:
            raise DescriptorMismatchError(f"hat map is only defined for so3, not {self.label}")
        return hat3(np.asarray(v, dtype=float))

    def wedge(self, xi: np.ndarray) -> np.ndarray:
        return np.tensordot(self._coords(xi), self.basis, axes=1)

    def vee(self, matrix: np.ndarray) -> np.ndarray:
        return self._vee_map @ self._realify(np.asarray(matrix).reshape(-1))

    def vee_stack(self, matrices: np.ndarray) -> np.ndarray:
        count = matrices.shape[0]
        return self._realify(matrices.reshape(count, -1)) @ self._vee_map.T

    # -- brackets and adjoint actions ---------------------------------------

    def ad_matrix(self, xi: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->kj", self._coords(xi), self.structure_constants)

    def ad(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.ad_matrix(xi) @ self._coords(eta)

    def ad_star(self, xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
        return self.ad_matrix(xi).T @ self._coords(mu)

    def identity(self) -> np.ndarray:
        return self._identity.copy()

    def inverse(self, g: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self._element(g))

    def Ad_matrix(self, g: np.ndarray) -> np.ndarray:
        g = self._element(g)
        conjugated = g @ self.basis @ np.linalg.inv(g)
        return self.vee_stack(conjugated).T

    def Ad(self, g: np.ndarray, xi: np.ndarray) -> np.ndarray:
        g = self._element(g)
        return self.vee(g @ self.wedge(xi) @ np.linalg.inv(g))

    def Ad_star(self, g: np.ndarray, mu: np.ndarray) -> np.ndarray:
        return self.Ad_matrix(g).T @ self._coords(mu)

    # -- Cayley retraction --------------------------------------------------

    def cayley_factors(self, xi: np.ndarray):
        """Return (e - xi/2, e + xi/2), refusing near-singular left factors"""
        half = 0.5 * self.wedge(xi)
        lower = self._identity - half
        upper = self._identity + half
        if np.linalg.cond(lower) > CONDITION_LIMIT or np.linalg.cond(upper) > CONDITION_LIMIT:
            raise SingularityError(f"Cayley map is singular at xi = {xi}")
        return lower, upper

    def cayley(self, xi: np.ndarray) -> np.ndarray:
        lower, upper = self.cayley_factors(xi)
        return scipy.linalg.solve(lower, upper)

    def cayley_inv(self, g: np.ndarray) -> np.ndarray:
        g = self._element(g)
        shifted = g + self._identity
        if np.linalg.cond(shifted) > CONDITION_LIMIT:
            raise SingularityError("Cayley inverse is singular: e + g is not invertible")
        # (e + g) and (g - e) commute, so the order of the product is free
        return self.vee(scipy.linalg.solve(shifted, 2.0 * (g - self._identity)))

    def dtau_matrix(self, xi: np.ndarray) -> np.ndarray:
        """Coordinate matrix of eta -> (e + xi/2)^-1 eta (e - xi/2)^-1"""
        lower, upper = self.cayley_factors(xi)
        images = np.linalg.inv(upper) @ self.basis @ np.linalg.inv(lower)
        return self.vee_stack(images).T

    def dtau_inv_matrix(self, xi: np.ndarray) -> np.ndarray:
        if self.det_drift:
            # vee drops the central part of dtau, so the closed form is no longer its inverse
            return np.linalg.inv(self.dtau_matrix(xi))
        lower, upper = self.cayley_factors(xi)
        return self.vee_stack(upper @ self.basis @ lower).T

    def dtau(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.dtau_matrix(xi) @ self._coords(eta)

    def dtau_inv(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.dtau_inv_matrix(xi) @ self._coords(eta)

    def dtau_star(self, xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
        return self.dtau_matrix(xi).T @ self._coords(mu)

    def dtau_inv_star(self, xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
        return self.dtau_inv_matrix(xi).T @ self._coords(mu)

    # -- group manifold -----------------------------------------------------

    def project(self, g: np.ndarray) -> np.ndarray:
        """Nearest group element, used to wash out round-off drift"""
        g = np.array(self._element(g))
        if self.name is GroupName.SO3:
            return np.real(scipy.linalg.polar(g)[0])
        if self.name is GroupName.SUN:
            unitary = scipy.linalg.polar(g)[0]
            # principal n-th root of the det phase
            return unitary * np.linalg.det(unitary) ** (-1.0 / self.parameter)
        if self.name is GroupName.SE3:
            out = np.eye(4)
            out[:3, :3] = np.real(scipy.linalg.polar(g[:3, :3])[0])
            out[:3, 3] = np.real(g[:3, 3])
            return out
        out = np.eye(self.matrix_size)
        out[:-1, -1] = np.real(g[:-1, -1])
        return out

    def manifold_residual(self, g: np.ndarray) -> float:
        g = self._element(g)
        if self.name is GroupName.SO3:
            return float(np.linalg.norm(g.T @ g - np.eye(3)) + abs(np.linalg.det(g) - 1.0))
        if self.name is GroupName.SUN:
            return float(np.linalg.norm(g.conj().T @ g - self._identity) + abs(np.linalg.det(g) - 1.0))
        if self.name is GroupName.SE3:
            rot = g[:3, :3]
            bottom = np.linalg.norm(g[3, :] - np.array([0.0, 0.0, 0.0, 1.0]))
            return float(np.linalg.norm(rot.T @ rot - np.eye(3)) + abs(np.linalg.det(rot) - 1.0) + bottom)
        return float(np.linalg.norm(g - self.project(g)))


def _so3_basis() -> List[np.ndarray]:
    return [hat3(e) for e in np.eye(3)]


def _se3_basis() -> List[np.ndarray]:
    basis = []
    for e in np.eye(3):
        rot = np.zeros((4, 4))
        rot[:3, :3] = hat3(e)
        basis.append(rot)
    for i in range(3):
        trans = np.zeros((4, 4))
        trans[i, 3] = 1.0
        basis.append(trans)
    return basis


def _sun_basis(n: int) -> List[np.ndarray]:
    return [-0.5j * lam for lam in gell_mann(n)]


def _abelian_basis(m: int) -> List[np.ndarray]:
    basis = []
    for i in range(m):
        trans = np.zeros((m + 1, m + 1))
        trans[i, m] = 1.0
        basis.append(trans)
    return basis


def so3() -> GroupDescriptor:
    return GroupDescriptor(GroupName.SO3, 3, _so3_basis())


def se3() -> GroupDescriptor:
    return GroupDescriptor(GroupName.SE3, 3, _se3_basis())


def sun(n: int) -> GroupDescriptor:
    if n < 2:
        raise ConfigError(f"sun:{n} is not a valid group, need n >= 2")
    return GroupDescriptor(GroupName.SUN, n, _sun_basis(n))


def abelian(m: int) -> GroupDescriptor:
    if m < 1:
        raise ConfigError(f"abelian:{m} is not a valid group, need m >= 1")
    return GroupDescriptor(GroupName.ABELIAN, m, _abelian_basis(m))


def group_from_name(name: str) -> GroupDescriptor:
    """Build a descriptor from its config name: so3, se3, sun:<n> or abelian:<m>"""
    key = str(name).strip().lower()
    if key == "so3":
        return so3()
    if key == "se3":
        return se3()
    match = re.fullmatch(r"(sun|abelian):(\d+)", key)
    if match:
        if match.group(1) == "sun":
            return sun(int(match.group(2)))
        return abelian(int(match.group(2)))

    logging.error(f"Unknown group name in config: {name}")
    raise ConfigError(f"Invalid config - unknown group {name}")
