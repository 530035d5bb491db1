"""Geometry of a linear source / linear receive antenna-array assembly.

All lengths are expressed in wavelengths (the wavelength is normalised to 1)
and all angles in radians.

Conventions
-----------
The receiving coordinate frame has its origin at the centre of the receive
array.  ``e_z`` is parallel to the source array, ``e_x`` lies in the plane
spanned by the receive centre and the source array (pointing from the source
axis toward the receive centre), and ``e_y`` completes the right-handed
frame.  In this frame the source segment runs from

    (-d, 0, -r*cos(theta) - L/2)   to   (-d, 0, -r*cos(theta) + L/2)

where ``d = r*sin(theta)`` is the perpendicular distance from the receive
centre to the source axis, ``r`` the centre-to-centre distance and ``theta``
the polar angle of the receive centre seen from the source centre (measured
from the source axis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AssemblyParams",
    "ReceiveDirection",
    "ScenePlacement",
    "LocalFrame",
    "arctan_star",
    "sign_star",
    "vertical_scene_to_local",
    "horizontal_scene_to_local",
]

_UNIT_TOL = 1e-12


def _as_unit_tuple(v) -> tuple[float, float, float]:
    vx, vy, vz = (float(c) for c in v)
    norm = math.sqrt(vx * vx + vy * vy + vz * vz)
    if abs(norm - 1.0) > _UNIT_TOL:
        raise ValueError(f"direction vector must have unit norm, got |v| = {norm!r}")
    return (vx, vy, vz)


@dataclass(frozen=True)
class AssemblyParams:
    """Geometric parameters of a source/receive linear-array assembly.

    Parameters
    ----------
    L : float
        Source array length (wavelengths, > 0).
    rho : float
        Receive array half-length (wavelengths, > 0); the array spans
        ``[-rho, rho]`` along its orientation.
    r : float
        Distance between the array centres (wavelengths, > 0).
    theta : float
        Polar angle of the receive centre from the source axis, in
        ``[0, pi]``.
    v_hat : sequence of 3 floats, optional
        Unit orientation of the receive array in receiving coordinates.
        Defaults to ``e_z`` (parallel arrays).
    """

    L: float
    rho: float
    r: float
    theta: float
    v_hat: tuple[float, float, float] = field(default=(0.0, 0.0, 1.0))

    def __post_init__(self):
        for name in ("L", "rho", "r", "theta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.L <= 0:
            raise ValueError(f"source length L must be positive, got {self.L!r}")
        if self.rho <= 0:
            raise ValueError(f"receive half-length rho must be positive, got {self.rho!r}")
        if self.r <= 0:
            raise ValueError(f"centre distance r must be positive, got {self.r!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "v_hat", _as_unit_tuple(self.v_hat))

    # Derived quantities used throughout the bandwidth closed forms.
    @property
    def d(self) -> float:
        """Perpendicular distance from the receive centre to the source axis."""
        return self.r * math.sin(self.theta)

    @property
    def a(self) -> float:
        """Axial offset from the receive centre to the lower source end."""
        return self.r * math.cos(self.theta) + 0.5 * self.L

    @property
    def b(self) -> float:
        """Axial offset from the receive centre to the upper source end."""
        return self.r * math.cos(self.theta) - 0.5 * self.L

    @property
    def A(self) -> float:
        """Axial distance to the far source end: ``r*|cos(theta)| + L/2``."""
        return self.r * abs(math.cos(self.theta)) + 0.5 * self.L

    @property
    def B(self) -> float:
        """Signed axial distance to the near source end: ``r*|cos(theta)| - L/2``."""
        return self.r * abs(math.cos(self.theta)) - 0.5 * self.L

    @property
    def projection_inside(self) -> bool:
        """True when the receive centre projects onto the source segment.

        Equivalent to ``|cos(theta)| <= L / (2 r)``.  Boundary ties belong to
        this branch; the closed forms are continuous across it.
        """
        return self.r * abs(math.cos(self.theta)) <= 0.5 * self.L

    def with_v_hat(self, v_hat) -> "AssemblyParams":
        return AssemblyParams(self.L, self.rho, self.r, self.theta, v_hat)


@dataclass(frozen=True)
class ReceiveDirection:
    """Orientation of the receive array: one of the frame axes or a generic unit vector."""

    tag: str
    v: tuple[float, float, float] | None = None

    _AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}

    def __post_init__(self):
        if self.tag not in ("x", "y", "z", "generic"):
            raise ValueError(f"unknown direction tag {self.tag!r}")
        if self.tag == "generic":
            if self.v is None:
                raise ValueError("generic direction requires a unit vector")
            object.__setattr__(self, "v", _as_unit_tuple(self.v))
        elif self.v is not None:
            raise ValueError("axis directions carry no explicit vector")

    @classmethod
    def x(cls) -> "ReceiveDirection":
        return cls("x")

    @classmethod
    def y(cls) -> "ReceiveDirection":
        return cls("y")

    @classmethod
    def z(cls) -> "ReceiveDirection":
        return cls("z")

    @classmethod
    def generic(cls, v) -> "ReceiveDirection":
        return cls("generic", tuple(float(c) for c in v))

    @property
    def is_axis(self) -> bool:
        return self.tag != "generic"

    @property
    def unit_vector(self) -> np.ndarray:
        if self.tag == "generic":
            return np.array(self.v, dtype=float)
        return np.array(self._AXES[self.tag], dtype=float)


@dataclass(frozen=True)
class ScenePlacement:
    """An elevated source array above a ground plane carrying the receive array.

    ``mode`` selects the source alignment: ``"vertical"`` keeps the source
    along the vertical axis through the world origin, ``"horizontal"`` lays
    it along the ground-parallel x'' axis at height ``source_height``.  The
    receive array lies on the ground at ``rx_center = (x'', y'')`` with
    ``y'' >= 0`` (the other half-plane is its mirror image).
    """

    mode: str
    source_length: float
    source_height: float
    rx_center: tuple[float, float]
    receive_length: float

    def __post_init__(self):
        if self.mode not in ("vertical", "horizontal"):
            raise ValueError(f"mode must be 'vertical' or 'horizontal', got {self.mode!r}")
        if self.source_length <= 0:
            raise ValueError("source_length must be positive")
        if self.receive_length <= 0:
            raise ValueError("receive_length must be positive")
        if self.source_height <= 0:
            raise ValueError("source_height must be positive")
        if self.mode == "vertical" and self.source_height <= 0.5 * self.source_length:
            raise ValueError(
                "vertical placement needs source_height > source_length/2 "
                "so the array stays above the ground"
            )
        x, y = (float(c) for c in self.rx_center)
        if y < 0:
            raise ValueError("rx_center must lie in the y'' >= 0 half-plane")
        object.__setattr__(self, "rx_center", (x, y))


@dataclass(frozen=True)
class LocalFrame:
    """Receive-frame description of a scene placement for one ground position.

    ``projections`` holds the receive-array projections onto the three
    receiving axes as ``(L_x, L_y, L_z)``.  ``angle`` is the in-scene
    reference angle (``gamma`` for vertical placement, ``psi`` for
    horizontal).  ``degenerate`` marks positions where that angle is
    undefined and a convention was applied.
    """

    params: AssemblyParams
    angle: float
    projections: tuple[float, float, float]
    degenerate: bool = False


def arctan_star(x: float) -> float:
    """Arctangent shifted onto [0, pi): ``pi`` is added for negative arguments.

    Strictly increasing on ``x > 0`` and on ``x < 0`` separately; the two
    half-ranges ``[0, pi/2)`` and ``(pi/2, pi)`` together cover the polar
    range as the argument sweeps +-infinity.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"arctan_star requires a finite argument, got {x!r}")
    return (math.pi if x < 0 else 0.0) + math.atan(x)


def sign_star(x: float) -> int:
    """Three-way sign: 1 for positive, 0 for zero, -1 for negative."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"sign_star requires a finite argument, got {x!r}")
    return (x > 0) - (x < 0)


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"orientation angle phi must lie in [0, pi], got {phi!r}")
    return phi


def vertical_scene_to_local(scene: ScenePlacement, phi: float) -> LocalFrame:
    """Local assembly for a vertically placed source and ground receive array.

    ``phi`` is the receive-array orientation angle on the ground, measured
    from the x'' axis.  Returns the local frame with ``angle = gamma``, the
    azimuth of the receive centre.  The receive array is horizontal, so its
    projection on ``e_z`` is zero and its receiving-frame orientation is
    ``(cos(phi - gamma), -sin(phi - gamma), 0)``.

    At the ground point directly below the source (``r1 = 0``) the azimuth is
    undefined; ``gamma = 0`` is used by convention and the result is flagged
    degenerate (all orientations are equivalent there by symmetry).
    """
    if scene.mode != "vertical":
        raise ValueError("vertical_scene_to_local requires a vertical-mode scene")
    phi = _check_phi(phi)
    x, y = scene.rx_center
    r1 = math.hypot(x, y)
    degenerate = r1 == 0.0
    gamma = 0.0 if degenerate else math.acos(min(1.0, max(-1.0, x / r1)))
    # arctan_star(r1 / height), evaluated overflow-safely.
    theta = math.atan2(r1, scene.source_height)
    r = math.hypot(r1, scene.source_height)
    delta = phi - gamma
    lr = scene.receive_length
    projections = (lr * abs(math.cos(delta)), lr * abs(math.sin(delta)), 0.0)
    v_hat = (math.cos(delta), -math.sin(delta), 0.0)
    params = AssemblyParams(scene.source_length, 0.5 * lr, r, theta, v_hat)
    return LocalFrame(params, gamma, projections, degenerate)


def horizontal_scene_to_local(scene: ScenePlacement, phi: float) -> LocalFrame:
    """Local assembly for a horizontally placed source and ground receive array.

    ``phi`` is the receive-array orientation angle on the ground, measured
    from the x'' axis (the source direction).  Returns the local frame with
    ``angle = psi``, the tilt of the receiving ``e_x`` axis against the
    ground; the receiving-frame orientation of the receive array is
    ``(sin(phi) cos(psi), sin(phi) sin(psi), cos(phi))``.
    """
    if scene.mode != "horizontal":
        raise ValueError("horizontal_scene_to_local requires a horizontal-mode scene")
    phi = _check_phi(phi)
    x, y = scene.rx_center
    z = scene.source_height
    r2 = math.hypot(y, z)
    # arctan_star of an infinite ratio: the receive centre sits in the
    # boresight plane of the source, theta = pi/2 exactly.  Off that plane
    # atan2 evaluates arctan_star(r2 / x) without overflow (r2 > 0).
    theta = 0.5 * math.pi if x == 0.0 else math.atan2(r2, x)
    psi = math.acos(min(1.0, max(-1.0, y / r2)))
    r = math.hypot(x, r2)
    lr = scene.receive_length
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    sin_psi, cos_psi = math.sin(psi), math.cos(psi)
    projections = (lr * sin_phi * cos_psi, lr * sin_phi * sin_psi, lr * abs(cos_phi))
    v_hat = (sin_phi * cos_psi, sin_phi * sin_psi, cos_phi)
    params = AssemblyParams(scene.source_length, 0.5 * lr, r, theta, v_hat)
    return LocalFrame(params, psi, projections)
