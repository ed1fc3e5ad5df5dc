"""Exact rational scalars, small fixed-dimension vectors, and tiny linear solves.

Every coordinate in this package is a fractions.Fraction.  This module adds
the wire format for rationals ("num/den" strings, den omitted when 1),
2- and 3-vectors with the handful of products the constructions need, and
exact 2x2 / 3x3 solves.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

RatLike = Union[Fraction, int]


def rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rat_to_str(x: Fraction) -> str:
    """Serialize exactly: "3/4", or "5" when the denominator is 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class Vec2:
    x: Fraction
    y: Fraction

    def __init__(self, x: RatLike, y: RatLike):
        object.__setattr__(self, "x", rat(x))
        object.__setattr__(self, "y", rat(y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def scale(self, k: RatLike) -> "Vec2":
        k = rat(k)
        return Vec2(self.x * k, self.y * k)

    def dot(self, other: "Vec2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> Fraction:
        """Scalar z-component of the 2D cross product."""
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Fraction:
        return self.dot(self)

    def to_json(self) -> list:
        return [rat_to_str(self.x), rat_to_str(self.y)]

    @staticmethod
    def from_json(obj: list) -> "Vec2":
        return Vec2(Fraction(obj[0]), Fraction(obj[1]))


@dataclass(frozen=True)
class Vec3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __init__(self, x: RatLike, y: RatLike, z: RatLike):
        object.__setattr__(self, "x", rat(x))
        object.__setattr__(self, "y", rat(y))
        object.__setattr__(self, "z", rat(z))

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scale(self, k: RatLike) -> "Vec3":
        k = rat(k)
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "Vec3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm2(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def to_json(self) -> list:
        return [rat_to_str(self.x), rat_to_str(self.y), rat_to_str(self.z)]

    @staticmethod
    def from_json(obj: list) -> "Vec3":
        return Vec3(Fraction(obj[0]), Fraction(obj[1]), Fraction(obj[2]))


ZERO3 = Vec3(0, 0, 0)


def solve2(
    a11: Fraction, a12: Fraction, a21: Fraction, a22: Fraction,
    b1: Fraction, b2: Fraction,
) -> Optional[Tuple[Fraction, Fraction]]:
    """Solve the 2x2 system exactly; None when the determinant vanishes."""
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    x = (b1 * a22 - a12 * b2) / det
    y = (a11 * b2 - b1 * a21) / det
    return x, y


def det3(r0: Vec3, r1: Vec3, r2: Vec3) -> Fraction:
    return r0.dot(r1.cross(r2))


def primitive_int_vec3(v: Vec3) -> Vec3:
    """Scale a nonzero rational vector to coprime integers, first nonzero positive."""
    if v.is_zero():
        raise ValueError("zero vector has no primitive form")
    from math import gcd, lcm

    den = lcm(v.x.denominator, v.y.denominator, v.z.denominator)
    nx, ny, nz = (v.x * den, v.y * den, v.z * den)
    g = gcd(int(nx), int(ny), int(nz))
    nx, ny, nz = int(nx) // g, int(ny) // g, int(nz) // g
    for c in (nx, ny, nz):
        if c != 0:
            if c < 0:
                nx, ny, nz = -nx, -ny, -nz
            break
    return Vec3(nx, ny, nz)
