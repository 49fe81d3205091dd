"""Arithmetic in the division ring of real quaternions.

A quaternion is w + x i + y j + z k with real coefficients and the usual
relations i^2 = j^2 = k^2 = ijk = -1.  Multiplication is associative and
norm-multiplicative but not commutative.  Two quaternions are *similar*
(conjugate by a nonzero quaternion) exactly when their real parts and norms
agree, so every similarity class is represented by a complex number
r e^{i theta} with theta in (-pi, pi]; we call |theta| the argument.
"""

import math

TOL_SIM = 1e-9  # absolute band on Re and norm for similarity tests


class Quaternion:
    """Immutable quaternion w + x i + y j + z k."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        object.__setattr__(self, "w", float(w))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "z", float(z))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def from_complex(cls, c):
        """Embed a complex number into the (1, i)-plane."""
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_json(cls, data):
        w, x, y, z = data
        return cls(w, x, y, z)

    def to_json(self):
        return [self.w, self.x, self.y, self.z]

    # complex coordinates q = za + zb*j with za, zb in the (1, i)-plane
    @property
    def za(self):
        return complex(self.w, self.x)

    @property
    def zb(self):
        return complex(self.y, self.z)

    def real_part(self):
        return self.w

    def imag_norm(self):
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def norm(self):
        return math.sqrt(self.w * self.w + self.x * self.x
                         + self.y * self.y + self.z * self.z)

    def norm_sq(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self):
        """Two-sided inverse conj(q) / |q|^2; raises on zero."""
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion is non-invertible")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def is_zero(self, tol=0.0):
        return self.norm() <= tol

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        other = _coerce(other)
        a0, a1, a2, a3 = self.w, self.x, self.y, self.z
        b0, b1, b2, b3 = other.w, other.x, other.y, other.z
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return _coerce(other).__mul__(self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return self * _coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, float, complex, Quaternion)):
            other = _coerce(other)
            return (self.w == other.w and self.x == other.x
                    and self.y == other.y and self.z == other.z)
        return NotImplemented

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def distance_to(self, other):
        return (self - _coerce(other)).norm()

    def __repr__(self):
        return "Quaternion({!r}, {!r}, {!r}, {!r})".format(
            self.w, self.x, self.y, self.z)


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(value)
    if isinstance(value, complex):
        return Quaternion(value.real, value.imag)
    raise TypeError("cannot interpret {!r} as a quaternion".format(value))


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def is_similar(a, b, tol=TOL_SIM):
    """Whether a and b lie in the same conjugacy class of H*.

    Equivalent to equal real parts and equal norms, compared with an
    absolute tolerance on both.
    """
    a, b = _coerce(a), _coerce(b)
    return (abs(a.w - b.w) <= tol
            and abs(a.norm() - b.norm()) <= tol)


def argument(q):
    """Angle |theta| in [0, pi] of the complex representative r e^{i theta}.

    Undefined (raises) for q = 0, which has no similarity class of the
    required form.
    """
    q = _coerce(q)
    n = q.norm()
    if n == 0.0:
        raise ZeroDivisionError("argument of the zero quaternion is undefined")
    c = q.w / n
    # guard rounding outside [-1, 1]
    c = max(-1.0, min(1.0, c))
    return math.acos(c)


def complex_representative(q):
    """Similarity-class representative Re(q) + i |Im(q)| with Im >= 0."""
    q = _coerce(q)
    return complex(q.w, q.imag_norm())
