"""Sparse Euclidean geometric algebra G(n, 0).

Blades are encoded as integer bitmasks: bit ``j - 1`` set means basis vector
``s_j`` participates, indices always in ascending canonical order. A
:class:`Multivector` is an immutable sparse map ``mask -> coefficient`` that
carries its ambient dimension; binary operations refuse to mix dimensions.

Products are evaluated on all term pairs at once with numpy, which keeps the
rotance of a 25-harmonic signal (about 1200 bivector terms) cheap to apply.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

PRUNE_TOL = 1e-14
MAX_DIM = 64
ROTOR_TOL = 1e-10


class DimensionMismatchError(ValueError):
    pass


class GradeError(ValueError):
    pass


def grade_of(mask: int) -> int:
    return int(mask).bit_count()


def _reorder_sign(a: int, b: int) -> int:
    # parity of the transpositions moving each vector of b left past the
    # vectors of a with a larger index
    swaps = 0
    while b:
        low = b & -b
        swaps += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, dim: int) -> tuple[int, int]:
    """Geometric product of two unit basis blades.

    Returns ``(mask, sign)`` such that ``blade(a) * blade(b) == sign * blade(mask)``.
    """
    limit = 1 << dim
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValueError(f"blade mask out of range for dim={dim}")
    return a ^ b, _reorder_sign(a, b)


def blade_name(mask: int) -> str:
    """``0 -> "1"``, ``0b101 -> "s13"``; indices above 9 are dot-separated."""
    if mask == 0:
        return "1"
    idx = [j + 1 for j in range(mask.bit_length()) if mask >> j & 1]
    if all(i < 10 for i in idx):
        return "s" + "".join(str(i) for i in idx)
    return "s" + ".".join(str(i) for i in idx)


def parse_blade(name: str) -> int:
    if name == "1":
        return 0
    if not name.startswith("s") or len(name) < 2:
        raise ValueError(f"bad blade name {name!r}")
    body = name[1:]
    parts = body.split(".") if "." in body else list(body)
    idx = [int(p) for p in parts]
    if any(i < 1 for i in idx) or idx != sorted(set(idx)):
        raise ValueError(f"blade indices must be ascending and distinct: {name!r}")
    mask = 0
    for i in idx:
        mask |= 1 << (i - 1)
    return mask


def _signs(ma: np.ndarray, mb: np.ndarray) -> np.ndarray:
    """Reordering signs for every pair in ``ma x mb`` (outer layout)."""
    swaps = np.zeros((ma.size, mb.size), dtype=np.int64)
    union = int(np.bitwise_or.reduce(mb)) if mb.size else 0
    j = 0
    while union >> j:
        if union >> j & 1:
            higher = np.bitwise_count(ma >> np.uint64(j + 1)).astype(np.int64)
            has_j = ((mb >> np.uint64(j)) & np.uint64(1)).astype(np.int64)
            swaps += np.multiply.outer(higher, has_j)
        j += 1
    return 1 - 2 * (swaps & 1)


SMALL_PRODUCT = 256


class Multivector:
    """Immutable sparse multivector in G(dim, 0)."""

    __slots__ = ("dim", "_terms", "_arrays")

    def __init__(self, dim: int, terms: Mapping[int, float] | None = None):
        if not 0 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must lie in [0, {MAX_DIM}], got {dim}")
        limit = 1 << dim
        clean = {}
        for m, c in (terms or {}).items():
            m = int(m)
            if not 0 <= m < limit:
                raise ValueError(f"blade mask {m} invalid for dim={dim}")
            clean[m] = float(c)
        self.dim = dim
        self._terms = _pruned(clean)
        self._arrays = None

    @classmethod
    def _wrap(cls, dim: int, terms: dict[int, float]) -> "Multivector":
        mv = object.__new__(cls)
        mv.dim = dim
        mv._terms = _pruned(terms)
        mv._arrays = None
        return mv

    def _as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._arrays is None:
            masks = np.fromiter(self._terms.keys(), dtype=np.uint64, count=len(self._terms))
            coeffs = np.fromiter(self._terms.values(), dtype=float, count=len(self._terms))
            self._arrays = (masks, coeffs)
        return self._arrays

    # constructors

    @classmethod
    def scalar(cls, value: float, dim: int) -> "Multivector":
        return cls(dim, {0: value})

    @classmethod
    def basis(cls, index: int, dim: int) -> "Multivector":
        if not 1 <= index <= dim:
            raise ValueError(f"basis index {index} outside 1..{dim}")
        return cls(dim, {1 << (index - 1): 1.0})

    @classmethod
    def from_vector(cls, components: Iterable[float]) -> "Multivector":
        comps = [float(c) for c in components]
        return cls(len(comps), {1 << j: c for j, c in enumerate(comps)})

    @classmethod
    def from_named(cls, terms: Mapping[str, float], dim: int) -> "Multivector":
        return cls(dim, {parse_blade(k): v for k, v in terms.items()})

    # views

    @property
    def terms(self) -> dict[int, float]:
        return dict(self._terms)

    def named_terms(self) -> dict[str, float]:
        return {blade_name(m): c for m, c in self._terms.items()}

    def __getitem__(self, mask: int) -> float:
        return self._terms.get(int(mask), 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def is_vector(self) -> bool:
        return all(m.bit_count() == 1 for m in self._terms)

    def vector_components(self) -> np.ndarray:
        """Dense coefficient array ``[x_1, ..., x_dim]`` of a grade-1 element."""
        if not self.is_vector():
            raise GradeError("expected a grade-1 multivector")
        out = np.zeros(self.dim)
        for m, c in self._terms.items():
            out[m.bit_length() - 1] = c
        return out

    # arithmetic

    def _check(self, other: "Multivector") -> None:
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector.scalar(float(other), self.dim)
        self._check(other)
        return other

    def __add__(self, other) -> "Multivector":
        other = self._coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0.0) + c
        return Multivector._wrap(self.dim, acc)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._wrap(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Multivector":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Multivector":
        return (-self) + other

    def _scaled(self, f: float) -> "Multivector":
        return Multivector._wrap(self.dim, {m: c * f for m, c in self._terms.items()})

    def __mul__(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return self._scaled(float(other))

    def __rmul__(self, other) -> "Multivector":
        return self._scaled(float(other))

    def __truediv__(self, other: float) -> "Multivector":
        return self._scaled(1.0 / float(other))

    def __xor__(self, other: "Multivector") -> "Multivector":
        return outer_product(self, other)

    def __invert__(self) -> "Multivector":
        return reverse(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        self._check(other)
        keys = self._terms.keys() | other._terms.keys()
        return all(abs(self[m] - other[m]) <= atol for m in keys)

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __repr__(self) -> str:
        if not self._terms:
            return f"Multivector(dim={self.dim}, 0)"
        body = " + ".join(f"{c:.6g}*{blade_name(m)}" for m, c in self._terms.items())
        return f"Multivector(dim={self.dim}, {body})"


def _pruned(terms: dict[int, float]) -> dict[int, float]:
    return {m: terms[m] for m in sorted(terms) if abs(terms[m]) >= PRUNE_TOL}


def _product(a: Multivector, b: Multivector, keep=None) -> Multivector:
    """Bilinear blade-by-blade product.

    ``keep(mask_a, mask_b, mask_out)`` filters contributing pairs (used for
    the outer product and for grade-restricted products). Pairs are always
    accumulated in a-major order so both code paths round identically.
    """
    a._check(b)
    if not a._terms or not b._terms:
        return Multivector(a.dim)
    if len(a) * len(b) <= SMALL_PRODUCT:
        acc: dict[int, float] = {}
        for ma, ca in a._terms.items():
            for mb, cb in b._terms.items():
                m = ma ^ mb
                if keep is not None and not keep(ma, mb, m):
                    continue
                acc[m] = acc.get(m, 0.0) + _reorder_sign(ma, mb) * ca * cb
        return Multivector._wrap(a.dim, acc)

    ma, ca = a._as_arrays()
    mb, cb = b._as_arrays()
    masks = np.bitwise_xor.outer(ma, mb)
    coeffs = np.multiply.outer(ca, cb) * _signs(ma, mb)
    if keep is not None:
        sel = keep(ma[:, None], mb[None, :], masks)
        masks, coeffs = masks[sel], coeffs[sel]
    return _collect(a.dim, masks.ravel(), coeffs.ravel())


def _collect(dim: int, masks: np.ndarray, coeffs: np.ndarray) -> Multivector:
    if masks.size == 0:
        return Multivector(dim)
    uniq, inv = np.unique(masks, return_inverse=True)
    summed = np.bincount(inv.ravel(), weights=coeffs, minlength=uniq.size)
    keep = np.abs(summed) >= PRUNE_TOL
    mv = object.__new__(Multivector)
    mv.dim = dim
    mv._terms = dict(zip(uniq[keep].tolist(), summed[keep].tolist()))
    mv._arrays = (uniq[keep], summed[keep])
    return mv


def _disjoint(ma, mb, m):
    return (ma & mb) == 0


def _grade_filter(grade: int):
    def keep(ma, mb, m):
        if isinstance(m, np.ndarray):
            return np.bitwise_count(m) == grade
        return m.bit_count() == grade

    return keep


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return _product(a, b)


def product_grade(a: Multivector, b: Multivector, grade: int) -> Multivector:
    """``<a b>_grade`` evaluated without materializing the other grades."""
    return _product(a, b, _grade_filter(grade))


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    return _product(a, b, _disjoint)


def inner_product_vectors(a: Multivector, b: Multivector) -> float:
    a._check(b)
    if not (a.is_vector() and b.is_vector()):
        raise GradeError("inner_product_vectors takes two grade-1 multivectors")
    # scalar part of the full product, so that ab == a.b + a^b holds bit for bit
    return geometric_product(a, b)[0]


def _reverse_sign(mask: int) -> float:
    g = mask.bit_count()
    return -1.0 if (g * (g - 1) // 2) % 2 else 1.0


def reverse(m: Multivector) -> Multivector:
    return Multivector._wrap(m.dim, {k: c * _reverse_sign(k) for k, c in m._terms.items()})


def grade_projection(m: Multivector, grade: int) -> Multivector:
    if not 0 <= grade <= m.dim:
        raise ValueError(f"grade {grade} outside 0..{m.dim}")
    return Multivector._wrap(m.dim, {k: c for k, c in m._terms.items() if k.bit_count() == grade})


def scalar_part(m: Multivector) -> float:
    return m[0]


def scalar_product(a: Multivector, b: Multivector) -> float:
    """``<a b>_0`` without forming the full product; only equal blades contribute."""
    a._check(b)
    acc = 0.0
    for k, c in a._terms.items():
        other = b._terms.get(k)
        if other is not None:
            acc += c * other * (1.0 if _reorder_sign(k, k) > 0 else -1.0)
    return acc


def norm(m: Multivector) -> float:
    return math.sqrt(max(0.0, scalar_product(m, reverse(m))))


def vector_delta(a: Multivector, b: Multivector) -> float:
    """Max absolute component difference of two grade-1 elements, unpruned."""
    a._check(b)
    return float(np.max(np.abs(a.vector_components() - b.vector_components()), initial=0.0))


def inverse_vector(a: Multivector) -> Multivector:
    if not a.is_vector():
        raise GradeError("inverse_vector takes a grade-1 multivector")
    sq = math.fsum(c * c for c in a._terms.values())
    if sq == 0.0:
        raise ZeroDivisionError("non-invertible null vector")
    return a / sq


def normalize(a: Multivector) -> Multivector:
    n = norm(a)
    if n == 0.0:
        raise ZeroDivisionError("cannot normalize a null multivector")
    return a / n


def plane_bivector(h: int, dim: int) -> Multivector:
    """Unit bivector ``s_{2h-1} ^ s_{2h}`` of harmonic plane ``h``."""
    if not 1 <= h <= dim // 2:
        raise ValueError(f"harmonic index {h} outside 1..{dim // 2}")
    return Multivector(dim, {0b11 << (2 * h - 2): 1.0})


def rotor_exp(h: int, angle: float, dim: int) -> Multivector:
    """``exp(angle * B_h) = cos(angle) + sin(angle) B_h``.

    Acting by left product on a vector of plane ``h`` this rotates it by
    ``-angle`` (``s_1 -> cos s_1 - sin s_2``).
    """
    plane = plane_bivector(h, dim)
    return Multivector.scalar(math.cos(angle), dim) + plane * math.sin(angle)


def sandwich_rotate(r_half: Multivector, v: Multivector) -> Multivector:
    """``R v R~`` for a unit rotor ``R`` of even grade 0/2."""
    if not r_half.grades() <= {0, 2}:
        raise GradeError("rotor must contain grades 0 and 2 only")
    if abs(norm(r_half) - 1.0) > ROTOR_TOL:
        raise ValueError("rotor is not unit norm")
    if not v.is_vector():
        raise GradeError("sandwich_rotate acts on grade-1 multivectors")
    return product_grade(geometric_product(r_half, v), reverse(r_half), 1)
