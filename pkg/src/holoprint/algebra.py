"""Tame polynomial automorphisms of C^n.

An automorphism is stored as a word of generators; ``word[0]`` is applied
first, so the word ``(g1, g2, ..., gm)`` is the map ``gm o ... o g1``.
Two generator kinds exist:

* ``Affine(A, b)``: z -> A z + b, with A invertible.
* ``Shear(k, p)``: adds p(z) to coordinate z_k, where the polynomial p
  must not involve z_k itself.  The inverse is the same shear with -p.

Words are never expanded into a single polynomial map (composition blows
up degrees exponentially); evaluation and Jacobians instead run through
the generator chain, which is exact up to rounding and linear in word
length.  All values here are immutable after construction and safe to
share across threads.

Polynomials are sparse: a dict from exponent multi-indices (length-n
tuples of non-negative ints) to nonzero complex coefficients, e.g. for
n = 2 the polynomial ``z1^2 - 3i*z2`` is ``{(2, 0): 1, (0, 1): -3j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

from . import _backend

# Relative floor on singular values below which an affine part is
# rejected as non-invertible.
SINGULAR_RTOL = 1e-12

Exponent = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Operands live in different C^n or a point has the wrong length."""


class SingularMatrixError(ValueError):
    """The matrix of an affine generator is numerically singular."""


class SelfReferentialShearError(ValueError):
    """A shear polynomial depends on the coordinate it shears."""


@dataclass(frozen=True)
class ComplexPolynomial:
    """Sparse polynomial in n complex variables.

    ``terms`` maps exponent tuples to coefficients and is kept canonical:
    zero coefficients are dropped, every key has length ``dimension``.
    """

    dimension: int
    terms: dict[Exponent, complex]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("polynomial dimension must be >= 1")
        canon: dict[Exponent, complex] = {}
        for key, coeff in self.terms.items():
            key = tuple(int(e) for e in key)
            if len(key) != self.dimension:
                raise DimensionMismatchError(
                    f"exponent {key} has length {len(key)}, expected {self.dimension}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            coeff = complex(coeff)
            if coeff != 0:
                canon[key] = coeff
        object.__setattr__(self, "terms", canon)

    @classmethod
    def zero(cls, dimension: int) -> "ComplexPolynomial":
        return cls(dimension, {})

    @classmethod
    def constant(cls, dimension: int, value: complex) -> "ComplexPolynomial":
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension: int, k: int) -> "ComplexPolynomial":
        """The coordinate polynomial z_k (k is 1-based)."""
        if not 1 <= k <= dimension:
            raise ValueError(f"variable index {k} out of 1..{dimension}")
        exp = [0] * dimension
        exp[k - 1] = 1
        return cls(dimension, {tuple(exp): 1.0})

    def evaluate(self, z) -> complex:
        z = np.asarray(z, dtype=np.complex128)
        if z.shape != (self.dimension,):
            raise DimensionMismatchError(
                f"point of shape {z.shape} for polynomial in {self.dimension} variables"
            )
        total = 0j
        for exp, coeff in self.terms.items():
            term = coeff
            for zi, e in zip(z, exp):
                if e:
                    term *= zi**e
            total += term
        return total

    def depends_on(self, k: int) -> bool:
        """True if some monomial has positive exponent on z_k (1-based)."""
        return any(exp[k - 1] > 0 for exp in self.terms)

    def total_degree(self) -> int:
        """Largest total degree of a monomial; -1 for the zero polynomial."""
        return max((sum(exp) for exp in self.terms), default=-1)

    def _check_same_space(self, other: "ComplexPolynomial"):
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"polynomials in {self.dimension} and {other.dimension} variables"
            )

    def __add__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial.constant(self.dimension, other)
        self._check_same_space(other)
        merged = dict(self.terms)
        for exp, coeff in other.terms.items():
            merged[exp] = merged.get(exp, 0j) + coeff
        return ComplexPolynomial(self.dimension, merged)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial(
            self.dimension, {exp: -c for exp, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial.constant(self.dimension, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return ComplexPolynomial(
                self.dimension,
                {exp: c * complex(other) for exp, c in self.terms.items()},
            )
        self._check_same_space(other)
        prod: dict[Exponent, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod[key] = prod.get(key, 0j) + c1 * c2
        return ComplexPolynomial(self.dimension, prod)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = ComplexPolynomial.constant(self.dimension, 1.0)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


@dataclass(frozen=True, eq=False)
class Affine:
    """Invertible affine generator z -> matrix @ z + offset."""

    matrix: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        A = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        b = np.ascontiguousarray(self.offset, dtype=np.complex128)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionMismatchError(f"affine matrix has shape {A.shape}")
        if b.shape != (A.shape[0],):
            raise DimensionMismatchError(
                f"offset of shape {b.shape} for a {A.shape[0]}x{A.shape[0]} matrix"
            )
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[0] == 0.0 or sv[-1] <= SINGULAR_RTOL * sv[0]:
            raise SingularMatrixError(
                f"affine matrix is numerically singular (s_min/s_max = "
                f"{0.0 if sv[0] == 0.0 else sv[-1] / sv[0]:.2e})"
            )
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "offset", b)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def inverse(self) -> "Affine":
        inv = np.linalg.inv(self.matrix)
        return Affine(inv, -inv @ self.offset)


@dataclass(frozen=True, eq=False)
class Shear:
    """Elementary shear: adds p(z) to coordinate z_k (k is 1-based)."""

    k: int
    p: ComplexPolynomial

    def __post_init__(self):
        if not 1 <= self.k <= self.p.dimension:
            raise DimensionMismatchError(
                f"shear coordinate {self.k} out of 1..{self.p.dimension}"
            )
        if self.p.depends_on(self.k):
            # such a map need not be invertible, so it is rejected here
            # rather than silently truncated
            raise SelfReferentialShearError(
                f"shear polynomial depends on its own coordinate z{self.k}"
            )

    @property
    def dimension(self) -> int:
        return self.p.dimension

    def inverse(self) -> "Shear":
        return Shear(self.k, -self.p)


Generator = Union[Affine, Shear]


class AutomorphismWord:
    """A finite composition of affine and shear generators of C^n.

    The empty word is the identity map.  Instances are immutable; the
    flattened kernel plan is built once at construction.
    """

    __slots__ = ("dimension", "word", "_plan")

    def __init__(self, dimension: int, word: Iterable[Generator] = ()):
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        word = tuple(word)
        for g in word:
            if g.dimension != dimension:
                raise DimensionMismatchError(
                    f"generator of dimension {g.dimension} in a word of dimension {dimension}"
                )
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "_plan", _compile_plan(word, dimension))

    def __setattr__(self, name, value):
        raise AttributeError("AutomorphismWord is immutable")

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.word)

    def __repr__(self) -> str:
        return f"AutomorphismWord(n={self.dimension}, generators={len(self.word)})"

    @classmethod
    def identity(cls, dimension: int) -> "AutomorphismWord":
        return cls(dimension)


@dataclass(frozen=True, eq=False)
class Jet1:
    """Value and derivative at the origin: (F(0), DF(0))."""

    value_at_zero: np.ndarray
    derivative_at_zero: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.value_at_zero, dtype=np.complex128)
        D = np.ascontiguousarray(self.derivative_at_zero, dtype=np.complex128)
        v.setflags(write=False)
        D.setflags(write=False)
        object.__setattr__(self, "value_at_zero", v)
        object.__setattr__(self, "derivative_at_zero", D)

    @property
    def dimension(self) -> int:
        return self.value_at_zero.shape[0]


def _compile_plan(word: tuple[Generator, ...], n: int) -> list:
    """Flatten a word into the array plan consumed by the kernels.

    Shear terms are emitted in sorted exponent order so that identical
    words always produce identical plans (and hence bit-identical float
    results within one backend).
    """
    plan = []
    for g in word:
        if isinstance(g, Affine):
            plan.append(("affine", g.matrix, g.offset))
        else:
            keys = sorted(g.p.terms)
            exps = np.array(keys, dtype=np.int64).reshape(len(keys), n)
            coeffs = np.array([g.p.terms[k] for k in keys], dtype=np.complex128)
            exps.setflags(write=False)
            coeffs.setflags(write=False)
            plan.append(("shear", g.k, exps, coeffs))
    return plan


def _as_point(word: AutomorphismWord, z) -> np.ndarray:
    arr = np.asarray(z, dtype=np.complex128)
    if arr.shape != (word.dimension,):
        raise DimensionMismatchError(
            f"point of shape {arr.shape} for a word of dimension {word.dimension}"
        )
    return arr


def _as_points(word: AutomorphismWord, Z) -> np.ndarray:
    arr = np.ascontiguousarray(Z, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[1] != word.dimension:
        raise DimensionMismatchError(
            f"points of shape {arr.shape} for a word of dimension {word.dimension}"
        )
    return arr


def evaluate(word: AutomorphismWord, z) -> np.ndarray:
    """F(z): apply the word's generators in order to the point z."""
    return _backend.eval_points(word._plan, _as_point(word, z)[None, :])[0]


def evaluate_many(word: AutomorphismWord, Z) -> np.ndarray:
    """F applied to every row of Z; returns an (m, n) array."""
    return _backend.eval_points(word._plan, _as_points(word, Z))


def jacobian(word: AutomorphismWord, z) -> np.ndarray:
    """DF(z): the holomorphic Jacobian, accumulated by the chain rule."""
    _, J = _backend.eval_jacobians(word._plan, _as_point(word, z)[None, :])
    return J[0]


def jacobian_many(word: AutomorphismWord, Z) -> tuple[np.ndarray, np.ndarray]:
    """(F(z), DF(z)) for every row of Z: arrays (m, n) and (m, n, n)."""
    return _backend.eval_jacobians(word._plan, _as_points(word, Z))


def invert(word: AutomorphismWord) -> AutomorphismWord:
    """The inverse word: reversed order, each generator inverted."""
    return AutomorphismWord(
        word.dimension, tuple(g.inverse() for g in reversed(word.word))
    )


def compose(w1: AutomorphismWord, w2: AutomorphismWord) -> AutomorphismWord:
    """The word for w1 o w2, i.e. w2 applied first."""
    if w1.dimension != w2.dimension:
        raise DimensionMismatchError(
            f"composing words of dimensions {w1.dimension} and {w2.dimension}"
        )
    return AutomorphismWord(w1.dimension, w2.word + w1.word)


def jet1(word: AutomorphismWord) -> Jet1:
    """The 1-jet at the origin, (F(0), DF(0))."""
    zero = np.zeros((1, word.dimension), dtype=np.complex128)
    values, jacs = _backend.eval_jacobians(word._plan, zero)
    return Jet1(values[0], jacs[0])


def theta_normalize(word: AutomorphismWord) -> AutomorphismWord:
    """Post-compose with the inverse jet so the result fixes 0 with identity derivative.

    Returns a word G with G(0) = 0 and DG(0) = I representing
    DF(0)^{-1} (F - F(0)).  Idempotent under evaluation, and invariant
    under affine post-composition: any H o F with H affine normalizes to
    the same map as F.
    """
    j = jet1(word)
    n = word.dimension
    if np.array_equal(j.value_at_zero, np.zeros(n)) and np.array_equal(
        j.derivative_at_zero, np.eye(n)
    ):
        return word
    inv = np.linalg.inv(j.derivative_at_zero)
    post = Affine(inv, -inv @ j.value_at_zero)
    return AutomorphismWord(n, word.word + (post,))
