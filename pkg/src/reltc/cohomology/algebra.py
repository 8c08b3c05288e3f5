"""Finite-dimensional graded-commutative algebras, their tensor products and maps.

Elements are sparse: a dict from basis index to a nonzero field coefficient.
Tensor products compute products on the fly from their factors with the
Koszul sign, so no structure-constant table is ever materialized for them.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..errors import AlgebraMismatch, AxiomViolation, FieldMismatch, NotHomogeneous
from .field import Field

Vec = dict  # basis index -> coefficient


def _add_into(acc: Vec, k: int, c, field: Field) -> None:
    v = field.coerce(acc.get(k, field.zero) + c)
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


class GradedAlgebra:
    """Base class: subclasses provide ``_mul_basis(i, j)``."""

    field: Field
    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    unit: int

    def __init__(self, field: Field, labels: Sequence[str], degrees: Sequence[int], unit: int):
        self.field = field
        self.labels = tuple(labels)
        self.degrees = tuple(int(d) for d in degrees)
        self.unit = unit
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._cache: dict[tuple[int, int], Vec] = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def top_degree(self) -> int:
        return max(self.degrees)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no basis element {label!r}") from None

    def mul_basis(self, i: int, j: int) -> Vec:
        key = (i, j)
        out = self._cache.get(key)
        if out is None:
            out = self._mul_basis(i, j)
            self._cache[key] = out
        return out

    def _mul_basis(self, i: int, j: int) -> Vec:
        raise NotImplementedError

    # element constructors

    def element(self, coeffs: dict | None = None) -> "AlgebraElement":
        vec: Vec = {}
        for k, c in (coeffs or {}).items():
            _add_into(vec, self.index(k), c, self.field)
        return AlgebraElement(self, vec)

    def basis(self, label) -> "AlgebraElement":
        return AlgebraElement(self, {self.index(label): self.field.one})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.unit: self.field.one})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def basis_elements(self) -> list["AlgebraElement"]:
        return [self.basis(i) for i in range(self.dim)]

    def check_axioms(self) -> None:
        """Exhaustively check unit, degree additivity, graded commutativity, associativity.

        Raises AxiomViolation naming the axiom and the offending basis items.
        """
        f, deg, lab = self.field, self.degrees, self.labels
        if deg[self.unit] != 0:
            raise AxiomViolation("unit degree", [lab[self.unit]], "unit must sit in degree 0")
        for i in range(self.dim):
            e = {i: f.one}
            if self.mul_basis(self.unit, i) != e or self.mul_basis(i, self.unit) != e:
                raise AxiomViolation("unit law", [lab[i]])
        for i in range(self.dim):
            for j in range(self.dim):
                prod = self.mul_basis(i, j)
                for k in prod:
                    if deg[k] != deg[i] + deg[j]:
                        raise AxiomViolation("degree additivity", [lab[i], lab[j]],
                                             f"product has a term {lab[k]} in degree {deg[k]}")
                s = f.sign(deg[i] * deg[j])
                swapped = {k: f.coerce(s * c) for k, c in self.mul_basis(j, i).items()}
                swapped = {k: c for k, c in swapped.items() if c}
                if prod != swapped:
                    raise AxiomViolation("graded commutativity", [lab[i], lab[j]])
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            left = _mul_vec_basis(self, self.mul_basis(i, j), k)
            right = _mul_basis_vec(self, i, self.mul_basis(j, k))
            if left != right:
                raise AxiomViolation("associativity", [lab[i], lab[j], lab[k]])

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, field={self.field.name})"


def _mul_vec_basis(A: GradedAlgebra, v: Vec, k: int) -> Vec:
    out: Vec = {}
    for i, c in v.items():
        for m, d in A.mul_basis(i, k).items():
            _add_into(out, m, c * d, A.field)
    return out


def _mul_basis_vec(A: GradedAlgebra, i: int, v: Vec) -> Vec:
    out: Vec = {}
    for k, c in v.items():
        for m, d in A.mul_basis(i, k).items():
            _add_into(out, m, c * d, A.field)
    return out


class TableAlgebra(GradedAlgebra):
    """Algebra given by an explicit table of structure constants."""

    def __init__(self, field: Field, basis: Sequence[tuple[str, int]], table: dict, unit: int | str = 0,
                 check: bool = True):
        labels = [b[0] for b in basis]
        if len(set(labels)) != len(labels):
            raise AxiomViolation("distinct basis labels", labels)
        super().__init__(field, labels, [b[1] for b in basis], 0)
        self.unit = self.index(unit)
        self._table: dict[tuple[int, int], Vec] = {}
        for (a, b), vec in table.items():
            clean: Vec = {}
            for k, c in vec.items():
                _add_into(clean, self.index(k), c, field)
            self._table[(self.index(a), self.index(b))] = clean
        if check:
            self.check_axioms()

    def _mul_basis(self, i, j):
        if i == self.unit:
            return {j: self.field.one}
        if j == self.unit:
            return {i: self.field.one}
        return dict(self._table.get((i, j), {}))


class TensorAlgebra(GradedAlgebra):
    """Graded tensor product ``A_1 (x) ... (x) A_n`` with the Koszul sign rule."""

    def __init__(self, factors: Sequence[GradedAlgebra]):
        factors = tuple(factors)
        fields = {f.field.name for f in factors}
        if len(fields) != 1:
            raise FieldMismatch(f"factors over different fields: {sorted(fields)}")
        self.factors = factors
        self._radix = [f.dim for f in factors]
        idx = list(itertools.product(*(range(f.dim) for f in factors)))
        labels = ["⊗".join(_wrap(f.labels[i]) for f, i in zip(factors, t)) for t in idx]
        degrees = [sum(f.degrees[i] for f, i in zip(factors, t)) for t in idx]
        unit = self.flat(tuple(f.unit for f in factors))
        super().__init__(factors[0].field, labels, degrees, unit)

    def flat(self, multi: Sequence[int]) -> int:
        k = 0
        for r, i in zip(self._radix, multi):
            k = k * r + i
        return k

    def split(self, k: int) -> tuple[int, ...]:
        out = []
        for r in reversed(self._radix):
            k, i = divmod(k, r)
            out.append(i)
        return tuple(reversed(out))

    def _mul_basis(self, i, j):
        a, b = self.split(i), self.split(j)
        f = self.field
        # b_s moves past a_r for every r > s
        exponent = 0
        for s in range(len(a)):
            db = self.factors[s].degrees[b[s]]
            if db:
                exponent += db * sum(self.factors[r].degrees[a[r]] for r in range(s + 1, len(a)))
        acc = {(): f.sign(exponent)}
        for s, F in enumerate(self.factors):
            prod = F.mul_basis(a[s], b[s])
            if not prod:
                return {}
            nxt = {}
            for key, c in acc.items():
                for m, d in prod.items():
                    nxt[key + (m,)] = c * d
            acc = nxt
        out: Vec = {}
        for key, c in acc.items():
            _add_into(out, self.flat(key), c, f)
        return out


def _wrap(label: str) -> str:
    return f"({label})" if "⊗" in label else label


_TENSOR_CACHE: dict[tuple[int, ...], TensorAlgebra] = {}


def tensor_algebra(*factors: GradedAlgebra) -> TensorAlgebra:
    """The (cached) tensor product of the given algebras."""
    key = tuple(id(f) for f in factors)
    T = _TENSOR_CACHE.get(key)
    if T is None or any(a is not b for a, b in zip(T.factors, factors)):
        T = TensorAlgebra(factors)
        _TENSOR_CACHE[key] = T
    return T


class AlgebraElement:
    """Element of a graded algebra stored as sparse coefficients on its basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GradedAlgebra, coeffs: Vec):
        self.algebra = algebra
        self.coeffs = coeffs

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _add_into(out, k, c, self.algebra.field)
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        f = self.algebra.field
        return AlgebraElement(self.algebra, {k: f.coerce(-c) for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        f = self.algebra.field
        c = f.coerce(c)
        return AlgebraElement(self.algebra, {k: f.coerce(c * v) for k, v in self.coeffs.items() if f.coerce(c * v)})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._same(other)
        A = self.algebra
        out: Vec = {}
        for i, c in self.coeffs.items():
            for j, d in other.coeffs.items():
                for k, e in A.mul_basis(i, j).items():
                    _add_into(out, k, c * d * e, A.field)
        return AlgebraElement(A, out)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {self.algebra.degrees[k] for k in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def vector(self) -> list:
        f = self.algebra.field
        return [self.coeffs.get(k, f.zero) for k in range(self.algebra.dim)]

    def terms(self) -> list[tuple[str, object]]:
        return [(self.algebra.labels[k], c) for k, c in sorted(self.coeffs.items())]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for lab, c in self.terms():
            parts.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(parts)


TensorElement = AlgebraElement


def tensor(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``x (x) y`` in the tensor product of their algebras."""
    T = tensor_algebra(x.algebra, y.algebra)
    f = T.field
    out: Vec = {}
    for i, c in x.coeffs.items():
        for j, d in y.coeffs.items():
            _add_into(out, T.flat((i, j)), c * d, f)
    return AlgebraElement(T, out)


def tensor_square(A: GradedAlgebra) -> TensorAlgebra:
    return tensor_algebra(A, A)


def kunneth_power(A: GradedAlgebra, n: int) -> GradedAlgebra:
    """``A^{(x) n}``, the cohomology of ``Y^n`` when ``A`` is that of ``Y``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return A
    return tensor_algebra(*([A] * n))


def slot_class(P: GradedAlgebra, slot: int, a: AlgebraElement) -> AlgebraElement:
    """``1 x ... x a x ... x 1`` with ``a`` in position ``slot`` (0-based) of a Kunneth power."""
    if not isinstance(P, TensorAlgebra):
        if slot != 0:
            raise IndexError("a single factor has only slot 0")
        if a.algebra is not P:
            raise AlgebraMismatch("class from another algebra")
        return a
    F = P.factors[slot]
    if a.algebra is not F:
        raise AlgebraMismatch("class does not live in that slot's algebra")
    units = [f.unit for f in P.factors]
    out: Vec = {}
    for i, c in a.coeffs.items():
        multi = list(units)
        multi[slot] = i
        _add_into(out, P.flat(multi), c, P.field)
    return AlgebraElement(P, out)


def cup(A: GradedAlgebra, u: AlgebraElement) -> AlgebraElement:
    """Multiplication map ``A (x) A -> A``, ``a (x) b -> ab``."""
    T = tensor_square(A)
    if u.algebra is not T:
        raise AlgebraMismatch("element does not live in the tensor square of this algebra")
    out: Vec = {}
    for k, c in u.coeffs.items():
        i, j = T.split(k)
        for m, d in A.mul_basis(i, j).items():
            _add_into(out, m, c * d, A.field)
    return AlgebraElement(A, out)


def zero_divisor(A: GradedAlgebra, a: AlgebraElement) -> AlgebraElement:
    """``a (x) 1 - 1 (x) a``, which equals ``a (x) 1 + 1 (x) a`` over GF(2)."""
    if a.algebra is not A:
        raise AlgebraMismatch("class does not belong to this algebra")
    if not a.is_homogeneous():
        raise NotHomogeneous(f"{a!r} is not homogeneous")
    one = A.one()
    return tensor(a, one) - tensor(one, a)


class AlgebraMap:
    """Unital, degree-preserving, multiplicative linear map between graded algebras."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, images: Sequence[AlgebraElement],
                 check: bool = True):
        if source.field is not target.field:
            raise FieldMismatch(f"{source.field.name} -> {target.field.name}")
        if len(images) != source.dim:
            raise ValueError("need one image per source basis element")
        for im in images:
            if im.algebra is not target:
                raise AlgebraMismatch("image outside the target algebra")
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            self._check()

    @classmethod
    def from_labels(cls, source, target, images: dict, check: bool = True) -> "AlgebraMap":
        """Images given as ``{source label: target element or {target label: coeff}}``; missing ones map to 0."""
        ims = []
        for i, lab in enumerate(source.labels):
            v = images.get(lab)
            if v is None:
                ims.append(target.one() if i == source.unit else target.zero())
            elif isinstance(v, AlgebraElement):
                ims.append(v)
            else:
                ims.append(target.element(v))
        return cls(source, target, ims, check)

    def _check(self):
        S, T = self.source, self.target
        for i, im in enumerate(self.images):
            if im and im.degrees() != {S.degrees[i]}:
                raise AxiomViolation("degree preservation", [S.labels[i]])
        if self.images[S.unit] != T.one():
            raise AxiomViolation("unitality", [S.labels[S.unit]])
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self(AlgebraElement(S, S.mul_basis(i, j)))
                rhs = self.images[i] * self.images[j]
                if lhs != rhs:
                    raise AxiomViolation("multiplicativity", [S.labels[i], S.labels[j]])

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.source:
            raise AlgebraMismatch("element outside the source algebra")
        out: Vec = {}
        f = self.target.field
        for i, c in x.coeffs.items():
            for k, d in self.images[i].coeffs.items():
                _add_into(out, k, c * d, f)
        return AlgebraElement(self.target, out)

    @classmethod
    def identity(cls, A: GradedAlgebra) -> "AlgebraMap":
        return cls(A, A, A.basis_elements(), check=False)

    @classmethod
    def positive_degree_zero(cls, source: GradedAlgebra, target: GradedAlgebra) -> "AlgebraMap":
        """Unit to unit, everything of positive degree to 0."""
        ims = [target.one() if i == source.unit else target.zero() for i in range(source.dim)]
        return cls(source, target, ims, check=False)

    @classmethod
    def zero_map(cls, source: GradedAlgebra, target: GradedAlgebra) -> "AlgebraMap":
        """The (non-unital) zero linear map; only for linear-algebra tests."""
        return cls(source, target, [target.zero()] * source.dim, check=False)

    def matrix(self) -> list[list]:
        return [im.vector() for im in self.images]


def tensor_of_maps(f: AlgebraMap, g: AlgebraMap) -> AlgebraMap:
    """``f (x) g`` acting on the product basis."""
    if f.source.field is not g.source.field:
        raise FieldMismatch(f"{f.source.field.name} vs {g.source.field.name}")
    S = tensor_algebra(f.source, g.source)
    T = tensor_algebra(f.target, g.target)
    ims = []
    for k in range(S.dim):
        i, j = S.split(k)
        ims.append(tensor(f.images[i], g.images[j]))
    return AlgebraMap(S, T, ims, check=False)


def rank(elements: Iterable[AlgebraElement]) -> int:
    """Rank of a family of elements of one algebra (Gaussian elimination over its field)."""
    elems = list(elements)
    if not elems:
        return 0
    field = elems[0].algebra.field
    pivots: list[tuple[int, Vec]] = []
    for e in elems:
        row = dict(e.coeffs)
        for piv, prow in pivots:
            if piv in row:
                factor = field.coerce(row[piv] * _inverse(prow[piv], field))
                for k, c in prow.items():
                    _add_into(row, k, -factor * c, field)
        if row:
            pivots.append((min(row), row))
    return len(pivots)


def _inverse(c, field: Field):
    return 1 if field.name == "gf2" else 1 / c
