"""Zero-divisor cup-length search and the product check for graph powers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import DegreeAssumptionViolated, SourceMismatch
from .algebra import (
    AlgebraElement,
    AlgebraMap,
    GradedAlgebra,
    kunneth_power,
    rank,
    slot_class,
    tensor_of_maps,
    tensor_square,
    zero_divisor,
)


@dataclass
class ZclResult:
    """Certified lower bound ``TC > length`` with a re-checkable witness."""

    length: int
    witness: list[str]
    product: AlgebraElement | None = None
    image: AlgebraElement | None = None
    relative: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def tc_lower(self) -> int:
        return self.length + 1

    def to_json(self) -> dict:
        return {
            "zcl": self.length,
            "tc_lower": self.tc_lower,
            "relative": self.relative,
            "witness": [f"zd({w})" for w in self.witness],
            "witness_classes": list(self.witness),
            "product": repr(self.product) if self.product is not None else None,
            "image": repr(self.image) if self.image is not None else None,
            "notes": list(self.notes),
        }


def _candidates(A: GradedAlgebra):
    """Zero-divisors of the positive-degree basis classes, in basis order."""
    out = []
    for i in range(A.dim):
        if i == A.unit or A.degrees[i] <= 0:
            continue
        out.append((i, A.degrees[i], zero_divisor(A, A.basis(i))))
    return out


def _search(A: GradedAlgebra, image_of=None) -> tuple[int, list[int], AlgebraElement, AlgebraElement]:
    cands = _candidates(A)
    top = 2 * A.top_degree
    T = tensor_square(A)
    best = [0, [], T.one(), None]

    def dfs(start, prod, deg, seq):
        for pos in range(start, len(cands)):
            i, d, z = cands[pos]
            if deg + d > top:
                continue
            nxt = prod * z
            if nxt.is_zero():
                continue
            img = image_of(nxt) if image_of is not None else nxt
            if img.is_zero():
                continue
            seq.append(i)
            if len(seq) > best[0]:
                best[:] = [len(seq), list(seq), nxt, img]
            dfs(pos, nxt, deg + d, seq)
            seq.pop()

    dfs(0, T.one(), 0, [])
    return best[0], best[1], best[2], best[3]


def zcl_lower_bound(A: GradedAlgebra) -> ZclResult:
    """Longest nonzero product of zero-divisors of homogeneous basis classes.

    Depth-first over non-decreasing index sequences (repetition allowed),
    pruning products whose degree exceeds the top degree of ``A (x) A``. The
    first sequence found at each length is the lexicographically smallest.
    This restricted search certifies ``TC >= length + 1``; it may miss longer
    products of non-basis zero-divisors.
    """
    n, seq, prod, _ = _search(A)
    return ZclResult(n, [A.labels[i] for i in seq], prod if n else None, prod if n else None)


def relative_zcl_lower_bound(A_X: GradedAlgebra, i1: AlgebraMap, i2: AlgebraMap) -> ZclResult:
    """Longest product of zero-divisors of ``A_X`` surviving ``i1* (x) i2*``.

    Certifies ``TC_X(Y1 x Y2) >= length + 1``.
    """
    if i1.source is not A_X or i2.source is not A_X:
        raise SourceMismatch("both restriction maps must start at A_X")
    phi = tensor_of_maps(i1, i2)
    n, seq, prod, img = _search(A_X, phi)
    return ZclResult(n, [A_X.labels[i] for i in seq], prod if n else None, img if n else None, relative=True)


def witness_product(A: GradedAlgebra, labels: Sequence[str]) -> AlgebraElement:
    """Re-multiply the zero-divisors named by a witness."""
    out = tensor_square(A).one()
    for lab in labels:
        out = out * zero_divisor(A, A.basis(lab))
    return out


def check_witness(A: GradedAlgebra, result: ZclResult, i1: AlgebraMap | None = None,
                  i2: AlgebraMap | None = None) -> bool:
    """True when the witness has the claimed length and its (image of the) product is nonzero."""
    if len(result.witness) != result.length:
        return False
    if result.length == 0:
        return True
    prod = witness_product(A, result.witness)
    if i1 is not None:
        prod = tensor_of_maps(i1, i2 if i2 is not None else i1)(prod)
    return not prod.is_zero()


def _graph_classes(A_Y: GradedAlgebra, n: int, classes) -> list[AlgebraElement]:
    if classes is None:
        labels = [A_Y.labels[i] for i in range(A_Y.dim) if A_Y.degrees[i] == 1][:n]
        if len(labels) < n:
            raise DegreeAssumptionViolated(f"need {n} degree-1 classes, found {len(labels)}")
        betas = [A_Y.basis(lab) for lab in labels]
    else:
        betas = [A_Y.basis(c) if not isinstance(c, AlgebraElement) else c for c in classes]
        if len(betas) != n:
            raise DegreeAssumptionViolated(f"need exactly {n} classes, got {len(betas)}")
    for b in betas:
        if b.is_zero() or b.degrees() != {1}:
            raise DegreeAssumptionViolated(f"{b!r} is not a nonzero degree-1 class")
    if rank(betas) != len(betas):
        raise DegreeAssumptionViolated("cycle classes are linearly dependent")
    for x in betas:
        for y in betas:
            if not (x * y).is_zero():
                raise DegreeAssumptionViolated(f"product {x!r} * {y!r} is nonzero")
    return betas


def graph_yn_product(n: int, A_Y: GradedAlgebra, classes=None) -> tuple[AlgebraElement, list[AlgebraElement]]:
    """The product of ``alpha_1..alpha_n, alpha'_1..alpha'_n`` in ``H*(Y^n) (x) H*(Y^n)``.

    ``alpha_j`` is the zero-divisor of ``beta_j`` placed in slot ``j`` and
    ``alpha'_j`` that of ``beta_{j+1}`` (indices mod ``n``) in slot ``j``.
    """
    betas = _graph_classes(A_Y, n, classes)
    P = kunneth_power(A_Y, n)
    gammas = [slot_class(P, j, betas[j]) for j in range(n)]
    gammas_p = [slot_class(P, j, betas[(j + 1) % n]) for j in range(n)]
    factors = [zero_divisor(P, g) for g in gammas + gammas_p]
    prod = tensor_square(P).one()
    for z in factors:
        prod = prod * z
    return prod, factors


def graph_yn_product_check(n: int, A_Y: GradedAlgebra, classes=None) -> bool:
    """Whether the 2n-fold zero-divisor product for ``Y^n`` is nonzero.

    True certifies ``TC(Y^n) >= 2n + 1``. For ``n == 1`` the shifted class
    coincides with the original one and the product is a square, which
    vanishes whenever ``beta^2 = 0``.
    """
    prod, _ = graph_yn_product(n, A_Y, classes)
    return not prod.is_zero()
