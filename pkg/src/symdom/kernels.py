"""Signed sums-of-squares expansions of the kernel polynomial.

For the implemented families the polynomial

    h(z, conj z) = 1 - sum |g(z)|^2 (odd generators)
                     + sum |g(z)|^2 (even generators)

is the denominator of the Bergman kernel up to the standard exponent, with
homogeneous polynomial generators whose sign is the parity of their degree.
The first ``dim`` odd generators are always the coordinates themselves.

Implemented expansions: polydisk (square-free monomials), type IV
(coordinates and one half-sum of squares), type I (all k x k minors, signs by
Cauchy-Binet).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .domains import DomainSpec, ParameterError, make_spec
from .poly import BidegPoly, HoloPoly, JetMap, log_truncate
from .scalars import Exact, Scalar, as_complex, cabs, mode_of, one, zero


@dataclass(frozen=True)
class SignedSOS:
    """Kernel expansion: odd-degree generators enter with minus, even with plus."""

    spec: DomainSpec
    odd: Tuple[HoloPoly, ...]
    even: Tuple[HoloPoly, ...]
    mode: str

    def __post_init__(self):
        n = self.spec.dim
        for g in self.odd + self.even:
            if g.nvars != n:
                raise ValueError("generator variable count mismatch")
            degs = {sum(e) for e in g.terms}
            if len(degs) != 1:
                raise ValueError("generators must be homogeneous")
        for g in self.odd:
            if g.degree % 2 != 1:
                raise ValueError("odd block contains an even-degree generator")
        for g in self.even:
            if g.degree % 2 != 0:
                raise ValueError("even block contains an odd-degree generator")
        if (self.spec.sos_odd, self.spec.sos_even) != (len(self.odd), len(self.even)):
            raise ValueError("generator counts disagree with the catalog")

    @property
    def nvars(self) -> int:
        return self.spec.dim

    def signed_generators(self) -> List[Tuple[int, HoloPoly]]:
        return [(-1, g) for g in self.odd] + [(1, g) for g in self.even]


def _squarefree_monomials(p: int, parity: int, mode: str) -> List[HoloPoly]:
    out = []
    for k in range(1, p + 1):
        if k % 2 != parity:
            continue
        for subset in itertools.combinations(range(p), k):
            exp = tuple(1 if j in subset else 0 for j in range(p))
            out.append(HoloPoly.monomial(p, exp, one(mode), mode))
    return out


def sos_polydisk(p: int, mode: str = "exact") -> SignedSOS:
    """Expansion of prod_j (1 - |z_j|^2): square-free monomials by parity."""
    spec = make_spec("polydisk", p=p)
    return SignedSOS(spec,
                     tuple(_squarefree_monomials(p, 1, mode)),
                     tuple(_squarefree_monomials(p, 0, mode)),
                     mode)


def sos_type_iv(n: int, mode: str = "exact") -> SignedSOS:
    """Expansion 1 - sum |z_j|^2 + |(1/2) sum z_j^2|^2."""
    spec = make_spec("IV", n=n)
    odd = tuple(HoloPoly.var(n, j, mode) for j in range(n))
    half = Fraction(1, 2) if mode == "exact" else 0.5
    terms = {tuple(2 if i == j else 0 for i in range(n)): half for j in range(n)}
    even = (HoloPoly(n, terms, mode),)
    return SignedSOS(spec, odd, even, mode)


def _minor(p: int, q: int, rows: Sequence[int], cols: Sequence[int],
           mode: str) -> HoloPoly:
    # determinant of the (rows, cols) submatrix of the p x q variable matrix,
    # variables flattened row-major
    n = p * q
    k = len(rows)
    terms = {}
    for perm in itertools.permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        exp = [0] * n
        for i in range(k):
            exp[rows[i] * q + cols[perm[i]]] += 1
        key = tuple(exp)
        c = sign if mode == "exact" else complex(sign)
        terms[key] = terms.get(key, zero(mode)) + c
    return HoloPoly(n, terms, mode)


def sos_type_i(p: int, q: int, mode: str = "exact") -> SignedSOS:
    """All k x k minors of the p x q matrix of coordinates, sign (-1)^k."""
    spec = make_spec("I", p=p, q=q)
    odd: List[HoloPoly] = []
    even: List[HoloPoly] = []
    for k in range(1, p + 1):
        bucket = odd if k % 2 == 1 else even
        for rows in itertools.combinations(range(p), k):
            for cols in itertools.combinations(range(q), k):
                bucket.append(_minor(p, q, rows, cols, mode))
    return SignedSOS(spec, tuple(odd), tuple(even), mode)


def make_sos(spec: DomainSpec, mode: str = "exact") -> SignedSOS:
    if spec.family == "polydisk":
        return sos_polydisk(spec.params[0], mode)
    if spec.family == "IV":
        return sos_type_iv(spec.params[0], mode)
    if spec.family == "I":
        return sos_type_i(*spec.params, mode=mode)
    raise ParameterError(
        f"no signed-square expansion implemented for {spec.label}")


# -- kernel values -----------------------------------------------------------

def kernel_value(sos: SignedSOS, z: Sequence) -> Scalar:
    """h(z, conj z) = 1 - sum |odd|^2 + sum |even|^2 at a point."""
    return kernel_polarized(sos, z, z)


def kernel_polarized(sos: SignedSOS, z: Sequence, xi: Sequence) -> Scalar:
    """h(z, conj xi): holomorphic in z, anti-holomorphic in xi."""
    exact_pt = all(mode_of(pt) == "exact" for pt in list(z) + list(xi))
    mode = "exact" if sos.mode == "exact" and exact_pt else "float"
    total = one(mode)
    for sign, g in sos.signed_generators():
        val = g.evaluate(z)
        wal = g.evaluate(xi)
        wal = wal.conjugate() if isinstance(wal, Exact) else complex(wal).conjugate()
        total = total + val * wal * sign
    return total


def kernel_bideg(sos: SignedSOS) -> BidegPoly:
    """The full kernel polynomial as a bidegree polynomial in the ambient
    coordinates."""
    acc = BidegPoly.const(sos.nvars, one(sos.mode), sos.mode)
    for sign, g in sos.signed_generators():
        s = BidegPoly.sandwich(g, g)
        acc = acc + (s if sign > 0 else -s)
    return acc


def h_pullback(sos: SignedSOS, f: JetMap, d: Optional[int] = None) -> BidegPoly:
    """h(f(w), conj f(w)) with every generator composite truncated at degree d.

    Every retained bidegree coefficient is then exact for a degree-d jet of a
    true map, because a coefficient at (alpha, beta) only involves composite
    coefficients of degrees |alpha| and |beta|.
    """
    if f.target_dim != sos.nvars:
        raise ValueError(
            f"jet lands in C^{f.target_dim}, expansion lives on C^{sos.nvars}")
    d = f.degree if d is None else d
    args = list(f.components)
    acc = BidegPoly.const(f.source_dim, one(
        "exact" if sos.mode == f.mode == "exact" else "float"))
    for sign, g in sos.signed_generators():
        comp = g.substitute(args, d)
        s = BidegPoly.sandwich(comp, comp)
        acc = acc + (s if sign > 0 else -s)
    return acc


def minimal_embedding(sos: SignedSOS, z: Sequence) -> List[Scalar]:
    """Projective coordinates [1, odd generators, even generators] at z;
    never the zero vector."""
    out = [one(sos.mode)]
    for g in sos.odd + sos.even:
        out.append(g.evaluate(z))
    return out


def curvature_at_origin(sos: SignedSOS, alpha: Sequence) -> float:
    """Holomorphic sectional curvature of the canonical metric at 0 along a
    Euclidean-unit direction alpha.

    Restricts h to the line t*alpha (each generator is homogeneous, so the
    restriction has only diagonal bidegrees), takes log, and reads off the
    |t|^4 coefficient c: the curvature is 4c. Always in [-2, -2/rank].
    """
    alpha = [Exact.of(a) if mode_of(a) == "exact" and not isinstance(a, Exact)
             else a for a in alpha]
    norm2 = sum(abs(as_complex(a)) ** 2 for a in alpha)
    if abs(norm2 - 1.0) > 1e-9:
        raise ValueError(f"direction must be Euclidean-unit, got |alpha|^2 = {norm2}")
    terms = {}
    mode = "exact" if sos.mode == "exact" and all(
        mode_of(a) == "exact" for a in alpha) else "float"
    e0 = ((0,), (0,))
    terms[e0] = one(mode)
    for sign, g in sos.signed_generators():
        k = g.degree
        val = g.evaluate(alpha)
        mag = val * (val.conjugate() if isinstance(val, Exact)
                     else complex(val).conjugate())
        key = ((k,), (k,))
        terms[key] = terms.get(key, zero(mode)) + mag * sign
    h_line = BidegPoly(1, terms, mode)
    c22 = log_truncate(h_line, 4).coeff((2,), (2,))
    return 4.0 * as_complex(c22).real


# -- interior membership and sampling ---------------------------------------

def contains(sos: SignedSOS, z: Sequence, margin: float = 0.0) -> bool:
    """Interior membership of a point in the bounded realization.

    Polydisk and type IV use their defining inequalities; type I checks the
    largest singular value of the matrix point.
    """
    pt = [as_complex(p) for p in z]
    fam = sos.spec.family
    if fam == "polydisk":
        return all(abs(c) < 1.0 - margin for c in pt)
    if fam == "IV":
        n2 = sum(abs(c) ** 2 for c in pt)
        s = sum(c * c for c in pt) / 2.0
        return n2 < 2.0 - margin and n2 < 1.0 + abs(s) ** 2 - margin
    if fam == "I":
        import numpy as np
        p, q = sos.spec.params
        mat = np.array(pt, dtype=complex).reshape(p, q)
        smax = np.linalg.svd(mat, compute_uv=False)[0]
        return bool(smax < 1.0 - margin)
    raise ParameterError(f"no membership test for {sos.spec.label}")
