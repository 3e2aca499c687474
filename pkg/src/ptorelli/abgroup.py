"""Finitely generated abelian groups, homomorphisms and exterior powers.

A group is held in invariant-factor form Z/d_1 + ... + Z/d_t + Z^r with
d_1 | ... | d_t and every d_i >= 2.  Elements are coordinate vectors against
the canonical generators, torsion coordinates first, free coordinates last:

>>> A = FgAbGroup(1, (2, 4))
>>> A.rank, A.ngens, A.orders
(3, 3, (2, 4, 0))
>>> A.reduce([3, 5, -7])
(1, 1, -7)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .intlinalg import (
    column, columns_to_matrix, freeze, integer_kernel, matmul, matvec,
    smith_normal_form,
)


@dataclass(frozen=True)
class FgAbGroup:
  free_rank: int = 0
  torsion: tuple[int, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
    if self.free_rank < 0:
      raise ValueError("free rank must be nonnegative")
    for d in self.torsion:
      if d < 2:
        raise ValueError("invariant factors must be >= 2")
    for d, e in zip(self.torsion, self.torsion[1:]):
      if e % d:
        raise ValueError("invariant factors must form a divisibility chain")

  @property
  def rank(self) -> int:
    """Minimal number of generators."""
    return self.free_rank + len(self.torsion)

  @property
  def ngens(self) -> int:
    return self.rank

  @property
  def orders(self) -> tuple[int, ...]:
    """Order of each canonical generator, 0 meaning infinite."""
    return self.torsion + (0,) * self.free_rank

  @property
  def is_finite(self) -> bool:
    return self.free_rank == 0

  @property
  def order(self) -> Optional[int]:
    if not self.is_finite:
      return None
    out = 1
    for d in self.torsion:
      out *= d
    return out

  @property
  def is_trivial(self) -> bool:
    return self.rank == 0

  def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(x % d if d else x for x, d in zip(v, self.orders))

  def is_zero(self, v: Sequence[int]) -> bool:
    return not any(self.reduce(v))

  def relations(self) -> list[list[int]]:
    """Relation matrix: one column d_i e_i per torsion generator."""
    n, t = self.ngens, len(self.torsion)
    return [[self.torsion[j] if i == j else 0 for j in range(t)] for i in range(n)]

  def elements(self):
    """Iterate over all elements of a finite group."""
    if not self.is_finite:
      raise ValueError("group is infinite")
    return itertools.product(*(range(d) for d in self.torsion))

  def direct_sum(self, other: "FgAbGroup") -> "FgAbGroup":
    return from_orders(self.orders + other.orders)

  def to_json(self) -> dict:
    return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

  @classmethod
  def from_json(cls, obj: dict) -> "FgAbGroup":
    return cls(int(obj.get("free_rank", 0)), tuple(int(d) for d in obj.get("torsion", [])))

  def __str__(self):
    parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
    return " + ".join(parts) if parts else "0"


def free(r: int) -> FgAbGroup:
  return FgAbGroup(r, ())


def cyclic(n: int) -> FgAbGroup:
  """Z/n, with n = 0 meaning Z."""
  if n == 0:
    return FgAbGroup(1, ())
  n = abs(n)
  return FgAbGroup(0, (n,) if n > 1 else ())


@dataclass(frozen=True)
class Presentation:
  """Canonical form of Z^n / (column span of R).

  `to_canonical` (k x n) sends presentation coordinates to canonical ones;
  `from_canonical` (n x k) gives a lift of each canonical generator.
  """
  group: FgAbGroup
  to_canonical: tuple
  from_canonical: tuple

  def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
    return self.group.reduce(matvec(self.to_canonical, v))


def diag_relations(orders: Sequence[int]) -> list[list[int]]:
  n = len(orders)
  return [[orders[j] if i == j else 0 for j in range(n)] for i in range(n)]


def presentation(relations: Sequence[Sequence[int]], ngens: int) -> Presentation:
  """Canonicalize Z^ngens modulo the columns of `relations` (ngens rows)."""
  R = [list(r) for r in relations] if len(relations) else [[] for _ in range(ngens)]
  nrel = len(R[0]) if ngens and R else 0
  snf = smith_normal_form(R, nrel)
  diag = snf.diagonal + [0] * (ngens - len(snf.diagonal))
  keep = [i for i in range(ngens) if diag[i] != 1]
  torsion = tuple(diag[i] for i in keep if diag[i] != 0)
  free_rank = sum(1 for i in keep if diag[i] == 0)
  group = FgAbGroup(free_rank, torsion)
  to_can = [list(snf.U[i]) for i in keep]
  from_can = columns_to_matrix([column(snf.Uinv, i) for i in keep], ngens)
  return Presentation(group, freeze(to_can), freeze(from_can))


def from_orders(orders: Sequence[int]) -> FgAbGroup:
  """Canonical form of a direct sum of cyclic groups Z/n_i (n_i = 0 for Z)."""
  return presentation(diag_relations(orders), len(orders)).group


def from_relations(relations: Sequence[Sequence[int]], ngens: Optional[int] = None) -> Presentation:
  ngens = len(relations) if ngens is None else ngens
  return presentation(relations, ngens)


@dataclass(frozen=True)
class AbHom:
  """Homomorphism given by a matrix against canonical generators.

  Column j is the image of the j-th source generator.  Entries in torsion
  rows are reduced on construction, so equal maps have equal matrices.
  """
  source: FgAbGroup
  target: FgAbGroup
  matrix: tuple = field(default=())

  def __post_init__(self):
    m, n = self.target.ngens, self.source.ngens
    M = [list(r) for r in self.matrix] if m else []
    if len(M) != m or any(len(r) != n for r in M):
      raise ValueError(f"matrix must be {m} x {n}")
    M = [[x % d if d else x for x in row] for row, d in zip(M, self.target.orders)]
    for j, dj in enumerate(self.source.orders):
      if not dj:
        continue
      for i, ei in enumerate(self.target.orders):
        if (dj * M[i][j]) % ei if ei else M[i][j]:
          raise ValueError("matrix does not respect the torsion relations of the source")
    object.__setattr__(self, "matrix", freeze(M))

  def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
    return self.target.reduce(matvec(self.matrix, x))

  def compose(self, inner: "AbHom") -> "AbHom":
    """self ∘ inner."""
    if inner.target != self.source:
      raise ValueError("composition: groups do not match")
    return AbHom(inner.source, self.target,
                 matmul(self.matrix, inner.matrix, self.source.ngens, inner.source.ngens))

  @property
  def is_zero(self) -> bool:
    return not any(any(r) for r in self.matrix)

  def columns(self) -> list[tuple[int, ...]]:
    return [tuple(column(self.matrix, j)) for j in range(self.source.ngens)]

  def to_json(self) -> dict:
    return {"matrix": [list(r) for r in self.matrix]}

  @classmethod
  def identity(cls, A: FgAbGroup) -> "AbHom":
    n = A.ngens
    return cls(A, A, [[int(i == j) for j in range(n)] for i in range(n)])

  @classmethod
  def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "AbHom":
    return cls(source, target, [[0] * source.ngens for _ in range(target.ngens)])


def _relation_preimage(G: Sequence[Sequence[int]], k: int, A: FgAbGroup) -> list[tuple[int, ...]]:
  """Generators of {y in Z^k : G y lies in the relation lattice of A}."""
  n = A.ngens
  R = A.relations()
  t = len(A.torsion)
  stacked = [list(G[i]) + [-x for x in R[i]] for i in range(n)]
  ker = integer_kernel(stacked, k + t)
  return [v[:k] for v in ker]


@dataclass(frozen=True)
class Subgroup:
  """A subgroup S of A with its canonical form.

  `inclusion` is S -> A; `corestriction` (s x k) sends the k spanning
  vectors' coefficient space Z^k onto S.
  """
  group: FgAbGroup
  inclusion: AbHom
  corestriction: tuple


def subgroup(A: FgAbGroup, gens: Sequence[Sequence[int]]) -> Subgroup:
  """Subgroup of A spanned by the given elements (canonical coordinates)."""
  k, n = len(gens), A.ngens
  G = columns_to_matrix(gens, n)
  K = _relation_preimage(G, k, A)
  pres = presentation(columns_to_matrix(K, k), k)
  S = pres.group
  incl = matmul(G, pres.from_canonical, k, S.ngens) if n else []
  return Subgroup(S, AbHom(S, A, incl), pres.to_canonical)


def kernel(f: AbHom) -> tuple[FgAbGroup, AbHom]:
  """Kernel of f as a canonical group plus its inclusion into f.source."""
  n = f.source.ngens
  L = _relation_preimage(f.matrix if f.target.ngens else [], n, f.target)
  sub = subgroup(f.source, L)
  return sub.group, sub.inclusion


def kernel_generators(f: AbHom) -> list[tuple[int, ...]]:
  """Lattice generators (in source coordinates) of ker f, without canonicalizing."""
  return _relation_preimage(f.matrix if f.target.ngens else [], f.source.ngens, f.target)


def image(f: AbHom) -> tuple[FgAbGroup, AbHom, AbHom]:
  """Image of f: (group, inclusion into target, corestriction from source)."""
  sub = subgroup(f.target, f.columns())
  S = sub.group
  core = AbHom(f.source, S, sub.corestriction) if S.ngens else AbHom.zero(f.source, S)
  return S, sub.inclusion, core


def direct_sum(A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
  return from_orders(A.orders + B.orders)


class ExteriorPower:
  """The exterior power of A in degree p (p = 2 or 3).

  Writing A as a sum of cyclic groups C_i = Z/n_i, the degree-p power is the
  sum over index sets i_1 < ... < i_p of Z/gcd(n_i1, ..., n_ip); these are the
  "naive" coordinates, canonicalized by `presentation`.

  >>> E = ExteriorPower(FgAbGroup(0, (2, 4)), 2)
  >>> E.group
  FgAbGroup(free_rank=0, torsion=(2,))
  """

  def __init__(self, A: FgAbGroup, p: int):
    if p not in (2, 3):
      raise ValueError("only degrees 2 and 3 are supported")
    self.A, self.p = A, p
    self.index_sets = list(itertools.combinations(range(A.ngens), p))
    self.naive_orders = [_gcd_all(A.orders[i] for i in I) for I in self.index_sets]
    self._pres = presentation(diag_relations(self.naive_orders), len(self.index_sets))
    self.group = self._pres.group

  def canonical(self, naive: Sequence[int]) -> tuple[int, ...]:
    return self._pres.canonical(naive)

  def canonical_from_dict(self, coeffs: dict) -> tuple[int, ...]:
    return self.canonical([coeffs.get(I, 0) for I in self.index_sets])

  def naive_wedge(self, *vectors: Sequence[int]) -> dict:
    """Coefficients of v_1 ∧ ... ∧ v_p on e_I (determinants of p x p minors)."""
    if len(vectors) != self.p:
      raise ValueError("wrong number of factors")
    out = {}
    for I in self.index_sets:
      minor = [[v[i] for v in vectors] for i in I]
      c = _small_det(minor)
      if c:
        out[I] = c
    return out

  def evaluate(self, *vectors: Sequence[int]) -> tuple[int, ...]:
    return self.canonical_from_dict(self.naive_wedge(*vectors))


def wedge_dicts(u: dict, v: dict) -> dict:
  """Product in the exterior algebra of elements given as {index tuple: coeff}."""
  out: dict = {}
  for I, a in u.items():
    for J, b in v.items():
      if set(I) & set(J):
        continue
      seq = list(I) + list(J)
      sign = _perm_sign(seq)
      K = tuple(sorted(seq))
      out[K] = out.get(K, 0) + sign * a * b
  return {K: c for K, c in out.items() if c}


def vector_as_dict(v: Sequence[int]) -> dict:
  return {(i,): x for i, x in enumerate(v) if x}


def _perm_sign(seq: Sequence[int]) -> int:
  s = 1
  seq = list(seq)
  for i in range(len(seq)):
    for j in range(i + 1, len(seq)):
      if seq[i] > seq[j]:
        s = -s
  return s


def _small_det(M: Sequence[Sequence[int]]) -> int:
  n = len(M)
  if n == 2:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]
  total = 0
  for perm in itertools.permutations(range(n)):
    term = _perm_sign(perm)
    for i, j in enumerate(perm):
      term *= M[i][j]
    total += term
  return total


def _gcd_all(values) -> int:
  g = 0
  for v in values:
    g = gcd(g, v)
  return g


def exterior_power(A: FgAbGroup, p: int) -> ExteriorPower:
  return ExteriorPower(A, p)
