"""Symplectic lattices over Z and symplectic support of homomorphisms.

Coordinates are ordered (a_1, b_1, ..., a_g, b_g) and the form is
omega(a_i, b_i) = +1, omega(b_i, a_i) = -1, all other basis pairings zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .abgroup import AbHom, FgAbGroup, free, image
from .intlinalg import det, ext_gcd_combination, hnf_rows, integer_kernel, matmul

Vector = tuple[int, ...]


def omega(u: Sequence[int], v: Sequence[int]) -> int:
  """The standard symplectic pairing of two vectors of even length."""
  return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))


def standard_form(g: int) -> list[list[int]]:
  J = [[0] * (2 * g) for _ in range(2 * g)]
  for i in range(g):
    J[2 * i][2 * i + 1] = 1
    J[2 * i + 1][2 * i] = -1
  return J


def gram(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
  return [[omega(u, v) for v in vectors] for u in vectors]


@dataclass(frozen=True)
class SymplLattice:
  genus: int

  @property
  def rank(self) -> int:
    return 2 * self.genus

  @property
  def pairing(self) -> list[list[int]]:
    return standard_form(self.genus)

  def basis(self) -> list[Vector]:
    n = self.rank
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


@dataclass(frozen=True)
class SymplSubspace:
  """A symplectic sublattice, stored by a symplectic basis (e_1, f_1, e_2, f_2, ...)."""
  ambient: SymplLattice
  basis: tuple[Vector, ...]

  def __post_init__(self):
    vecs = tuple(tuple(int(x) for x in v) for v in self.basis)
    for v in vecs:
      if len(v) != self.ambient.rank:
        raise ValueError("vector length does not match the ambient lattice")
    G = gram(vecs)
    if G != standard_form(len(vecs) // 2) or len(vecs) % 2:
      raise ValueError("basis is not a symplectic basis")
    object.__setattr__(self, "basis", vecs)

  @property
  def genus(self) -> int:
    return len(self.basis) // 2

  @classmethod
  def span(cls, V: SymplLattice, vectors: Sequence[Sequence[int]]) -> "SymplSubspace":
    return cls(V, tuple(symplectic_basis(vectors, V.rank)))


def is_symplectic_subspace(W: Sequence[Sequence[int]], V: SymplLattice) -> bool:
  """True iff omega restricted to the span of W is unimodular."""
  for w in W:
    if len(w) != V.rank:
      raise ValueError("vector length does not match the lattice")
  B = hnf_rows(W, V.rank)
  if len(B) % 2:
    return False
  return abs(det(gram(B))) == 1


def symplectic_basis(vectors: Sequence[Sequence[int]], n: int) -> list[Vector]:
  """A symplectic basis of the lattice spanned by `vectors`.

  Raises ValueError("not a symplectic subspace") when the span is degenerate
  or the form on it is not unimodular.
  """
  L = hnf_rows(vectors, n)
  out: list[Vector] = []
  while L:
    e = L[0]
    vals = [omega(e, v) for v in L]
    unit = next((j for j, x in enumerate(vals) if x in (1, -1)), None)
    if unit is not None:
      f = tuple(vals[unit] * x for x in L[unit])
    else:
      g, c = ext_gcd_combination(vals)
      if g != 1:
        raise ValueError("not a symplectic subspace")
      f = tuple(sum(cj * v[k] for cj, v in zip(c, L)) for k in range(n))
    out += [tuple(e), f]
    rest = [_split_off(v, e, f) for v in L[1:]]
    L = hnf_rows(rest, n)
  return out


def _split_off(v, e, f):
  # projection onto <e,f>^perp when omega(e, f) = 1
  s, t = omega(v, f), omega(v, e)
  return tuple(x - s * y + t * z for x, y, z in zip(v, e, f))


def perp_complement(W: SymplSubspace) -> SymplSubspace:
  """W^perp, computed as the integer kernel of pairing with W."""
  V = W.ambient
  if not is_symplectic_subspace(W.basis, V):
    raise ValueError("not a symplectic subspace")
  J = standard_form(V.genus)
  rows = matmul([list(w) for w in W.basis], J, V.rank, V.rank) if W.basis else []
  K = integer_kernel(rows, V.rank)
  return SymplSubspace(V, tuple(symplectic_basis(K, V.rank)) if K else ())


def _rank_one_block(row: Sequence[int], n: int) -> tuple[list[int], list[int]]:
  """(a, b) with omega(a, b) = 1 and omega(a, -) a lift of the map `row` to Z/n."""
  lift = [x % n if n else x for x in row]
  c = 0
  for x in lift:
    c = gcd(c, x)
  mt = [x // c for x in lift]
  a = [0] * len(mt)
  for i in range(len(mt) // 2):
    # omega(a, x) = mt . x  forces a = J mt
    a[2 * i] = mt[2 * i + 1]
    a[2 * i + 1] = -mt[2 * i]
  unit = next((i for i, x in enumerate(mt) if x in (1, -1)), None)
  if unit is not None:
    b = [0] * len(mt)
    b[unit] = mt[unit]
  else:
    _, b = ext_gcd_combination(mt)
  return a, b


def _support(M: list[list[int]], A: FgAbGroup, B: list[Vector]) -> list[Vector]:
  # M: matrix of mu in the symplectic basis B of the current sublattice
  n = len(B)
  if n == 0 or not M or all(A.is_zero(col) for col in zip(*M)):
    return []
  S, _, core = image(AbHom(free(n), A, M))
  Ms = [list(r) for r in core.matrix]
  a, b = _rank_one_block(Ms[-1], S.orders[-1])
  amb = lambda v: tuple(sum(c * w[k] for c, w in zip(v, B)) for k in range(len(B[0])))
  block = [amb(a), amb(b)]
  rest = [_split_off(tuple(int(i == j) for j in range(n)), a, b) for i in range(n)]
  C = symplectic_basis(rest, n)
  Mr = matmul(Ms[:-1], [list(r) for r in zip(*C)], n, len(C)) if C else [[] for _ in Ms[:-1]]
  orders = S.orders[:-1]
  A2 = FgAbGroup(sum(1 for d in orders if d == 0), tuple(d for d in orders if d))
  return block + _support(Mr, A2, [amb(c) for c in C])


def support_subspace(mu: AbHom, V: SymplLattice | None = None) -> SymplSubspace:
  """A symplectic W of genus <= rank(A) with mu vanishing on W^perp.

  mu is a homomorphism from the free group Z^{2g} (standard coordinates) to A.
  The construction peels off one cyclic quotient of the image at a time: lift
  the cyclic coordinate to an integer functional, realize it as omega(a, -),
  pick b with omega(a, b) = 1, then recurse on <a, b>^perp.
  """
  n = mu.source.ngens
  if mu.source.torsion or n % 2:
    raise ValueError("source must be a free group of even rank")
  V = V or SymplLattice(n // 2)
  if V.rank != n:
    raise ValueError("lattice does not match the source of mu")
  M = [list(r) for r in mu.matrix]
  W = _support(M, mu.target, V.basis())
  return SymplSubspace(V, tuple(W))


def restrict(mu: AbHom, vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
  """Images of the given vectors under mu."""
  return [mu(v) for v in vectors]
