"""Random generators and independent oracles shared by the tests."""

from __future__ import annotations

import itertools
import random

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from ptorelli.abgroup import FgAbGroup, from_orders
from ptorelli.psurf import ElementaryAttachment, PSurfMorphism
from ptorelli.surface import Marking, PartitionedSurface


# --- random objects ------------------------------------------------------------------------

def rand_group(rng: random.Random, max_rank: int = 3, max_factor: int = 12) -> FgAbGroup:
  k = rng.randint(0, max_rank)
  orders = [rng.choice([0] + list(range(2, max_factor + 1))) for _ in range(k)]
  return from_orders(orders)


def rand_partition(rng: random.Random, labels):
  blocks = []
  for x in labels:
    i = rng.randrange(len(blocks) + 1)
    if i == len(blocks):
      blocks.append([x])
    else:
      blocks[i].append(x)
  return tuple(tuple(b) for b in blocks)


def rand_surface(rng: random.Random, gmax: int = 2, bmax: int = 3, gmin: int = 0) -> PartitionedSurface:
  g = rng.randint(gmin, gmax)
  b = rng.randint(1, bmax)
  labels = tuple(f"d{i}" for i in range(1, b + 1))
  return PartitionedSurface(g, labels, rand_partition(rng, labels))


def rand_marking(rng: random.Random, S: PartitionedSurface, A: FgAbGroup, spread: int = 12) -> Marking:
  M = [[rng.randrange(d) if d else rng.randint(-spread, spread) for _ in range(S.rank)]
       for d in A.orders]
  return Marking.from_matrix(S, A, M)


_fresh = itertools.count()


def rand_step(rng: random.Random, S: PartitionedSurface, min_new: int = 0, max_h: int = 1,
              max_new: int = 2, allow_blocks: bool = False) -> ElementaryAttachment:
  p = rng.choice(S.partition)
  k = rng.randint(1, min(len(p), 3))
  glued = tuple(rng.sample(list(p), k))
  m = rng.randint(min_new, max_new)
  new = tuple(f"n{next(_fresh)}" for _ in range(m))
  blocks = None
  if allow_blocks and rng.random() < 0.3:
    rest = [x for x in p if x not in glued] + list(new)
    if rest:
      blocks = rand_partition(rng, rest)
  return ElementaryAttachment(rng.randint(0, max_h), glued, new, blocks)


def rand_chain(rng: random.Random, S: PartitionedSurface, nsteps: int, **kw) -> PSurfMorphism:
  steps, T = [], S
  for _ in range(nsteps):
    if not T.boundary:
      break
    st = rand_step(rng, T, **kw)
    steps.append(st)
    T = PSurfMorphism(T, (st,)).target
  return PSurfMorphism(S, tuple(steps))


def rand_class(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> tuple:
  return tuple(rng.randint(lo, hi) for _ in range(n))


# --- oracles ---------------------------------------------------------------------------------

def sympy_invariant_factors(M, ncols: int) -> list[int]:
  """Nonzero invariant factors of an integer matrix, computed by sympy."""
  if not M or ncols == 0:
    return []
  return [int(d) for d in invariant_factors(Matrix(M), domain=ZZ) if d != 0]


def sympy_rank(M) -> int:
  return Matrix(M).rank() if M and len(M[0]) else 0


def sympy_group_orders(relations, ngens: int) -> tuple[int, tuple[int, ...]]:
  """(free rank, torsion) of Z^ngens modulo the columns of `relations`."""
  ncols = len(relations[0]) if relations else 0
  facs = sympy_invariant_factors(relations, ncols)
  return ngens - len(facs), tuple(d for d in facs if d > 1)


def cw_rank_partitioned(g: int, blocks) -> int:
  """Rank of partitioned homology from a cell structure.

  Model: one vertex v with loops a_i, b_i; for each boundary j an edge e_j
  from v to w_j and a loop c_j at w_j; one 2-cell bounded by the product of
  commutators and the conjugated c_j.  Each block p gets a cone point x_p
  joined to the w_j of p, and every c_j is filled by a 2-cell through x_p.
  H_1 of this complex has the rank of the partitioned homology.
  """
  bd = [x for p in blocks for x in p]
  b = len(bd)
  verts = ["v"] + [f"w{j}" for j in range(b)] + [f"x{i}" for i in range(len(blocks))]
  vi = {v: i for i, v in enumerate(verts)}
  edges = []  # (name, tail, head)
  for i in range(g):
    edges += [(f"a{i}", "v", "v"), (f"b{i}", "v", "v")]
  blk = {x: i for i, p in enumerate(blocks) for x in p}
  for j, x in enumerate(bd):
    edges += [(f"e{j}", "v", f"w{j}"), (f"c{j}", f"w{j}", f"w{j}"), (f"f{j}", f"w{j}", f"x{blk[x]}")]
  ei = {e[0]: i for i, e in enumerate(edges)}
  d1 = [[0] * len(edges) for _ in verts]
  for k, (_, t, h) in enumerate(edges):
    d1[vi[h]][k] += 1
    d1[vi[t]][k] -= 1
  faces = [{f"c{j}": 1 for j in range(b)}] + [{f"c{j}": 1} for j in range(b)]
  d2 = [[0] * len(faces) for _ in edges]
  for k, fc in enumerate(faces):
    for e, c in fc.items():
      d2[ei[e]][k] += c
  return len(edges) - sympy_rank(d1) - sympy_rank(d2)


def omega_handles(u, v) -> int:
  return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))


def sp_order(g: int, ell: int) -> int:
  out = ell ** (g * g)
  for i in range(1, g + 1):
    out *= ell ** (2 * i) - 1
  return out


def brute_force_sp(g: int, ell: int) -> int:
  """Count 2g x 2g matrices mod ell preserving the standard form (small cases only)."""
  n = 2 * g
  J = [[0] * n for _ in range(n)]
  for i in range(g):
    J[2 * i][2 * i + 1], J[2 * i + 1][2 * i] = 1, -1
  vecs = list(itertools.product(range(ell), repeat=n))

  def form(u, v):
    return sum(u[i] * J[i][j] * v[j] for i in range(n) for j in range(n)) % ell

  count = 0

  def extend(cols):
    nonlocal count
    k = len(cols)
    if k == n:
      count += 1
      return
    for v in vecs:
      if all(form(c, v) == J[i][k] % ell for i, c in enumerate(cols)) and form(v, v) == 0:
        extend(cols + [v])

  extend([])
  return count


def powerset(s):
  items = sorted(s, key=repr)
  for r in range(1, len(items) + 1):
    for c in itertools.combinations(items, r):
      yield frozenset(c)
