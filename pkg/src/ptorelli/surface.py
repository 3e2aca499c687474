"""Partitioned surfaces, their partitioned homology, and homology markings.

A surface is summarized by its genus, an ordered list of boundary labels and a
partition of those labels into blocks.  Two coordinate systems are used:

* absolute: (a_1, b_1, ..., a_g, b_g, d_1, ..., d_b), a generating set of
  H_1(Sigma) with the single relation d_1 + ... + d_b = 0, boundary loops
  oriented as the boundary of Sigma;
* partitioned: (a_1, b_1, ..., a_g, b_g, arcs), where each block
  (p_1, ..., p_k) contributes arcs p_1 -> p_j for j = 2..k, in block order.

The pairing of a partitioned class x with an absolute class y is omega(x, y):
handles pair symplectically, an arc s -> t pairs +1 with d_t and -1 with d_s,
and arcs pair trivially with handles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .abgroup import AbHom, FgAbGroup, free, kernel_generators
from .intlinalg import hnf_rows, solve
from .symplat import SymplSubspace, perp_complement, support_subspace


@dataclass(frozen=True)
class PartitionedSurface:
  genus: int
  boundary: tuple[str, ...]
  partition: tuple[tuple[str, ...], ...]

  def __post_init__(self):
    object.__setattr__(self, "boundary", tuple(str(x) for x in self.boundary))
    object.__setattr__(self, "partition", tuple(tuple(str(x) for x in p) for p in self.partition))
    if self.genus < 0:
      raise ValueError("genus must be nonnegative")
    if len(set(self.boundary)) != len(self.boundary):
      raise ValueError("boundary labels must be distinct")
    seen = [x for p in self.partition for x in p]
    if any(not p for p in self.partition):
      raise ValueError("blocks must be nonempty")
    if len(seen) != len(set(seen)) or set(seen) != set(self.boundary):
      raise ValueError("partition blocks must be disjoint and cover the boundary")

  @classmethod
  def closed_off(cls, genus: int, labels: Sequence[str] = ("d1",)) -> "PartitionedSurface":
    """Genus g with the given boundary labels, each in its own block."""
    return cls(genus, tuple(labels), tuple((x,) for x in labels))

  @property
  def b(self) -> int:
    return len(self.boundary)

  @property
  def n_abs(self) -> int:
    return 2 * self.genus + self.b

  @property
  def arcs(self) -> list[tuple[int, str, str]]:
    """(block index, start, end) for every arc basis vector."""
    return [(i, p[0], x) for i, p in enumerate(self.partition) for x in p[1:]]

  @property
  def rank(self) -> int:
    return 2 * self.genus + len(self.arcs)

  def abs_index(self, label: str) -> int:
    return 2 * self.genus + self.boundary.index(label)

  def block_of(self, label: str) -> int:
    for i, p in enumerate(self.partition):
      if label in p:
        return i
    raise KeyError(label)

  def basis_labels(self) -> list[str]:
    out = []
    for i in range(1, self.genus + 1):
      out += [f"a{i}", f"b{i}"]
    out += [f"arc({s}->{t})" for _, s, t in self.arcs]
    return out

  def abs_labels(self) -> list[str]:
    out = []
    for i in range(1, self.genus + 1):
      out += [f"a{i}", f"b{i}"]
    return out + list(self.boundary)

  def to_json(self) -> dict:
    return {"genus": self.genus, "boundary": list(self.boundary),
            "partition": [list(p) for p in self.partition]}

  @classmethod
  def from_json(cls, obj: dict) -> "PartitionedSurface":
    return cls(int(obj["genus"]), tuple(obj["boundary"]),
               tuple(tuple(p) for p in obj.get("partition", [[x] for x in obj["boundary"]])))


@dataclass(frozen=True)
class PartitionedHomology:
  owner: PartitionedSurface
  basis: tuple[str, ...]
  pairing: tuple[tuple[int, ...], ...]

  @property
  def rank(self) -> int:
    return len(self.basis)


def pairing_matrix(S: PartitionedSurface) -> list[list[int]]:
  """omega(x, y) for x in the partitioned basis (rows), y absolute (columns)."""
  g = S.genus
  rows = []
  for i in range(2 * g):
    r = [0] * S.n_abs
    if i % 2 == 0:
      r[i + 1] = 1
    else:
      r[i - 1] = -1
    rows.append(r)
  for _, s, t in S.arcs:
    r = [0] * S.n_abs
    r[S.abs_index(s)] -= 1
    r[S.abs_index(t)] += 1
    rows.append(r)
  return rows


def partitioned_homology(S: PartitionedSurface) -> PartitionedHomology:
  return PartitionedHomology(S, tuple(S.basis_labels()),
                             tuple(tuple(r) for r in pairing_matrix(S)))


def relative_image(S: PartitionedSurface, y: Sequence[int]) -> tuple[int, ...]:
  """Image of an absolute class in partitioned coordinates (boundary loops vanish)."""
  if len(y) != S.n_abs:
    raise ValueError("absolute class has the wrong length")
  return tuple(y[:2 * S.genus]) + (0,) * len(S.arcs)


def pair(S: PartitionedSurface, x: Sequence[int], y: Sequence[int]) -> int:
  """omega(x, y) for x partitioned, y absolute."""
  P = pairing_matrix(S)
  return sum(xi * sum(a * b for a, b in zip(row, y)) for xi, row in zip(x, P))


def isect(S: PartitionedSurface, q: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
  """Coefficients of the q-intersection map: omega(x, [gamma]) for each gamma in q."""
  return [pair(S, x, gamma) for gamma in q]


def boundary_class(S: PartitionedSurface, label: str) -> tuple[int, ...]:
  v = [0] * S.n_abs
  v[S.abs_index(label)] = 1
  return tuple(v)


def total_boundary(S: PartitionedSurface) -> AbHom:
  """The total boundary map, into the zero-sum lattices of the blocks.

  The target is free on the basis (d_t - d_s) of the blocks' zero-sum
  lattices, indexed like the arcs; `boundary_coefficients` expands an image
  vector to coefficients on every boundary component.
  """
  n = len(S.arcs)
  M = [[int(j == 2 * S.genus + i) for j in range(S.rank)] for i in range(n)]
  return AbHom(free(S.rank), free(n), M)


def boundary_coefficients(S: PartitionedSurface, x: Sequence[int]) -> list[int]:
  """isect over all boundary loops: coefficient of each boundary component."""
  return isect(S, [boundary_class(S, d) for d in S.boundary], x)


def zero_sum_basis(S: PartitionedSurface) -> list[tuple[int, ...]]:
  """Basis of the zero-sum lattices, as boundary-coefficient vectors."""
  out = []
  for _, s, t in S.arcs:
    v = [0] * S.b
    v[S.boundary.index(t)] += 1
    v[S.boundary.index(s)] -= 1
    out.append(tuple(v))
  return out


@dataclass(frozen=True)
class Marking:
  surface: PartitionedSurface
  mu: AbHom

  def __post_init__(self):
    if self.mu.source != free(self.surface.rank):
      raise ValueError(f"marking source must be free of rank {self.surface.rank}")

  @property
  def target(self) -> FgAbGroup:
    return self.mu.target

  @classmethod
  def from_matrix(cls, S: PartitionedSurface, A: FgAbGroup, M) -> "Marking":
    rows = [list(r) for r in M] if A.ngens else []
    return cls(S, AbHom(free(S.rank), A, rows))

  def to_json(self) -> dict:
    return {"surface": self.surface.to_json(), "target": self.target.to_json(),
            "matrix": [list(r) for r in self.mu.matrix]}

  @classmethod
  def from_json(cls, obj: dict) -> "Marking":
    return cls.from_matrix(PartitionedSurface.from_json(obj["surface"]),
                           FgAbGroup.from_json(obj["target"]), obj["matrix"])


@dataclass(frozen=True)
class ClosedMarking:
  """mu composed with H_1(Sigma) -> partitioned homology, on the absolute generators."""
  surface: PartitionedSurface
  hat_mu: AbHom

  def handle_part(self) -> AbHom:
    g2 = 2 * self.surface.genus
    return AbHom(free(g2), self.hat_mu.target, [r[:g2] for r in self.hat_mu.matrix])


def closed_marking(m: Marking) -> ClosedMarking:
  S = m.surface
  g2 = 2 * S.genus
  M = [list(r[:g2]) + [0] * S.b for r in m.mu.matrix]
  return ClosedMarking(S, AbHom(free(S.n_abs), m.target, M))


@dataclass(frozen=True)
class SupportWitness:
  """Data exhibiting a marking as a stabilization from a one-boundary subsurface.

  `adapted_basis` lists, as columns of partitioned coordinates, a basis of
  the partitioned homology obtained from the standard one by a mapping-class
  action: a symplectic basis (W followed by W^perp) of the closed part, then
  each arc shifted by a closed class.  In these coordinates mu vanishes on
  everything except the first 2*genus vectors.
  """
  genus: int
  subspace: SymplSubspace
  adapted_basis: tuple[tuple[int, ...], ...]
  arc_shifts: tuple[tuple[int, ...], ...]

  def adapted_marking(self, m: Marking) -> Marking:
    cols = self.adapted_basis
    M = [[sum(r[i] * c[i] for i in range(len(c))) for c in cols] for r in m.mu.matrix]
    return Marking.from_matrix(m.surface, m.target, M)

  def morphism(self, S: PartitionedSurface):
    """The standard inclusion of the one-boundary genus-h surface into S."""
    from .psurf import standard_subsurface_inclusion
    return standard_subsurface_inclusion(self.genus, S)

  def to_json(self) -> dict:
    return {"genus": self.genus, "subspace": [list(v) for v in self.subspace.basis],
            "adapted_basis": [list(v) for v in self.adapted_basis],
            "arc_shifts": [list(v) for v in self.arc_shifts]}


@dataclass(frozen=True)
class SupportReport:
  supported: bool
  witness: Optional[SupportWitness] = None

  def __bool__(self):
    return self.supported

  def to_json(self) -> dict:
    out = {"supported": self.supported}
    if self.witness is not None:
      out["witness"] = self.witness.to_json()
    return out


def arc_kernel_lifts(m: Marking) -> Optional[list[tuple[int, ...]]]:
  """For each arc basis vector, a kernel element of mu with that arc part.

  Returns None when the kernel's image under the total boundary map is a
  proper sublattice of the zero-sum lattice.
  """
  S = m.surface
  g2, n = 2 * S.genus, len(S.arcs)
  K = kernel_generators(m.mu)
  arc_part = [[k[g2 + i] for k in K] for i in range(n)]
  if hnf_rows([list(col) for col in zip(*arc_part)] if K else [], n) != \
      [tuple(int(i == j) for j in range(n)) for i in range(n)]:
    return None
  lifts = []
  for i in range(n):
    e = [int(i == j) for j in range(n)]
    y = solve(arc_part, e, len(K))
    lifts.append(tuple(sum(yk * k[c] for yk, k in zip(y, K)) for c in range(S.rank)))
  return lifts


def is_supported_on_symplectic(m: Marking) -> SupportReport:
  """Decide whether mu is a stabilization from a one-boundary subsurface.

  The criterion: the kernel of mu maps onto the zero-sum lattices under the
  total boundary map.  When it holds, the witness is built by shifting every
  arc by a closed class so that mu kills it, then applying the symplectic
  support construction to the closed part.
  """
  S = m.surface
  g2 = 2 * S.genus
  lifts = arc_kernel_lifts(m)
  if lifts is None:
    return SupportReport(False)
  hat = closed_marking(m).handle_part()
  W = support_subspace(hat)
  Wp = perp_complement(W)
  closed = list(W.basis) + list(Wp.basis)
  cols = [tuple(v) + (0,) * len(S.arcs) for v in closed]
  shifts = [tuple(x[:g2]) for x in lifts]
  cols += [tuple(x) for x in lifts]
  return SupportReport(True, SupportWitness(W.genus, W, tuple(cols), tuple(shifts)))
