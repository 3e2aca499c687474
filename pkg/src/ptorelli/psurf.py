"""Morphisms of partitioned surfaces built from elementary attachments.

An elementary attachment glues a connected genus-h piece with |glued| + m
boundary circles onto the boundary components `glued` (all in one block p)
and leaves m new boundary components.  Conventions for the target surface:

* genus g + h + |glued| - 1; handles are ordered old, then the h piece
  handles, then one connecting handle for each glued[r], r >= 1, whose
  a-curve is that glued circle;
* the new labels take the place of the first glued label, both in the
  boundary list and inside the block;
* p is replaced by (p minus glued) plus new, or by the caller's `blocks`
  partition of that set; an empty replacement drops the block.

The induced map on partitioned homology is computed from the pushforward on
absolute homology by duality: restricting a relative class to Sigma does not
change its intersection numbers with curves inside Sigma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .abgroup import AbHom, free, kernel_generators
from .intlinalg import (
    column, columns_to_matrix, freeze, hnf_rows, identity, integer_kernel, matmul,
    smith_normal_form, solve, transpose,
)
from .surface import Marking, PartitionedSurface, closed_marking, pairing_matrix
from .symplat import omega

TAGS = ("increasing_boundary_stab", "decreasing_boundary_stab", "double_boundary_stab",
        "disc_cap", "annulus", "genus_stab", "general")


@dataclass(frozen=True)
class ElementaryAttachment:
  h: int
  glued: tuple[str, ...]
  new: tuple[str, ...] = ()
  blocks: Optional[tuple[tuple[str, ...], ...]] = None

  def __post_init__(self):
    object.__setattr__(self, "glued", tuple(str(x) for x in self.glued))
    object.__setattr__(self, "new", tuple(str(x) for x in self.new))
    if self.blocks is not None:
      object.__setattr__(self, "blocks", tuple(tuple(str(x) for x in b) for b in self.blocks))
    if self.h < 0:
      raise ValueError("piece genus must be nonnegative")
    if not self.glued:
      raise ValueError("an attachment must glue at least one boundary component")
    labels = self.glued + self.new
    if len(set(labels)) != len(labels):
      raise ValueError("glued and new labels must be distinct")

  @property
  def k(self) -> int:
    return len(self.glued)

  @property
  def m(self) -> int:
    return len(self.new)

  def to_json(self) -> dict:
    out = {"h": self.h, "glued": list(self.glued), "new": list(self.new)}
    if self.blocks is not None:
      out["blocks"] = [list(b) for b in self.blocks]
    return out

  @classmethod
  def from_json(cls, obj: dict) -> "ElementaryAttachment":
    blocks = obj.get("blocks")
    return cls(int(obj["h"]), tuple(obj["glued"]), tuple(obj.get("new", [])),
               None if blocks is None else tuple(tuple(b) for b in blocks))

  def relabel(self, mapping: dict) -> "ElementaryAttachment":
    f = lambda xs: tuple(mapping.get(x, x) for x in xs)
    blocks = None if self.blocks is None else tuple(f(b) for b in self.blocks)
    return ElementaryAttachment(self.h, f(self.glued), f(self.new), blocks)


def classify(step: ElementaryAttachment) -> str:
  shape = (step.h, step.k, step.m)
  return {
      (0, 1, 2): "increasing_boundary_stab",
      (0, 2, 1): "decreasing_boundary_stab",
      (0, 2, 2): "double_boundary_stab",
      (0, 1, 0): "disc_cap",
      (0, 1, 1): "annulus",
      (1, 1, 1): "genus_stab",
  }.get(shape, "general")


@dataclass(frozen=True)
class StepData:
  source: PartitionedSurface
  target: PartitionedSurface
  step: ElementaryAttachment
  pushforward: tuple  # absolute homology, target rows x source columns


def apply_step(S: PartitionedSurface, step: ElementaryAttachment) -> StepData:
  for x in step.glued:
    if x not in S.boundary:
      raise ValueError(f"glued label {x!r} is not a boundary component")
  for x in step.new:
    if x in S.boundary:
      raise ValueError(f"new label {x!r} already names a boundary component")
  ip = S.block_of(step.glued[0])
  p = S.partition[ip]
  if any(x not in p for x in step.glued):
    raise ValueError("glued boundary components must lie in a single block")
  g, h, k = S.genus, step.h, step.k
  glued = set(step.glued)

  pos = min(S.boundary.index(x) for x in step.glued)
  bd = list(S.boundary[:pos]) + list(step.new) + [x for x in S.boundary[pos:] if x not in glued]

  first = min(p.index(x) for x in step.glued)
  merged = tuple(p[:first]) + step.new + tuple(x for x in p[first:] if x not in glued)
  if step.blocks is None:
    replacement = (merged,) if merged else ()
  else:
    flat = [x for b in step.blocks for x in b]
    if any(not b for b in step.blocks) or len(flat) != len(set(flat)) or set(flat) != set(merged):
      raise ValueError("blocks must partition the remaining and new boundary components")
    replacement = step.blocks
  T = PartitionedSurface(g + h + k - 1, tuple(bd),
                         S.partition[:ip] + tuple(replacement) + S.partition[ip + 1:])

  I = [[0] * S.n_abs for _ in range(T.n_abs)]
  for i in range(2 * g):
    I[i][i] = 1
  for x in S.boundary:
    if x not in glued:
      I[T.abs_index(x)][S.abs_index(x)] = 1
  c1 = S.abs_index(step.glued[0])
  for r in range(1, k):
    a_row = 2 * (g + h + r - 1)
    I[a_row][S.abs_index(step.glued[r])] = 1
    I[a_row][c1] -= 1
  for x in step.new:
    I[T.abs_index(x)][c1] += 1
  return StepData(S, T, step, freeze(I))


def induced_by_duality(S: PartitionedSurface, T: PartitionedSurface, push) -> list[list[int]]:
  """Matrix of the restriction H_1^P(T) -> H_1^P(S) given the absolute pushforward S -> T.

  Column j is the unique x with omega_S(x, y) = omega_T(e_j, push(y)) for all
  absolute y; failure to solve means the data is not a partitioned morphism.
  """
  R = matmul(pairing_matrix(T), push, T.n_abs, S.n_abs) if T.rank else []
  A = transpose(pairing_matrix(S), S.n_abs)
  snf = smith_normal_form(A, S.rank)
  cols = []
  for j in range(T.rank):
    x = solve(A, R[j], S.rank, snf)
    if x is None:
      raise ValueError("attachment does not induce a map on partitioned homology")
    cols.append(x)
  return columns_to_matrix(cols, S.rank) if S.rank else []


@dataclass(frozen=True)
class Component:
  """A component of the closure of target minus source."""
  source_boundary: frozenset
  target_boundary: tuple[str, ...]
  pieces: int
  euler: int

  @property
  def genus(self) -> Optional[int]:
    if self.pieces == 0:
      return None
    nb = len(self.source_boundary) + len(self.target_boundary)
    return (2 - self.euler - nb) // 2

  @property
  def is_disc(self) -> bool:
    return self.pieces > 0 and self.genus == 0 and len(self.source_boundary) == 1 \
        and not self.target_boundary


@dataclass(frozen=True)
class PSurfMorphism:
  source: PartitionedSurface
  steps: tuple[ElementaryAttachment, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, "steps", tuple(self.steps))
    self._chain  # validates every step

  @cached_property
  def _chain(self) -> list[StepData]:
    out, S = [], self.source
    for st in self.steps:
      d = apply_step(S, st)
      out.append(d)
      S = d.target
    return out

  @property
  def target(self) -> PartitionedSurface:
    return self._chain[-1].target if self.steps else self.source

  @property
  def surfaces(self) -> list[PartitionedSurface]:
    return [self.source] + [d.target for d in self._chain]

  @property
  def is_identity(self) -> bool:
    return not self.steps

  @cached_property
  def pushforward(self) -> tuple:
    """Absolute homology pushforward, target rows x source columns."""
    M = identity(self.source.n_abs)
    for d in self._chain:
      M = matmul(d.pushforward, M, d.source.n_abs, self.source.n_abs)
    return freeze(M)

  @cached_property
  def induced_matrix(self) -> tuple:
    return freeze(induced_by_duality(self.source, self.target, self.pushforward))

  def step_matrices(self) -> list[tuple]:
    return [freeze(induced_by_duality(d.source, d.target, d.pushforward)) for d in self._chain]

  def induced_map(self) -> AbHom:
    S, T = self.source, self.target
    return AbHom(free(T.rank), free(S.rank), [list(r) for r in self.induced_matrix])

  def then(self, other: "PSurfMorphism") -> "PSurfMorphism":
    """The composite: self followed by other."""
    if other.source != self.target:
      raise ValueError("morphisms are not composable")
    return PSurfMorphism(self.source, self.steps + other.steps)

  @cached_property
  def components(self) -> list[Component]:
    comp = {x: x for x in self.source.boundary}     # current boundary -> component id
    data = {x: [frozenset([x]), 0, 0] for x in self.source.boundary}
    fresh = itertools.count()
    for st in self.steps:
      ids = sorted({comp[x] for x in st.glued}, key=str)
      src = frozenset().union(*(data[i][0] for i in ids))
      pieces = sum(data[i][1] for i in ids) + 1
      euler = sum(data[i][2] for i in ids) + 2 - 2 * st.h - st.k - st.m
      for i in ids:
        del data[i]
      nid = ("piece", next(fresh))
      data[nid] = [src, pieces, euler]
      for x in st.glued:
        del comp[x]
      for x, c in comp.items():
        if c in ids:
          comp[x] = nid
      for x in st.new:
        comp[x] = nid
    out = []
    for cid, (src, pieces, euler) in data.items():
      tb = tuple(x for x in self.target.boundary if comp.get(x) == cid)
      out.append(Component(src, tb, pieces, euler))
    return out

  def to_json(self) -> dict:
    return {"source": self.source.to_json(), "steps": [s.to_json() for s in self.steps]}

  @classmethod
  def from_json(cls, obj: dict) -> "PSurfMorphism":
    return cls(PartitionedSurface.from_json(obj["source"]),
               tuple(ElementaryAttachment.from_json(s) for s in obj.get("steps", [])))


def compose(f: PSurfMorphism, g: PSurfMorphism) -> PSurfMorphism:
  """g ∘ f."""
  return f.then(g)


def _components_touching(f: PSurfMorphism, block) -> list[Component]:
  return [c for c in f.components if c.source_boundary & set(block)]


def is_partition_bijective(f: PSurfMorphism) -> bool:
  """Each source block's complement region meets the target boundary in exactly one block."""
  targets = {frozenset(p) for p in f.target.partition}
  for p in f.source.partition:
    out = set()
    for c in _components_touching(f, p):
      out |= set(c.target_boundary)
    if frozenset(out) not in targets:
      return False
  return True


def is_open_capping(f: PSurfMorphism) -> bool:
  for p in f.source.partition:
    comps = _components_touching(f, p)
    if len(comps) != 1 or len(comps[0].target_boundary) != 1:
      return False
  return True


def disc_capped_singletons(f: PSurfMorphism) -> list[str]:
  """Source boundary components forming a singleton block that f caps with a disc."""
  singles = {p[0] for p in f.source.partition if len(p) == 1}
  out = []
  for c in f.components:
    if c.is_disc:
      (x,) = c.source_boundary
      if x in singles:
        out.append(x)
  return sorted(out, key=f.source.boundary.index)


def normalize_annuli(f: PSurfMorphism) -> tuple[PSurfMorphism, dict]:
  """Drop annulus steps that merely rename a boundary component.

  Returns the shorter morphism and the renaming (label in the shorter
  morphism's target -> label in f's target).  The induced matrices agree.
  """
  steps, back = [], {}
  for st in f.steps:
    st = st.relabel(back)
    if classify(st) == "annulus" and st.blocks is None:
      back[st.new[0]] = st.glued[0]
      continue
    steps.append(st)
  rename = {old: new for new, old in back.items() if new in f.target.boundary}
  return PSurfMorphism(f.source, tuple(steps)), rename


def factor_open_capping(f: PSurfMorphism) -> list[ElementaryAttachment]:
  """Rewrite an open capping using only increasing/decreasing boundary stabilizations.

  Each step (h, glued, new) becomes: h rounds of (increasing, decreasing) on
  glued[0] for the piece handles, one decreasing step per further glued
  circle, then m - 1 increasing steps to split off the new circles.  Annuli
  disappear, so the factored target may differ from f's target by a renaming
  of boundary labels; the induced matrices are equal.
  """
  if not is_open_capping(f):
    raise ValueError("input is not an open capping")
  used = set(f.source.boundary) | {x for st in f.steps for x in st.glued + st.new}
  counter = itertools.count()

  def fresh():
    while True:
      x = f"_c{next(counter)}"
      if x not in used:
        used.add(x)
        return x

  out: list[ElementaryAttachment] = []
  alias: dict = {}    # label in f -> label in the factored sequence
  for st in f.steps:
    if st.m == 0:
      raise ValueError("a step without new boundary cannot be factored into boundary stabilizations")
    if st.blocks is not None:
      raise ValueError("steps with an explicit block split cannot be factored")
    glued = [alias.get(x, x) for x in st.glued]
    local: list[ElementaryAttachment] = []
    made = set()

    def make():
      x = fresh()
      made.add(x)
      return x

    cur = glued[0]
    for _ in range(st.h):
      y, z, w = make(), make(), make()
      local.append(ElementaryAttachment(0, (cur,), (y, z)))
      local.append(ElementaryAttachment(0, (y, z), (w,)))
      cur = w
    for s in glued[1:]:
      w = make()
      local.append(ElementaryAttachment(0, (cur, s), (w,)))
      cur = w
    finals = []
    for _ in range(st.m - 1):
      n, y = make(), make()
      local.append(ElementaryAttachment(0, (cur,), (n, y)))
      finals.append(n)
      cur = y
    finals.append(cur)
    rename = {}
    for x, t in zip(finals, st.new):
      if x in made:
        rename[x] = t
      else:
        alias[t] = x
    out += [s.relabel(rename) for s in local]
  return out


def standard_subsurface_inclusion(h: int, S: PartitionedSurface) -> PSurfMorphism:
  """The inclusion of a one-boundary genus-h surface carrying the first h handles of S."""
  if not 0 <= h <= S.genus:
    raise ValueError("subsurface genus out of range")
  w = "_w"
  while w in S.boundary:
    w += "_"
  src = PartitionedSurface(h, (w,), ((w,),))
  step = ElementaryAttachment(S.genus - h, (w,), S.boundary, S.partition)
  return PSurfMorphism(src, (step,))


def stabilize_marking(m: Marking, f: PSurfMorphism) -> Marking:
  """mu' = mu ∘ (induced map)."""
  if m.surface != f.source:
    raise ValueError("marking does not live on the source of the morphism")
  T = f.target
  X = [list(r) for r in f.induced_matrix]
  M = matmul(m.mu.matrix, X, f.source.rank, T.rank) if m.target.ngens else []
  return Marking.from_matrix(T, m.target, M)


@dataclass(frozen=True)
class Destabilization:
  ok: bool
  marking: Optional[Marking] = None
  violating_class: Optional[tuple[int, ...]] = None

  def to_json(self) -> dict:
    out = {"ok": self.ok}
    if self.marking is not None:
      out["marking"] = self.marking.to_json()
    if self.violating_class is not None:
      out["violating_class"] = list(self.violating_class)
    return out


def destabilize_marking(m: Marking, f: PSurfMorphism) -> Destabilization:
  """Solve mu' = mu ∘ (induced map) for a marking mu on the source.

  mu' must vanish on the kernel of the induced map (classes supported off the
  source); otherwise the first offending kernel basis vector is reported.  When
  the induced map is not onto, the solution is not unique and the one with
  zero values on a complement of the image is returned.
  """
  if m.surface != f.target:
    raise ValueError("marking does not live on the target of the morphism")
  S, T, A = f.source, f.target, m.target
  X = [list(r) for r in f.induced_matrix]
  for k in integer_kernel(X, T.rank):
    if not A.is_zero(m.mu(k)):
      return Destabilization(False, violating_class=tuple(k))
  snf = smith_normal_form(X, T.rank)
  if any(d not in (0, 1) for d in snf.diagonal):
    raise ValueError("cokernel of the induced map is not free")
  r = snf.rank
  rows = []
  for row in m.mu.matrix:
    mv = [sum(a * b for a, b in zip(row, column(snf.V, j))) for j in range(T.rank)]
    s = [mv[i] if i < r else 0 for i in range(S.rank)]
    rows.append([sum(s[i] * snf.U[i][c] for i in range(S.rank)) for c in range(S.rank)])
  out = Marking.from_matrix(S, A, rows)
  if stabilize_marking(out, f) != m:
    raise AssertionError("destabilization failed to reproduce the marking")
  return Destabilization(True, marking=out)


def simple_subsurface_criterion(m: Marking, f: PSurfMorphism) -> bool:
  """Condition for destabilization to a simple subsurface to keep symplectic support.

  f must be a single attachment with at least one new boundary component (the
  inclusion of a subsurface whose complement is one piece).  The condition:
  intersecting the kernel of the closed marking on the target with the glued
  circles q hits every zero-sum combination of q.
  """
  if len(f.steps) != 1 or f.steps[0].m == 0:
    raise ValueError("expected a single attachment with new boundary")
  if m.surface != f.target:
    raise ValueError("marking does not live on the target of the morphism")
  S, T, st = f.source, f.target, f.steps[0]
  g2 = 2 * T.genus
  hat = closed_marking(m).handle_part()
  K = kernel_generators(hat)
  push = f.pushforward
  q = [[push[i][S.abs_index(x)] for i in range(g2)] for x in st.glued]
  image = [[omega(v, gamma) for gamma in q] for v in K]
  n = len(q)
  zero_sum = [tuple(-1 if j == 0 else int(j == i) for j in range(n)) for i in range(1, n)]
  return hnf_rows(image, n) == hnf_rows(zero_sum, n)
