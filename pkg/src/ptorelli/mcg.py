"""Dehn twist words acting on partitioned homology by transvections.

A twist about a curve of absolute class c acts by x -> x + omega(x, c) j(c),
where j(c) is the image of c in partitioned coordinates.  Curve classes are
not checked for representability by simple closed curves ("formal twists").
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .intlinalg import freeze, identity, matmul
from .surface import Marking, PartitionedSurface, pairing_matrix, relative_image


@dataclass(frozen=True)
class CurveClass:
  vector: tuple[int, ...]
  label: Optional[str] = None

  def __post_init__(self):
    object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))


@dataclass(frozen=True)
class TwistWord:
  """An ordered product of twists; the first letter is the outermost factor."""
  letters: tuple[tuple[CurveClass, int], ...] = ()

  def __post_init__(self):
    object.__setattr__(self, "letters", tuple((c if isinstance(c, CurveClass) else CurveClass(c), int(e))
                                              for c, e in self.letters))

  def __mul__(self, other: "TwistWord") -> "TwistWord":
    return TwistWord(self.letters + other.letters)

  def inverse(self) -> "TwistWord":
    return TwistWord(tuple((c, -e) for c, e in reversed(self.letters)))

  def to_json(self) -> list:
    return [{"class": list(c.vector), "exp": e} for c, e in self.letters]

  @classmethod
  def from_json(cls, obj: list) -> "TwistWord":
    return cls(tuple((CurveClass(tuple(x["class"]), x.get("label")), int(x.get("exp", 1))) for x in obj))

  @classmethod
  def single(cls, vector: Sequence[int], exp: int = 1) -> "TwistWord":
    return cls(((CurveClass(tuple(vector)), exp),))


@dataclass(frozen=True)
class ActionMatrix:
  surface: PartitionedSurface
  matrix: tuple

  def __matmul__(self, other: "ActionMatrix") -> "ActionMatrix":
    n = self.surface.rank
    return ActionMatrix(self.surface, freeze(matmul(self.matrix, other.matrix, n, n)))

  def apply(self, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in self.matrix)


def twist_action(c: CurveClass | Sequence[int], S: PartitionedSurface, exp: int = 1) -> ActionMatrix:
  """Matrix of T_c^exp on the partitioned basis (columns are images)."""
  v = c.vector if isinstance(c, CurveClass) else tuple(c)
  if len(v) != S.n_abs:
    raise ValueError("curve class has the wrong length")
  jc = relative_image(S, v)
  pc = [sum(a * b for a, b in zip(row, v)) for row in pairing_matrix(S)]
  n = S.rank
  # T^e = I + e N with N = jc pc^T, since pc . jc = omega(c, c) = 0
  M = [[int(i == j) + exp * jc[i] * pc[j] for j in range(n)] for i in range(n)]
  return ActionMatrix(S, freeze(M))


def word_action(w: TwistWord, S: PartitionedSurface) -> ActionMatrix:
  out = ActionMatrix(S, freeze(identity(S.rank)))
  for c, e in w.letters:
    out = out @ twist_action(c, S, e)
  return out


def act_on_marking(m: Marking, M: ActionMatrix) -> tuple:
  """Matrix of mu ∘ M, reduced in the target."""
  A = m.target
  prod = matmul(m.mu.matrix, M.matrix, m.surface.rank, m.surface.rank) if A.ngens else []
  return tuple(A.reduce(col) for col in zip(*prod)) if prod else ()


def torelli_membership(w: TwistWord, m: Marking) -> bool:
  """True iff mu ∘ (action of w) = mu."""
  M = word_action(w, m.surface)
  A = m.target
  prod = matmul(m.mu.matrix, M.matrix, m.surface.rank, m.surface.rank) if A.ngens else []
  return all(A.is_zero([x - y for x, y in zip(r1, r2)]) for r1, r2 in
             zip(zip(*prod), zip(*m.mu.matrix))) if prod else True


def push_word(w: TwistWord, push) -> TwistWord:
  """The same word with every curve class pushed forward by an absolute-homology matrix."""
  out = []
  for c, e in w.letters:
    v = tuple(sum(a * b for a, b in zip(row, c.vector)) for row in push)
    out.append((CurveClass(v, c.label), e))
  return TwistWord(tuple(out))


def humphries_classes(g: int, b: int = 1) -> list[CurveClass]:
  """Homology classes of the standard Humphries curves on a genus-g surface.

  The chain b_1, a_1, b_2 - b_1, a_2, ..., b_g - b_{g-1}, a_g (consecutive
  classes pair to +-1) plus b_2, which meets only a_2.
  """
  n = 2 * g + b

  def vec(**coeffs):
    v = [0] * n
    for k, x in coeffs.items():
      kind, i = k[0], int(k[1:])
      v[2 * (i - 1) + (kind == "b")] += x
    return tuple(v)

  out = []
  if g >= 1:
    out.append(CurveClass(vec(b1=1), "c1"))
    out.append(CurveClass(vec(a1=1), "c2"))
  for i in range(2, g + 1):
    out.append(CurveClass(vec(**{f"b{i}": 1, f"b{i-1}": -1}), f"c{2 * i - 1}"))
    out.append(CurveClass(vec(**{f"a{i}": 1}), f"c{2 * i}"))
  if g >= 2:
    out.append(CurveClass(vec(b2=1), "c0"))
  return out


def humphries_generators(g: int, b: int = 1) -> list[TwistWord]:
  return [TwistWord(((c, 1),)) for c in humphries_classes(g, b)]


def orbit_index(m: Marking, gens: Optional[Sequence[TwistWord]] = None) -> int:
  """Size of the orbit of mu under precomposition by the generated action group.

  With generators of the mapping class group this is the index of the partial
  Torelli group of mu.  Enumeration is breadth-first over reduced matrices.
  """
  A, S = m.target, m.surface
  if not A.is_finite:
    raise ValueError("orbit enumeration requires finite A")
  if gens is None:
    if S.b != 1:
      raise ValueError("built-in generators exist only for one boundary component")
    gens = humphries_generators(S.genus, S.b)
  mats = [word_action(w, S).matrix for w in gens]
  # include inverses so the search does not rely on finiteness of the orbit
  mats += [word_action(w.inverse(), S).matrix for w in gens]
  n = S.rank
  start = tuple(tuple(r) for r in m.mu.matrix)
  seen = {start}
  queue = deque([start])
  while queue:
    cur = queue.popleft()
    for M in mats:
      nxt = tuple(tuple(x % d for x in row) for row, d in
                  zip(matmul(cur, M, n, n), A.orders))
      if nxt not in seen:
        seen.add(nxt)
        queue.append(nxt)
  return len(seen)
