"""The mu-symplectic element, the partial Johnson map on disc pushes, and non-stability verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .abgroup import ExteriorPower, FgAbGroup, vector_as_dict, wedge_dicts
from .bounds import largest_k
from .psurf import PSurfMorphism, disc_capped_singletons, is_partition_bijective
from .surface import Marking, closed_marking, is_supported_on_symplectic


@dataclass(frozen=True)
class MuSymplecticElement:
  group: FgAbGroup          # wedge^2 A in canonical form
  value: tuple[int, ...]    # canonical coordinates
  naive: tuple              # sorted (index pair, coefficient) items over A's generators

  @property
  def is_zero(self) -> bool:
    return not any(self.value)

  def as_dict(self) -> dict:
    return dict(self.naive)


def _handle_images(m: Marking) -> list[tuple[int, ...]]:
  hat = closed_marking(m).handle_part()
  return hat.columns()


def mu_symplectic_element(m: Marking) -> MuSymplecticElement:
  """Image of sum a_i ∧ b_i under the second exterior power of the closed marking."""
  A = m.target
  imgs = _handle_images(m)
  total: dict = {}
  for i in range(m.surface.genus):
    for I, c in wedge_dicts(vector_as_dict(imgs[2 * i]), vector_as_dict(imgs[2 * i + 1])).items():
      total[I] = total.get(I, 0) + c
  E2 = ExteriorPower(A, 2)
  naive = tuple(sorted((I, c) for I, c in total.items() if c))
  return MuSymplecticElement(E2.group, E2.canonical_from_dict(total), naive)


def wedge_with_omega(m: Marking, a: Sequence[int],
                     w: Optional[MuSymplecticElement] = None) -> tuple[int, ...]:
  """a ∧ omega_mu in canonical coordinates of wedge^3 A."""
  w = w or mu_symplectic_element(m)
  E3 = ExteriorPower(m.target, 3)
  return E3.canonical_from_dict(wedge_dicts(vector_as_dict(a), w.as_dict()))


def nondegeneracy_matrix(m: Marking) -> list[tuple[int, ...]]:
  """Columns: e_j ∧ omega_mu for each canonical generator e_j of A."""
  A = m.target
  w = mu_symplectic_element(m)
  return [wedge_with_omega(m, [int(i == j) for i in range(A.ngens)], w) for j in range(A.ngens)]


def is_symplectically_nondegenerate(m: Marking) -> bool:
  return any(any(col) for col in nondegeneracy_matrix(m))


@dataclass(frozen=True)
class DiscPushClass:
  boundary: str
  loop_class: tuple[int, ...]   # handle coordinates (a_1, b_1, ..., a_g, b_g)

  def __post_init__(self):
    object.__setattr__(self, "loop_class", tuple(int(x) for x in self.loop_class))


def johnson_on_discpush(d: DiscPushClass, m: Marking) -> tuple[int, ...]:
  """mu_hat(loop) ∧ omega_mu in wedge^3 A."""
  S = m.surface
  if (d.boundary,) not in S.partition:
    raise ValueError(f"{d.boundary!r} is not a singleton block")
  if len(d.loop_class) != 2 * S.genus:
    raise ValueError("loop class must have 2g handle coordinates")
  a = closed_marking(m).handle_part()(d.loop_class)
  return wedge_with_omega(m, a)


@dataclass(frozen=True)
class Verdict:
  verdict: str
  cited: str
  witness: Optional[dict] = None
  k_max: Optional[int] = None
  injective: Optional[bool] = None

  def to_json(self) -> dict:
    out = {"verdict": self.verdict, "cited": self.cited}
    if self.witness is not None:
      out["witness"] = self.witness
    if self.verdict == "ISO_IN_RANGE":
      out["k_max"] = self.k_max
    if self.injective is not None:
      out["injective"] = self.injective
    return out


def _loop_witness(m: Marking) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
  # first handle basis vector h with mu_hat(h) ∧ omega_mu != 0
  w = mu_symplectic_element(m)
  if w.is_zero:
    return None
  n = 2 * m.surface.genus
  for i, a in enumerate(_handle_images(m)):
    val = wedge_with_omega(m, a, w)
    if any(val):
      return tuple(int(i == j) for j in range(n)), val
  return None


def nonstability_verdict(m: Marking, f: PSurfMorphism) -> Verdict:
  """Decide which stability or non-stability statement applies to (mu, f).

  Checked in order: disc-capping a singleton block under a nondegenerate
  marking (the stabilization map is not injective), failure of partition
  bijectivity above the genus threshold 3 rank(A) + 4 (not an isomorphism),
  partition bijectivity with symplectic support (isomorphism in a range).
  """
  if m.surface != f.source:
    raise ValueError("marking does not live on the source of the morphism")
  if f.is_identity:
    return Verdict("ISO_IN_RANGE", "identity morphism: the stabilization map is the identity in every degree")
  r, g = m.target.rank, m.surface.genus
  nondeg = is_symplectically_nondegenerate(m)
  wit = _loop_witness(m) if nondeg else None
  caps = disc_capped_singletons(f)
  if caps and wit is not None:
    h, val = wit
    return Verdict("NOT_ISOMORPHISM",
                   "disc capping of a singleton block with a symplectically nondegenerate marking",
                   {"boundary": caps[0], "loop_class": list(h), "value": list(val)},
                   injective=False)
  supported = is_supported_on_symplectic(m).supported
  bij = is_partition_bijective(f)
  if not bij and nondeg and supported and g >= 3 * r + 4:
    witness = None if wit is None else {"loop_class": list(wit[0]), "value": list(wit[1])}
    return Verdict("NOT_ISOMORPHISM",
                   "non-partition-bijective morphism, nondegenerate supported marking, genus >= 3 rank(A) + 4",
                   witness)
  if bij and supported:
    k = largest_k(g, r)
    if k is not None:
      return Verdict("ISO_IN_RANGE",
                     "partition-bijective morphism with symplectically supported marking: "
                     "isomorphism for genus >= (rank(A)+2)k + (2 rank(A)+2)", k_max=k)
  return Verdict("INCONCLUSIVE", "no stability or non-stability hypothesis set applies")
