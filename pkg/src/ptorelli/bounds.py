"""Stable ranges and connectivity bounds, as exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


def iso_threshold(r: int, k: int) -> int:
  """Genus from which degree-k homology stabilizes for a rank-r coefficient group."""
  return (r + 2) * k + (2 * r + 2)


def surjection_threshold(r: int, k: int) -> int:
  return iso_threshold(r, k) - 1


def level_threshold(h: int, k: int) -> int:
  """The same bound written for genus-h symplectic projections (rank 2h)."""
  return (2 * h + 2) * k + (4 * h + 2)


def subsurface_connectivity(g: int, h: int) -> Fraction:
  return Fraction(g - (2 * h + 1), h + 1)


def vanishing_connectivity(g: int, r: int, h: int) -> Fraction:
  return Fraction(g - (2 * r + 2 * h + 1), r + h + 1)


def tethered_connectivity(g: int, r: int) -> Fraction:
  return Fraction(g - (2 * r + 3), r + 2)


def machine_connectivity(n: int, c: int) -> Fraction:
  if c <= 0:
    raise ValueError("c must be positive")
  return Fraction(n - 1, c)


def largest_k(g: int, r: int) -> Optional[int]:
  """Largest k with g >= iso_threshold(r, k), or None when even k = 0 fails."""
  room = g - (2 * r + 2)
  return room // (r + 2) if room >= 0 else None


@dataclass(frozen=True)
class BoundsQuery:
  """Inputs for `stable_range`; `rank` may be rank(A) or |Lambda|, the formulas agree."""
  rank: Optional[int] = None
  genus: Optional[int] = None
  h: Optional[int] = None
  k: Optional[int] = None
  n: Optional[int] = None
  c: Optional[int] = None

  def __post_init__(self):
    for name in ("rank", "genus", "h", "k", "n", "c"):
      v = getattr(self, name)
      if v is not None and v < 0:
        raise ValueError(f"{name} must be nonnegative")


def stable_range(q: BoundsQuery) -> dict:
  """Every bound computable from the given fields."""
  out: dict = {}
  r, g = q.rank, q.genus
  if r is not None and q.k is not None:
    out["iso_threshold"] = iso_threshold(r, q.k)
    out["surjection_threshold"] = surjection_threshold(r, q.k)
  if r is not None and g is not None:
    out["k_max"] = largest_k(g, r)
    out["tethered_connectivity"] = tethered_connectivity(g, r)
    if q.h is not None:
      out["vanishing_connectivity"] = vanishing_connectivity(g, r, q.h)
  if g is not None and q.h is not None:
    out["subsurface_connectivity"] = subsurface_connectivity(g, q.h)
  if q.n is not None and q.c is not None:
    out["machine_connectivity"] = machine_connectivity(q.n, q.c)
  return out
