"""Canonical JSON: sorted keys, exact rationals as "p/q", huge integers as decimal strings."""

from __future__ import annotations

import json
from fractions import Fraction

BIG = 2 ** 63


def to_jsonable(obj):
  if hasattr(obj, "to_json"):
    return to_jsonable(obj.to_json())
  if isinstance(obj, bool) or obj is None or isinstance(obj, str):
    return obj
  if isinstance(obj, int):
    return str(obj) if abs(obj) >= BIG else obj
  if isinstance(obj, Fraction):
    return f"{obj.numerator}/{obj.denominator}"
  if isinstance(obj, dict):
    return {str(k): to_jsonable(v) for k, v in obj.items()}
  if isinstance(obj, (list, tuple)):
    return [to_jsonable(x) for x in obj]
  if isinstance(obj, (set, frozenset)):
    return sorted((to_jsonable(x) for x in obj), key=lambda x: json.dumps(x, sort_keys=True))
  raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
  return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def parse_int(x) -> int:
  """Inverse of the big-integer encoding."""
  return int(x)


def parse_fraction(x) -> Fraction:
  return Fraction(x) if isinstance(x, str) else Fraction(int(x))
