import itertools
import random

import pytest

from helpers import rand_group, rand_marking
from ptorelli.abgroup import ExteriorPower, FgAbGroup, cyclic, free
from ptorelli.intlinalg import det, identity
from ptorelli.johnson import (
    DiscPushClass, is_symplectically_nondegenerate, johnson_on_discpush, mu_symplectic_element,
    nonstability_verdict,
)
from ptorelli.psurf import ElementaryAttachment as Step, PSurfMorphism
from ptorelli.surface import Marking, PartitionedSurface


def projection(g, h, S=None):
  S = S or PartitionedSurface.closed_off(g)
  M = [[int(i == j) for j in range(S.rank)] for i in range(2 * h)]
  return Marking.from_matrix(S, free(2 * h), M)


def minors_oracle(A: FgAbGroup, a, pairs):
  """a ∧ sum(u ∧ v) via 3x3 determinants on every index triple, reduced into wedge^3 A."""
  E = ExteriorPower(A, 3)
  naive = []
  for I in E.index_sets:
    naive.append(sum(det([[a[i], u[i], v[i]] for i in I]) for u, v in pairs))
  return E.canonical(naive)


def test_mu_symplectic_examples():
  S = PartitionedSurface.closed_off(3)
  zero = Marking.from_matrix(S, FgAbGroup(0, (4, 4)), [[0] * 6, [0] * 6])
  assert mu_symplectic_element(zero).is_zero
  m = projection(3, 2)
  w = mu_symplectic_element(m)
  # e1∧e2 + e3∧e4 in the naive basis of wedge^2 Z^4
  assert w.as_dict() == {(0, 1): 1, (2, 3): 1}
  rng = random.Random(0)
  for _ in range(20):
    c = rand_marking(rng, S, cyclic(rng.randint(2, 9)))
    assert mu_symplectic_element(c).is_zero
    assert not is_symplectically_nondegenerate(c)


def test_nondegeneracy_projection():
  for h in range(1, 7):
    assert is_symplectically_nondegenerate(projection(h + 1, h)) is (h >= 2)


def test_johnson_examples():
  m = projection(3, 2)
  assert johnson_on_discpush(DiscPushClass("d1", (1, 0, 0, 0, 0, 0)), m) == (0, 0, 1, 0)
  assert not any(johnson_on_discpush(DiscPushClass("d1", (0, 0, 0, 0, 1, 0)), m))
  with pytest.raises(ValueError):
    S = PartitionedSurface(2, ("d1", "d2"), (("d1", "d2"),))
    johnson_on_discpush(DiscPushClass("d1", (1, 0, 0, 0)), Marking.from_matrix(S, free(1), [[0] * 5]))


def test_classical_specialization():
  g = 3
  S = PartitionedSurface.closed_off(g)
  m = Marking.from_matrix(S, free(2 * g), identity(2 * g))
  pairs = [([int(k == 2 * i) for k in range(2 * g)], [int(k == 2 * i + 1) for k in range(2 * g)])
           for i in range(g)]
  for h in itertools.product(range(-1, 2), repeat=2 * g):
    assert johnson_on_discpush(DiscPushClass("d1", h), m) == minors_oracle(free(2 * g), h, pairs)


def test_johnson_random_against_minors():
  rng = random.Random(6)
  for _ in range(150):
    S = PartitionedSurface(rng.randint(1, 3), ("d1", "d2"), (("d1",), ("d2",)))
    A = rand_group(rng, max_rank=4, max_factor=8)
    m = rand_marking(rng, S, A, spread=4)
    g = S.genus
    cols = [tuple(r[k] for r in m.mu.matrix) for k in range(2 * g)]
    pairs = [(cols[2 * i], cols[2 * i + 1]) for i in range(g)]
    h1 = tuple(rng.randint(-2, 2) for _ in range(2 * g))
    h2 = tuple(rng.randint(-2, 2) for _ in range(2 * g))
    v1 = johnson_on_discpush(DiscPushClass("d1", h1), m)
    a1 = [sum(c[j] * x for c, x in zip(cols, h1)) for j in range(A.ngens)]
    assert v1 == minors_oracle(A, a1, pairs)
    v2 = johnson_on_discpush(DiscPushClass("d2", h2), m)
    v12 = johnson_on_discpush(DiscPushClass("d1", tuple(x + y for x, y in zip(h1, h2))), m)
    E3 = ExteriorPower(A, 3).group
    assert v12 == E3.reduce([x + y for x, y in zip(v1, v2)])


def test_verdict_capping_to_closed_surface():
  m = projection(3, 2)
  f = PSurfMorphism(m.surface, (Step(0, ("d1",), ()),))
  assert f.target.b == 0 and f.target.genus == 3
  v = nonstability_verdict(m, f)
  assert v.verdict == "NOT_ISOMORPHISM" and v.injective is False
  val = v.witness["value"]
  assert any(val)
  h = v.witness["loop_class"]
  a = [sum(r[k] * h[k] for k in range(6)) for r in m.mu.matrix]
  pairs = [((1, 0, 0, 0), (0, 1, 0, 0)), ((0, 0, 1, 0), (0, 0, 0, 1))]
  assert tuple(val) == minors_oracle(free(4), a, pairs)


def test_verdict_iso_range():
  S = PartitionedSurface.closed_off(20)
  A = FgAbGroup(0, (3, 3))
  m = Marking.from_matrix(S, A, [[int(i == j) for j in range(40)] for i in range(2)])
  f = PSurfMorphism(S, (Step(1, ("d1",), ("e",)),))
  v = nonstability_verdict(m, f)
  assert v.verdict == "ISO_IN_RANGE" and v.k_max == 3
  v = nonstability_verdict(m, PSurfMorphism(S))
  assert v.verdict == "ISO_IN_RANGE" and v.to_json()["k_max"] is None


def test_verdict_non_bijective_threshold():
  # rank 4, threshold 3*4 + 4 = 16: capping away a whole two-element block
  for g, expect in [(16, "NOT_ISOMORPHISM"), (15, "INCONCLUSIVE")]:
    S = PartitionedSurface(g, ("d1", "d2"), (("d1", "d2"),))
    M = [[int(i == j) for j in range(S.rank)] for i in range(4)]
    m = Marking.from_matrix(S, free(4), M)
    f = PSurfMorphism(S, (Step(0, ("d1", "d2"), ()),))
    v = nonstability_verdict(m, f)
    assert v.verdict == expect
    if expect == "NOT_ISOMORPHISM":
      assert v.injective is None and any(v.witness["value"])


def test_verdict_inconclusive_low_genus():
  S = PartitionedSurface.closed_off(3)
  m = Marking.from_matrix(S, free(2), [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
  f = PSurfMorphism(S, (Step(1, ("d1",), ("e",)),))
  assert nonstability_verdict(m, f).verdict == "INCONCLUSIVE"
