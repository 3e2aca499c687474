import random
import time

import pytest

from helpers import (
    brute_force_sp, omega_handles, rand_chain, rand_class, rand_group, rand_marking, rand_surface,
    sp_order,
)
from ptorelli.abgroup import FgAbGroup, cyclic, free, kernel_generators
from ptorelli.intlinalg import det, identity
from ptorelli.mcg import (
    CurveClass, TwistWord, humphries_classes, orbit_index, push_word, torelli_membership,
    twist_action, word_action,
)
from ptorelli.psurf import stabilize_marking
from ptorelli.surface import Marking, PartitionedSurface, closed_marking


def level_marking(g, ell):
  S = PartitionedSurface.closed_off(g)
  return Marking.from_matrix(S, FgAbGroup(0, (ell,) * (2 * g)), identity(2 * g))


def test_twist_examples():
  S = PartitionedSurface.closed_off(2)
  assert twist_action((0, 0, 0, 0, 1), S).matrix == tuple(map(tuple, identity(4)))
  M = twist_action((1, 0, 0, 0, 0), S)
  assert M.apply((0, 1, 0, 0)) == (-1, 1, 0, 0)
  assert M.apply((1, 0, 0, 0)) == (1, 0, 0, 0)
  assert M.apply((0, 0, 1, 0)) == (0, 0, 1, 0)
  T = PartitionedSurface(1, ("d1", "d2"), (("d1", "d2"),))
  # an arc pairing trivially with a_1 is fixed
  assert twist_action((1, 0, 0, 0), T).apply((0, 0, 1)) == (0, 0, 1)


def test_word_examples():
  S = PartitionedSurface(2, ("d1", "d2"), (("d1", "d2"),))
  c = (1, 1, 0, 1, 0, 1)
  assert word_action(TwistWord(), S).matrix == tuple(map(tuple, identity(S.rank)))
  w = TwistWord(((CurveClass(c), 1), (CurveClass(c), -1)))
  assert word_action(w, S).matrix == tuple(map(tuple, identity(S.rank)))
  # a bounding pair: the classes differ by d1 + d2, which is zero in H_1
  bp = TwistWord(((CurveClass((0, 1, 0, 0, 0, 0)), 1), (CurveClass((0, 1, 0, 0, 1, 1)), -1)))
  assert word_action(bp, S).matrix == tuple(map(tuple, identity(S.rank)))
  # enclosing only d1 changes the class and moves arcs
  other = TwistWord(((CurveClass((0, 1, 0, 0, 0, 0)), 1), (CurveClass((0, 1, 0, 0, 1, 0)), -1)))
  assert word_action(other, S).matrix != tuple(map(tuple, identity(S.rank)))


def test_torelli_examples():
  S = PartitionedSurface.closed_off(2)
  w = TwistWord.single((1, 0, 0, 0, 0))
  assert not torelli_membership(w, Marking.from_matrix(S, cyclic(2), [[1, 0, 0, 0]]))
  assert torelli_membership(w, Marking.from_matrix(S, free(2), [[0, 0, 1, 0], [0, 0, 0, 1]]))


def test_action_invariants_random():
  rng = random.Random(3)
  for _ in range(200):
    S = rand_surface(rng, gmax=3, bmax=4)
    w = TwistWord(tuple((CurveClass(rand_class(rng, S.n_abs)), rng.choice([-2, -1, 1, 3]))
                        for _ in range(rng.randint(0, 4))))
    M = word_action(w, S)
    n, g2 = S.rank, 2 * S.genus
    assert abs(det(M.matrix)) == 1
    # symplectic on the closed part: closed classes go to closed classes, form preserved
    cols = [M.apply([int(i == j) for i in range(n)]) for j in range(g2)]
    assert all(not any(c[g2:]) for c in cols)
    for i in range(g2):
      for j in range(g2):
        assert omega_handles(cols[i][:g2], cols[j][:g2]) == omega_handles(
            [int(k == i) for k in range(g2)], [int(k == j) for k in range(g2)])
    # the total boundary is preserved
    for j in range(n):
      x = [int(i == j) for i in range(n)]
      assert M.apply(x)[g2:] == tuple(x[g2:])


def test_orbit_index_examples():
  for g, ell in [(1, 2), (1, 3), (2, 2)]:
    t = time.perf_counter()
    idx = orbit_index(level_marking(g, ell))
    assert time.perf_counter() - t < 5
    assert idx == sp_order(g, ell) == brute_force_sp(g, ell)


def test_orbit_index_errors_and_gens():
  m = Marking.from_matrix(PartitionedSurface.closed_off(1), free(2), identity(2))
  with pytest.raises(ValueError, match="orbit enumeration requires finite A"):
    orbit_index(m)
  # supplied generators: only T_{a1} gives the orbit of size ell
  m = level_marking(1, 3)
  assert orbit_index(m, [TwistWord.single((1, 0, 0))]) == 3


def test_humphries_shape():
  for g in range(1, 5):
    cs = humphries_classes(g)
    assert len(cs) == (2 * g + 1 if g >= 2 else 2)
    chain = cs[:2 * g]
    for a, b in zip(chain, chain[1:]):
      assert abs(omega_handles(a.vector[:2 * g], b.vector[:2 * g])) == 1


def test_torelli_containment_under_stabilization():
  rng = random.Random(9)
  done = 0
  while done < 200:
    S = rand_surface(rng, gmax=3, bmax=3, gmin=1)
    A = rand_group(rng, max_rank=2, max_factor=6)
    m = rand_marking(rng, S, A, spread=4)
    hat = closed_marking(m).handle_part()
    K = kernel_generators(hat)
    letters = []
    for _ in range(rng.randint(1, 3)):
      k = rng.choice(K) if K else (0,) * (2 * S.genus)
      c = tuple(k) + rand_class(rng, S.b, 0, 1)
      letters.append((CurveClass(c), rng.choice([-1, 1, 2])))
    w = TwistWord(tuple(letters))
    if not torelli_membership(w, m):
      continue
    f = rand_chain(rng, S, rng.randint(1, 3), allow_blocks=True)
    assert torelli_membership(push_word(w, f.pushforward), stabilize_marking(m, f))
    done += 1


def test_json_round_trip():
  w = TwistWord(((CurveClass((1, 0, 2)), 3), (CurveClass((0, 1, 0)), -1)))
  assert TwistWord.from_json(w.to_json()) == w
