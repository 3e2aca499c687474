"""Finite simplicial and semisimplicial complexes, relative fibers and bad-simplex links.

Connectivity is always tested homologically: a complex is "homologically
n-connected" when it is nonempty and its reduced integral homology vanishes in
degrees 0..n.  This agrees with n-connectivity for simply connected spaces
only; every report says which notion it checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional

from .abgroup import AbHom, FgAbGroup, free, kernel_generators, presentation
from .intlinalg import columns_to_matrix, hnf_rows, integer_kernel, smith_normal_form, solve

NOTION = "homological n-connectivity"
Simplex = frozenset


def _vkey(v):
  return (type(v).__name__, v)


def _faces(s: frozenset) -> Iterable[frozenset]:
  """All nonempty faces of s, s included."""
  items = sorted(s, key=_vkey)
  for r in range(1, len(items) + 1):
    for c in itertools.combinations(items, r):
      yield frozenset(c)


@dataclass(frozen=True)
class SimplicialComplexFin:
  """A finite simplicial complex stored as its full (face-closed) set of simplices."""
  simplices: frozenset

  def __post_init__(self):
    S = frozenset(frozenset(s) for s in self.simplices)
    if frozenset() in S:
      S = S - {frozenset()}
    for s in S:
      for t in _faces(s):
        if t not in S:
          raise ValueError("simplex family is not closed under taking faces")
    object.__setattr__(self, "simplices", S)

  @classmethod
  def from_maximal(cls, maximal: Iterable[Iterable[Hashable]]) -> "SimplicialComplexFin":
    out = set()
    for s in maximal:
      out.update(_faces(frozenset(s)))
    return cls(frozenset(out))

  @property
  def vertices(self) -> list:
    return sorted((next(iter(s)) for s in self.simplices if len(s) == 1), key=_vkey)

  @property
  def dim(self) -> int:
    return max((len(s) - 1 for s in self.simplices), default=-1)

  def of_dim(self, k: int) -> list[frozenset]:
    return sorted((s for s in self.simplices if len(s) == k + 1),
                  key=lambda s: [_vkey(v) for v in sorted(s, key=_vkey)])

  def __contains__(self, s) -> bool:
    return frozenset(s) in self.simplices

  def __len__(self) -> int:
    return len(self.simplices)

  def link(self, sigma) -> "SimplicialComplexFin":
    sigma = frozenset(sigma)
    return SimplicialComplexFin(frozenset(t for t in self.simplices
                                          if not t & sigma and (t | sigma) in self.simplices))

  def full_subcomplex(self, vertices) -> "SimplicialComplexFin":
    V = set(vertices)
    return SimplicialComplexFin(frozenset(s for s in self.simplices if s <= V))

  def to_json(self) -> dict:
    out = {}
    for k in range(self.dim + 1):
      simp = [sorted(s, key=_vkey) for s in self.of_dim(k)]
      out[str(k)] = [s[0] for s in simp] if k == 0 else simp
    return {"simplices": out}

  @classmethod
  def from_json(cls, obj: dict) -> "SimplicialComplexFin":
    simp = obj["simplices"] if "simplices" in obj else obj
    out = set()
    for _, items in simp.items():
      for s in items:
        s = s if isinstance(s, list) else [s]
        out.update(_faces(frozenset(str(v) for v in s)))
    return cls(frozenset(out))


def boundary_of_simplex(n: int) -> SimplicialComplexFin:
  """The boundary of the n-simplex on vertices 0..n, a triangulated (n-1)-sphere."""
  V = range(n + 1)
  return SimplicialComplexFin.from_maximal([tuple(x for x in V if x != i) for i in V])


@dataclass(frozen=True)
class SemiSimplicialComplex:
  """Simplices per dimension with face maps d_0..d_k.

  faces[k][i] lists the k+1 codimension-one faces (indices into dimension
  k-1) of the i-th k-simplex.  The identities d_i d_j = d_{j-1} d_i (i < j)
  are checked on construction; every other face map is a composite of these.
  """
  counts: tuple[int, ...]
  faces: tuple[tuple[tuple[int, ...], ...], ...]

  def __post_init__(self):
    counts = tuple(int(c) for c in self.counts)
    faces = tuple(tuple(tuple(f) for f in level) for level in self.faces)
    if len(faces) != len(counts):
      raise ValueError("one face list per dimension is required")
    for k, level in enumerate(faces):
      if len(level) != counts[k]:
        raise ValueError(f"dimension {k}: face list length does not match the simplex count")
      for f in level:
        if k == 0:
          if f:
            raise ValueError("vertices have no faces")
          continue
        if len(f) != k + 1 or any(not 0 <= x < counts[k - 1] for x in f):
          raise ValueError(f"dimension {k}: malformed faces")
    for k in range(2, len(faces)):
      for f in faces[k]:
        for j in range(k + 1):
          for i in range(j):
            if faces[k - 1][f[j]][i] != faces[k - 1][f[i]][j - 1]:
              raise ValueError("semisimplicial identities fail")
    object.__setattr__(self, "counts", counts)
    object.__setattr__(self, "faces", faces)

  @property
  def dim(self) -> int:
    return len(self.counts) - 1

  @classmethod
  def from_simplicial(cls, X: SimplicialComplexFin) -> "SemiSimplicialComplex":
    """Order every simplex by sorted vertices; d_i deletes the i-th vertex."""
    levels = [X.of_dim(k) for k in range(X.dim + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in levels]
    faces = []
    for k, level in enumerate(levels):
      out = []
      for s in level:
        vs = sorted(s, key=_vkey)
        out.append(() if k == 0 else tuple(index[k - 1][frozenset(vs[:i] + vs[i + 1:])]
                                           for i in range(k + 1)))
      faces.append(tuple(out))
    return cls(tuple(len(level) for level in levels), tuple(faces))


def boundary_matrix(X, k: int) -> list[list[int]]:
  """Reduced boundary C_k -> C_{k-1}; C_{-1} = Z via the augmentation."""
  if isinstance(X, SimplicialComplexFin):
    X = SemiSimplicialComplex.from_simplicial(X)
  nk = X.counts[k] if 0 <= k <= X.dim else 0
  if k == 0:
    return [[1] * nk]
  nprev = X.counts[k - 1] if 0 <= k - 1 <= X.dim else 0
  M = [[0] * nk for _ in range(nprev)]
  if nk:
    for j, f in enumerate(X.faces[k]):
      for i, x in enumerate(f):
        M[x][j] += (-1) ** i
  return M


def _count(X, k: int) -> int:
  if k == -1:
    return 1
  if isinstance(X, SimplicialComplexFin):
    return len(X.of_dim(k))
  return X.counts[k] if 0 <= k <= X.dim else 0


def homology(X, up_to: int) -> list[FgAbGroup]:
  """Reduced integral homology in degrees 0..up_to."""
  if isinstance(X, SimplicialComplexFin):
    X = SemiSimplicialComplex.from_simplicial(X)
  out = []
  ranks = {}

  def snf_of(k):
    if k not in ranks:
      ranks[k] = smith_normal_form(boundary_matrix(X, k), _count(X, k))
    return ranks[k]

  for k in range(up_to + 1):
    nk = _count(X, k)
    rk = snf_of(k).rank
    nxt = snf_of(k + 1)
    torsion = tuple(d for d in nxt.invariant_factors if d > 1)
    out.append(FgAbGroup(nk - rk - nxt.rank, torsion))
  return out


def reduced_h_minus_one(X) -> int:
  """Rank of reduced H_{-1}: 1 for the empty complex, else 0."""
  return 0 if _count(X, 0) else 1


def is_homologically_connected(X, n: int) -> bool:
  if n < -1:
    return True
  if reduced_h_minus_one(X):
    return False
  return all(G.is_trivial for G in homology(X, n)) if n >= 0 else True


# --- simplicial maps, relative fibers, bad-simplex links ---------------------------------

@dataclass(frozen=True)
class SimplicialMap:
  source: SimplicialComplexFin
  target: SimplicialComplexFin
  vertex_map: tuple  # sorted (vertex, image) pairs

  def __post_init__(self):
    vm = dict(self.vertex_map)
    for v in self.source.vertices:
      if v not in vm:
        raise ValueError(f"vertex {v!r} has no image")
    object.__setattr__(self, "vertex_map", tuple(sorted(vm.items(), key=lambda p: _vkey(p[0]))))
    for s in self.source.simplices:
      if self(s) not in self.target.simplices:
        raise ValueError("vertex map does not send simplices to simplices")

  @classmethod
  def from_dict(cls, X, Y, mapping: Mapping) -> "SimplicialMap":
    return cls(X, Y, tuple(mapping.items()))

  def __call__(self, s) -> frozenset:
    vm = dict(self.vertex_map)
    return frozenset(vm[v] for v in s)

  def to_json(self) -> dict:
    return {"source": self.source.to_json(), "target": self.target.to_json(),
            "map": {str(k): v for k, v in self.vertex_map}}

  @classmethod
  def from_json(cls, obj: dict) -> "SimplicialMap":
    X = SimplicialComplexFin.from_json(obj["source"])
    Y = SimplicialComplexFin.from_json(obj["target"])
    return cls(X, Y, tuple((str(k), str(v)) for k, v in obj["map"].items()))


def relative_fiber(psi: SimplicialMap, sigma_prime, sigma) -> SimplicialComplexFin:
  """Simplices eta' with psi(eta') inside sigma' that extend to some eta with psi(eta) = sigma."""
  sp, s = frozenset(sigma_prime), frozenset(sigma)
  if s not in psi.target.simplices:
    raise ValueError("sigma is not a simplex of the target")
  if not sp or not sp <= s:
    raise ValueError("sigma' is not a face of sigma")
  top = [eta for eta in psi.source.simplices if psi(eta) == s]
  out = set()
  for eta in top:
    for e in _faces(eta):
      if psi(e) <= sp:
        out.add(e)
  return SimplicialComplexFin(frozenset(out))


def bad_simplex_link(X: SimplicialComplexFin, sigma, B) -> SimplicialComplexFin:
  """Simplices tau of the link of sigma such that every face of sigma * tau lying in B is inside sigma."""
  sigma = frozenset(sigma)
  B = {frozenset(b) for b in B}
  if sigma not in B:
    raise ValueError("sigma is not a bad simplex")
  out = set()
  for t in X.link(sigma).simplices:
    joined = sigma | t
    if all(f <= sigma for f in _faces(joined) if f in B):
      out.add(t)
  return SimplicialComplexFin(frozenset(out))


# --- fiber lemma checker ---------------------------------------------------------------------

def _chain_map(psi: SimplicialMap, k: int) -> list[list[int]]:
  """Matrix of the induced chain map C_k(X) -> C_k(Y) in the sorted-vertex orientations."""
  X, Y = psi.source, psi.target
  xs, ys = X.of_dim(k), Y.of_dim(k)
  yidx = {s: i for i, s in enumerate(ys)}
  vm = dict(psi.vertex_map)
  M = [[0] * len(xs) for _ in ys]
  for j, s in enumerate(xs):
    img = [vm[v] for v in sorted(s, key=_vkey)]
    if len(set(img)) < len(img):
      continue
    order = sorted(range(len(img)), key=lambda i: _vkey(img[i]))
    sign = 1
    for a in range(len(order)):
      for b in range(a + 1, len(order)):
        if order[a] > order[b]:
          sign = -sign
    M[yidx[frozenset(img)]][j] = sign
  return M


def _cycles_and_boundaries(X: SimplicialComplexFin, k: int):
  n = _count(X, k)
  Z = integer_kernel(boundary_matrix(X, k), n)
  up = boundary_matrix(X, k + 1)
  Bd = [tuple(c) for c in zip(*up)] if up and up[0] else []
  return Z, Bd


def induced_on_homology(psi: SimplicialMap, k: int) -> tuple[bool, bool]:
  """(injective, surjective) for the map on reduced H_k."""
  X, Y = psi.source, psi.target
  Zx, Bx = _cycles_and_boundaries(X, k)
  Zy, By = _cycles_and_boundaries(Y, k)
  ny = _count(Y, k)
  Zy_mat = columns_to_matrix(Zy, ny)
  # coordinates of Y's boundaries in the cycle basis
  By_coords = [solve(Zy_mat, b, len(Zy)) for b in By]
  pres = presentation(columns_to_matrix(By_coords, len(Zy)), len(Zy))
  H = pres.group
  F = _chain_map(psi, k)
  cols = []
  for z in Zx:
    fz = [sum(a * b for a, b in zip(row, z)) for row in F]
    cols.append(pres.canonical(solve(Zy_mat, fz, len(Zy))))
  f = AbHom(free(len(Zx)), H, columns_to_matrix(cols, H.ngens) if H.ngens else [])
  # surjective: every canonical generator of H is hit
  rel = H.relations()
  stacked = [list(r1) + list(r2) for r1, r2 in zip(f.matrix, rel)] if H.ngens else []
  surjective = all(solve(stacked, [int(i == j) for i in range(H.ngens)], len(Zx) + len(H.torsion))
                   is not None for j in range(H.ngens))
  # injective: kernel of Z_x -> H_y lies in the boundaries of X
  Zx_mat = columns_to_matrix(Zx, _count(X, k))
  Bx_coords = [solve(Zx_mat, b, len(Zx)) for b in Bx]
  injective = hnf_rows(kernel_generators(f) + Bx_coords, len(Zx)) == hnf_rows(Bx_coords, len(Zx))
  return injective, surjective


@dataclass(frozen=True)
class FiberLemmaReport:
  n: int
  corollary: bool
  hypotheses_hold: bool
  hypothesis_failures: tuple = ()
  conclusion_holds: Optional[bool] = None
  conclusion_details: tuple = ()
  notion: str = NOTION

  def to_json(self) -> dict:
    return {"n": self.n, "mode": "corollary" if self.corollary else "lemma",
            "hypotheses_hold": self.hypotheses_hold,
            "hypothesis_failures": list(self.hypothesis_failures),
            "conclusion_holds": self.conclusion_holds,
            "conclusion_details": list(self.conclusion_details), "notion": self.notion}


def _fmt(s) -> list:
  return sorted(s, key=_vkey)


def check_fiber_lemma_instance(psi: SimplicialMap, n: int, corollary: bool = False,
                               max_failures: int = 10) -> FiberLemmaReport:
  """Check the fiber lemma (or its connectivity corollary) on a finite instance.

  Lemma mode: if every relative fiber is homologically n-connected, then psi
  induces isomorphisms on reduced H_k for k < n and a surjection for k = n.
  Corollary mode: if Y is homologically n-connected, every (n+1)-simplex of Y
  is hit, and relative fibers over simplices of dimension <= n are
  homologically n-connected, then X is homologically n-connected.
  """
  X, Y = psi.source, psi.target
  fails = []
  if corollary:
    if not is_homologically_connected(Y, n):
      fails.append({"kind": "target_not_connected"})
    images = {psi(s) for s in X.simplices}
    for s in Y.of_dim(n + 1):
      if s not in images:
        fails.append({"kind": "simplex_not_hit", "sigma": _fmt(s)})
  for s in sorted(Y.simplices, key=lambda s: (len(s), [_vkey(v) for v in _fmt(s)])):
    if corollary and len(s) - 1 > n:
      continue
    for sp in _faces(s):
      if not is_homologically_connected(relative_fiber(psi, sp, s), n):
        fails.append({"kind": "fiber_not_connected", "sigma": _fmt(s), "sigma_prime": _fmt(sp)})
  if fails:
    return FiberLemmaReport(n, corollary, False, tuple(fails[:max_failures]))
  details = []
  if corollary:
    ok = is_homologically_connected(X, n)
    details.append({"source_connected": ok})
  else:
    ok = True
    for k in range(n + 1):
      inj, sur = induced_on_homology(psi, k)
      good = sur and (inj or k == n)
      details.append({"degree": k, "injective": inj, "surjective": sur})
      ok = ok and good
  return FiberLemmaReport(n, corollary, True, (), ok, tuple(details))
