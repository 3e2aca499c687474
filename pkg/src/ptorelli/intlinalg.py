"""Exact integer linear algebra: Smith and Hermite normal forms, kernels, solving.

Matrices are lists (or tuples) of rows of Python ints.  Every routine is exact
and works for arbitrary-size integers.  Shapes are passed explicitly where a
matrix may have zero rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
  return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
  return [[0] * n for _ in range(m)]


def ncols(M: Sequence[Sequence[int]], default: int = 0) -> int:
  return len(M[0]) if len(M) else default


def transpose(M: Sequence[Sequence[int]], n: Optional[int] = None) -> Matrix:
  """Transpose; `n` is the column count of M when M has no rows."""
  cols = ncols(M, 0) if n is None else n
  return [[row[j] for row in M] for j in range(cols)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           inner: Optional[int] = None, right: Optional[int] = None) -> Matrix:
  """Product A·B.  `right` gives the column count of B when B has no rows."""
  k = len(B) if inner is None else inner
  p = ncols(B, right or 0) if right is None else right
  out = []
  for row in A:
    acc = [0] * p
    for t in range(k):
      a = row[t]
      if a:
        brow = B[t]
        for j in range(p):
          acc[j] += a * brow[j]
    out.append(acc)
  return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
  return [sum(a * x for a, x in zip(row, v)) for row in A]


def column(M: Sequence[Sequence[int]], j: int) -> list[int]:
  return [row[j] for row in M]


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
  return [[c[i] for c in cols] for i in range(nrows)]


def freeze(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
  return tuple(tuple(int(x) for x in row) for row in M)


def det(M: Sequence[Sequence[int]]) -> int:
  """Determinant by fraction-free Bareiss elimination."""
  n = len(M)
  if n == 0:
    return 1
  A = [list(r) for r in M]
  sign, prev = 1, 1
  for k in range(n - 1):
    if A[k][k] == 0:
      for i in range(k + 1, n):
        if A[i][k] != 0:
          A[k], A[i] = A[i], A[k]
          sign = -sign
          break
      else:
        return 0
    for i in range(k + 1, n):
      for j in range(k + 1, n):
        A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
    prev = A[k][k]
  return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
  """D = U·M·V with U, V unimodular; Uinv, Vinv are their exact inverses."""
  U: tuple
  D: tuple
  V: tuple
  Uinv: tuple
  Vinv: tuple

  @property
  def diagonal(self) -> list[int]:
    return [self.D[i][i] for i in range(min(len(self.D), ncols(self.D, len(self.V))))]

  @property
  def rank(self) -> int:
    return sum(1 for d in self.diagonal if d != 0)

  @property
  def invariant_factors(self) -> list[int]:
    return [d for d in self.diagonal if d != 0]


def smith_normal_form(M: Sequence[Sequence[int]], n: Optional[int] = None) -> SmithDecomposition:
  """Smith normal form with transforms.

  Args:
    M: m x n integer matrix.
    n: column count, required only when M has no rows.

  Returns:
    SmithDecomposition with D = U·M·V, diagonal entries nonnegative and
    d_1 | d_2 | ... (zeros last).
  """
  m = len(M)
  n = ncols(M, 0) if n is None else n
  A = [list(r) for r in M]
  U, Ui, V, Vi = identity(m), identity(m), identity(n), identity(n)

  def row_add(i, j, c):  # row_i += c row_j
    A[i] = [x + c * y for x, y in zip(A[i], A[j])]
    U[i] = [x + c * y for x, y in zip(U[i], U[j])]
    for r in Ui:
      r[j] -= c * r[i]

  def row_swap(i, j):
    A[i], A[j] = A[j], A[i]
    U[i], U[j] = U[j], U[i]
    for r in Ui:
      r[i], r[j] = r[j], r[i]

  def row_neg(i):
    A[i] = [-x for x in A[i]]
    U[i] = [-x for x in U[i]]
    for r in Ui:
      r[i] = -r[i]

  def col_add(i, j, c):  # col_i += c col_j
    for r in A:
      r[i] += c * r[j]
    for r in V:
      r[i] += c * r[j]
    Vi[j] = [x - c * y for x, y in zip(Vi[j], Vi[i])]

  def col_swap(i, j):
    for r in A:
      r[i], r[j] = r[j], r[i]
    for r in V:
      r[i], r[j] = r[j], r[i]
    Vi[i], Vi[j] = Vi[j], Vi[i]

  for t in range(min(m, n)):
    best = None
    for i in range(t, m):
      for j in range(t, n):
        a = A[i][j]
        if a and (best is None or abs(a) < best[0]):
          best = (abs(a), i, j)
    if best is None:
      break
    _, i0, j0 = best
    if i0 != t:
      row_swap(t, i0)
    if j0 != t:
      col_swap(t, j0)
    while True:
      # bring the smallest nonzero entry of row t / column t to the pivot
      best = (abs(A[t][t]), t, t)
      for i in range(t + 1, m):
        if A[i][t] and abs(A[i][t]) < best[0]:
          best = (abs(A[i][t]), i, t)
      for j in range(t + 1, n):
        if A[t][j] and abs(A[t][j]) < best[0]:
          best = (abs(A[t][j]), t, j)
      if best[1] != t:
        row_swap(t, best[1])
      if best[2] != t:
        col_swap(t, best[2])
      p = A[t][t]
      for i in range(t + 1, m):
        if A[i][t]:
          row_add(i, t, -(A[i][t] // p))
      for j in range(t + 1, n):
        if A[t][j]:
          col_add(j, t, -(A[t][j] // p))
      if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
        continue
      bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                  if A[i][j] % p), None)
      if bad is None:
        break
      row_add(t, bad[0], 1)
    if A[t][t] < 0:
      row_neg(t)
  return SmithDecomposition(freeze(U), freeze(A), freeze(V), freeze(Ui), freeze(Vi))


def hnf_rows(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
  """Row-style Hermite normal form: a canonical echelon basis of the row lattice."""
  work = [list(r) for r in rows if any(r)]
  basis: list[list[int]] = []
  pivots: list[int] = []
  for col in range(n):
    if not work:
      break
    while True:
      nz = [r for r in work if r[col]]
      if len(nz) <= 1:
        break
      p = min(nz, key=lambda r: abs(r[col]))
      for r in nz:
        if r is not p:
          q = r[col] // p[col]
          for k in range(col, n):
            r[k] -= q * p[k]
    nz = [r for r in work if r[col]]
    if not nz:
      continue
    p = nz[0]
    work = [r for r in work if r is not p and any(r)]
    if p[col] < 0:
      p = [-x for x in p]
    basis.append(p)
    pivots.append(col)
  for i, (row, c) in enumerate(zip(basis, pivots)):
    for k in range(i):
      q = basis[k][c] // row[c]
      if q:
        basis[k] = [x - q * y for x, y in zip(basis[k], row)]
  return [tuple(r) for r in basis]


def lattice_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
  return hnf_rows(vectors, n)


def integer_kernel(M: Sequence[Sequence[int]], n: Optional[int] = None) -> list[tuple[int, ...]]:
  """Basis (HNF) of {x in Z^n : M x = 0}."""
  n = ncols(M, 0) if n is None else n
  snf = smith_normal_form(M, n)
  r = snf.rank
  gens = [column(snf.V, j) for j in range(r, n)]
  return hnf_rows(gens, n)


def solve(M: Sequence[Sequence[int]], b: Sequence[int], n: Optional[int] = None,
          snf: Optional[SmithDecomposition] = None) -> Optional[list[int]]:
  """An integer solution x of M x = b, or None if there is none."""
  n = ncols(M, 0) if n is None else n
  snf = snf or smith_normal_form(M, n)
  c = matvec(snf.U, b)
  diag = snf.diagonal
  y = [0] * n
  for i, ci in enumerate(c):
    d = diag[i] if i < len(diag) else 0
    if d == 0:
      if ci != 0:
        return None
    else:
      if ci % d:
        return None
      y[i] = ci // d
  return matvec(snf.V, y)


def spans_lattice(vectors: Sequence[Sequence[int]], target: Sequence[Sequence[int]], n: int) -> bool:
  """True iff the lattice spanned by `vectors` equals the one spanned by `target`."""
  return hnf_rows(vectors, n) == hnf_rows(target, n)


def ext_gcd_combination(values: Sequence[int]) -> tuple[int, list[int]]:
  """(g, c) with sum c_i values_i = g = gcd(values) >= 0."""
  g, coeffs = 0, [0] * len(values)
  for i, v in enumerate(values):
    if v == 0:
      continue
    # extended Euclid on (g, v)
    old_r, r, old_s, s, old_t, t = g, v, 1, 0, 0, 1
    while r:
      q = old_r // r
      old_r, r = r, old_r - q * r
      old_s, s = s, old_s - q * s
      old_t, t = t, old_t - q * t
    if old_r < 0:
      old_r, old_s, old_t = -old_r, -old_s, -old_t
    coeffs = [old_s * x for x in coeffs]
    coeffs[i] = old_t
    g = old_r
  return g, coeffs
