"""Command-line front end: JSON in, canonical JSON out.

Every object argument accepts inline JSON, a path to a JSON file, or
``@name`` referring to an entry of the ``--session`` bundle (a JSON object
mapping names to objects).  Exit status 0 on success, 1 for malformed input,
2 for domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import complexes as cx
from .abgroup import ExteriorPower, presentation
from .bounds import BoundsQuery, stable_range
from .intlinalg import smith_normal_form
from .johnson import (DiscPushClass, johnson_on_discpush, mu_symplectic_element,
                      nondegeneracy_matrix, nonstability_verdict)
from .mcg import TwistWord, orbit_index, torelli_membership
from .psurf import (PSurfMorphism, classify, destabilize_marking, disc_capped_singletons,
                    is_open_capping, is_partition_bijective, stabilize_marking)
from .serialize import dumps
from .surface import Marking, is_supported_on_symplectic

SCHEMAS = {
    "surface": {"genus": "int >= 0", "boundary": ["label"], "partition": [["label"]]},
    "group": {"free_rank": "int >= 0", "torsion": ["int >= 2, divisibility chain"]},
    "marking": {"surface": "surface", "target": "group",
                "matrix": "rank(A) rows x rank(H1P) columns; columns a1,b1,...,ag,bg then arcs block by block"},
    "morphism": {"source": "surface",
                 "steps": [{"h": "int >= 0", "glued": ["label"], "new": ["label"],
                            "blocks": "optional [[label]] splitting the replaced block"}]},
    "word": [{"class": "absolute class (a1,b1,...,ag,bg, boundary loops)", "exp": "int"}],
    "complex": {"simplices": {"0": ["vertex"], "1": [["vertex", "vertex"]]}},
    "map": {"source": "complex", "target": "complex", "map": {"vertex": "vertex"}},
    "session": {"<name>": "any of the objects above"},
}


class InputError(Exception):
  pass


def _load(text: str, session: dict):
  try:
    if text.startswith("@"):
      return session[text[1:]]
    if os.path.exists(text):
      with open(text) as fh:
        return json.load(fh)
    return json.loads(text)
  except (KeyError, json.JSONDecodeError, OSError) as e:
    raise InputError(f"cannot read argument {text!r}: {e}") from e


def _parse(builder, text, session):
  try:
    return builder(_load(text, session))
  except InputError:
    raise
  except (KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
    raise InputError(f"malformed input: {e}") from e


def _marking(a, s):
  return _parse(Marking.from_json, a.marking, s)


def _morphism(a, s):
  return _parse(PSurfMorphism.from_json, a.morphism, s)


def cmd_group(a, s):
  M = _parse(lambda x: [[int(v) for v in r] for r in x], a.relations, s)
  ngens = a.ngens if a.ngens is not None else len(M)
  if len(M) != ngens:
    raise InputError("relation matrix must have one row per generator")
  ncols = len(M[0]) if M else 0
  snf = smith_normal_form(M, ncols)
  G = presentation(M, ngens).group
  out = {"group": G, "rank": G.rank, "free_rank": G.free_rank, "invariant_factors": list(G.torsion),
         "order": G.order, "snf": {"U": snf.U, "D": snf.D, "V": snf.V}}
  if a.wedge:
    out["wedge"] = ExteriorPower(G, a.wedge).group
  return out


def cmd_support(a, s):
  return is_supported_on_symplectic(_marking(a, s))


def cmd_stabilize(a, s):
  return stabilize_marking(_marking(a, s), _morphism(a, s))


def cmd_destabilize(a, s):
  return destabilize_marking(_marking(a, s), _morphism(a, s))


def cmd_classify(a, s):
  f = _morphism(a, s)
  return {"target": f.target, "tags": [classify(st) for st in f.steps],
          "partition_bijective": is_partition_bijective(f), "open_capping": is_open_capping(f),
          "disc_capped_singletons": disc_capped_singletons(f),
          "induced_matrix": f.induced_matrix}


def cmd_torelli(a, s):
  m = _marking(a, s)
  w = _parse(TwistWord.from_json, a.word, s)
  return {"member": torelli_membership(w, m)}


def cmd_orbit(a, s):
  m = _marking(a, s)
  gens = None
  if a.gens:
    gens = _parse(lambda x: [TwistWord.from_json(w) for w in x], a.gens, s)
  return {"index": orbit_index(m, gens)}


def cmd_johnson(a, s):
  m = _marking(a, s)
  w = mu_symplectic_element(m)
  cols = nondegeneracy_matrix(m)
  out = {"omega_mu": w.value, "wedge2": w.group, "wedge3": ExteriorPower(m.target, 3).group,
         "nondegeneracy_columns": cols, "nondegenerate": any(any(c) for c in cols)}
  if a.boundary is not None:
    loop = _parse(lambda x: tuple(int(v) for v in x), a.loop, s)
    out["value"] = johnson_on_discpush(DiscPushClass(a.boundary, loop), m)
  return out


def cmd_verdict(a, s):
  return nonstability_verdict(_marking(a, s), _morphism(a, s))


def cmd_bounds(a, s):
  q = BoundsQuery(rank=a.rank, genus=a.genus, h=a.h, k=a.k, n=a.n, c=a.c)
  return stable_range(q)


def cmd_connectivity(a, s):
  X = _parse(cx.SimplicialComplexFin.from_json, a.complex, s)
  return {"homology": cx.homology(X, a.n), "connected": cx.is_homologically_connected(X, a.n),
          "notion": cx.NOTION}


def cmd_fiber(a, s):
  psi = _parse(cx.SimplicialMap.from_json, a.map, s)
  if a.check is not None:
    return cx.check_fiber_lemma_instance(psi, a.check, corollary=a.corollary)
  if a.sigma is None:
    raise InputError("fiber needs --sigma or --check")
  sig = _parse(lambda x: [str(v) for v in x], a.sigma, s)
  sp = _parse(lambda x: [str(v) for v in x], a.sigma_prime, s) if a.sigma_prime else sig
  return cx.relative_fiber(psi, sp, sig)


def cmd_badlink(a, s):
  X = _parse(cx.SimplicialComplexFin.from_json, a.complex, s)
  sig = _parse(lambda x: [str(v) for v in x], a.sigma, s)
  B = _parse(lambda x: [[str(v) for v in b] for b in x], a.bad, s)
  return cx.bad_simplex_link(X, sig, B)


def build_parser() -> argparse.ArgumentParser:
  p = argparse.ArgumentParser(prog="ptorelli", description=__doc__.splitlines()[0])
  p.add_argument("--schema", action="store_true", help="print the JSON input schemas")
  p.add_argument("--session", help="JSON object of named inputs, referenced as @name")
  sub = p.add_subparsers(dest="command")

  def add(name, fn, *args, help=None):
    sp = sub.add_parser(name, help=help)
    for arg in args:
      sp.add_argument(*arg[0], **arg[1])
    sp.set_defaults(fn=fn)
    return sp

  marking = (["--marking"], {"required": True})
  morphism = (["--morphism"], {"required": True})
  add("group", cmd_group, (["--relations"], {"required": True, "help": "matrix, one row per generator"}),
      (["--ngens"], {"type": int}), (["--wedge"], {"type": int, "choices": [2, 3]}),
      help="canonical form of a presented abelian group")
  add("support", cmd_support, marking, help="symplectic support criterion and witness")
  add("stabilize", cmd_stabilize, marking, morphism)
  add("destabilize", cmd_destabilize, marking, morphism)
  add("classify-morphism", cmd_classify, morphism)
  add("torelli-check", cmd_torelli, marking, (["--word"], {"required": True}))
  add("orbit-index", cmd_orbit, marking, (["--gens"], {}))
  add("johnson", cmd_johnson, marking, (["--boundary"], {}), (["--loop"], {}))
  add("verdict", cmd_verdict, marking, morphism)
  add("bounds", cmd_bounds, *[([f"--{x}"], {"type": int}) for x in ("rank", "genus", "h", "k", "n", "c")])
  add("connectivity", cmd_connectivity, (["--complex"], {"required": True}),
      (["--n"], {"type": int, "required": True}))
  add("fiber", cmd_fiber, (["--map"], {"required": True}), (["--sigma"], {}), (["--sigma-prime"], {}),
      (["--check"], {"type": int}), (["--corollary"], {"action": "store_true"}))
  add("badlink", cmd_badlink, (["--complex"], {"required": True}), (["--sigma"], {"required": True}),
      (["--bad"], {"required": True}))
  return p


def run(argv=None) -> tuple[int, str]:
  """Execute a command line; returns (exit status, JSON text)."""
  parser = build_parser()
  try:
    a = parser.parse_args(argv)
  except SystemExit as e:
    return (int(e.code or 0), "") if e.code in (0, None) else (1, dumps({"error": "invalid arguments"}))
  if a.schema:
    return 0, dumps(SCHEMAS)
  if not a.command:
    return 1, dumps({"error": "no subcommand given"})
  try:
    session = {}
    if a.session:
      session = _load(a.session, {})
      if not isinstance(session, dict):
        raise InputError("session must be a JSON object")
    result = a.fn(a, session)
  except InputError as e:
    return 1, dumps({"error": str(e)})
  except (ValueError, ArithmeticError) as e:
    return 2, dumps({"error": str(e)})
  return 0, dumps(result)


def main(argv=None) -> int:
  code, text = run(argv)
  if text:
    print(text)
  return code


if __name__ == "__main__":
  sys.exit(main())
