"""Command-line front end.

Subcommands: ``coset`` (build / mul / canon / count), ``char`` (thoma /
nessonov / young / assign), ``verify`` (property suites), ``export``
(json / dot).  Exit codes: 0 ok, 1 verification failure, 2 parse or
validation error, 3 bound exceeded, 4 I/O error.  The environment
variable ``TRAINCAT_BOUND`` overrides the enumeration bound.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

import numpy as np

from . import bigraph, chips, coset_oracle, characters, gem, surfaces, tensor_oracle
from .coset_oracle import PairSpec
from .perm_core import ColoredPerm, parse_perm

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_PARSE):
        super().__init__(message)
        self.code = code


def _bound(args) -> int:
    env = os.environ.get("TRAINCAT_BOUND")
    if env is not None:
        return int(env)
    return getattr(args, "bound", None) or coset_oracle.DEFAULT_GROUP_BOUND


def _pair_of(args) -> PairSpec:
    name = args.pair
    if name in ("bi", "bisymmetric"):
        return PairSpec.bisymmetric()
    if name in ("tri", "trisymmetric"):
        return PairSpec.trisymmetric()
    if name == "diag":
        return PairSpec.diagonal(args.copies)
    if name == "wreath":
        return PairSpec.wreath(args.valence)
    if name == "young":
        return PairSpec.young(args.colors)
    raise CliError(f"unknown pair {name!r}")


def _parse_levels(text: str, pair: PairSpec):
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if len(parts) != 2 and pair.kind != "young":
        raise CliError(f"levels must be 'alpha,beta', got {text!r}")
    try:
        if pair.kind == "young":
            if len(parts) != 2 * pair.colors and len(parts) != 2:
                raise CliError(
                    f"young levels need 2 or {2 * pair.colors} entries"
                )
            half = len(parts) // 2
            alpha = tuple(int(p) for p in parts[:half])
            beta = tuple(int(p) for p in parts[half:])
            if half == 1:
                alpha, beta = alpha[0], beta[0]
            return pair.normalize_level(alpha), pair.normalize_level(beta)
        return int(parts[0]), int(parts[1])
    except ValueError as ex:
        raise CliError(f"bad levels {text!r}: {ex}")


def _parse_element(text: str, pair: PairSpec):
    try:
        if pair.kind == "diagonal":
            segments = [s for s in text.split(";")]
            comps = []
            for seg in segments:
                seg = seg.strip()
                if ":" in seg:
                    seg = seg.split(":", 1)[1]
                comps.append(parse_perm(seg if seg.strip() else "()", m=1))
            if len(comps) != pair.copies:
                raise CliError(f"need {pair.copies} components, got {len(comps)}")
            return tuple(comps)
        g = parse_perm(text, m=pair.point_colors)
        return g
    except CliError:
        raise
    except ValueError as ex:
        raise CliError(f"cannot parse element {text!r}: {ex}")


def _encoder_name(pair: PairSpec, requested) -> str:
    if requested:
        return requested
    if pair.kind == "diagonal" and pair.copies == 2:
        return "chips"
    if pair.kind == "diagonal":
        return "surface"
    if pair.kind == "wreath":
        return "bigraph"
    return "smatrix"


def _encode(pair: PairSpec, name: str, g, alpha, beta):
    if name == "chips":
        if pair.kind != "diagonal" or pair.copies != 2:
            raise CliError("chips encode the bisymmetric pair")
        return chips.chip_from_pair(g[0], g[1], alpha, beta)
    if name == "surface":
        if pair.kind != "diagonal":
            raise CliError("surfaces encode diagonal pairs")
        return surfaces.surface_from_tuple(g, alpha, beta)
    if name == "gem":
        if pair.kind != "diagonal":
            raise CliError("chamber complexes encode diagonal pairs")
        return gem.gem_from_tuple(g, alpha, beta)
    if name == "bigraph":
        if pair.kind != "wreath":
            raise CliError("bipartite diagrams encode the wreath pair")
        return bigraph.graph_from_perm(g, alpha, beta)
    if name == "smatrix":
        if pair.kind != "young":
            raise CliError("flow matrices encode the young pair")
        return characters.coset_invariant_young(g, alpha)
    raise CliError(f"unknown encoder {name!r}")


def _canon_of(obj) -> bytes:
    if isinstance(obj, chips.Chip):
        return chips.chip_canon(obj)
    if isinstance(obj, surfaces.EquippedSurface):
        return surfaces.surface_canon(obj)
    if isinstance(obj, gem.GemComplex):
        return gem.gem_canon(obj)
    if isinstance(obj, bigraph.BipartiteDiagram):
        return bigraph.graph_canon(obj)
    if isinstance(obj, characters.SMatrix):
        return json.dumps(obj.to_json()).encode()
    raise CliError(f"no canonical code for {type(obj).__name__}")


def _mul_of(a, b):
    if isinstance(a, chips.Chip):
        return chips.chip_mul(a, b)
    if isinstance(a, surfaces.EquippedSurface):
        return surfaces.surface_mul(a, b)
    if isinstance(a, gem.GemComplex):
        return gem.gem_mul(a, b)
    if isinstance(a, bigraph.BipartiteDiagram):
        return bigraph.graph_mul(a, b)
    if isinstance(a, characters.SMatrix):
        return a + b
    raise CliError(f"cannot glue {type(a).__name__}")


def _load_coset(args, pair, name, slot: str, levels_attr: str = "levels"):
    """A coset argument is either inline perms (--g/--h) or a JSON file."""
    text = getattr(args, slot)
    if text is None:
        raise CliError(f"missing --{slot}")
    if text.startswith("@"):
        try:
            data = json.load(open(text[1:], encoding="utf-8"))
        except OSError as ex:
            raise CliError(str(ex), EXIT_IO)
        loaders = {
            "chips": chips.Chip.from_json,
            "surface": surfaces.EquippedSurface.from_json,
            "gem": gem.GemComplex.from_json,
            "bigraph": bigraph.BipartiteDiagram.from_json,
            "smatrix": characters.SMatrix,
        }
        return loaders[name](data)
    alpha, beta = _parse_levels(getattr(args, levels_attr) or args.levels, pair)
    return _encode(pair, name, _parse_element(text, pair), alpha, beta)


# -- coset ---------------------------------------------------------------


def cmd_coset(args) -> int:
    pair = _pair_of(args)
    name = _encoder_name(pair, args.encoder)
    if args.action == "count":
        alpha, beta = _parse_levels(args.levels, pair)
        try:
            orbits = coset_oracle.enumerate_double_cosets_finite(
                pair, args.n, alpha, beta, bound=_bound(args)
            )
        except ValueError as ex:
            raise CliError(str(ex), EXIT_BOUND)
        print(len(orbits))
        return EXIT_OK
    if args.action == "build":
        alpha, beta = _parse_levels(args.levels, pair)
        obj = _encode(pair, name, _parse_element(args.g, pair), alpha, beta)
        print(json.dumps(obj.to_json(), sort_keys=True))
        return EXIT_OK
    if args.action == "canon":
        obj = _load_coset(args, pair, name, "g")
        print(_canon_of(obj).decode())
        return EXIT_OK
    if args.action == "mul":
        a = _load_coset(args, pair, name, "g")
        b = _load_coset(args, pair, name, "h", levels_attr="levels2")
        try:
            prod = _mul_of(a, b)
        except ValueError as ex:
            raise CliError(str(ex))
        print(json.dumps(prod.to_json(), sort_keys=True))
        return EXIT_OK
    raise CliError(f"unknown coset action {args.action!r}")


# -- char ----------------------------------------------------------------


def _parse_floats(text: str) -> list:
    if not text:
        return []
    return [float(v) for v in text.replace(",", " ").split()]


def _parse_smatrix(text: str) -> characters.SMatrix:
    cleaned = text.replace(".", "0")
    try:
        rows = json.loads(cleaned)
        return characters.SMatrix(rows)
    except (ValueError, TypeError) as ex:
        raise CliError(f"cannot parse flow matrix {text!r}: {ex}")


def _parse_gram(text: str) -> characters.GramSpec:
    text = text.strip()
    if text.startswith("ones(") and text.endswith(")"):
        return characters.GramSpec.ones(int(text[5:-1]))
    try:
        return characters.GramSpec(json.loads(text))
    except (ValueError, TypeError) as ex:
        raise CliError(f"cannot parse Gram matrix {text!r}: {ex}")


def _format_value(value) -> str:
    if isinstance(value, complex):
        if abs(value.imag) < 1e-15:
            value = value.real
        else:
            return f"{value.real:.12g}{value.imag:+.12g}j"
    text = f"{float(value):.12g}"
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def cmd_char(args) -> int:
    if args.action == "thoma":
        params = characters.ThomaParams(
            _parse_floats(args.alpha or ""), _parse_floats(args.beta or "")
        )
        g = parse_perm(args.g, m=1)
        print(_format_value(characters.thoma_char(params, g)))
        return EXIT_OK
    if args.action == "nessonov":
        gram = _parse_gram(args.A)
        s = _parse_smatrix(args.S)
        print(_format_value(characters.nessonov_char(gram, s)))
        return EXIT_OK
    if args.action == "young":
        vecs = [np.asarray(v, dtype=complex) for v in json.loads(args.xis)]
        vecs = [v / np.linalg.norm(v) for v in vecs]
        g = parse_perm(args.g, m=len(vecs))
        print(_format_value(characters.young_spherical(vecs, g)))
        return EXIT_OK
    if args.action == "assign":
        pair = PairSpec.diagonal(args.copies)
        g = _parse_element(args.g, pair)
        arr = np.asarray(json.loads(args.coeffs), dtype=complex)
        arr = arr / np.linalg.norm(arr.ravel())
        s = surfaces.surface_from_tuple(g, 0, 0)
        print(_format_value(surfaces.spherical_assignment_sum(s, arr)))
        return EXIT_OK
    raise CliError(f"unknown char action {args.action!r}")


# -- verify --------------------------------------------------------------


def _verify_stabilization(rng, cases, report) -> bool:
    ok = True
    jobs = [
        ("chips", PairSpec.bisymmetric(),
         lambda g, a, b: chips.chip_canon(chips.chip_from_pair(g[0], g[1], a, b))),
        ("surface", PairSpec.trisymmetric(),
         lambda g, a, b: surfaces.surface_canon(surfaces.surface_from_tuple(g, a, b))),
        ("bigraph", PairSpec.wreath(3),
         lambda g, a, b: bigraph.graph_canon(bigraph.graph_from_perm(g, a, b))),
    ]
    for name, pair, encoder in jobs:
        good = 0
        for _ in range(cases):
            p = coset_oracle.random_element(pair, rng, 6)
            q = coset_oracle.random_element(pair, rng, 6)
            lv = [rng.randint(0, 3) for _ in range(3)]
            if coset_oracle.stabilization_check(pair, p, q, *lv, encoder, extra=3):
                good += 1
        report(f"stabilization {name}: {good}/{cases}")
        ok = ok and good == cases
    return ok


def _gluing_jobs():
    return [
        ("chips", PairSpec.bisymmetric(),
         lambda g, a, b: chips.chip_from_pair(g[0], g[1], a, b),
         chips.chip_mul, chips.chip_canon),
        ("surface", PairSpec.trisymmetric(),
         surfaces.surface_from_tuple, surfaces.surface_mul, surfaces.surface_canon),
        ("gem", PairSpec.diagonal(4),
         gem.gem_from_tuple, gem.gem_mul, gem.gem_canon),
        ("bigraph", PairSpec.wreath(3),
         bigraph.graph_from_perm, bigraph.graph_mul, bigraph.graph_canon),
    ]


def _verify_gluing(rng, cases, report) -> bool:
    ok = True
    for name, pair, build, mul, canon in _gluing_jobs():
        good = 0
        for _ in range(cases):
            a, b, c = (rng.randint(0, 3) for _ in range(3))
            p = coset_oracle.random_element(pair, rng, 6)
            q = coset_oracle.random_element(pair, rng, 6)
            r, _ = coset_oracle.coset_product_rep(pair, p, q, a, b, c)
            if canon(mul(build(p, a, b), build(q, b, c))) == canon(build(r, a, c)):
                good += 1
        report(f"gluing {name}: {good}/{cases}")
        ok = ok and good == cases
    return ok


def _verify_characters(rng, cases, report) -> bool:
    ok = True
    worst = 0.0
    e = ColoredPerm.identity(1)
    param_sets = [([1.0], []), ([], [1.0]), ([0.5, 0.5], []),
                  ([0.5, 0.25, 0.25], []), ([0.5], [0.5])]
    for alphas, betas in param_sets:
        params = characters.ThomaParams(alphas, betas)
        fill = tensor_oracle.CoeffTensor.bisymmetric_fill(alphas, betas)
        for _ in range(max(1, cases // 10)):
            images = list(range(1, 5))
            rng.shuffle(images)
            g = ColoredPerm.from_images(images)
            dev = abs(
                characters.thoma_char(params, g)
                - tensor_oracle.super_rep_matrix_element(fill, 4, (g, e))
            )
            worst = max(worst, dev)
    report(f"characters thoma vs super oracle: max dev {worst:.3g}")
    ok = ok and worst <= 1e-10
    gen = np.random.default_rng(rng.randint(0, 2**31))
    arr = gen.normal(size=(2, 2, 2)) + 1j * gen.normal(size=(2, 2, 2))
    arr /= np.linalg.norm(arr.ravel())
    fill3 = tensor_oracle.CoeffTensor(arr)
    pair3 = PairSpec.trisymmetric()
    worst = 0.0
    for _ in range(max(1, cases // 10)):
        t = coset_oracle.random_element(pair3, rng, 4)
        n = max(1, max(c.max_index() for c in t))
        s = surfaces.surface_from_tuple(t, 0, 0, n)
        dev = abs(
            surfaces.spherical_assignment_sum(s, fill3)
            - tensor_oracle.rep_matrix_element(fill3, n, t)
        )
        worst = max(worst, dev)
    report(f"characters assignment sum vs tensor oracle: max dev {worst:.3g}")
    ok = ok and worst <= 1e-10
    vecs = gen.normal(size=(3, 2)) + 1j * gen.normal(size=(3, 2))
    vecs = [v / np.linalg.norm(v) for v in vecs]
    ypair = PairSpec.young(3)
    worst = 0.0
    for _ in range(max(1, cases // 10)):
        g = coset_oracle.random_element(ypair, rng, 3)
        n = max(1, max((pt.index for pt in g.support), default=0))
        dev = abs(
            characters.young_spherical(vecs, g)
            - tensor_oracle.young_matrix_element(vecs, g, n)
        )
        worst = max(worst, dev)
    report(f"characters young vs tensor oracle: max dev {worst:.3g}")
    ok = ok and worst <= 1e-10
    return ok


def _orbit_count(n, *gens) -> int:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for k in range(1, n + 1):
            a, b = find(k), find(g.apply_index(k))
            if a != b:
                parent[a] = b
    return len({find(k) for k in range(1, n + 1)})


def _verify_topology(rng, cases, report) -> bool:
    pair = PairSpec.trisymmetric()
    bad = 0
    for _ in range(cases):
        t = coset_oracle.random_element(pair, rng, 6)
        n = max(1, max(c.max_index() for c in t))
        s = surfaces.surface_from_tuple(t, n, n, n)
        comps = surfaces.components(s)
        if any(c.chi % 2 or c.chi > 2 for c in comps):
            bad += 1
            continue
        quotients = {
            (2, 3): t[1].inverse().compose(t[2]),
            (3, 1): t[2].inverse().compose(t[0]),
            (1, 2): t[0].inverse().compose(t[1]),
        }
        counts = {k: len(v) for k, v in surfaces.vertices(s).items()}
        for key, quot in quotients.items():
            # vertex count includes one cycle per fixed point of the range
            fixed = n - len({pt.index for pt in quot.support})
            if counts[key] != fixed + len(quot.cycles()):
                bad += 1
                break
        else:
            if len(comps) != _orbit_count(n, quotients[(2, 3)], quotients[(3, 1)]):
                bad += 1
    report(f"topology random surfaces: {cases - bad}/{cases}")
    return bad == 0


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    lines = []

    def report(msg):
        lines.append(msg)
        print(msg)

    suites = {
        "stabilization": _verify_stabilization,
        "gluing": _verify_gluing,
        "characters": _verify_characters,
        "topology": _verify_topology,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        ok = suites[name](rng, args.cases, report) and ok
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


# -- export --------------------------------------------------------------


def cmd_export(args) -> int:
    pair = _pair_of(args)
    name = _encoder_name(pair, args.encoder)
    obj = _load_coset(args, pair, name, "g")
    if args.format == "json":
        payload = json.dumps(obj.to_json(), sort_keys=True, indent=2)
    elif args.format == "dot":
        if isinstance(obj, gem.GemComplex):
            obj = gem.surface_of_gem(obj)
        if not hasattr(obj, "to_dot"):
            raise CliError(f"no dot form for {type(obj).__name__}")
        payload = obj.to_dot()
    else:
        raise CliError(f"unknown format {args.format!r}")
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload if payload.endswith("\n") else payload + "\n")
        else:
            print(payload)
    except OSError as ex:
        raise CliError(str(ex), EXIT_IO)
    return EXIT_OK


# -- wiring --------------------------------------------------------------


def _add_pair_options(sub):
    sub.add_argument("--pair", default="tri",
                     choices=["bi", "bisymmetric", "tri", "trisymmetric",
                              "diag", "wreath", "young"])
    sub.add_argument("--copies", type=int, default=3)
    sub.add_argument("--valence", type=int, default=3)
    sub.add_argument("--colors", type=int, default=2)
    sub.add_argument("--encoder", default=None,
                     choices=["chips", "surface", "gem", "bigraph", "smatrix"])
    sub.add_argument("--levels", default="0,0")
    sub.add_argument("--bound", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traincat",
        description="Double-coset diagram calculus for infinite symmetric group pairs",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    coset = subs.add_parser("coset", help="build, glue, canonify or count cosets")
    coset.add_argument("action", choices=["build", "mul", "canon", "count"])
    _add_pair_options(coset)
    coset.add_argument("--g", default=None, help="element or @file.json")
    coset.add_argument("--h", default=None, help="second element for mul")
    coset.add_argument("--levels2", default=None, help="levels of the second factor")
    coset.add_argument("--n", type=int, default=3, help="finite degree for count")

    char = subs.add_parser("char", help="evaluate character formulas")
    char.add_argument("action", choices=["thoma", "nessonov", "young", "assign"])
    char.add_argument("--alpha", default="", help="thoma alphas, e.g. 0.5,0.25")
    char.add_argument("--beta", default="", help="thoma betas")
    char.add_argument("--g", default="()", help="permutation in cycle notation")
    char.add_argument("--A", default="ones(2)", help="Gram matrix or ones(m)")
    char.add_argument("--S", default="[[.,0],[0,.]]", help="flow matrix, '.' on diagonal")
    char.add_argument("--xis", default="[[1,0],[0,1]]", help="unit vectors as JSON")
    char.add_argument("--coeffs", default="[[1]]", help="coefficient tensor as JSON")
    char.add_argument("--copies", type=int, default=3)

    verify = subs.add_parser("verify", help="run randomized verification suites")
    verify.add_argument("suite", choices=["stabilization", "gluing", "characters",
                                          "topology", "all"])
    verify.add_argument("--seed", type=int, default=20240701)
    verify.add_argument("--cases", type=int, default=100)

    export = subs.add_parser("export", help="write a coset as json or dot")
    export.add_argument("format", choices=["json", "dot"])
    _add_pair_options(export)
    export.add_argument("--g", default=None, help="element or @file.json")
    export.add_argument("--out", default=None, help="output file (default stdout)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "coset": cmd_coset,
        "char": cmd_char,
        "verify": cmd_verify,
        "export": cmd_export,
    }
    try:
        return handlers[args.command](args)
    except CliError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return ex.code
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
