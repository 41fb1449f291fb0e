"""Command-line front end: ``facial <command> [options]``.

Exit status is 0 when every check passes, 1 when an identity fails (a witness
is printed) and 2 for malformed input or structural errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from . import io
from .bar import (FiniteMonoid, bar_facial, hopf_chain_map, join_power, milnor_stage)
from .bifacial import bifacial_compare, random_twisted_product
from .chains import ChainError, HomologyResult, fat_chains, homology, induced_map, pointed_chains
from .core import FacialMap, Report, StructuralError, truncate, validate
from .cotriple import (PointedSet, check_comonad, cotriple_bifacial, exhaustive_pairs,
                       identity_comonad, lambda_resolution, pointed_sets, product_comonad)
from .moore import (MooreLoop, bar_identities_on_loops, concat, random_loop, random_times,
                    retraction_witness)
from .random_instances import random_contracted, random_facial_set
from .rectify import appendix_suite, libman_check, petitlibman_check

PASS, IDENTITY_FAILURE, STRUCTURAL_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    n: int | None = None
    p: int | None = None
    seed: int = 0
    budget: int = 200_000
    format: str = "text"

    def __post_init__(self):
        if self.budget <= 0:
            raise StructuralError("budget must be positive", "--budget")
        for flag in ("n", "p"):
            v = getattr(self, flag)
            if v is not None and v < 0:
                raise StructuralError(f"--{flag} must be nonnegative", f"--{flag}")


class Outcome:
    """Checks and results accumulated by one command."""

    def __init__(self, command):
        self.command = command
        self.checks = []
        self.results = {}
        self.witness = None

    def check(self, label, passed, witness=None):
        self.checks.append({"label": label, "passed": bool(passed)})
        if not passed and self.witness is None:
            self.witness = {"check": label, "detail": io.plain(witness)}
        return passed

    def absorb(self, rep: Report, prefix=""):
        for label, passed in rep.verdicts:
            self.check(prefix + label, passed)
        if rep.witness is not None and self.witness is None:
            self.witness = {"check": prefix + rep.witness[0], "detail": io.plain(rep.witness[1])}

    def absorb_validation(self, rep, label):
        w = rep.violations[0].describe() if rep.violations else None
        self.check(f"{label} ({rep.checked} identities)", rep.ok, w)

    @property
    def ok(self):
        return all(c["passed"] for c in self.checks)

    def as_json(self):
        return {"command": self.command, "ok": self.ok, "checks": self.checks,
                "results": io.plain(self.results), "witness": self.witness}

    def as_text(self):
        out = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['label']}" for c in self.checks]
        for key, value in self.results.items():
            if isinstance(value, list) and value and isinstance(value[0], str):
                out.append(f"{key}:")
                out.extend(f"  {line}" for line in value)
            else:
                out.append(f"{key}: {value}")
        if self.witness is not None:
            out.append(f"witness: {self.witness['check']}: {self.witness['detail']}")
        return "\n".join(out) + "\n"


def homology_lines(H: HomologyResult):
    return [f"H{k} = {g}" for k, g in enumerate(H.table())]


def _monoid(args, default="z2"):
    if args.input and args.command in ("bar", "milnor", "join", "hopf"):
        return io.monoid_from_json(io.read_json(args.input))
    return FiniteMonoid.named(args.group or default)


def _n(cfg, default):
    return default if cfg.n is None else cfg.n


# -- commands ------------------------------------------------------------------------

def cmd_validate(cfg, args, out: Outcome):
    if args.bar:
        F = bar_facial(FiniteMonoid.named(args.bar), args.variant, _n(cfg, 3))
        label = f"bar {args.variant}({args.bar})"
    else:
        if not cfg.input:
            raise StructuralError("validate needs --input or --bar", "--input")
        data = io.read_json(cfg.input)
        if isinstance(data, dict) and "grid" in data:
            from .bifacial import validate_bifacial
            Z = io.bifacial_from_json(data)
            out.absorb_validation(validate_bifacial(Z), "bifacial identities")
            return
        F = io.facial_from_json(data)
        label = "facial set"
    modes = ["faces"]
    if F.has_augmentation:
        modes.append("augmentation")
    if F.has_contraction:
        modes.append("contraction")
    if args.mode != "all":
        modes = [args.mode]
    for mode in modes:
        out.absorb_validation(validate(F, mode), f"{label}: {mode}")


def _facial_source(cfg, args):
    if args.bar:
        return bar_facial(FiniteMonoid.named(args.bar), args.variant, _n(cfg, 2)), f"|{args.variant}({args.bar})|"
    if not cfg.input:
        raise StructuralError("need --input or --bar", "--input")
    return io.facial_from_json(io.read_json(cfg.input)), "input"


def cmd_homology(cfg, args, out: Outcome):
    F, label = _facial_source(cfg, args)
    n = _n(cfg, F.top)
    if n > F.top:
        raise StructuralError(f"stage {n} beyond top level {F.top}", "--n")
    C = pointed_chains(F, n)[0] if args.pointed else fat_chains(F, n)
    try:
        H = homology(C)
    except ChainError as exc:
        out.check(f"boundary squares to zero on {label} stage {n}", False, str(exc))
        return
    out.check(f"boundary squares to zero on {label} stage {n}", True)
    out.results["homology"] = homology_lines(H)


def cmd_bar(cfg, args, out: Outcome):
    M = _monoid(args)
    n = _n(cfg, 3)
    G = bar_facial(M, "G", n)
    P = bar_facial(M, "P", n)
    out.absorb_validation(validate(G, "faces"), f"G({M.name}) faces")
    out.absorb_validation(validate(P, "faces"), f"P({M.name}) faces")
    out.absorb_validation(validate(P, "contraction"), f"P({M.name}) contraction")
    out.results["homology"] = homology_lines(homology(fat_chains(G, n)))


def cmd_milnor(cfg, args, out: Outcome):
    M = _monoid(args)
    n = _n(cfg, 2)
    E, B = milnor_stage(M, n, budget=cfg.budget)
    HE, HB = homology(E.chains()), homology(B.chains())
    out.check(f"E_{n}({M.name}) is acyclic in degrees < {n}",
              HE.reduced().upto(n - 1).is_zero() if n else True, str(HE))
    out.results["cells"] = f"E_{n}: {E.counts()}, B_{n}: {B.counts()}"
    out.results["homology"] = homology_lines(HB.upto(n))


def cmd_join(cfg, args, out: Outcome):
    M = _monoid(args)
    n = _n(cfg, 1)
    J = join_power(M.elements, n + 1)
    H = homology(J.chains()).reduced()
    expected = (len(M) - 1) ** (n + 1)
    out.check(f"reduced H_{n} free of rank {expected}", H.betti(n) == expected and not H.torsion(n),
              str(H))
    out.check(f"reduced homology vanishes below {n}", H.upto(n - 1).is_zero() if n else True, str(H))
    out.results["reduced homology"] = homology_lines(H)


def cmd_hopf(cfg, args, out: Outcome):
    M = _monoid(args)
    try:
        f = hopf_chain_map(M)
    except ChainError as exc:
        out.check("Hopf map commutes with boundaries", False, str(exc))
        return
    out.check("Hopf map commutes with boundaries", True)
    A, _ = induced_map(f, 1)
    out.results["induced H1 matrix"] = [" ".join(f"{int(v):3d}" for v in row) for row in A.tolist()] or ["(empty)"]


def cmd_rectify(cfg, args, out: Outcome):
    if cfg.input:
        Y = io.facial_from_json(io.read_json(cfg.input))
        instances = [(Y, _n(cfg, Y.top))]
    else:
        rng = random.Random(cfg.seed)
        top = _n(cfg, 3)
        instances = []
        for j in range(args.count):
            n = j % (top + 1)
            instances.append((random_facial_set(rng, [rng.randint(1, 5) for _ in range(n + 1)]), n))
    failed = 0
    for j, (Y, n) in enumerate(instances):
        rep = appendix_suite(Y, n)
        if not rep.ok:
            failed += 1
            out.absorb(rep, f"instance {j}: ")
    out.check(f"appendix identities on {len(instances)} facial sets", failed == 0)
    out.results["instances"] = len(instances)


def _bifacial_source(cfg, args, rng):
    if cfg.input:
        return [io.bifacial_from_json(io.read_json(cfg.input))]
    if args.cotriple:
        E = PointedSet(["e*", "e1"], "e*")
        Y = bar_facial(FiniteMonoid.named(args.group or "z2"), "G", 2)
        return [cotriple_bifacial(product_comonad(E), Y, 2)]
    return [random_twisted_product(rng, 2, 2) for _ in range(args.count)]


def cmd_libman(cfg, args, out: Outcome):
    rng = random.Random(cfg.seed)
    grids = _bifacial_source(cfg, args, rng)
    for j, Z in enumerate(grids):
        n = _n(cfg, min(Z.K, Z.P, 2))
        rep = libman_check(Z, n)
        prefix = f"grid {j}: " if len(grids) > 1 else ""
        out.absorb(rep, prefix)
        if "homology_base" in rep.details:
            out.results[f"{prefix}base homology"] = str(rep.details["homology_base"])
            out.results[f"{prefix}double realization homology"] = str(rep.details["homology_double"])


def cmd_bifacial_compare(cfg, args, out: Outcome):
    rng = random.Random(cfg.seed)
    grids = _bifacial_source(cfg, args, rng)
    for j, Z in enumerate(grids):
        n, p = min(_n(cfg, Z.K), Z.K), min(cfg.p if cfg.p is not None else Z.P, Z.P)
        rep = bifacial_compare(Z, n, p)
        prefix = f"grid {j}: " if len(grids) > 1 else ""
        out.check(f"{prefix}signed cell bijection is a chain isomorphism (n={n}, p={p})", rep.ok,
                  rep.failures)
        out.results[f"{prefix}homology"] = str(rep.homology_rows_first)


def _petit_demo(rng):
    A = truncate(random_contracted(rng, [2, 2]), 1)
    C = truncate(random_contracted(rng, [2, 2]), 1)
    from .core import levelwise_power
    B = levelwise_power(A, 2)
    alpha = FacialMap(B, A, [{c: c[0] for c in B.cells(k)} for k in range(2)],
                      {c: c[0] for c in B.cells(-1)})
    beta = FacialMap(B, C, [{c: C.basepoint(k) for c in B.cells(k)} for k in range(2)],
                     {c: C.basepoint(-1) for c in B.cells(-1)})
    return A, B, C, alpha, beta


def cmd_petitlibman(cfg, args, out: Outcome):
    if cfg.input:
        data = io.read_json(cfg.input)
        A, B, C = (io.facial_from_json(data[key]) for key in ("A", "B", "C"))
        alpha = io.map_from_json(data["alpha"], B, A)
        beta = io.map_from_json(data["beta"], B, C)
    else:
        A, B, C, alpha, beta = _petit_demo(random.Random(cfg.seed))
    rep = petitlibman_check(A, B, C, alpha, beta)
    out.absorb(rep)
    out.results.update(rep.details.get("readings", {}))


def cmd_cotriple(cfg, args, out: Outcome):
    top = _n(cfg, 2)
    if args.x_size or args.e_size:
        pairs = [(list(pointed_sets(args.x_size or 2, "x"))[-1], list(pointed_sets(args.e_size or 2, "e"))[-1])]
    else:
        pairs = list(exhaustive_pairs(3, 3))
    for X in pointed_sets(3, "x"):
        out.check(f"identity comonad laws |X|={len(X)}", check_comonad(identity_comonad(), X).ok)
    bad = []
    for X, E in pairs:
        T = product_comonad(E)
        law = check_comonad(T, X, budget=cfg.budget)
        if not law.ok:
            bad.append(("laws", len(X), len(E), law.summary()))
        for n in range(top + 1):
            L = lambda_resolution(T, X, n, budget=cfg.budget)
            v = validate(L, "all")
            if not v.ok:
                bad.append(("resolution", len(X), len(E), n, v.summary()))
            H = homology(pointed_chains(L, n)[0])
            expected = HomologyResult.of(len(X) - 1, *([0] * n)).upto(n - 1)
            if H.upto(n - 1) != expected:
                bad.append(("pointed chains", len(X), len(E), n, str(H)))
    out.check(f"product comonad laws and resolution identities on {len(pairs)} (X, E) pairs, n <= {top}",
              not bad, bad[:1])
    out.results["pairs"] = len(pairs)


def cmd_moore(cfg, args, out: Outcome):
    rng = random.Random(cfg.seed)
    if cfg.input:
        loops = io.loops_from_json(io.read_json(cfg.input))
    else:
        loops = [random_loop(rng, args.breakpoints) for _ in range(args.count)]
    bad = None
    for w in loops:
        times = w.times() + random_times(rng, w.length, args.samples)
        bad = bad or retraction_witness(w, times)
    out.check(f"ev . gamma = id on {len(loops)} loops", bad is None, bad)
    unit = MooreLoop.unit(loops[0].dim if loops else 2)
    assoc = unital = True
    for a, b, c in zip(loops, loops[1:] + loops[:1], loops[2:] + loops[:2]):
        assoc &= concat(concat(a, b), c) == concat(a, concat(b, c))
        unital &= concat(a, unit) == a == concat(unit, a)
    out.check("concatenation is associative", assoc)
    out.check("constant loop is a two-sided unit", unital)
    bars = [bar_identities_on_loops(loops[j: j + 3]) for j in range(0, max(len(loops) - 2, 1), 3)]
    out.check("bar face identities on loop triples", all(r.ok for r in bars),
              next((r.summary() for r in bars if not r.ok), None))


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "bar": cmd_bar,
    "milnor": cmd_milnor,
    "join": cmd_join,
    "hopf": cmd_hopf,
    "rectify": cmd_rectify,
    "libman": cmd_libman,
    "bifacial-compare": cmd_bifacial_compare,
    "petitlibman": cmd_petitlibman,
    "cotriple": cmd_cotriple,
    "moore": cmd_moore,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file")
    common.add_argument("--n", type=int, help="truncation level")
    common.add_argument("--p", type=int, help="second truncation level (bifacial)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=200_000, help="cell budget")
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="facial", description="Exact checks on facial sets.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = {name: sub.add_parser(name, parents=[common]) for name in COMMANDS}
    for name in ("validate", "homology"):
        p[name].add_argument("--bar", help="named monoid for the bar construction (trivial, z2, z3, s3, and)")
        p[name].add_argument("--variant", choices=("G", "P"), default="G")
    p["validate"].add_argument("--mode", choices=("all", "faces", "augmentation", "contraction"),
                               default="all")
    p["homology"].add_argument("--pointed", action="store_true", help="collapse basepoint cells")
    for name in ("bar", "milnor", "join", "hopf", "libman", "bifacial-compare"):
        p[name].add_argument("--group", help="named monoid or group (trivial, z2, z3, s3, and)")
    for name in ("rectify", "libman", "bifacial-compare"):
        p[name].add_argument("--count", type=int, default=50 if name == "rectify" else 5)
    for name in ("libman", "bifacial-compare"):
        p[name].add_argument("--cotriple", action="store_true",
                             help="use the product-comonad resolution of a bar construction")
    p["cotriple"].add_argument("--x-size", type=int)
    p["cotriple"].add_argument("--e-size", type=int)
    p["moore"].add_argument("--count", type=int, default=200)
    p["moore"].add_argument("--breakpoints", type=int, default=12)
    p["moore"].add_argument("--samples", type=int, default=50)
    return parser


def run(cfg: RunConfig, args) -> tuple[int, Outcome]:
    out = Outcome(cfg.command)
    COMMANDS[cfg.command](cfg, args, out)
    return (PASS if out.ok else IDENTITY_FAILURE), out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.input, args.n, args.p, args.seed, args.budget, args.format)
        code, out = run(cfg, args)
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STRUCTURAL_ERROR
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return STRUCTURAL_ERROR
    sys.stdout.write(io.dumps(out.as_json()) if cfg.format == "json" else out.as_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
