"""Command-line interface.

Subcommands mirror the library modules: params, words, seq, proc,
names, factor, smooth, and run (manifest-driven verification suite).
Verification output is line oriented,

    CHECK <name> PASS|FAIL value=<exact-or-float> bound=<...>

with exact rationals printed as a/b.  Exit status: 0 when every check
passes, 1 on any FAIL, 2 on input or parse errors, 3 when a resource
cap is hit.
"""

import argparse
import concurrent.futures
import os
import sys
from fractions import Fraction

import numpy as np

from . import consys, factor, names, procsim, smoothreal, words
from .errors import (CoherenceError, ConstraintError, InputError,
                     OracleMismatch, ResourceError, ToleranceError)
from .ratarith import d_index, derive_params, dyn_order, load_params

DEFAULT_CHECKS = ["boundary", "cylinder", "distinct", "factor", "names",
                  "numerology", "process", "readability", "recursion",
                  "requirements", "stability", "uniformity"]


def frac(x):
    if isinstance(x, Fraction) or isinstance(x, int):
        return str(x)
    return repr(x)


def load_tuples(path):
    """One tuple per line, space-separated indices; # comments."""
    out = []
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(tuple(int(tok) for tok in line.split()))
            except ValueError:
                raise InputError("%s:%d: not an integer tuple" % (path, ln))
    if not out:
        raise InputError("%s: no tuples" % path)
    return out


def parse_point(params, text):
    try:
        offsets = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError("point must be comma-separated integers: %r" % text)
    return factor.SymbolicPoint(params, offsets)


class Context:
    """Lazily built shared state for checks and subcommands."""

    def __init__(self, params, prewords=None, h_words=None, seed=0,
                 cap_atoms=procsim.DEFAULT_ATOM_CAP, sigma=None):
        self.params = params
        self.prewords = prewords or []
        self.h_words = h_words or []
        self.seed = seed
        self.cap_atoms = cap_atoms
        self.sigma = sigma if sigma is not None else params.s[0]
        self._cs = None
        self._procs = None

    @property
    def cs(self):
        if self._cs is None:
            if not self.prewords:
                raise InputError("this operation needs preword files")
            self._cs = consys.build_sequence(self.sigma, self.params,
                                             self.prewords)
        return self._cs

    @property
    def procs(self):
        """Grid processes for stages 0..len(h_words)."""
        if self._procs is None:
            if not self.h_words:
                raise InputError("this operation needs h-word files")
            ps = [procsim.initial_process(self.params)]
            for n, hw in enumerate(self.h_words):
                h = procsim.h_from_words(self.params, n, hw)
                ps.append(procsim.compose_stage(ps[-1], h, self.cap_atoms))
            self._procs = ps
        return self._procs

    def h_grid(self, n):
        return procsim.h_from_words(self.params, n, self.h_words[n])


# ---------------------------------------------------------------------------
# checks for the `run` suite


def check_recursion(ctx):
    p, q = ctx.params.p, ctx.params.q
    ok = p[0] == 0 and q[0] == 1
    for n in range(len(ctx.params.k)):
        ok &= p[n + 1] == p[n] * q[n] * ctx.params.k[n] * ctx.params.l[n] + 1
        ok &= q[n + 1] == ctx.params.k[n] * ctx.params.l[n] * q[n] ** 2
        gap = ctx.params.alpha(n + 1) - ctx.params.alpha(n)
        ok &= gap == Fraction(1, q[n + 1])
    return ok, "q=" + ",".join(map(str, q)), "recursive identity, gap 1/q"


def check_numerology(ctx):
    total = 0
    for n in range(1, ctx.params.stages):
        if ctx.params.q[n] > ctx.cap_atoms:
            break
        order = dyn_order(ctx.params, n, cap=ctx.cap_atoms)
        q = ctx.params.q[n]
        t = order.table
        if not np.all((q - t[1:]) == t[q - np.arange(1, q)]):
            return False, "stage %d" % n, "q-j_i = j_{q-i}"
        total += q - 1
    return True, str(total), "q-j_i = j_{q-i}"


def check_readability(ctx):
    # q_{n-1} = 1 (stage 1) gives degenerate spacer patterns with no
    # readability guarantee, so the scan starts where q exceeds 1
    for n in range(1, ctx.cs.depth + 1):
        if not ctx.cs.is_materialized(n) or ctx.params.q[n - 1] == 1:
            continue
        bad = consys.check_unique_readability(ctx.cs, n)
        if bad:
            return False, "stage %d offset %d" % (n, bad[0][2]), "offsets 0,q only"
    return True, "0 violations", "offsets 0,q only"


def _stage_stats(ctx, n, w):
    p = ctx.params
    return words.boundary_stats(w, k=p.k[n - 1], l=p.l[n - 1], q=p.q[n - 1],
                                order=dyn_order(p, n - 1))


def check_boundary(ctx):
    for n in range(1, ctx.cs.depth + 1):
        if not ctx.cs.is_materialized(n):
            break
        for w in ctx.cs.levels[n]:
            st = _stage_stats(ctx, n, w)
            ln = ctx.params.l[n - 1]
            if st.boundary_fraction != Fraction(1, ln):
                return False, frac(st.boundary_fraction), "1/%d exactly" % ln
            if st.near_fraction > Fraction(3, ln):
                return False, frac(st.near_fraction), "<= 3/%d" % ln
    return True, frac(st.boundary_fraction), "1/l exactly, near <= 3/l"


def check_uniformity(ctx):
    for n in range(ctx.cs.depth):
        rep = consys.verify_uniformity(ctx.cs, n)
        if not rep.strong:
            return False, "stage %d eps=%s" % (n, frac(rep.eps)), "equal counts"
    return True, "f=%s" % frac(rep.f_value), "equal counts"


def check_cylinder(ctx):
    worst = Fraction(0)
    bound = Fraction(0)
    for n in range(ctx.cs.depth):
        for u in range(len(ctx.cs.levels[n])):
            est = consys.estimate_cylinder(ctx.cs, u, n, n)
            worst = max(worst, est.gap)
            bound = max(bound, est.bound)
            if not est.within_bound:
                return False, frac(est.gap), "<= " + frac(est.bound)
    return True, frac(worst), "<= " + frac(bound)


def check_process(ctx):
    proc = ctx.procs[-1]
    towers = proc.towers()
    atoms = np.concatenate(towers)
    ok = len(atoms) == proc.atoms and len(set(atoms.tolist())) == proc.atoms
    for n in range(len(ctx.h_words)):
        h = ctx.h_grid(n)
        rot = procsim.rotation_perm(ctx.params, n, h.cols, h.rows)
        ok &= h.compose(rot) == rot.compose(h)
    return ok, "%d atoms" % proc.atoms, "towers partition; h rot = rot h"


def check_requirements(ctx):
    rep = procsim.check_requirements(ctx.params, ctx.h_words)
    ok = rep.req1 != "fail" and rep.req2 and rep.req3
    val = "req1=%s req2=%s req3=%s" % (rep.req1, rep.req2, rep.req3)
    if not rep.req3 and rep.req3_witness is not None:
        val += " witness=%r" % (rep.req3_witness,)
    return ok, val, "towers distinct, readback exact"


def check_names(ctx):
    for n in range(1, len(ctx.procs)):
        for s in range(ctx.params.s[n]):
            try:
                names.crosscheck_tower(ctx.procs[n], ctx.procs[n - 1],
                                       ctx.h_grid(n - 1), s)
            except OracleMismatch as exc:
                return False, "stage %d tower %d pos %d" % (n, s, exc.index), \
                    "simulated = circular product"
    return True, "all towers", "simulated = circular product"


def check_stability(ctx):
    rep = names.name_stability(ctx.procs[-2], ctx.procs[-1])
    return rep.fraction >= rep.bound, frac(rep.fraction), ">= " + frac(rep.bound)


def check_distinct(ctx):
    rep = names.distinct_names(ctx.procs[-1])
    val = "distinct" if rep.distinct else "duplicate %s,%s" % rep.witness
    return rep.distinct, val, "pairwise distinct tower names"


def check_factor(ctx):
    # rho_trace validates gap ranges and the d_index round-trip itself
    depth = min(2, ctx.params.stages)
    count = 0
    for pt in factor.enumerate_coherent(ctx.params, depth):
        try:
            factor.rho_trace(pt)
        except CoherenceError as exc:
            return False, "offsets %s: %s" % (pt.offsets, exc), \
                "rho monotone, gaps < 1/q_n, d_index round-trip"
        count += 1
    return True, "%d points" % count, "rho monotone, gaps < 1/q_n"


CHECK_FUNCS = {
    "recursion": check_recursion,
    "numerology": check_numerology,
    "readability": check_readability,
    "boundary": check_boundary,
    "uniformity": check_uniformity,
    "cylinder": check_cylinder,
    "process": check_process,
    "requirements": check_requirements,
    "names": check_names,
    "stability": check_stability,
    "distinct": check_distinct,
    "factor": check_factor,
}


def run_checks(ctx, checks, jobs=1):
    """Returns (lines, all_passed); lines sorted by check name."""
    checks = sorted(checks)
    for name in checks:
        if name not in CHECK_FUNCS:
            raise InputError("unknown check %r" % name)

    def one(name):
        ok, value, bound = CHECK_FUNCS[name](ctx)
        return "CHECK %s %s value=%s bound=%s" % (
            name, "PASS" if ok else "FAIL", value, bound), ok

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(one, checks))
    else:
        results = [one(name) for name in checks]
    lines = [line for line, _ in results]
    return lines, all(ok for _, ok in results)


# ---------------------------------------------------------------------------
# manifests


class RunManifest:
    KEYS = ("params", "prewords", "hwords", "checks", "seed", "cap_atoms",
            "out", "sigma", "jobs")

    def __init__(self, path):
        base = os.path.dirname(os.path.abspath(path))
        seen = {}
        with open(path) as fh:
            for ln, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise InputError("%s:%d: expected key = value" % (path, ln))
                key, _, val = line.partition("=")
                key = key.strip()
                if key not in self.KEYS:
                    raise InputError("%s:%d: unknown key %r" % (path, ln, key))
                if key in seen:
                    raise InputError("%s:%d: duplicate key %r" % (path, ln, key))
                seen[key] = val.strip()
        if "params" not in seen:
            raise InputError("%s: missing params" % path)

        def rel(p):
            return p if os.path.isabs(p) else os.path.join(base, p)

        self.params_path = rel(seen["params"])
        self.preword_paths = [rel(p) for p in seen.get("prewords", "").split()]
        self.hword_paths = [rel(p) for p in seen.get("hwords", "").split()]
        self.checks = seen.get("checks", "").split() or None
        self.seed = int(seen.get("seed", "0"))
        self.cap_atoms = int(seen.get("cap_atoms", str(procsim.DEFAULT_ATOM_CAP)))
        self.out = rel(seen["out"]) if "out" in seen else None
        self.sigma = int(seen["sigma"]) if "sigma" in seen else None
        self.jobs = int(seen.get("jobs", "1"))

    def context(self):
        params = load_params(self.params_path)
        prewords = [load_tuples(p) for p in self.preword_paths]
        h_words = [load_tuples(p) for p in self.hword_paths]
        return Context(params, prewords, h_words, self.seed,
                       self.cap_atoms, self.sigma)

    def default_checks(self):
        out = ["recursion", "numerology"]
        if self.preword_paths:
            out += ["readability", "boundary", "uniformity", "cylinder"]
        if self.hword_paths:
            out += ["process", "requirements", "names", "stability",
                    "distinct", "factor"]
        return out


def emit_words(cs, stage, rng=None, out=sys.stdout):
    """Stream a position range of each stage word, one word per line."""
    if not 1 <= stage <= cs.depth:
        raise InputError("stage %d out of range" % stage)
    level = cs.levels[stage]
    total = cs.params.k[stage - 1] * cs.params.l[stage - 1] \
        * cs.params.q[stage - 1] ** 2
    lo, hi = rng if rng is not None else (0, total)
    if not 0 <= lo <= hi <= total:
        raise InputError("range [%d, %d) outside word length %d"
                         % (lo, hi, total))
    for w in level:
        toks = [w[m] for m in range(lo, hi)]
        out.write(words.word_to_text(tuple(toks)) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_params(args, out):
    params = load_params(args.params)
    out.write("k = %s\n" % " ".join(map(str, params.k)))
    out.write("l = %s\n" % " ".join(map(str, params.l)))
    out.write("s = %s\n" % " ".join(map(str, params.s)))
    out.write("p = %s\n" % " ".join(map(str, params.p)))
    out.write("q = %s\n" % " ".join(map(str, params.q)))
    out.write("alpha = %s\n" % " ".join(frac(params.alpha(n))
                                        for n in range(len(params.q))))
    return 0


def _context_from_args(args):
    params = load_params(args.params)
    prewords = [load_tuples(p) for p in getattr(args, "prewords", []) or []]
    h_words = [load_tuples(p) for p in getattr(args, "hwords", []) or []]
    return Context(params, prewords, h_words,
                   seed=getattr(args, "seed", 0),
                   cap_atoms=getattr(args, "cap_atoms",
                                     procsim.DEFAULT_ATOM_CAP),
                   sigma=getattr(args, "sigma", None))


def _parse_range(text):
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def cmd_words(args, out):
    ctx = _context_from_args(args)
    if args.action == "build":
        rng = _parse_range(args.range) if args.range else None
        emit_words(ctx.cs, args.stage, rng, out)
    elif args.action == "decode":
        w = ctx.cs.levels[args.stage][args.index]
        if not isinstance(w, words.LazyCircularWord):
            p, n = ctx.params, args.stage - 1
            children = [ctx.cs.levels[n][c]
                        for c in ctx.cs.prewords[n][args.index]]
            w = words.LazyCircularWord(children, p.k[n], p.l[n], p.q[n],
                                       dyn_order(p, n))
        pos = words.decode_position(w, args.pos)
        out.write("letter = %s\n" % words.word_to_text((w[args.pos],)))
        out.write("position = %r\n" % (pos,))
    elif args.action == "parse":
        target = words.text_to_word(args.text)
        hits = words.parse(target, ctx.cs.levels[args.stage])
        for off, wi in hits:
            out.write("offset=%d word=%d\n" % (off, wi))
        if not hits:
            out.write("no occurrences\n")
    elif args.action == "stats":
        st = _stage_stats(ctx, args.stage,
                          ctx.cs.levels[args.stage][args.index])
        out.write("boundary = %s\n" % frac(st.boundary_fraction))
        out.write("near = %s\n" % frac(st.near_fraction))
    return 0


def cmd_seq(args, out):
    ctx = _context_from_args(args)
    if args.action == "build":
        for n in range(ctx.cs.depth + 1):
            lv = ctx.cs.levels[n]
            out.write("stage %d: %d words of length %d\n"
                      % (n, len(lv), len(lv[0])))
        return 0
    if args.action == "verify":
        lines, ok = run_checks(ctx, ["readability", "boundary"])
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    if args.action == "measure":
        lines, ok = run_checks(ctx, ["uniformity", "cylinder"])
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    if args.action == "s-window":
        window = words.text_to_word(args.window)
        cert = consys.in_S_window(window, ctx.cs, args.origin)
        if cert.failed_stage is not None:
            out.write("REFUSED at stage %d\n" % cert.failed_stage)
            return 1
        for m in sorted(cert.witnesses):
            out.write("stage %d: a=%d b=%d\n" % ((m,) + cert.witnesses[m]))
        return 0
    return 2


def cmd_proc(args, out):
    ctx = _context_from_args(args)
    if args.action == "build":
        proc = ctx.procs[-1]
        out.write("stage %d: %d x %d grid, %d atoms, %d towers\n"
                  % (proc.stage, proc.cols, proc.rows, proc.atoms,
                     ctx.params.s[proc.stage]))
        return 0
    if args.action == "towers":
        proc = ctx.procs[-1]
        for s, tower in enumerate(proc.towers()):
            out.write("tower %d: %s\n" % (s, " ".join(map(str, tower))))
        return 0
    if args.action == "eps":
        rep = procsim.eps_approx(ctx.procs[-2], ctx.procs[-1])
        ok = rep.subordinate and rep.levels_equal
        out.write("CHECK eps-approx %s value=%s bound=subordinate off "
                  "deleted set\n" % ("PASS" if ok else "FAIL", frac(rep.eps)))
        return 0 if ok else 1
    if args.action == "reqs":
        lines, ok = run_checks(ctx, ["requirements", "process"])
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    return 2


def cmd_names(args, out):
    ctx = _context_from_args(args)
    if args.action == "tower":
        name = names.simulate_tower_name(ctx.procs[-1], args.index)
        out.write(words.word_to_text(tuple(int(x) for x in name)) + "\n")
        return 0
    if args.action == "crosscheck":
        n = len(ctx.procs) - 1
        for s in range(ctx.params.s[n]):
            name = names.simulate_tower_name(ctx.procs[n], s)
            out.write(words.word_to_text(tuple(int(x) for x in name)) + "\n")
            try:
                names.crosscheck_tower(ctx.procs[n], ctx.procs[n - 1],
                                       ctx.h_grid(n - 1), s)
            except OracleMismatch as exc:
                out.write("ORACLE-MATCH: no (tower %d, position %d)\n"
                          % (s, exc.index))
                return 1
        out.write("ORACLE-MATCH: yes\n")
        return 0
    if args.action == "stability":
        lines, ok = run_checks(ctx, ["stability"])
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    if args.action == "distinct":
        lines, ok = run_checks(ctx, ["distinct"])
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    return 2


def cmd_factor(args, out):
    params = load_params(args.params)
    pt = parse_point(params, args.point)
    if args.action == "rho":
        tr = factor.rho_trace(pt)
        out.write("rho = %s\n" % " ".join(frac(r) for r in tr.rhos))
        out.write("gaps = %s\n" % " ".join(frac(g) for g in tr.gaps))
        return 0
    if args.action == "shift":
        res = factor.shift_point(pt)
        if isinstance(res, factor.BoundaryCrossing):
            out.write("boundary crossing at stage %d\n" % res.stage)
        else:
            out.write("point = %s\n" % ",".join(map(str, res.offsets)))
        return 0
    if args.action == "pi":
        n = len(pt.offsets) - 1
        skel = factor.skeleton(params, n)
        lo = max(0, pt.offsets[n] - args.width)
        hi = min(params.q[n], pt.offsets[n] + args.width)
        window = tuple(skel[m] for m in range(lo, hi))
        out.write(words.word_to_text(factor.collapse_pi(window)) + "\n")
        return 0
    return 2


def _obedience_table(grid, plane, sigma, rng, samples, out):
    m, n = grid
    pts = rng.random((samples, 2))
    src = smoothreal.cell_of_points(grid, pts)
    dst = smoothreal.cell_of_points(grid, plane.forward(pts))
    target = np.asarray(sigma)[src]
    total_ok = 0
    for cell in range(m * n):
        mask = src == cell
        ok = int(np.sum(dst[mask] == target[mask]))
        total_ok += ok
        out.write("rect %2d -> %2d obedient %.4f\n"
                  % (cell, sigma[cell], ok / max(1, int(mask.sum()))))
    return total_ok / samples


def cmd_smooth(args, out):
    rng = np.random.default_rng(args.seed)
    if args.action == "swap":
        grid = _parse_grid(args.grid)
        spec = smoothreal.SwapSpec(grid, args.k, args.eps)
        plane = smoothreal.approx_swap(spec)
        sigma = list(range(grid[0] * grid[1]))
        sigma[args.k], sigma[args.k + 1] = sigma[args.k + 1], sigma[args.k]
        frac_ok = _obedience_table(grid, plane, sigma, rng, args.samples, out)
        ok = frac_ok >= 1 - args.eps
        out.write("%s obedient %.4f (need %.4f)\n"
                  % ("PASS" if ok else "FAIL", frac_ok, 1 - args.eps))
        return 0 if ok else 1
    if args.action == "realize":
        grid = _parse_grid(args.grid)
        size = grid[0] * grid[1]
        sigma = [int(v) for v in (rng.permutation(size) if args.perm is None
                                  else args.perm.split(","))]
        rep = smoothreal.realize_perm(sigma, grid, args.eps, seed=args.seed,
                                      samples=args.samples)
        frac_ok = _obedience_table(grid, rep.plane_map, sigma,
                                   np.random.default_rng(args.seed + 1),
                                   args.samples, out)
        ok = frac_ok >= 1 - args.eps
        out.write("%s obedient %.4f (need %.4f), %d swaps\n"
                  % ("PASS" if ok else "FAIL", frac_ok, 1 - args.eps,
                     len(rep.swaps)))
        return 0 if ok else 1
    if args.action == "stage":
        ctx = _context_from_args(args)
        grids = [ctx.h_grid(n) for n in range(len(ctx.h_words))]
        try:
            _, reports = smoothreal.stage_map(ctx.params, grids, args.eps,
                                              seed=args.seed,
                                              samples=args.samples)
        except ToleranceError as exc:
            out.write("FAIL obedient %.4f (need %.4f)\n"
                      % (1 - exc.achieved, 1 - args.eps))
            return 1
        for n, rep in enumerate(reports):
            out.write("stage %d obedient %.4f (%d swaps)\n"
                      % (n + 1, rep.obedient, len(rep.swaps)))
        out.write("PASS\n")
        return 0
    return 2


def _parse_grid(text):
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise InputError("grid must be MxN, got %r" % text)


def cmd_run(args, out):
    manifest = RunManifest(args.manifest)
    ctx = manifest.context()
    checks = manifest.checks or manifest.default_checks()
    lines, ok = run_checks(ctx, checks, jobs=manifest.jobs)
    report = "\n".join(lines) + "\n"
    out.write(report)
    if manifest.out:
        os.makedirs(manifest.out, exist_ok=True)
        with open(os.path.join(manifest.out, "report.txt"), "w") as fh:
            fh.write(report)
    return 0 if ok else 1


def build_parser():
    top = argparse.ArgumentParser(prog="circlesys")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, prewords=False, hwords=False):
        p.add_argument("--params", required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap-atoms", dest="cap_atoms", type=int,
                       default=procsim.DEFAULT_ATOM_CAP)
        p.add_argument("--sigma", type=int, default=None)
        if prewords:
            p.add_argument("--prewords", action="append", default=[])
        if hwords:
            p.add_argument("--hwords", action="append", default=[])

    p = sub.add_parser("params", help="derive p, q, alpha from a file")
    p.add_argument("params")

    p = sub.add_parser("words")
    p.add_argument("action", choices=["build", "decode", "parse", "stats"])
    common(p, prewords=True)
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--pos", type=int, default=0)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--range", default=None)
    p.add_argument("--text", default="")

    p = sub.add_parser("seq")
    p.add_argument("action", choices=["build", "verify", "measure", "s-window"])
    common(p, prewords=True)
    p.add_argument("--window", default="")
    p.add_argument("--origin", type=int, default=0)

    p = sub.add_parser("proc")
    p.add_argument("action", choices=["build", "towers", "eps", "reqs"])
    common(p, hwords=True)

    p = sub.add_parser("names")
    p.add_argument("action", choices=["tower", "crosscheck", "stability",
                                      "distinct"])
    common(p, hwords=True)
    p.add_argument("--index", type=int, default=0)

    p = sub.add_parser("factor")
    p.add_argument("action", choices=["rho", "shift", "pi"])
    p.add_argument("--params", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--width", type=int, default=8)

    p = sub.add_parser("smooth")
    p.add_argument("action", choices=["swap", "realize", "stage"])
    p.add_argument("--params")
    p.add_argument("--hwords", action="append", default=[])
    p.add_argument("--grid", default="2x2")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--sigma", type=int, default=None)
    p.add_argument("--cap-atoms", dest="cap_atoms", type=int,
                   default=procsim.DEFAULT_ATOM_CAP)
    p.add_argument("--perm", default=None)

    p = sub.add_parser("run")
    p.add_argument("manifest")
    return top


COMMANDS = {
    "params": cmd_params,
    "words": cmd_words,
    "seq": cmd_seq,
    "proc": cmd_proc,
    "names": cmd_names,
    "factor": cmd_factor,
    "smooth": cmd_smooth,
    "run": cmd_run,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (InputError, ConstraintError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ResourceError as exc:
        print("resource cap: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
