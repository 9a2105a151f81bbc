"""Construction sequences built by iterating the circular product.

Level 0 is the base alphabet (one single-letter word per symbol).
Level n+1 consists of the circular products of the chosen k_n-tuples
("prewords") of level-n words.  All occurrence counting goes through
the preword multiplicities, never through text scans of the big words,
so the exact Fractions stay cheap at any stage.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstraintError, InputError
from .ratarith import dyn_order
from .words import LazyCircularWord, circ, parse

#: materialize level words up to this many letters each
DEFAULT_WORD_CAP = 1 << 20


@dataclass
class ConstructionSequence:
    params: object
    sigma_size: int
    prewords: list          # prewords[n] builds level n+1 from level n
    levels: list            # levels[n] = list of words (tuples or lazy)

    @property
    def depth(self):
        return len(self.levels) - 1

    def is_materialized(self, n):
        return all(isinstance(w, tuple) for w in self.levels[n])


def build_sequence(sigma_size, params, prewords, word_cap=DEFAULT_WORD_CAP,
                   strict=False):
    """Iterate the circular product over the given preword tuples.

    prewords[n] is a list of k[n]-tuples of indices into level n.
    Duplicate tuples are collapsed with a warning (they would name the
    same word twice).  In strict mode each level-n word must occur
    exactly k[n]/|level n| times in every tuple, which is what makes
    the next level strongly uniform.
    """
    if sigma_size < 1:
        raise InputError("alphabet must be non-empty")
    if len(prewords) > params.stages:
        raise InputError("got %d preword lists but only %d stages of parameters"
                         % (len(prewords), params.stages))
    levels = [[(a,) for a in range(sigma_size)]]
    kept_prewords = []
    for n, tuples in enumerate(prewords):
        k, l, q = params.k[n], params.l[n], params.q[n]
        prev = levels[n]
        seen = set()
        kept = []
        for t, tup in enumerate(tuples):
            tup = tuple(tup)
            if len(tup) != k:
                raise InputError("stage %d preword %d has arity %d, expected %d"
                                 % (n + 1, t, len(tup), k))
            if any(not 0 <= c < len(prev) for c in tup):
                raise InputError("stage %d preword %d indexes outside level %d"
                                 % (n + 1, t, n))
            if strict:
                if k % len(prev) != 0:
                    raise ConstraintError(
                        "stage %d: %d words cannot occur equally in arity %d"
                        % (n + 1, len(prev), k))
                want = k // len(prev)
                for c in range(len(prev)):
                    if tup.count(c) != want:
                        raise ConstraintError(
                            "stage %d preword %d: word %d occurs %d times, "
                            "expected %d" % (n + 1, t, c, tup.count(c), want))
            if tup in seen:
                warnings.warn("stage %d: duplicate preword %r collapsed"
                              % (n + 1, tup))
                continue
            seen.add(tup)
            kept.append(tup)
        if not kept:
            raise InputError("stage %d has no prewords" % (n + 1,))
        order = dyn_order(params, n)
        next_len = k * l * q * q
        level = []
        for tup in kept:
            children = [prev[c] for c in tup]
            if next_len <= word_cap and all(isinstance(c, tuple) for c in children):
                level.append(circ(children, k, l, q, order))
            else:
                level.append(LazyCircularWord(children, k, l, q, order))
        kept_prewords.append(kept)
        levels.append(level)
    return ConstructionSequence(params, sigma_size, kept_prewords, levels)


def check_unique_readability(cs, n):
    """Occurrences of level-n words inside pairwise concatenations.

    For every ordered pair (u, v) of level-n words, any level-n word
    occurring in uv must sit at offset 0 or len(u).  Returns the list of
    violations as (u_index, v_index, offset, found_index); empty means
    the level is uniquely readable.
    """
    level = cs.levels[n]
    if not cs.is_materialized(n):
        raise InputError("level %d is lazy; readability scan needs tuples" % n)
    q = len(level[0])
    bad = []
    for ui, u in enumerate(level):
        for vi, v in enumerate(level):
            for off, wi in parse(u + v, level):
                if off not in (0, q):
                    bad.append((ui, vi, off, wi))
    return bad


def check_preword_readability(cs, n):
    """Strong unique readability of the stage-n prewords.

    Prewords are words over level-(n-1) indices; the same two-offset
    condition is asked of them directly.
    """
    tuples = cs.prewords[n - 1]
    k = len(tuples[0])
    bad = []
    for ui, u in enumerate(tuples):
        for vi, v in enumerate(tuples):
            for off, wi in parse(u + v, tuples):
                if off not in (0, k):
                    bad.append((ui, vi, off, wi))
    return bad


@dataclass
class UniformityReport:
    stage: int              # transition n -> n+1
    counts: dict            # (w, w') index pair -> occurrences of w in w'
    densities: list         # observed d(w) = mean of f/(q'/q), exact
    strong: bool            # f constant over all pairs
    f_value: object         # the common f when strong, else None
    eps: Fraction           # max over w' of sum_w |f/(q'/q) - d(w)|


def verify_uniformity(cs, n):
    """Occurrence statistics of level-n words inside level n+1.

    Each entry of a preword contributes q[n]*(l[n]-1) occurrences (the
    retained copies across all passes), so f(w, w') is the tuple
    multiplicity scaled by that factor.
    """
    if n >= cs.depth:
        raise InputError("stage %d not built (depth %d)" % (n + 1, cs.depth))
    k, l, q = cs.params.k[n], cs.params.l[n], cs.params.q[n]
    per_copy = q * (l - 1)
    tuples = cs.prewords[n]
    nwords = len(cs.levels[n])
    qratio = Fraction(cs.params.q[n + 1], q)
    counts = {}
    for wi, tup in enumerate(tuples):
        for c in range(nwords):
            counts[(c, wi)] = tup.count(c) * per_copy
    densities = [
        Fraction(sum(counts[(c, wi)] for wi in range(len(tuples))), 1) / qratio
        / len(tuples)
        for c in range(nwords)
    ]
    eps = max(
        sum(abs(Fraction(counts[(c, wi)], 1) / qratio - densities[c])
            for c in range(nwords))
        for wi in range(len(tuples))
    )
    values = {counts[(c, wi)] for c in range(nwords) for wi in range(len(tuples))}
    strong = len(values) == 1
    f_value = values.pop() if strong else None
    if strong:
        # cross-check the closed forms: f = f0*q*(l-1), d = (f0/k)(1-1/l)
        f0 = k // nwords
        assert f_value == f0 * per_copy
        assert all(d == Fraction(f0, k) * (1 - Fraction(1, l)) for d in densities)
    return UniformityReport(n, counts, densities, strong, f_value, eps)


@dataclass
class CylinderEstimate:
    stage: int
    base_level: int
    u_index: int
    proportions: list       # exact Fraction per stage word
    gap: Fraction           # max - min
    bound: Fraction         # 2 * eps
    within_bound: bool


def _occurrence_table(cs, base_level, upto):
    """occ[m][j][i]: occurrences of level-base word i in level-m word j."""
    base = cs.levels[base_level]
    occ = {base_level: [[1 if i == j else 0 for i in range(len(base))]
                        for j in range(len(base))]}
    total = {base_level: 1}
    for m in range(base_level, upto):
        per_copy = cs.params.q[m] * (cs.params.l[m] - 1)
        occ[m + 1] = [
            [sum(occ[m][c][i] for c in tup) * per_copy for i in range(len(base))]
            for tup in cs.prewords[m]
        ]
        total[m + 1] = cs.params.k[m] * per_copy * total[m]
    return occ, total


def estimate_cylinder(cs, u, base_level, n, eps=None):
    """Proportion of the word u among level-base subwords of each
    level-(n+1) word, with the pairwise gap checked against 2*eps.

    eps defaults to the observed deviation from verify_uniformity(cs, n);
    passing a smaller claimed eps turns the check into a real test of
    that claim (within_bound goes False when the claim is violated).
    """
    base = cs.levels[base_level]
    if isinstance(u, int):
        ui = u
    else:
        u = tuple(u)
        matches = [i for i, w in enumerate(base) if w == u]
        if not matches:
            raise InputError("u is not a level-%d word" % base_level)
        ui = matches[0]
    if eps is None:
        eps = verify_uniformity(cs, n).eps
    occ, total = _occurrence_table(cs, base_level, n + 1)
    props = [Fraction(row[ui], total[n + 1]) for row in occ[n + 1]]
    gap = max(props) - min(props)
    bound = 2 * Fraction(eps)
    return CylinderEstimate(n, base_level, ui, props, gap, bound, gap <= bound)


@dataclass
class SWindowCertificate:
    max_stage: int          # deepest stage with a covering occurrence
    witnesses: dict         # stage -> (a, b) with window[origin-a:origin+b] a stage word
    failed_stage: int       # first stage with no covering occurrence, or None


def in_S_window(window, cs, origin):
    """Finite-window membership certificate for the orbit set.

    For each materialized stage m >= 1, look for a stage-m word covering
    the origin and record (a, b) = (distance to its left edge, distance
    to its right edge).  The certificate stops at the first stage with
    no covering occurrence (spacer tails have none at stage 1 already).
    """
    window = tuple(window)
    if not 0 <= origin < len(window):
        raise InputError("origin %d outside window of length %d"
                         % (origin, len(window)))
    witnesses = {}
    failed = None
    max_stage = 0
    for m in range(1, cs.depth + 1):
        if not cs.is_materialized(m):
            break
        qm = len(cs.levels[m][0])
        hit = None
        for off, _wi in parse(window, cs.levels[m]):
            if off <= origin < off + qm:
                hit = (origin - off, off + qm - origin)
                break
        if hit is None:
            failed = m
            break
        witnesses[m] = hit
        max_stage = m
    return SWindowCertificate(max_stage, witnesses, failed)
