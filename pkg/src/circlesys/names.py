"""Names of tower levels and their symbolic cross-check.

A tower level at stage n is labelled by the base-alphabet strip it came
from, unless it entered a spacer column at some stage m <= n, in which
case it carries that stage's b or e label forever after.  The labels
use the same integer convention as the words module (strips are their
index, spacers are B and E), so a simulated tower name can be compared
letter-for-letter with a circular product of the previous stage's
names.  The two computations share nothing past the parameters: one
walks grid permutations, the other multiplies words.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError, OracleMismatch
from .procsim import GridPermutation, rotation_perm
from .ratarith import dyn_order
from .words import B, E, circ


@dataclass
class NameLabeling:
    """Spacer columns newly labelled at one stage, in geometric order."""
    stage: int
    b_cols: np.ndarray      # bool over q[stage] columns
    e_cols: np.ndarray


def spacer_columns(params, m):
    """Which stage-m columns acquire a b or e label at stage m.

    Column c sits at word position t = j_c (the dynamical order), and
    is newly labelled when that position is a top-level spacer of the
    stage-m circular product.
    """
    if m < 1:
        raise InputError("spacer labels start at stage 1")
    k, l, q_prev = params.k[m - 1], params.l[m - 1], params.q[m - 1]
    q = params.q[m]
    order = dyn_order(params, m)
    if order.table is None:
        raise InputError("stage %d too large to materialize column labels" % m)
    t = order.table
    order_prev = dyn_order(params, m - 1)
    ji = np.asarray([order_prev[i] for i in range(q_prev)], dtype=np.int64)
    block_len = l * q_prev
    i = t // (k * block_len)
    rr = t % block_len
    head = q_prev - ji[i]
    b_cols = rr < head
    e_cols = rr >= block_len - ji[i]
    return NameLabeling(m, b_cols, e_cols)


@dataclass
class QPartition:
    """Per-atom labels at some grid resolution: strip index, B, or E."""
    cols: int
    rows: int
    labels: np.ndarray

    def of(self, atom):
        return int(self.labels[atom])


def q_labels(params, h_list, stage, cols, rows):
    """Label every atom of a cols x rows grid for the stage-n process.

    An atom is b/e when its pullback through Z_m lands in a stage-m
    spacer column for some m <= stage.  When several stages claim an
    atom the latest one wins: a new spacer run may transit a column
    that an earlier stage already labelled, and the later relabeling is
    what the stage-n tower names read.  Unclaimed atoms keep their base
    strip index.
    """
    atoms = cols * rows
    labels = (np.arange(atoms, dtype=np.int64) // cols) * params.s[0] // rows
    Z = GridPermutation.identity(cols, rows)
    for m in range(1, stage + 1):
        Z = Z.compose(h_list[m - 1].lift(cols, rows))
        pre = Z.inverse().table
        col_m = (pre % cols) * params.q[m] // cols
        marks = spacer_columns(params, m)
        labels[marks.b_cols[col_m]] = B
        labels[marks.e_cols[col_m]] = E
    return QPartition(cols, rows, labels)


def simulate_tower_name(proc, s):
    """Label sequence along tower s of the given process, base to top."""
    part = q_labels(proc.params, proc.h_list, proc.stage, proc.cols, proc.rows)
    return tuple(int(v) for v in part.labels[proc.tower(s)])


def u_words(proc, h, s):
    """The k child name-words for strip s of the next-stage relabeling.

    Word j lists, in rotation-orbit order, the stage-n labels of the
    h-images of the strip-s atoms in residue class j of the first-pass
    columns.  These are the tuple entries whose circular product the
    next stage's tower name must reproduce on its interior.
    """
    n = proc.stage
    params = proc.params
    k, q, p = params.k[n], params.q[n], params.p[n]
    if (h.cols, h.rows) != (k * q, params.s[n + 1]):
        raise InputError("h resolution %dx%d does not fit stage %d"
                         % (h.cols, h.rows, n))
    part = q_labels(params, proc.h_list, n, h.cols, h.rows)
    Z = proc.Z.lift(h.cols, h.rows)
    out = []
    for j in range(k):
        word = []
        for t in range(q):
            col = j + (t * p % q) * k
            atom = s * h.cols + col
            word.append(int(part.labels[Z.apply(h.apply(atom))]))
        out.append(tuple(word))
    return out


@dataclass
class Transect:
    """Stage-(n+1) word rebuilt by following the transit interval."""
    stage: int
    word: tuple


def transect_word(params, n, children):
    """Rebuild the stage-(n+1) word by stepping an interval of width
    1/q[n+1] through its passes, without using the circular product.

    The dynamical order is recovered by walking the stage-n rotation
    orbit; inner letters come from the geometric column the interval
    occupies at each step; the b/e runs follow the pass arithmetic.
    The first pass has no e run, so each child's first copy shows up
    as a full b run.
    """
    k, l, q = params.k[n], params.l[n], params.q[n]
    p = params.p[n]
    p2, q2 = params.p[n + 1], params.q[n + 1]
    children = [tuple(w) for w in children]
    if len(children) != k or any(len(w) != q for w in children):
        raise InputError("need %d children of length %d" % (k, q))

    dynpos = [0] * q                 # steps for the orbit to reach column c
    c = 0
    for step in range(q):
        dynpos[c] = step
        c = (c + p) % q

    out = []
    x = 0                            # interval position, in units of 1/q[n+1]
    block_len = l * q
    for t in range(k * l * q * q):
        m = t // (k * block_len)
        rr = t % block_len
        jm = dynpos[m]
        if rr < q - jm:
            out.append(B)
        elif rr >= block_len - jm:
            out.append(E)
        else:
            a = x // block_len       # occupied column of the k*q grid
            out.append(children[a % k][dynpos[a // k]])
        x = (x + p2) % q2
    return Transect(n + 1, tuple(out))


def crosscheck_tower(proc_next, proc, h, s):
    """Two independent names for tower s at the next stage.

    The grid route simulates the tower and reads labels; the symbolic
    route takes the circular product of the child name-words chosen by
    h_words[s].  They must agree everywhere: on the interior by the
    name computation, on the spacers because both install them from the
    same column arithmetic.  Raises OracleMismatch with the first
    differing position.
    """
    simulated = simulate_tower_name(proc_next, s)
    us = u_words(proc, h, s)
    n = proc.stage
    params = proc.params
    symbolic = circ(us, params.k[n], params.l[n], params.q[n],
                    dyn_order(params, n))
    if simulated != symbolic:
        i = next(i for i, (a, b) in enumerate(zip(simulated, symbolic)) if a != b)
        raise OracleMismatch("tower %d name disagrees at position %d" % (s, i),
                             index=i, left=simulated[i], right=symbolic[i])
    return simulated


@dataclass
class StabilityReport:
    matched: int
    atoms: int
    fraction: Fraction
    bound: Fraction         # 1 - 3/l[n]


def name_stability(coarse, fine):
    """Fraction of atoms whose [-q, q] names agree across the two stages.

    Both names are read with the finer stage's labels, following the
    two realized transforms on the fine grid.
    """
    params = coarse.params
    n = coarse.stage
    q = params.q[n]
    cols, rows = fine.cols, fine.rows
    part = q_labels(params, fine.h_list, fine.stage, cols, rows)
    t_coarse = (coarse.Z.lift(cols, rows)
                .compose(rotation_perm(params, n, cols, rows))
                .compose(coarse.Z.lift(cols, rows).inverse()))
    t_fine = fine.transform()
    ok = np.ones(cols * rows, dtype=bool)
    for table in (t_coarse.table, t_fine.table):
        assert np.array_equal(np.sort(table), np.arange(cols * rows))
    fwd_c = bwd_c = fwd_f = bwd_f = np.arange(cols * rows, dtype=np.int64)
    inv_c = t_coarse.inverse().table
    inv_f = t_fine.inverse().table
    ok &= part.labels[fwd_c] == part.labels[fwd_f]
    for _ in range(q):
        fwd_c = t_coarse.table[fwd_c]
        fwd_f = t_fine.table[fwd_f]
        bwd_c = inv_c[bwd_c]
        bwd_f = inv_f[bwd_f]
        ok &= part.labels[fwd_c] == part.labels[fwd_f]
        ok &= part.labels[bwd_c] == part.labels[bwd_f]
    matched = int(ok.sum())
    return StabilityReport(matched, cols * rows,
                           Fraction(matched, cols * rows),
                           1 - Fraction(3, params.l[n]))


@dataclass
class DistinctReport:
    distinct: bool
    witness: object         # (s, s') with equal names, or None


def distinct_names(proc):
    """Whether all towers of the process carry different names."""
    seen = {}
    for s in range(proc.params.s[proc.stage]):
        name = simulate_tower_name(proc, s)
        if name in seen:
            return DistinctReport(False, (seen[name], s))
        seen[name] = s
    return DistinctReport(True, None)
