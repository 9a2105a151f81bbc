"""Periodic processes on a rectangular grid of atoms.

The unit square is cut into cols x rows congruent atoms (columns index
the x direction).  A stage-n process carries the composed relabeling
Z_n = h_1 ... h_n as a permutation of the stage-n grid, together with
the rotation by p[n]/q[n], and its towers are read off by following the
rotation orbit of the first column through Z_n.

Atoms are indexed idx = s * cols + u for column u and row s.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConstraintError, InputError, ResourceError

DEFAULT_ATOM_CAP = 1 << 24


class GridPermutation:
    """Permutation of grid atoms with an optional equivariance stride.

    `stride` records the column shift of the rotation this permutation
    is built to commute with (None when not applicable).
    """

    def __init__(self, cols, rows, table, stride=None):
        self.cols = cols
        self.rows = rows
        self.table = np.asarray(table, dtype=np.int64)
        self.stride = stride
        if self.table.shape != (cols * rows,):
            raise InputError("table size %d does not match %d x %d grid"
                             % (self.table.size, cols, rows))

    @classmethod
    def identity(cls, cols, rows):
        return cls(cols, rows, np.arange(cols * rows, dtype=np.int64))

    def idx(self, u, s):
        return s * self.cols + u

    def atom(self, i):
        return (int(i) % self.cols, int(i) // self.cols)

    def apply(self, i):
        return self.table[i]

    def compose(self, other):
        """(self . other)(x) = self(other(x))."""
        if (self.cols, self.rows) != (other.cols, other.rows):
            raise InputError("resolution mismatch in composition")
        return GridPermutation(self.cols, self.rows, self.table[other.table])

    def inverse(self):
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(self.table.size, dtype=np.int64)
        return GridPermutation(self.cols, self.rows, inv, stride=self.stride)

    def lift(self, cols, rows):
        """Refine to a finer grid, moving each sub-atom rigidly."""
        if cols % self.cols or rows % self.rows:
            raise InputError("%d x %d does not refine %d x %d"
                             % (cols, rows, self.cols, self.rows))
        fc = cols // self.cols
        fr = rows // self.rows
        u = np.arange(cols)
        s = np.arange(rows)
        uu, ss = np.meshgrid(u, s)           # ss*cols + uu enumerates atoms
        img = self.table[(ss // fr) * self.cols + (uu // fc)]
        iu = (img % self.cols) * fc + uu % fc
        iv = (img // self.cols) * fr + ss % fr
        return GridPermutation(cols, rows, (iv * cols + iu).ravel())

    def is_permutation(self):
        return np.array_equal(np.sort(self.table), np.arange(self.table.size))

    def __eq__(self, other):
        return (isinstance(other, GridPermutation)
                and self.cols == other.cols and self.rows == other.rows
                and np.array_equal(self.table, other.table))


def rotation_perm(params, n, cols, rows):
    """The rotation by p[n]/q[n] as a column shift on a cols x rows grid."""
    if cols % params.q[n]:
        raise InputError("cols=%d not divisible by q[%d]=%d"
                         % (cols, n, params.q[n]))
    shift = params.p[n] * (cols // params.q[n]) % cols
    u = np.arange(cols * rows, dtype=np.int64)
    table = (u // cols) * cols + (u % cols + shift) % cols
    return GridPermutation(cols, rows, table, stride=shift)


def h_from_words(params, n, h_words):
    """Stage-(n+1) relabeling permutation built from its word data.

    h_words has s[n+1] words of length k[n] over {0..s[n]-1}.  On the
    first column of width 1/q[n] the atom in slot t of strip s is sent
    into the target strip h_words[s][t]; matching is deterministic:
    occurrences of each symbol ordered by (word, slot) meet target atoms
    ordered by (row, column).  The rest of the grid is the equivariant
    copy under the stage-n rotation.
    """
    k, q = params.k[n], params.q[n]
    s_lo, s_hi = params.s[n], params.s[n + 1]
    h_words = [tuple(w) for w in h_words]
    if len(h_words) != s_hi:
        raise InputError("expected %d words, got %d" % (s_hi, len(h_words)))
    for s, w in enumerate(h_words):
        if len(w) != k:
            raise InputError("word %d has length %d, expected %d" % (s, len(w), k))
        if any(not 0 <= c < s_lo for c in w):
            raise InputError("word %d uses symbols outside 0..%d" % (s, s_lo - 1))
    cols, rows = k * q, s_hi
    strip = rows // s_lo                       # rows per stage-n strip
    table = np.arange(cols * rows, dtype=np.int64)
    for i in range(s_lo):
        sources = [(s, t) for s in range(rows) for t in range(k)
                   if h_words[s][t] == i]
        targets = [(sp, tp) for sp in range(i * strip, (i + 1) * strip)
                   for tp in range(k)]
        if len(sources) != len(targets):
            raise ConstraintError(
                "symbol %d occurs %d times but its strip holds %d atoms; "
                "each word needs it exactly k/s = %d times"
                % (i, len(sources), len(targets), k // s_lo))
        for (s, t), (sp, tp) in zip(sources, targets):
            for m in range(q):               # equivariant copies
                table[s * cols + t + m * k] = sp * cols + tp + m * k
    perm = GridPermutation(cols, rows, table, stride=(params.p[n] * k) % cols)
    assert perm.is_permutation()
    return perm


@dataclass
class GridProcess:
    """Stage-n process: grid resolution, composed relabeling, towers."""
    params: object
    stage: int
    cols: int
    rows: int
    Z: GridPermutation
    h_list: list            # the h permutations at their native resolutions

    @property
    def atoms(self):
        return self.cols * self.rows

    def rotation(self):
        return rotation_perm(self.params, self.stage, self.cols, self.rows)

    def tower(self, s):
        """Atom indices of tower s, base to top (length q[stage])."""
        n = self.stage
        q = self.params.q[n]
        p = self.params.p[n]
        step = self.cols // q
        t = np.arange(q, dtype=np.int64)
        base_cols = (t * p % q) * step
        return self.Z.apply(s * (self.rows // self.params.s[n]) * self.cols
                            + base_cols)

    def towers(self):
        return [self.tower(s) for s in range(self.params.s[self.stage])]

    def transform(self):
        """Pointwise map Z rot Z^{-1} as a grid permutation."""
        return self.Z.compose(self.rotation()).compose(self.Z.inverse())

    def Z_partial(self, m):
        """Z_m = h_1 ... h_m lifted to this process's resolution."""
        acc = GridPermutation.identity(self.cols, self.rows)
        for h in self.h_list[:m]:
            acc = acc.compose(h.lift(self.cols, self.rows))
        return acc


def initial_process(params):
    """The stage-0 process: trivial rotation, s[0] height-1 towers."""
    cols, rows = 1, params.s[0]
    return GridProcess(params, 0, cols, rows,
                       GridPermutation.identity(cols, rows), [])


def compose_stage(proc, h, cap_atoms=DEFAULT_ATOM_CAP):
    """Advance a stage-n process to stage n+1 with the relabeling h."""
    n = proc.stage
    params = proc.params
    if n >= params.stages:
        raise InputError("no stage-%d parameters" % (n + 1,))
    want = (params.k[n] * params.q[n], params.s[n + 1])
    if (h.cols, h.rows) != want:
        raise InputError("h has resolution %dx%d, expected %dx%d"
                         % (h.cols, h.rows, *want))
    cols, rows = params.q[n + 1], params.s[n + 1]
    if cols * rows > cap_atoms:
        raise ResourceError("stage-%d grid needs %d atoms, cap is %d"
                            % (n + 1, cols * rows, cap_atoms))
    Z = proc.Z.lift(cols, rows).compose(h.lift(cols, rows))
    return GridProcess(params, n + 1, cols, rows, Z, proc.h_list + [h])


def build_process(params, h_words_per_stage, cap_atoms=DEFAULT_ATOM_CAP):
    """Compose h_from_words over consecutive stages, starting at stage 0."""
    proc = initial_process(params)
    for n, h_words in enumerate(h_words_per_stage):
        proc = compose_stage(proc, h_from_words(params, n, h_words),
                             cap_atoms=cap_atoms)
    return proc


@dataclass
class EpsApproxReport:
    eps: Fraction           # mass of the deleted set D
    deleted: int            # atoms in D
    blocks: int             # complete coarse traversals found
    subordinate: bool       # off D, fine towers traverse coarse towers
    levels_equal: bool      # X - D meets coarse levels in equal masses


def eps_approx(coarse, fine):
    """Approximation defect between consecutive processes.

    The deleted set D consists of the fine tower levels that are newly
    labelled b or e at the fine stage; eps is its mass (1/l for one
    stage step).  `subordinate` confirms that off D every fine tower
    splits into complete base-to-top traversals of coarse towers, and
    `levels_equal` that the complement of D meets the levels of each
    coarse tower in equal masses.  Note D is not minimal for these two
    clauses alone: the all-b run of the first pass happens to traverse
    a coarse tower consecutively too.
    """
    from .names import spacer_columns  # local import, no cycle at module load

    params = coarse.params
    if fine.cols % coarse.cols or fine.rows % coarse.rows:
        raise InputError("fine grid does not refine coarse grid")
    if fine.stage != coarse.stage + 1:
        raise InputError("processes must be one stage apart")
    q = params.q[coarse.stage]
    qf = params.q[fine.stage]
    fc = fine.cols // coarse.cols
    fr = fine.rows // coarse.rows

    # which coarse level (tower, step) owns each fine atom
    owner = np.empty(fine.atoms, dtype=np.int64)
    n_coarse = params.s[coarse.stage]
    for S in range(n_coarse):
        for t, a in enumerate(coarse.tower(S)):
            u, s = int(a) % coarse.cols, int(a) // coarse.cols
            for ds in range(fr):
                row = (s * fr + ds) * fine.cols
                lo = row + u * fc
                owner[lo:lo + fc] = S * q + t

    # word position t of a fine tower is a new spacer iff the column it
    # occupies is freshly labelled at the fine stage
    marks = spacer_columns(params, fine.stage)
    col_of_t = np.arange(qf, dtype=np.int64) * params.p[fine.stage] % qf
    is_spacer = marks.b_cols[col_of_t] | marks.e_cols[col_of_t]

    deleted = []
    blocks = 0
    subordinate = True
    for s in range(params.s[fine.stage]):
        tw = fine.tower(s)
        own = owner[tw]
        t = 0
        while t < qf:
            if is_spacer[t]:
                deleted.append(tw[t])
                t += 1
                continue
            S, step = divmod(int(own[t]), q)
            if (step == 0 and t + q <= qf
                    and np.array_equal(own[t:t + q], np.arange(S * q, S * q + q))):
                blocks += 1
                t += q
            else:
                subordinate = False
                deleted.append(tw[t])
                t += 1

    mask = np.zeros(fine.atoms, dtype=bool)
    if deleted:
        mask[np.array(deleted, dtype=np.int64)] = True
    per_level = np.zeros(n_coarse * q, dtype=np.int64)
    np.add.at(per_level, owner[~mask], 1)
    per_level = per_level.reshape(n_coarse, q)
    levels_equal = all(len(set(row)) == 1 for row in per_level.tolist())
    return EpsApproxReport(Fraction(len(deleted), fine.atoms),
                           len(deleted), blocks, subordinate, levels_equal)


@dataclass
class RequirementReport:
    req1: str               # "pass" | "unverifiable" | "fail"
    req2: bool
    req2_witness: object    # (stage, word_index, symbol) or None
    req3: bool
    req3_witness: object    # (stage, i, j) duplicate pair or None


def check_requirements(params, h_words_per_stage):
    """The three admissibility requirements, checked on a finite prefix.

    Growth of s can only be confirmed or refuted asymptotically, so a
    non-decreasing but not-yet-growing prefix is reported as
    "unverifiable" rather than passed.
    """
    s = params.s[:len(h_words_per_stage) + 1]
    if any(b < a for a, b in zip(s, s[1:])):
        req1 = "fail"
    elif len(s) > 1 and s[-1] > s[0]:
        req1 = "pass"
    else:
        req1 = "unverifiable"

    req2, req2_w = True, None
    req3, req3_w = True, None
    for n, h_words in enumerate(h_words_per_stage):
        h_words = [tuple(w) for w in h_words]
        want = params.k[n] // params.s[n]
        for wi, w in enumerate(h_words):
            for i in range(params.s[n]):
                if w.count(i) != want and req2:
                    req2, req2_w = False, (n + 1, wi, i)
        seen = {}
        for wi, w in enumerate(h_words):
            if w in seen and req3:
                req3, req3_w = False, (n + 1, seen[w], wi)
            seen.setdefault(w, wi)
    return RequirementReport(req1, req2, req2_w, req3, req3_w)
