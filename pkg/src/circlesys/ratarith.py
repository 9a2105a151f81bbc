"""Exact parameter arithmetic for the tower construction.

Everything here is integer or Fraction arithmetic; no floats.  The
coefficient lists k, l drive the recursion

    p[0] = 0, q[0] = 1
    p[n+1] = p[n] * q[n] * k[n] * l[n] + 1
    q[n+1] = k[n] * l[n] * q[n] ** 2

and the rotation numbers alpha[n] = p[n] / q[n] converge with
alpha[n+1] - alpha[n] = 1 / q[n+1].
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import ConstraintError, InputError, ResourceError

#: default cap on materialized dynamical-order tables (number of entries)
DEFAULT_TABLE_CAP = 2 ** 22


@dataclass(frozen=True)
class Params:
    """Coefficient lists plus the derived convergents.

    k and l have one entry per stage transition, s one entry per stage
    (so len(s) == len(k) + 1).  p[n]/q[n] is the stage-n rotation number
    in lowest terms.
    """

    k: tuple
    l: tuple
    s: tuple
    p: tuple = field(default=())
    q: tuple = field(default=())

    @property
    def stages(self):
        """Largest stage index n for which q[n] is defined."""
        return len(self.k)

    def alpha(self, n):
        return Fraction(self.p[n], self.q[n])


def derive_params(k, l, s):
    """Run the convergent recursion and validate the coefficient lists.

    Raises InputError for malformed lists and ConstraintError for
    divisibility violations, naming the first bad stage.
    """
    k = tuple(k)
    l = tuple(l)
    s = tuple(s)
    if len(l) != len(k):
        raise InputError("k and l must have the same length, got %d and %d"
                         % (len(k), len(l)))
    if len(s) != len(k) + 1:
        raise InputError("s must have one more entry than k, got %d and %d"
                         % (len(s), len(k)))
    for name, seq, lo in (("k", k, 1), ("l", l, 2), ("s", s, 1)):
        for n, v in enumerate(seq):
            if not isinstance(v, int) or v < lo:
                raise InputError("%s[%d] = %r must be an integer >= %d"
                                 % (name, n, v, lo))
    for n in range(len(k)):
        if k[n] % s[n] != 0:
            raise ConstraintError("stage %d: s[%d]=%d does not divide k[%d]=%d"
                                  % (n, n, s[n], n, k[n]))
        if s[n + 1] % s[n] != 0:
            raise ConstraintError("stage %d: s[%d]=%d does not divide s[%d]=%d"
                                  % (n, n, s[n], n + 1, s[n + 1]))
        if s[n + 1] > s[n] ** k[n]:
            raise ConstraintError("stage %d: s[%d]=%d exceeds s[%d]**k[%d]=%d"
                                  % (n, n + 1, s[n + 1], n, n, s[n] ** k[n]))

    p = [0]
    q = [1]
    for n in range(len(k)):
        p.append(p[n] * q[n] * k[n] * l[n] + 1)
        q.append(k[n] * l[n] * q[n] ** 2)
    for n in range(1, len(p)):
        assert gcd(p[n], q[n]) == 1
    return Params(k=k, l=l, s=s, p=tuple(p), q=tuple(q))


class DynOrder:
    """Dynamical ordering of the q[n] intervals at one stage.

    j(i) is the number of rotation steps after which the orbit of the
    base interval lands on the i-th interval in geometric order:
    j(i) = p[n]^{-1} * i mod q[n].  Tables up to `cap` entries are
    materialized (int64 is safe while q < 2**31); larger stages fall
    back to on-demand evaluation from the stored modular inverse.
    """

    def __init__(self, p, q, cap=DEFAULT_TABLE_CAP):
        self.p = p
        self.q = q
        # q[0] = 1 forces p=0; its "inverse" is 0 as well
        self.pinv = pow(p, -1, q) if q > 1 else 0
        if q <= cap:
            self.table = (self.pinv * np.arange(q, dtype=np.int64)) % q
        else:
            self.table = None

    def __len__(self):
        return self.q

    def __getitem__(self, i):
        if not 0 <= i < self.q:
            raise InputError("interval index %d out of range [0, %d)" % (i, self.q))
        if self.table is not None:
            return int(self.table[i])
        return (self.pinv * i) % self.q


def dyn_order(params, n, cap=DEFAULT_TABLE_CAP, require_table=False):
    """DynOrder for stage n of `params`.

    With require_table=True a stage whose table would exceed `cap`
    raises ResourceError instead of going on-demand.
    """
    if not 0 <= n <= params.stages:
        raise InputError("stage %d out of range [0, %d]" % (n, params.stages))
    q = params.q[n]
    if require_table and q > cap:
        raise ResourceError("stage %d table needs %d entries, cap is %d"
                            % (n, q, cap))
    return DynOrder(params.p[n], q, cap=cap)


def d_index(params, n, x):
    """Dynamical position of the point x in [0, 1) at stage n.

    Returns j such that x lies in the interval the base reaches after j
    rotation steps, i.e. the interval [j*p mod q, j*p mod q + 1) / q.
    """
    x = Fraction(x)
    if not 0 <= x < 1:
        raise InputError("x = %s must lie in [0, 1)" % x)
    q = params.q[n]
    i = int(x * q)  # geometric interval index
    if q == 1:
        return 0
    return (pow(params.p[n], -1, q) * i) % q


def parse_params_text(text):
    """Parse the `key = values` parameter format.

    Lines are `k = 2 2`, `l = 4 4`, `s = 2 2 4`; blank lines and
    #-comments are ignored.  Returns a Params via derive_params.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError("line %d: expected `name = values`, got %r"
                             % (lineno, raw))
        name, _, rest = line.partition("=")
        name = name.strip()
        if name not in ("k", "l", "s"):
            raise InputError("line %d: unknown parameter %r" % (lineno, name))
        if name in fields:
            raise InputError("line %d: duplicate parameter %r" % (lineno, name))
        try:
            fields[name] = [int(tok) for tok in rest.split()]
        except ValueError:
            raise InputError("line %d: non-integer token in %r" % (lineno, rest))
    for name in ("k", "l", "s"):
        if name not in fields:
            raise InputError("missing parameter %r" % name)
    return derive_params(fields["k"], fields["l"], fields["s"])


def load_params(path):
    with open(path) as fh:
        return parse_params_text(fh.read())
