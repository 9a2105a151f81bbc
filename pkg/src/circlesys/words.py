"""Words over an integer alphabet and the circular product operator.

Inner symbols are non-negative ints.  Two reserved letters mark the
spacer runs: B (written `b`) and E (written `e`).  A word is a plain
tuple of ints; big stages use LazyCircularWord, which stores the
construction DAG and decodes single positions on demand.

The circular product of k words of common length q, with multiplicity
l and dynamical ordering j, is

    prod_{i<q} prod_{j<k}  b^(q - j_i)  w_j^(l-1)  e^(j_i)

of total length k * l * q**2.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

B = -1
E = -2


@dataclass(frozen=True)
class Boundary:
    """Position inside a spacer run of a circular product."""
    letter: int            # B or E
    pass_index: int        # i < q
    block: int             # j < k
    offset: int            # position within the run


@dataclass(frozen=True)
class Interior:
    """Position inside one of the l-1 retained copies of a child word."""
    pass_index: int
    block: int
    copy: int              # which repetition, < l-1
    inner: int             # position within the child word, < q


def _check_structure(children, k, l, q):
    if k < 1 or l < 2 or q < 1:
        raise InputError("need k >= 1, l >= 2, q >= 1, got k=%d l=%d q=%d"
                         % (k, l, q))
    if len(children) != k:
        raise InputError("expected %d child words, got %d" % (k, len(children)))
    for j, w in enumerate(children):
        if len(w) != q:
            raise InputError("child %d has length %d, expected %d"
                             % (j, len(w), q))


def circ(children, k, l, q, order):
    """Materialize the circular product as a tuple of symbols.

    `order` is indexable with order[i] = j_i for i < q (a DynOrder or
    any sequence).  Result length is k*l*q**2.
    """
    _check_structure(children, k, l, q)
    out = []
    for i in range(q):
        ji = order[i]
        for j in range(k):
            out.extend([B] * (q - ji))
            out.extend(tuple(children[j]) * (l - 1))
            out.extend([E] * ji)
    return tuple(out)


class LazyCircularWord:
    """Circular product evaluated positionally, without materializing.

    Children may be tuples or further LazyCircularWords; only the
    lengths and the stage orderings are held in memory, so stage words
    far beyond RAM can still be decoded letter by letter.
    """

    def __init__(self, children, k, l, q, order):
        _check_structure(children, k, l, q)
        self.children = list(children)
        self.k = k
        self.l = l
        self.q = q
        self.order = order
        self.length = k * l * q * q

    def __len__(self):
        return self.length

    def decode(self, m):
        """Classify position m as Boundary or Interior (one level deep)."""
        if not 0 <= m < self.length:
            raise InputError("position %d out of range [0, %d)" % (m, self.length))
        q, l, k = self.q, self.l, self.k
        block_len = l * q
        block = m // block_len
        i, j = divmod(block, k)
        r = m - block * block_len
        ji = self.order[i]
        head = q - ji
        if r < head:
            return Boundary(B, i, j, r)
        body = (l - 1) * q
        if r < head + body:
            copy, inner = divmod(r - head, q)
            return Interior(i, j, copy, inner)
        return Boundary(E, i, j, r - head - body)

    def __getitem__(self, m):
        pos = self.decode(m)
        if isinstance(pos, Boundary):
            return pos.letter
        child = self.children[pos.block]
        return child[pos.inner]


def decode_position(word, m):
    """Position class of m in a lazy circular word (pass, block, offsets)."""
    if not isinstance(word, LazyCircularWord):
        raise InputError("decode_position needs a LazyCircularWord")
    return word.decode(m)


def parse(x, words):
    """All occurrences of dictionary words in x, as (offset, index) pairs.

    Every dictionary word must have the same length.  The scan is
    exhaustive over all offsets; overlapping occurrences are reported.
    """
    words = [tuple(w) for w in words]
    if not words:
        raise InputError("empty dictionary")
    length = len(words[0])
    if length == 0 or any(len(w) != length for w in words):
        raise InputError("dictionary words must share a positive length")
    index = {}
    for i, w in enumerate(words):
        index.setdefault(w, i)
    x = tuple(x)
    hits = []
    for off in range(len(x) - length + 1):
        i = index.get(x[off:off + length])
        if i is not None:
            hits.append((off, i))
    return hits


@dataclass(frozen=True)
class BoundaryStats:
    boundary_fraction: Fraction    # exactly 1/l
    near_fraction: Fraction        # positions within q of a spacer


def _boundary_intervals(k, l, q, order):
    """Spacer runs of a circular product, as half-open position intervals."""
    block_len = l * q
    out = []
    for i in range(q):
        ji = order[i]
        for j in range(k):
            base = (i * k + j) * block_len
            if ji < q:
                out.append((base, base + q - ji))
            if ji > 0:
                out.append((base + block_len - ji, base + block_len))
    return out


def boundary_stats(word, k=None, l=None, q=None, order=None):
    """Spacer mass of a circular product, exactly.

    For a LazyCircularWord the structure is taken from the word itself.
    A materialized tuple needs k, l, q, order passed in; its letters are
    checked against the predicted spacer layout and InputError is raised
    if they disagree (i.e. the word is not a circular product with this
    structure).
    """
    if isinstance(word, LazyCircularWord):
        k, l, q, order = word.k, word.l, word.q, word.order
    else:
        if None in (k, l, q, order):
            raise InputError("materialized word needs k, l, q, order")
        word = tuple(word)
        _check = k * l * q * q
        if len(word) != _check:
            raise InputError("length %d is not k*l*q**2 = %d" % (len(word), _check))
        for lo, hi in _boundary_intervals(k, l, q, order):
            want = B if lo % (l * q) == 0 else E
            if any(c != want for c in word[lo:hi]):
                raise InputError("letters in [%d, %d) do not match a spacer run"
                                 % (lo, hi))

    n = k * l * q * q
    intervals = _boundary_intervals(k, l, q, order)
    boundary = sum(hi - lo for lo, hi in intervals)
    assert Fraction(boundary, n) == Fraction(1, l)

    # dilate each spacer run by q on both sides, then measure the union
    near = 0
    cursor = 0
    for lo, hi in intervals:  # already sorted and disjoint
        lo = max(lo - q, cursor, 0)
        hi = min(hi + q, n)
        if hi > lo:
            near += hi - lo
            cursor = hi
    return BoundaryStats(Fraction(boundary, n), Fraction(near, n))


def word_to_text(word):
    """Space-separated token form; inner symbols decimal, spacers b/e."""
    toks = []
    for c in word:
        if c == B:
            toks.append("b")
        elif c == E:
            toks.append("e")
        elif c >= 0:
            toks.append(str(c))
        else:
            raise InputError("unknown symbol %r" % (c,))
    return " ".join(toks)


def text_to_word(text):
    out = []
    for tok in text.split():
        if tok == "b":
            out.append(B)
        elif tok == "e":
            out.append(E)
        else:
            try:
                v = int(tok)
            except ValueError:
                raise InputError("bad token %r" % tok)
            if v < 0:
                raise InputError("inner symbols are non-negative, got %r" % tok)
            out.append(v)
    return tuple(out)
