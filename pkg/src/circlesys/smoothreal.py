"""Numeric realization of grid permutations by smooth plane maps.

An adjacent pair of grid cells is swapped by conjugating a half-turn of
a disk into the pair: an area-preserving affine map takes the pair onto
[0,2]x[0,1], a measure-preserving concentric map takes that rectangle
onto a disk, and a smooth twist rotates the subdisk of radius R - gamma
by pi while dying off before radius R.  Outside radius R the map is the
identity, so the swaps patch together over the grid.  Every Jacobian in
the chain is 1 (almost everywhere for the concentric map, exactly for
the twist), hence so is the composite's.

Cells are numbered along the boustrophedon path (row 0 left to right,
row 1 right to left, ...), which makes consecutive indices spatially
adjacent, so adjacent transpositions suffice to realize any cell
permutation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ToleranceError


class PlaneMap:
    """Invertible map of the unit square (or a rectangle) to itself."""

    def forward(self, pts):
        raise NotImplementedError

    def inverse(self, pts):
        raise NotImplementedError


class Composite(PlaneMap):
    """Apply maps[0] first, maps[-1] last."""

    def __init__(self, maps):
        self.maps = list(maps)

    def forward(self, pts):
        for m in self.maps:
            pts = m.forward(pts)
        return pts

    def inverse(self, pts):
        for m in reversed(self.maps):
            pts = m.inverse(pts)
        return pts


class Identity(PlaneMap):
    def forward(self, pts):
        return np.array(pts, dtype=float, copy=True)

    inverse = forward


def smoothstep(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        g = np.where(x > 0, np.exp(-1.0 / np.maximum(x, 1e-300)), 0.0)
        h = np.where(x < 1, np.exp(-1.0 / np.maximum(1.0 - x, 1e-300)), 0.0)
    return g / (g + h)


def _square_to_disk(x, y):
    """Concentric square-to-disk map with unit Jacobian a.e.

    The square ring of sup-radius t goes to the circle of radius
    2t/sqrt(pi); within a ring, angles vary linearly on each of the
    four wedges cut by the diagonals.
    """
    scale = 2.0 / math.sqrt(math.pi)
    ax, ay = np.abs(x), np.abs(y)
    horizontal = ax >= ay
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.where(horizontal,
                       (math.pi / 4) * np.where(ax > 0, y / np.where(ax > 0, x, 1), 0.0),
                       math.pi / 2 - (math.pi / 4) * x / np.where(ay > 0, y, 1))
    r0 = np.where(horizontal, x, y) * scale     # signed radius
    return r0 * np.cos(phi), r0 * np.sin(phi)


def _disk_to_square(X, Y):
    scale = math.sqrt(math.pi) / 2.0
    t = np.hypot(X, Y) * scale                  # sup-radius of the target ring
    theta = np.arctan2(Y, X)
    x = np.empty_like(t)
    y = np.empty_like(t)
    right = np.abs(theta) <= math.pi / 4
    top = (theta > math.pi / 4) & (theta < 3 * math.pi / 4)
    left = np.abs(theta) >= 3 * math.pi / 4
    bottom = (theta < -math.pi / 4) & (theta > -3 * math.pi / 4)
    x[right] = t[right]
    y[right] = t[right] * (4 / math.pi) * theta[right]
    y[top] = t[top]
    x[top] = t[top] * (4 / math.pi) * (math.pi / 2 - theta[top])
    phi = theta[left] - np.sign(theta[left] + 1e-300) * math.pi
    x[left] = -t[left]
    y[left] = -t[left] * (4 / math.pi) * phi
    phi = theta[bottom] + math.pi
    y[bottom] = -t[bottom]
    x[bottom] = -t[bottom] * (4 / math.pi) * (math.pi / 2 - phi)
    return x, y


class StandardSwap(PlaneMap):
    """Half-turn swap of the two unit cells of [0,2]x[0,1].

    delta is the exceptional mass as a fraction of the pair: the map is
    an exact point reflection on the disk of area 2*(1-delta) and the
    identity outside the disk of area 2*(1-delta/2); a smooth twist
    interpolates on the ring between them.
    """

    def __init__(self, delta):
        if not 0 < delta < 0.5:
            raise InputError("delta must be in (0, 1/2), got %r" % (delta,))
        self.delta = delta
        self.R = math.sqrt(2 * (1 - delta / 2) / math.pi)
        self.r_in = math.sqrt(2 * (1 - delta) / math.pi)
        self.gamma = self.R - self.r_in

    def _twist(self, pts, sign):
        x = (pts[:, 0] - 1.0) / math.sqrt(2)
        y = (pts[:, 1] - 0.5) * math.sqrt(2)
        X, Y = _square_to_disk(x, y)
        r = np.hypot(X, Y)
        f = math.pi * smoothstep((self.R - r) / self.gamma)
        c, s = np.cos(sign * f), np.sin(sign * f)
        X, Y = X * c - Y * s, X * s + Y * c
        x, y = _disk_to_square(X, Y)
        out = np.empty_like(pts, dtype=float)
        out[:, 0] = x * math.sqrt(2) + 1.0
        out[:, 1] = y / math.sqrt(2) + 0.5
        return out

    def forward(self, pts):
        return self._twist(np.asarray(pts, dtype=float), +1.0)

    def inverse(self, pts):
        return self._twist(np.asarray(pts, dtype=float), -1.0)

    def smooth_samples(self, rng, count, margin=2e-3):
        """Sample the pair rectangle away from the numerically stiff
        ring, the wedge diagonals, and the center, where finite
        differences of the (everywhere unit) Jacobian are unreliable."""
        pts = np.empty((0, 2))
        while len(pts) < count:
            cand = rng.random((4 * count, 2)) * np.array([2.0, 1.0])
            x = (cand[:, 0] - 1.0) / math.sqrt(2)
            y = (cand[:, 1] - 0.5) * math.sqrt(2)
            keep = np.abs(np.abs(x) - np.abs(y)) > margin
            t = np.maximum(np.abs(x), np.abs(y))
            r = t * 2.0 / math.sqrt(math.pi)
            keep &= (r < self.r_in - margin) | (r > self.R + margin)
            keep &= r > margin
            keep &= np.minimum(np.abs(x), np.abs(y)) > margin
            pts = np.vstack([pts, cand[keep]])
        return pts[:count]


class CellSwap(PlaneMap):
    """StandardSwap conjugated into one adjacent cell pair of a grid."""

    def __init__(self, grid, k, delta):
        m, n = grid
        if not 0 <= k < m * n - 1:
            raise InputError("pair index %d out of range" % k)
        (c0, r0), (c1, r1) = zigzag_cell(grid, k), zigzag_cell(grid, k + 1)
        if abs(c0 - c1) + abs(r0 - r1) != 1:
            raise AssertionError("boustrophedon neighbours are not adjacent")
        self.inner = StandardSwap(delta)
        self.transpose = c0 == c1               # vertical pair
        if self.transpose:
            self.origin = (c0 / m, min(r0, r1) / n)
            self.scale = (1.0 / m, 1.0 / n)     # (x, y) sizes of one cell
        else:
            self.origin = (min(c0, c1) / m, r0 / n)
            self.scale = (1.0 / m, 1.0 / n)
        self.grid = grid
        self.k = k

    def _to_std(self, pts):
        u = (pts[:, 0] - self.origin[0]) / self.scale[0]
        v = (pts[:, 1] - self.origin[1]) / self.scale[1]
        return np.stack([v, u], axis=1) if self.transpose else np.stack([u, v], axis=1)

    def _from_std(self, std):
        if self.transpose:
            u, v = std[:, 1], std[:, 0]
        else:
            u, v = std[:, 0], std[:, 1]
        return np.stack([u * self.scale[0] + self.origin[0],
                         v * self.scale[1] + self.origin[1]], axis=1)

    def _apply(self, pts, fn):
        pts = np.array(pts, dtype=float, copy=True)
        std = self._to_std(pts)
        inside = (std[:, 0] >= 0) & (std[:, 0] < 2.0) & \
                 (std[:, 1] >= 0) & (std[:, 1] < 1.0)
        if inside.any():
            pts[inside] = self._from_std(fn(std[inside]))
        return pts

    def forward(self, pts):
        return self._apply(pts, self.inner.forward)

    def inverse(self, pts):
        return self._apply(pts, self.inner.inverse)


def zigzag_cell(grid, k):
    """(column, row) of boustrophedon index k on an m x n grid."""
    m, n = grid
    row, pos = divmod(k, m)
    col = pos if row % 2 == 0 else m - 1 - pos
    return col, row


def zigzag_index(grid, col, row):
    m, n = grid
    pos = col if row % 2 == 0 else m - 1 - col
    return row * m + pos


def cell_of_points(grid, pts):
    """Boustrophedon cell index of each point."""
    m, n = grid
    col = np.clip((pts[:, 0] * m).astype(int), 0, m - 1)
    row = np.clip((pts[:, 1] * n).astype(int), 0, n - 1)
    pos = np.where(row % 2 == 0, col, m - 1 - col)
    return row * m + pos


@dataclass
class SwapSpec:
    grid: tuple             # (m, n) cells
    k: int                  # swap pair (k, k+1) in boustrophedon order
    delta: float            # exceptional mass fraction of the pair
    gamma: float = None     # band width (derived from delta when None)


def approx_swap(spec):
    """Smooth approximate swap of one adjacent cell pair."""
    swap = CellSwap(spec.grid, spec.k, spec.delta)
    if spec.gamma is not None:
        swap.inner.gamma = spec.gamma
        swap.inner.r_in = swap.inner.R - spec.gamma
    return swap


def perm_to_swaps(sigma):
    """Adjacent transpositions whose left-to-right composition is sigma.

    sigma maps boustrophedon cell indices to boustrophedon cell
    indices.  Bubble-sorting the value list records at most N(N-1)/2
    swaps; applying them in order to cell contents realizes sigma.
    """
    sigma = list(sigma)
    N = len(sigma)
    if sorted(sigma) != list(range(N)):
        raise InputError("not a permutation of 0..%d" % (N - 1))
    arr = list(sigma)
    swaps = []
    changed = True
    while changed:
        changed = False
        for k in range(N - 1):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                swaps.append(k)
                changed = True
    assert len(swaps) <= N * (N - 1) // 2
    # recompose and verify: content of cell i flows to (t_L ... t_1)(i)
    acc = list(range(N))
    for k in swaps:
        acc[k], acc[k + 1] = acc[k + 1], acc[k]
    composed = [0] * N
    for pos, content in enumerate(acc):
        composed[content] = pos
    assert composed == sigma
    return swaps


@dataclass
class RealizeReport:
    plane_map: PlaneMap
    swaps: list
    delta: float
    obedient: float         # sampled fraction landing in the right cell


def realize_perm(sigma, grid, eps, seed=0, samples=20000, max_retries=3):
    """Smooth map moving each grid cell onto its image under sigma.

    The exceptional budget eps is split evenly over the adjacent swaps;
    the sampled obedient fraction must reach 1 - eps or the budget is
    halved and retried, with ToleranceError after max_retries.
    """
    m, n = grid
    swaps = perm_to_swaps(sigma)
    if not swaps:
        return RealizeReport(Identity(), [], 0.0, 1.0)
    rng = np.random.default_rng(seed)
    pts = rng.random((samples, 2))
    target = np.asarray(sigma)[cell_of_points(grid, pts)]
    delta = eps / len(swaps)
    for _ in range(max_retries):
        plane = Composite([approx_swap(SwapSpec(grid, k, delta)) for k in swaps])
        landed = cell_of_points(grid, plane.forward(pts))
        obedient = float(np.mean(landed == target))
        if obedient >= 1 - eps:
            return RealizeReport(plane, swaps, delta, obedient)
        delta /= 2
    raise ToleranceError("obedient fraction %.4f below 1 - %g" % (obedient, eps),
                         achieved=1 - obedient)


class PeriodicStrip(PlaneMap):
    """A map of [0, w]x[0,1] copied periodically in x with period w."""

    def __init__(self, inner, width):
        self.inner = inner
        self.width = width

    def _apply(self, pts, fn):
        pts = np.array(pts, dtype=float, copy=True)
        base = np.floor(pts[:, 0] / self.width) * self.width
        local = pts.copy()
        local[:, 0] -= base
        local[:, 0] /= self.width
        out = fn(local)
        out[:, 0] = out[:, 0] * self.width + base
        return out

    def forward(self, pts):
        return self._apply(pts, self.inner.forward)

    def inverse(self, pts):
        return self._apply(pts, self.inner.inverse)


class Rotation(PlaneMap):
    def __init__(self, alpha):
        self.alpha = float(alpha)

    def forward(self, pts):
        out = np.array(pts, dtype=float, copy=True)
        out[:, 0] = (out[:, 0] + self.alpha) % 1.0
        return out

    def inverse(self, pts):
        out = np.array(pts, dtype=float, copy=True)
        out[:, 0] = (out[:, 0] - self.alpha) % 1.0
        return out


class StageMap(PlaneMap):
    """S_n = H R H^{-1} with H the composed smooth relabelings."""

    def __init__(self, h_maps, alpha):
        self.h_maps = list(h_maps)      # h_1 outermost
        self.rot = Rotation(alpha)

    def conjugate_in(self, pts):
        for h in self.h_maps:
            pts = h.inverse(pts)
        return pts

    def conjugate_out(self, pts):
        for h in reversed(self.h_maps):
            pts = h.forward(pts)
        return pts

    def forward(self, pts):
        return self.conjugate_out(self.rot.forward(self.conjugate_in(pts)))

    def inverse(self, pts):
        return self.conjugate_out(self.rot.inverse(self.conjugate_in(pts)))


def first_column_sigma(params, n, h_grid):
    """Cell permutation of the first-column block of a relabeling,
    in boustrophedon numbering on the k[n] x s[n+1] cell grid."""
    k = params.k[n]
    rows = params.s[n + 1]
    sigma = [0] * (k * rows)
    for s in range(rows):
        for t in range(k):
            img = int(h_grid.apply(s * h_grid.cols + t))
            tp, sp = img % h_grid.cols, img // h_grid.cols
            sigma[zigzag_index((k, rows), t, s)] = zigzag_index((k, rows), tp, sp)
    return sigma


def stage_map(params, h_grids, eps=0.05, seed=0, samples=20000):
    """Smooth realization S_n of the stage-n transformation.

    h_grids are the grid relabelings h_1..h_n at native resolution.
    Each is realized on its first-column block and copied periodically
    with period 1/q[m-1]; the conjugated rotation by p[n]/q[n] is S_n.
    Returns (StageMap, list of RealizeReport).
    """
    maps = []
    reports = []
    for m, h in enumerate(h_grids):
        sigma = first_column_sigma(params, m, h)
        rep = realize_perm(sigma, (params.k[m], params.s[m + 1]), eps,
                           seed=seed + m, samples=samples)
        reports.append(rep)
        width = 1.0 / params.q[m]
        maps.append(PeriodicStrip(rep.plane_map, width)
                    if params.q[m] > 1 else rep.plane_map)
    n = len(h_grids)
    return StageMap(maps, params.alpha(n)), reports


def map_distance(map_a, map_b, pts):
    """Mean and max displacement between two maps of the cylinder,
    with the horizontal coordinate taken mod 1."""
    a = map_a.forward(np.asarray(pts, dtype=float))
    b = map_b.forward(np.asarray(pts, dtype=float))
    d = np.abs(a - b)
    d[:, 0] = np.minimum(d[:, 0], 1.0 - d[:, 0])
    dist = np.hypot(d[:, 0], d[:, 1])
    return float(np.mean(dist)), float(np.max(dist))


def sample_jacobian(plane_map, pts, h=1e-5):
    """Central-difference Jacobian determinants of a plane map."""
    pts = np.asarray(pts, dtype=float)
    dx = np.array([h, 0.0])
    dy = np.array([0.0, h])
    fxp = plane_map.forward(pts + dx)
    fxm = plane_map.forward(pts - dx)
    fyp = plane_map.forward(pts + dy)
    fym = plane_map.forward(pts - dy)
    jxx = (fxp[:, 0] - fxm[:, 0]) / (2 * h)
    jyx = (fxp[:, 1] - fxm[:, 1]) / (2 * h)
    jxy = (fyp[:, 0] - fym[:, 0]) / (2 * h)
    jyy = (fyp[:, 1] - fym[:, 1]) / (2 * h)
    return jxx * jyy - jxy * jyx


def polar_twist_jacobian(delta, r, h=1e-6):
    """Finite-difference Jacobian of the twist in polar coordinates.

    (r, theta) -> (r, theta + f(r)) has determinant exactly 1; the
    finite difference confirms it to roundoff regardless of how steep
    f is, because dr'/dtheta vanishes identically.
    """
    swap = StandardSwap(delta)

    def fwd(rr, th):
        f = math.pi * float(smoothstep(np.asarray([(swap.R - rr) / swap.gamma]))[0])
        return rr, th + f

    r = np.asarray(r, dtype=float)
    dets = []
    for rr in r:
        r1p, t1p = fwd(rr + h, 0.3)
        r1m, t1m = fwd(rr - h, 0.3)
        r2p, t2p = fwd(rr, 0.3 + h)
        r2m, t2m = fwd(rr, 0.3 - h)
        drr = (r1p - r1m) / (2 * h)
        dtr = (t1p - t1m) / (2 * h)
        drt = (r2p - r2m) / (2 * h)
        dtt = (t2p - t2m) / (2 * h)
        dets.append(drr * dtt - drt * dtr)
    return np.asarray(dets)
