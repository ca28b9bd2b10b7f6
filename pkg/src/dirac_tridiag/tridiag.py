"""Symmetric tridiagonal matrices, Sturm-sequence eigenvalues and coefficient recursions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRecursionError, OracleError, RequestError

__all__ = [
    "SymTridiagonal",
    "EigenRequest",
    "negative_count",
    "sturm_count",
    "eigenvalues",
    "eigenvalues_dense_oracle",
    "split_blocks",
    "solve_coeff_recursion",
    "eigenvector_twisted",
]

_TINY_PIVOT = 1e-300
_DEFAULT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SymTridiagonal:
    """Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float).reshape(-1)
        off = np.array(self.offdiag, dtype=float).reshape(-1)
        if diag.size < 1:
            raise ValueError("matrix must have at least one row")
        if off.size != diag.size - 1:
            raise ValueError(
                f"off-diagonal must have {diag.size - 1} entries, got {off.size}")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise ValueError("matrix entries must be finite")
        diag.flags.writeable = False
        off.flags.writeable = False
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def size(self):
        return self.diag.size

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin(self):
        """Interval ``(lo, hi)`` containing every eigenvalue."""
        radius = np.zeros(self.size)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def truncate(self, size):
        return SymTridiagonal(self.diag[:size], self.offdiag[:size - 1])

    def __repr__(self):
        return f"SymTridiagonal(size={self.size})"


@dataclass(frozen=True)
class EigenRequest:
    count: int
    tol: float = _DEFAULT_TOL

    def validate(self, size):
        if not 1 <= self.count <= size:
            raise RequestError(f"requested {self.count} eigenvalues of a {size}x{size} matrix")
        if not self.tol > 0:
            raise RequestError("bisection tolerance must be positive")


def negative_count(diag, offdiag):
    """Number of negative eigenvalues, batched over leading axes.

    ``diag`` has shape ``(..., N)`` and ``offdiag`` shape ``(..., N-1)``; the
    count is taken along the last axis from the ratios of consecutive leading
    principal minors. Exact zero pivots are replaced by a tiny positive value.
    """
    diag = np.asarray(diag, dtype=float)
    off_sq = np.asarray(offdiag, dtype=float) ** 2
    q = diag[..., 0].copy()
    q[q == 0] = _TINY_PIVOT
    count = (q < 0).astype(int)
    for i in range(1, diag.shape[-1]):
        q = diag[..., i] - off_sq[..., i - 1] / q
        q[q == 0] = _TINY_PIVOT
        count += q < 0
    return count


def _sturm_scalar(diag, off, x):
    x = float(x)
    count = 0
    q = 1.0
    for i in range(len(diag)):
        q = diag[i] - x - (off[i - 1] * off[i - 1] / q if i else 0.0)
        if q == 0.0:
            q = _TINY_PIVOT
        if q < 0.0:
            count += 1
    return count


def sturm_count(m: SymTridiagonal, x):
    """Number of eigenvalues of ``m`` strictly below ``x``.

    >>> sturm_count(SymTridiagonal([2.0, 2.0], [1.0]), 2.0)
    1
    """
    if np.ndim(x) == 0:
        return _sturm_scalar(m.diag.tolist(), m.offdiag.tolist(), float(x))
    x = np.asarray(x, dtype=float)
    counts = negative_count(m.diag - x[..., None], np.broadcast_to(m.offdiag, x.shape + (m.size - 1,)))
    return int(counts) if counts.ndim == 0 else counts


def _bisect_count(diag, off, index, lo, hi, tol):
    # smallest x with more than `index` eigenvalues below it
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _sturm_scalar(diag, off, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def eigenvalues(m: SymTridiagonal, request=None):
    """Lowest eigenvalues of ``m`` in ascending order by Sturm bisection.

    Parameters
    ----------
    m : SymTridiagonal
    request : EigenRequest or int, optional
        How many eigenvalues to return and the absolute bracket width. An
        integer is taken as the count with the default tolerance of 1e-12.
        Defaults to the full spectrum.

    Returns
    -------
    numpy.ndarray
    """
    if request is None:
        request = EigenRequest(m.size)
    elif not isinstance(request, EigenRequest):
        request = EigenRequest(int(request))
    request.validate(m.size)
    lo, hi = m.gershgorin()
    pad = max(request.tol, 1e-14 * max(1.0, abs(lo), abs(hi)))
    lo, hi = lo - pad, hi + pad
    diag, off = m.diag.tolist(), m.offdiag.tolist()
    out = np.empty(request.count)
    for k in range(request.count):
        # eigenvalues are found in order, so the previous one is a valid lower bound
        start = out[k - 1] - request.tol if k else lo
        out[k] = _bisect_count(diag, off, k, max(start, lo), hi, request.tol)
    return out


def split_blocks(m: SymTridiagonal, atol=0.0):
    """Split into independent diagonal blocks at couplings with ``|b| <= atol``.

    Dropping a coupling ``b`` moves each eigenvalue by at most ``|b|``.
    """
    cuts = [i + 1 for i, b in enumerate(m.offdiag) if abs(b) <= atol]
    edges = [0] + cuts + [m.size]
    return [SymTridiagonal(m.diag[a:b], m.offdiag[a:b - 1]) for a, b in zip(edges[:-1], edges[1:])]


def _charpoly(diag, off, x):
    # det(M - x I) by the leading-minor recursion, vectorised over x
    p_prev = np.ones_like(x)
    p = diag[0] - x
    for i in range(1, diag.size):
        p, p_prev = (diag[i] - x) * p - off[i - 1] ** 2 * p_prev, p
    return p


def _oracle_block(block, max_points=2 ** 22):
    if block.size == 1:
        return [float(block.diag[0])]
    radius = np.abs(block.offdiag).sum() + 1.0
    lo = float(block.diag.min() - radius)
    hi = float(block.diag.max() + radius)
    points = 4097
    while points <= max_points:
        xs = np.linspace(lo, hi, points)
        signs = np.sign(_charpoly(block.diag, block.offdiag, xs))
        roots = list(xs[signs == 0])
        change = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        if len(roots) + change.size == block.size:
            break
        points = 4 * points - 3
    else:
        raise OracleError("characteristic-polynomial scan did not separate all roots")
    for i in change:
        a, b = xs[i], xs[i + 1]
        sa = signs[i]
        for _ in range(200):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            sm = np.sign(_charpoly(block.diag, block.offdiag, np.array(mid)))
            if sm == 0:
                a = b = mid
                break
            if sm == sa:
                a = mid
            else:
                b = mid
        roots.append(0.5 * (a + b))
    return roots


def eigenvalues_dense_oracle(m: SymTridiagonal):
    """All eigenvalues of a small matrix by scanning its characteristic polynomial.

    Shares nothing with :func:`eigenvalues` beyond the matrix type, so the
    two can be compared. Limited to 12 rows. Couplings below ``1e-14`` times
    the matrix scale are treated as zero; roots closer together than the
    finest scan grid raise :class:`OracleError`.
    """
    if m.size > 12:
        raise OracleError(f"oracle limited to N <= 12, got {m.size}")
    scale = max(1.0, float(np.max(np.abs(m.diag))), float(np.max(np.abs(m.offdiag), initial=0.0)))
    roots = []
    for block in split_blocks(m, atol=1e-14 * scale):
        roots.extend(_oracle_block(block))
    return np.sort(np.array(roots, dtype=float))


def solve_coeff_recursion(m: SymTridiagonal, t, n_max):
    """Forward solution of ``(m - t) g = 0`` row by row from ``g_0 = 1``.

    Row ``n`` reads ``t g_n = d_n g_n + b_{n-1} g_{n-1} + b_n g_{n+1}`` and is
    solved for ``g_{n+1}``. This is the direct construction of the expansion
    coefficients; it amplifies rounding for decaying solutions, see
    :func:`eigenvector_twisted`.
    """
    if not 0 <= n_max <= m.size - 1:
        raise ValueError(f"n_max must lie in [0, {m.size - 1}]")
    off = m.offdiag[:n_max]
    if np.any(off == 0):
        raise DegenerateRecursionError("zero off-diagonal coupling; handle the uncoupled block directly")
    g = np.empty(n_max + 1)
    g[0] = 1.0
    for n in range(n_max):
        prev = m.offdiag[n - 1] * g[n - 1] if n else 0.0
        g[n + 1] = ((t - m.diag[n]) * g[n] - prev) / m.offdiag[n]
    return g


def eigenvector_twisted(m: SymTridiagonal, t):
    """Eigenvector of ``m`` for the eigenvalue ``t``, scaled to ``g_0 = 1``.

    Solves the same rows as :func:`solve_coeff_recursion`, but from both ends:
    pivots of ``m - t`` are eliminated downward from the first row and upward
    from the last, the two sweeps are joined at the row where the combined
    pivot is smallest, and each component is built outward from that row as a
    product of ratios. Components that are tiny relative to the peak keep their
    relative accuracy, which a one-sided sweep loses to cancellation.
    """
    n = m.size
    if np.any(m.offdiag == 0):
        raise DegenerateRecursionError("zero off-diagonal coupling; handle the uncoupled block directly")
    shifted = m.diag - t
    off = m.offdiag
    top = np.empty(n)
    bottom = np.empty(n)
    top[0] = shifted[0]
    for i in range(1, n):
        prev = top[i - 1] if top[i - 1] != 0 else _TINY_PIVOT
        top[i] = shifted[i] - off[i - 1] ** 2 / prev
    bottom[-1] = shifted[-1]
    for i in range(n - 2, -1, -1):
        nxt = bottom[i + 1] if bottom[i + 1] != 0 else _TINY_PIVOT
        bottom[i] = shifted[i] - off[i] ** 2 / nxt
    twist = int(np.argmin(np.abs(top + bottom - shifted)))
    g = np.zeros(n)
    g[twist] = 1.0
    for i in range(twist - 1, -1, -1):
        pivot = top[i] if top[i] != 0 else _TINY_PIVOT
        g[i] = -off[i] * g[i + 1] / pivot
    for i in range(twist + 1, n):
        pivot = bottom[i] if bottom[i] != 0 else _TINY_PIVOT
        g[i] = -off[i - 1] * g[i - 1] / pivot
    if g[0] == 0 or not np.all(np.isfinite(g)):
        raise DegenerateRecursionError("eigenvector has no usable n = 0 component")
    return g / g[0]
