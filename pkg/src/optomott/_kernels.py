"""Hot numerical kernels with a numba fast path and a vectorized numpy fallback.

Two inner loops dominate the package's runtime: locating every root of the
cavity steady-state equation on a fine phase grid, and diagonalizing one real
symmetric tridiagonal matrix per quasimomentum when building band structures.
Both are implemented twice with identical arithmetic:

* ``*_numba`` -- scalar loops compiled with ``@njit`` (the default), and
* ``*_numpy`` -- the same algorithm vectorized across roots / matrices.

Setting the environment variable ``OPTOMOTT_NO_NUMBA`` to anything but ``0``
(or leaving numba uninstalled) selects the numpy path.  ``backend()`` reports
the active choice; the individual implementations stay importable for tests
and for ``benchmarks/bench_kernels.py``.

The tridiagonal solver is deliberately a dedicated one (Sturm-sequence
bisection for the lowest eigenvalues, then inverse iteration with partial
pivoting) rather than a dense general-purpose routine: a single sweep point
costs one small diagonalization per quasimomentum, and sweeps run hundreds of
points.
"""

from __future__ import annotations

import math
import os

import numpy as np

_env = os.environ.get("OPTOMOTT_NO_NUMBA", "0")
_want_numba = _env in ("", "0")

if _want_numba:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised only without numba
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False

if not _HAVE_NUMBA:

    def njit(*args, **kwargs):  # noqa: D103 - no-op stand-in keeps the jitted source importable
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


#: fixed iteration counts keep both paths deterministic and bit-for-bit stable
_BISECT_ROOT_ITERS = 80
_BISECT_EIG_ITERS = 64
_INVIT_PASSES = 3
_MAX_ROOTS = 128


def backend() -> str:
    """Name of the implementation the dispatchers will use."""
    return "numba" if _HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# steady-state root scan:  h(y) = y (1 + gamma sin^2(phi0 + beta y)) - i_in
# --------------------------------------------------------------------------


@njit(cache=True)
def _balance_numba(gamma, phi0, beta, i_in, y):
    s = math.sin(phi0 + beta * y)
    return y * (1.0 + gamma * s * s) - i_in


@njit(cache=True)
def _slope_numba(gamma, phi0, beta, y):
    phase = phi0 + beta * y
    s = math.sin(phase)
    return 1.0 + gamma * (s * s + beta * y * math.sin(2.0 * phase))


@njit(cache=True)
def _bisect_h_numba(gamma, phi0, beta, i_in, a, b, ha):
    for _ in range(_BISECT_ROOT_ITERS):
        mid = 0.5 * (a + b)
        hm = _balance_numba(gamma, phi0, beta, i_in, mid)
        if hm != 0.0 and (hm < 0.0) == (ha < 0.0):
            a = mid
            ha = hm
        else:
            b = mid
    return 0.5 * (a + b)


@njit(cache=True)
def _steady_roots_numba(gamma, phi0, beta, i_in, y_max, n_scan):
    out = np.empty(_MAX_ROOTS, np.float64)
    found = 0
    h_prev = -i_in  # h(0)
    hp_prev = _slope_numba(gamma, phi0, beta, 0.0)
    if h_prev == 0.0:
        out[0] = 0.0
        found = 1
    y_prev = 0.0
    for i in range(1, n_scan + 1):
        y = y_max * i / n_scan
        h = _balance_numba(gamma, phi0, beta, i_in, y)
        hp = _slope_numba(gamma, phi0, beta, y)
        if h == 0.0:
            if found >= _MAX_ROOTS:
                raise RuntimeError("steady-state scan found too many roots")
            out[found] = y
            found += 1
        elif (h_prev < 0.0 and h > 0.0) or (h_prev > 0.0 and h < 0.0):
            if found >= _MAX_ROOTS:
                raise RuntimeError("steady-state scan found too many roots")
            out[found] = _bisect_h_numba(gamma, phi0, beta, i_in, y_prev, y, h_prev)
            found += 1
        elif h_prev * h > 0.0 and hp_prev * hp < 0.0:
            # h keeps its sign at the samples but passes an interior extremum:
            # a fold-adjacent root pair can hide inside this one cell
            a = y_prev
            b = y
            ga = hp_prev
            for _ in range(_BISECT_ROOT_ITERS):
                mid = 0.5 * (a + b)
                gm = _slope_numba(gamma, phi0, beta, mid)
                if gm != 0.0 and (gm < 0.0) == (ga < 0.0):
                    a = mid
                    ga = gm
                else:
                    b = mid
            y_ext = 0.5 * (a + b)
            h_ext = _balance_numba(gamma, phi0, beta, i_in, y_ext)
            if h_ext == 0.0:
                if found >= _MAX_ROOTS:
                    raise RuntimeError("steady-state scan found too many roots")
                out[found] = y_ext
                found += 1
            elif (h_ext < 0.0) != (h_prev < 0.0):
                if found + 1 >= _MAX_ROOTS:
                    raise RuntimeError("steady-state scan found too many roots")
                out[found] = _bisect_h_numba(gamma, phi0, beta, i_in, y_prev, y_ext, h_prev)
                out[found + 1] = _bisect_h_numba(gamma, phi0, beta, i_in, y_ext, y, h_ext)
                found += 2
        y_prev = y
        h_prev = h
        hp_prev = hp
    return out[:found].copy()


def _bisect_h_numpy(gamma, phi0, beta, i_in, lo, hi, hlo):
    for _ in range(_BISECT_ROOT_ITERS):
        mid = 0.5 * (lo + hi)
        sm = np.sin(phi0 + beta * mid)
        hm = mid * (1.0 + gamma * sm * sm) - i_in
        advance = (hm != 0.0) & ((hm < 0.0) == (hlo < 0.0))
        lo = np.where(advance, mid, lo)
        hlo = np.where(advance, hm, hlo)
        hi = np.where(advance, hi, mid)
    return 0.5 * (lo + hi)


def _steady_roots_numpy(gamma, phi0, beta, i_in, y_max, n_scan):
    ys = np.linspace(0.0, y_max, n_scan + 1)
    phase = phi0 + beta * ys
    s = np.sin(phase)
    hs = ys * (1.0 + gamma * s * s) - i_in
    hp = 1.0 + gamma * (s * s + beta * ys * np.sin(2.0 * phase))

    pieces = [ys[hs == 0.0]]

    change = hs[:-1] * hs[1:] < 0.0
    if change.any():
        pieces.append(
            _bisect_h_numpy(gamma, phi0, beta, i_in, ys[:-1][change], ys[1:][change], hs[:-1][change])
        )

    hidden = (hs[:-1] * hs[1:] > 0.0) & (hp[:-1] * hp[1:] < 0.0)
    if hidden.any():
        lo = ys[:-1][hidden]
        hi = ys[1:][hidden]
        glo = hp[:-1][hidden]
        a, b, ga = lo.copy(), hi.copy(), glo.copy()
        for _ in range(_BISECT_ROOT_ITERS):
            mid = 0.5 * (a + b)
            pm = phi0 + beta * mid
            sm = np.sin(pm)
            gm = 1.0 + gamma * (sm * sm + beta * mid * np.sin(2.0 * pm))
            advance = (gm != 0.0) & ((gm < 0.0) == (ga < 0.0))
            a = np.where(advance, mid, a)
            ga = np.where(advance, gm, ga)
            b = np.where(advance, b, mid)
        y_ext = 0.5 * (a + b)
        se = np.sin(phi0 + beta * y_ext)
        h_ext = y_ext * (1.0 + gamma * se * se) - i_in
        h_left = hs[:-1][hidden]
        tangent = h_ext == 0.0
        if tangent.any():
            pieces.append(y_ext[tangent])
        crossing = ~tangent & ((h_ext < 0.0) != (h_left < 0.0))
        if crossing.any():
            pieces.append(
                _bisect_h_numpy(gamma, phi0, beta, i_in, lo[crossing], y_ext[crossing], h_left[crossing])
            )
            pieces.append(
                _bisect_h_numpy(gamma, phi0, beta, i_in, y_ext[crossing], hi[crossing], h_ext[crossing])
            )

    return np.sort(np.concatenate(pieces))


def steady_roots(gamma, phi0, beta, i_in, y_max, n_scan):
    """All roots of the steady-state balance on [0, y_max], sorted ascending."""
    if _HAVE_NUMBA:
        roots = _steady_roots_numba(
            float(gamma), float(phi0), float(beta), float(i_in), float(y_max), int(n_scan)
        )
        return np.sort(roots)
    return _steady_roots_numpy(
        float(gamma), float(phi0), float(beta), float(i_in), float(y_max), int(n_scan)
    )


# --------------------------------------------------------------------------
# lowest eigenpairs of a batch of real symmetric tridiagonal matrices
# --------------------------------------------------------------------------


def _start_vector(n: int, variant: int = 0) -> np.ndarray:
    # deterministic, parity-free starts for inverse iteration
    i = np.arange(n, dtype=np.float64)
    if variant == 0:
        v = np.sin(1.2345678 * (i + 1.0)) + 0.3 * np.cos(0.7654321 * (i + 1.0) ** 2)
    else:
        v = np.cos(0.9876543 * (i + 1.0)) + 0.4 * np.sin(0.5432109 * (i + 2.0) ** 2)
    return v / math.sqrt(float(np.dot(v, v)))


@njit(cache=True)
def _sturm_count_numba(d, e, x, pivmin):
    n = d.shape[0]
    q = d[0] - x
    if abs(q) <= pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, n):
        q = d[i] - x - e[i - 1] * e[i - 1] / q
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _tridiag_lowest_numba(diag, off, n_lowest, v0, v_alt):
    n_mat, n = diag.shape
    vals = np.empty((n_mat, n_lowest), np.float64)
    vecs = np.empty((n_mat, n, n_lowest), np.float64)

    dd = np.empty(n, np.float64)
    dl = np.empty(n - 1, np.float64)
    du = np.empty(n - 1, np.float64)
    du2 = np.zeros(max(n - 2, 0), np.float64)
    swap = np.zeros(n - 1, np.bool_)
    x = np.empty(n, np.float64)

    for b in range(n_mat):
        d = diag[b]
        e = off[b]

        # Gershgorin interval and pivot floor
        glo = d[0] - abs(e[0])
        ghi = d[0] + abs(e[0])
        anorm = abs(d[0]) + abs(e[0])
        for i in range(1, n):
            rad = 0.0
            if i > 0:
                rad += abs(e[i - 1])
            if i < n - 1:
                rad += abs(e[i])
            if d[i] - rad < glo:
                glo = d[i] - rad
            if d[i] + rad > ghi:
                ghi = d[i] + rad
            if abs(d[i]) + rad > anorm:
                anorm = abs(d[i]) + rad
        pivmin = 1e-20 * (abs(glo) + abs(ghi) + 1.0)
        sep = 1e-7 * (anorm + 1.0)

        for j in range(n_lowest):
            lo = glo
            hi = ghi
            for _ in range(_BISECT_EIG_ITERS):
                mid = 0.5 * (lo + hi)
                if _sturm_count_numba(d, e, mid, pivmin) >= j + 1:
                    hi = mid
                else:
                    lo = mid
            vals[b, j] = 0.5 * (lo + hi)

        for j in range(n_lowest):
            lam = vals[b, j]

            # factor (T - lam I) with partial pivoting
            for i in range(n):
                dd[i] = d[i] - lam
            for i in range(n - 1):
                dl[i] = e[i]
                du[i] = e[i]
                swap[i] = False
            for i in range(max(n - 2, 0)):
                du2[i] = 0.0
            for i in range(n - 1):
                if abs(dd[i]) >= abs(dl[i]):
                    if dd[i] != 0.0:
                        fact = dl[i] / dd[i]
                    else:
                        fact = 0.0
                    dl[i] = fact
                    dd[i + 1] -= fact * du[i]
                else:
                    fact = dd[i] / dl[i]
                    dd[i] = dl[i]
                    dl[i] = fact
                    tmp = du[i]
                    du[i] = dd[i + 1]
                    dd[i + 1] = tmp - fact * dd[i + 1]
                    if i < n - 2:
                        du2[i] = du[i + 1]
                        du[i + 1] = -fact * du[i + 1]
                    swap[i] = True
            ptol = 2.3e-16 * (anorm + abs(lam))
            for i in range(n):
                if abs(dd[i]) < ptol:
                    dd[i] = ptol if dd[i] >= 0.0 else -ptol

            # inverse iteration; orthogonalize inside the pass loop so exactly
            # degenerate pairs still come out orthonormal
            cluster = j
            while cluster > 0 and vals[b, cluster] - vals[b, cluster - 1] < sep:
                cluster -= 1
            for i in range(n):
                x[i] = v0[i]
            for _ in range(_INVIT_PASSES):
                for i in range(n - 1):
                    if swap[i]:
                        tmp = x[i]
                        x[i] = x[i + 1]
                        x[i + 1] = tmp - dl[i] * x[i]
                    else:
                        x[i + 1] -= dl[i] * x[i]
                x[n - 1] = x[n - 1] / dd[n - 1]
                if n >= 2:
                    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
                for i in range(n - 3, -1, -1):
                    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
                for jj in range(cluster, j):
                    dot = 0.0
                    for i in range(n):
                        dot += x[i] * vecs[b, i, jj]
                    for i in range(n):
                        x[i] -= dot * vecs[b, i, jj]
                nrm = 0.0
                for i in range(n):
                    nrm += x[i] * x[i]
                nrm = math.sqrt(nrm)
                if nrm < 1e-12:
                    # start was swallowed by the cluster predecessors; restart
                    for i in range(n):
                        x[i] = v_alt[i]
                    for jj in range(cluster, j):
                        dot = 0.0
                        for i in range(n):
                            dot += x[i] * vecs[b, i, jj]
                        for i in range(n):
                            x[i] -= dot * vecs[b, i, jj]
                    nrm = 0.0
                    for i in range(n):
                        nrm += x[i] * x[i]
                    nrm = math.sqrt(nrm)
                for i in range(n):
                    x[i] /= nrm
            for i in range(n):
                vecs[b, i, j] = x[i]
    return vals, vecs


def _tridiag_lowest_numpy(diag, off, n_lowest, v0, v_alt):
    n_mat, n = diag.shape
    e2 = off * off

    rad = np.zeros((n_mat, n))
    rad[:, :-1] += np.abs(off)
    rad[:, 1:] += np.abs(off)
    glo = (diag - rad).min(axis=1)
    ghi = (diag + rad).max(axis=1)
    anorm = (np.abs(diag) + rad).max(axis=1)
    pivmin = 1e-20 * (np.abs(glo) + np.abs(ghi) + 1.0)
    sep = 1e-7 * (anorm + 1.0)

    # eigenvalues by Sturm bisection, vectorized over (matrix, index)
    lo = np.repeat(glo[:, None], n_lowest, axis=1)
    hi = np.repeat(ghi[:, None], n_lowest, axis=1)
    jplus = np.arange(1, n_lowest + 1)[None, :]
    pm = pivmin[:, None]
    for _ in range(_BISECT_EIG_ITERS):
        mid = 0.5 * (lo + hi)
        q = diag[:, 0:1] - mid
        q = np.where(np.abs(q) <= pm, -pm, q)
        count = (q < 0.0).astype(np.int64)
        for i in range(1, n):
            q = diag[:, i : i + 1] - mid - e2[:, i - 1 : i] / q
            q = np.where(np.abs(q) <= pm, -pm, q)
            count += q < 0.0
        left = count >= jplus
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
    vals = 0.5 * (lo + hi)

    # factor (T - lam I) with partial pivoting, vectorized over (matrix, index)
    dd = diag[:, None, :] - vals[:, :, None]
    dl = np.repeat(off[:, None, :], n_lowest, axis=1).astype(np.float64)
    du = dl.copy()
    du2 = np.zeros((n_mat, n_lowest, max(n - 2, 0)))
    swaps = np.zeros((n_mat, n_lowest, n - 1), dtype=bool)
    for i in range(n - 1):
        di = dd[..., i].copy()
        li = dl[..., i].copy()
        swap = np.abs(di) < np.abs(li)
        swaps[..., i] = swap
        safe_di = np.where(di != 0.0, di, 1.0)
        fact_ns = np.where(di != 0.0, li / safe_di, 0.0)
        safe_li = np.where(swap, li, 1.0)
        fact_s = di / safe_li
        old_du = du[..., i].copy()
        old_dd1 = dd[..., i + 1].copy()
        dd[..., i] = np.where(swap, li, di)
        dl[..., i] = np.where(swap, fact_s, fact_ns)
        du[..., i] = np.where(swap, old_dd1, old_du)
        dd[..., i + 1] = np.where(swap, old_du - fact_s * old_dd1, old_dd1 - fact_ns * old_du)
        if i < n - 2:
            old_du1 = du[..., i + 1].copy()
            du2[..., i] = np.where(swap, old_du1, 0.0)
            du[..., i + 1] = np.where(swap, -fact_s * old_du1, old_du1)
    ptol = 2.3e-16 * (anorm[:, None] + np.abs(vals))
    ptol = ptol[:, :, None]
    dd = np.where(np.abs(dd) < ptol, np.where(dd >= 0.0, ptol, -ptol), dd)

    # inverse iteration per eigenvalue index, vectorized over matrices;
    # orthogonalization inside the pass loop handles degenerate clusters
    close = np.zeros((n_mat, n_lowest), dtype=bool)
    close[:, 1:] = (vals[:, 1:] - vals[:, :-1]) < sep[:, None]
    vecs = np.empty((n_mat, n_lowest, n))
    for j in range(n_lowest):
        x = np.broadcast_to(v0, (n_mat, n)).copy()
        for _ in range(_INVIT_PASSES):
            for i in range(n - 1):
                sw = swaps[:, j, i]
                xi = x[:, i].copy()
                xi1 = x[:, i + 1].copy()
                x[:, i] = np.where(sw, xi1, xi)
                x[:, i + 1] = np.where(sw, xi - dl[:, j, i] * xi1, xi1 - dl[:, j, i] * xi)
            x[:, n - 1] = x[:, n - 1] / dd[:, j, n - 1]
            if n >= 2:
                x[:, n - 2] = (x[:, n - 2] - du[:, j, n - 2] * x[:, n - 1]) / dd[:, j, n - 2]
            for i in range(n - 3, -1, -1):
                x[:, i] = (x[:, i] - du[:, j, i] * x[:, i + 1] - du2[:, j, i] * x[:, i + 2]) / dd[:, j, i]
            chain = np.ones(n_mat, dtype=bool)
            for jj in range(j - 1, -1, -1):
                chain = chain & close[:, jj + 1]
                dot = np.where(chain, (x * vecs[:, jj, :]).sum(axis=1), 0.0)
                x -= dot[:, None] * vecs[:, jj, :]
            nrm = np.sqrt((x * x).sum(axis=1))
            rescue = nrm < 1e-12
            if rescue.any():
                x[rescue] = v_alt
                chain = np.ones(n_mat, dtype=bool)
                for jj in range(j - 1, -1, -1):
                    chain = chain & close[:, jj + 1]
                    dot = np.where(chain & rescue, (x * vecs[:, jj, :]).sum(axis=1), 0.0)
                    x -= dot[:, None] * vecs[:, jj, :]
                nrm = np.sqrt((x * x).sum(axis=1))
            x /= nrm[:, None]
        vecs[:, j, :] = x

    return vals, np.ascontiguousarray(vecs.transpose(0, 2, 1))


def tridiag_lowest(diag, off, n_lowest):
    """Lowest eigenpairs of a batch of real symmetric tridiagonal matrices.

    Parameters
    ----------
    diag : (n_mat, n) diagonals
    off : (n_mat, n-1) off-diagonals
    n_lowest : how many eigenpairs to return per matrix

    Returns
    -------
    vals : (n_mat, n_lowest) eigenvalues, ascending
    vecs : (n_mat, n, n_lowest) unit-norm eigenvectors (columns)
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    n = diag.shape[1]
    if not 1 <= n_lowest <= n:
        raise ValueError("n_lowest must lie in [1, n]")
    if off.shape != (diag.shape[0], n - 1):
        raise ValueError("off-diagonal batch has the wrong shape")
    v0 = _start_vector(n)
    v_alt = _start_vector(n, variant=1)
    if _HAVE_NUMBA:
        return _tridiag_lowest_numba(diag, off, int(n_lowest), v0, v_alt)
    return _tridiag_lowest_numpy(diag, off, int(n_lowest), v0, v_alt)
