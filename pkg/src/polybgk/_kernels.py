"""Numba kernels for the hot loops.

Every kernel takes an explicit (lo, hi) block range so callers can fan
blocks out over a thread pool; kernels release the GIL and are compiled
without fastmath so summation order (and hence the result bit pattern) is
fixed.  Gather kernels iterate velocity-outer so the sliding x-stencil rows
stay cache resident.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_OPTS = dict(cache=True, nogil=True, fastmath=False)


@njit(**_OPTS)
def gather_x(lo, hi, fin, base, wgt, out):
    """out[x, v, :] = sum_s wgt[v, s] * fin[(x + base[v] + s) % NX, v, :].

    Semi-Lagrangian shift along the single spatial axis; block over v.
    """
    nx, nv, ne = fin.shape
    npts = wgt.shape[1]
    for v in range(lo, hi):
        b = base[v]
        for x in range(nx):
            for e in range(ne):
                out[x, v, e] = 0.0
            for s in range(npts):
                idx = (x + b + s) % nx
                w = wgt[v, s]
                if w != 0.0:
                    for e in range(ne):
                        out[x, v, e] += w * fin[idx, v, e]


@njit(**_OPTS)
def transport_combine(lo, hi, fin, src0, src1, decay, c0, c1, base, wgt, out):
    """Fused mild-transport step along characteristics (single x axis).

    out[x,v,:] = decay[x,v] * shift(fin)[x,v,:]
               + c0[x,v] * shift(src0)[x,v,:] + c1[x,v] * src1[x,v,:]
    where shift is the same stencil gather as gather_x.  Block over v.
    """
    nx, nv, ne = fin.shape
    npts = wgt.shape[1]
    for v in range(lo, hi):
        b = base[v]
        for x in range(nx):
            d = decay[x, v]
            a0 = c0[x, v]
            a1 = c1[x, v]
            for e in range(ne):
                out[x, v, e] = a1 * src1[x, v, e]
            for s in range(npts):
                idx = (x + b + s) % nx
                w = wgt[v, s]
                if w != 0.0:
                    wd = w * d
                    w0 = w * a0
                    for e in range(ne):
                        out[x, v, e] += wd * fin[idx, v, e] + w0 * src0[idx, v, e]


@njit(**_OPTS)
def pair_product(lo, hi, a1, b1, a2, b2, out):
    """out[x,v,e] = a1[x,v]*b1[x,e] + a2[x,v]*b2[x,e]; block over x."""
    nx, nv = a1.shape
    ne = b1.shape[1]
    for x in range(lo, hi):
        for v in range(nv):
            f1 = a1[x, v]
            f2 = a2[x, v]
            for e in range(ne):
                out[x, v, e] = f1 * b1[x, e] + f2 * b2[x, e]


@njit(**_OPTS)
def relax_combine(lo, hi, f, c, a1, b1, a2, b2, out):
    """out[x,v,e] = c[x]*f[x,v,e] + a1[x,v]*b1[x,e] + a2[x,v]*b2[x,e]."""
    nx, nv, ne = f.shape
    for x in range(lo, hi):
        cc = c[x]
        for v in range(nv):
            f1 = a1[x, v]
            f2 = a2[x, v]
            for e in range(ne):
                out[x, v, e] = cc * f[x, v, e] + f1 * b1[x, e] + f2 * b2[x, e]


@njit(**_OPTS)
def moments_pass(lo, hi, f, g, use_g, vn, en, want_pressure, out):
    """Raw moment sums of f (or f+g) per spatial row.

    Output layout per x: [S0, Sv_0..Sv_{d-1}, Se_0..Se_{l-1}, S2v, S2e,
    P_00, P_01, ..., P_{d-1,d-1} (upper triangle, row-major)].
    S2v and the pressure entries are centered on the row's own mean velocity,
    S2e on the row's internal mean (two-pass evaluation).
    """
    nx, nv, ne = f.shape
    d = vn.shape[1]
    lint = en.shape[1]
    for x in range(lo, hi):
        s0 = 0.0
        sv = np.zeros(d)
        se = np.zeros(lint)
        for v in range(nv):
            rowsum = 0.0
            for e in range(ne):
                w = f[x, v, e]
                if use_g:
                    w += g[x, v, e]
                rowsum += w
                for mm in range(lint):
                    se[mm] += w * en[e, mm]
            s0 += rowsum
            for a in range(d):
                sv[a] += rowsum * vn[v, a]
        out[x, 0] = s0
        if s0 != 0.0:
            ubar = sv / s0
            ebar = se / s0
        else:
            ubar = np.zeros(d)
            ebar = np.zeros(lint)
        for a in range(d):
            out[x, 1 + a] = sv[a]
        for mm in range(lint):
            out[x, 1 + d + mm] = se[mm]

        s2v = 0.0
        s2e = 0.0
        npp = d * (d + 1) // 2
        pp = np.zeros(npp)
        for v in range(nv):
            c2 = 0.0
            for a in range(d):
                dv = vn[v, a] - ubar[a]
                c2 += dv * dv
            rowsum = 0.0
            rowse = 0.0
            for e in range(ne):
                w = f[x, v, e]
                if use_g:
                    w += g[x, v, e]
                rowsum += w
                acc = 0.0
                for mm in range(lint):
                    de = en[e, mm] - ebar[mm]
                    acc += de * de
                rowse += w * acc
            s2v += rowsum * c2
            s2e += rowse
            if want_pressure:
                idx = 0
                for a in range(d):
                    dva = vn[v, a] - ubar[a]
                    for bb in range(a, d):
                        pp[idx] += rowsum * dva * (vn[v, bb] - ubar[bb])
                        idx += 1
        out[x, 1 + d + lint] = s2v
        out[x, 2 + d + lint] = s2e
        for i in range(npp):
            out[x, 3 + d + lint + i] = pp[i]


@njit(**_OPTS)
def entropy_pass(lo, hi, f, floor, out_partial):
    """Per-row sums of f*log(f), skipping entries below the underflow floor."""
    nx, nv, ne = f.shape
    for x in range(lo, hi):
        acc = 0.0
        for v in range(nv):
            for e in range(ne):
                w = f[x, v, e]
                if w > floor:
                    acc += w * np.log(w)
        out_partial[x] = acc
