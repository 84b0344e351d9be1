"""Bitmask kernels for the two hot loops: conflict-free subset classification
(extension enumeration) and powerset maximization (agreement degrees).

Subsets of an n-argument framework are int64 bitmasks over 0..n-1, where bit i
stands for the i-th argument in sorted-name order.  Both kernels exist twice:
a numba-compiled walk and a vectorized numpy sweep.  The active backend is
chosen once at import from the ARGAGREE_BACKEND environment variable
("numba" or "numpy"; default numba when importable).  Backends never differ
in results, only in speed; see benchmarks/bench_backends.py.
"""

from __future__ import annotations

import math
import os

import numpy as np

_ENV_VAR = "ARGAGREE_BACKEND"
MAX_KERNEL_BITS = 30

_PC16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


def _resolve_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        import numba  # noqa: F401

        return "numba"
    if choice:
        raise ValueError(f"unknown {_ENV_VAR} value: {choice!r} (use 'numba' or 'numpy')")
    try:
        import numba  # noqa: F401

        return "numba"
    except ImportError:
        return "numpy"


_BACKEND = _resolve_backend()


def active_backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    """Override the backend in-process (used by tests and the benchmark)."""
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend: {name!r}")
    if name == "numba":
        import numba  # noqa: F401
    _BACKEND = name


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

_CHUNK_BITS = 20


def _pc_arr(x: np.ndarray) -> np.ndarray:
    # 32-bit SWAR popcount on int64 arrays holding values < 2**31; the final
    # byte-sum multiply needs an explicit truncation that uint32 gets for free
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return ((x * 0x01010101) >> 24) & 0xFF


def _classify_np(n: int, targets: np.ndarray, attackers: np.ndarray):
    comp_parts: list[np.ndarray] = []
    nai_parts: list[np.ndarray] = []
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        splus = np.zeros_like(masks)
        for i in range(n):
            splus[((masks >> i) & 1) == 1] |= targets[i]
        cf = (splus & masks) == 0
        adm = cf.copy()
        for i in range(n):
            inside = ((masks >> i) & 1) == 1
            adm &= ~(inside & ((attackers[i] & ~splus) != 0))
        comp = adm.copy()
        nai = cf.copy()
        for i in range(n):
            outside = ((masks >> i) & 1) == 0
            comp &= ~(outside & ((attackers[i] & ~splus) == 0))
            addable = (((splus >> i) & 1) == 0) & ((targets[i] & (masks | (1 << i))) == 0)
            nai &= ~(outside & addable)
        comp_parts.append(masks[comp])
        nai_parts.append(masks[nai])
    return np.concatenate(comp_parts), np.concatenate(nai_parts)


def _phi_np(masks: np.ndarray, t: int, sim_kind: int, lut: np.ndarray,
            ext_masks: np.ndarray, lo: int, hi: int) -> np.ndarray:
    phi = np.full(masks.size, -1, dtype=np.int64)
    for k in range(lo, hi):
        e = int(ext_masks[k])
        if sim_kind == 0:
            num = t - _pc_arr(masks ^ e)
            den = np.full(masks.size, t, dtype=np.int64)
        elif sim_kind == 1:
            num = _pc_arr(masks & e)
            den = _pc_arr(masks | e)
        else:
            num = t - _pc_arr(masks | e)
            den = t - _pc_arr(masks & e)
        np.maximum(phi, lut[num, den], out=phi)
    return phi


def _rev_arr(masks: np.ndarray, t: int) -> np.ndarray:
    rev = np.zeros_like(masks)
    for j in range(t):
        rev |= (((masks >> j) & 1) << (t - 1 - j))
    return rev


_DEGREE_CHUNK_BITS = 18


def _search_degrees_np(t: int, sim_kind: int, lut: np.ndarray,
                       ext_masks: np.ndarray, offsets: np.ndarray):
    n_agents = offsets.size - 1
    total = 1 << t
    chunk = min(total, 1 << _DEGREE_CHUNK_BITS)
    best_val = np.full(3, -1, dtype=np.int64)
    best_pc = np.zeros(3, dtype=np.int64)
    best_rev = np.full(3, -1, dtype=np.int64)
    best_wit = np.zeros(3, dtype=np.int64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        phi = np.empty((n_agents, masks.size), dtype=np.int64)
        for ag in range(n_agents):
            phi[ag] = _phi_np(masks, t, sim_kind, lut, ext_masks,
                              int(offsets[ag]), int(offsets[ag + 1]))
        srt = np.sort(phi, axis=0)
        if n_agents % 2:
            med2 = 2 * srt[n_agents // 2]
        else:
            med2 = srt[n_agents // 2 - 1] + srt[n_agents // 2]
        aggs = (phi.min(axis=0), phi.sum(axis=0), med2)
        for kind, agg in enumerate(aggs):
            top = int(agg.max())
            if top < best_val[kind]:
                continue
            cand = masks[agg == top]
            pcs = _pc_arr(cand)
            cand = cand[pcs == pcs.min()]
            revs = _rev_arr(cand, t)
            pos = int(np.argmax(revs))
            c_pc, c_rev, c_m = int(_pc_arr(cand[pos:pos + 1])[0]), int(revs[pos]), int(cand[pos])
            if (top > best_val[kind]
                    or (top == best_val[kind]
                        and (c_pc, -c_rev) < (int(best_pc[kind]), -int(best_rev[kind])))):
                best_val[kind] = top
                best_pc[kind] = c_pc
                best_rev[kind] = c_rev
                best_wit[kind] = c_m
    return best_val, best_wit


# ---------------------------------------------------------------------------
# numba backend (compiled lazily on first use)
# ---------------------------------------------------------------------------

_NB = None


def _numba_impls():
    global _NB
    if _NB is not None:
        return _NB
    from numba import njit

    @njit(cache=True)
    def classify_dfs(n, targets, attackers, comp_out, nai_out):
        record_comp = comp_out.size > 0
        record_nai = nai_out.size > 0
        nc = 0
        nn = 0
        s_st = np.zeros(n + 1, np.int64)
        sp_st = np.zeros(n + 1, np.int64)
        ph_st = np.zeros(n + 1, np.int64)
        depth = 0
        while depth >= 0:
            if depth == n:
                s = s_st[depth]
                splus = sp_st[depth]
                adm = True
                for a in range(n):
                    if (s >> a) & 1:
                        if attackers[a] & ~splus:
                            adm = False
                            break
                if adm:
                    is_comp = True
                    for a in range(n):
                        if not (s >> a) & 1:
                            if (attackers[a] & ~splus) == 0:
                                is_comp = False
                                break
                    if is_comp:
                        if record_comp:
                            comp_out[nc] = s
                        nc += 1
                is_nai = True
                for a in range(n):
                    if not (s >> a) & 1:
                        if not (splus >> a) & 1:
                            if (targets[a] & (s | (np.int64(1) << a))) == 0:
                                is_nai = False
                                break
                if is_nai:
                    if record_nai:
                        nai_out[nn] = s
                    nn += 1
                depth -= 1
                continue
            ph = ph_st[depth]
            if ph == 0:
                ph_st[depth] = 1
                s_st[depth + 1] = s_st[depth]
                sp_st[depth + 1] = sp_st[depth]
                ph_st[depth + 1] = 0
                depth += 1
            elif ph == 1:
                ph_st[depth] = 2
                s = s_st[depth]
                splus = sp_st[depth]
                bit = np.int64(1) << depth
                if (splus & bit) == 0 and (targets[depth] & (s | bit)) == 0:
                    s_st[depth + 1] = s | bit
                    sp_st[depth + 1] = splus | targets[depth]
                    ph_st[depth + 1] = 0
                    depth += 1
            else:
                ph_st[depth] = 0
                depth -= 1
        return nc, nn

    @njit(cache=True)
    def search_degrees(t, sim_kind, lut, ext_masks, offsets, pc16):
        n_agents = offsets.size - 1
        total = np.int64(1) << t
        phis = np.empty(n_agents, np.int64)
        buf = np.empty(n_agents, np.int64)
        best_val = np.full(3, -1, np.int64)
        best_pc = np.zeros(3, np.int64)
        best_rev = np.zeros(3, np.int64)
        best_wit = np.zeros(3, np.int64)
        for m in range(total):
            for ag in range(n_agents):
                hi = np.int64(-1)
                for k in range(offsets[ag], offsets[ag + 1]):
                    e = ext_masks[k]
                    if sim_kind == 0:
                        x = m ^ e
                        num = t - (pc16[x & 0xFFFF] + pc16[(x >> 16) & 0xFFFF])
                        den = t
                    elif sim_kind == 1:
                        x = m & e
                        num = pc16[x & 0xFFFF] + pc16[(x >> 16) & 0xFFFF]
                        x = m | e
                        den = pc16[x & 0xFFFF] + pc16[(x >> 16) & 0xFFFF]
                    else:
                        x = m | e
                        num = t - (pc16[x & 0xFFFF] + pc16[(x >> 16) & 0xFFFF])
                        x = m & e
                        den = t - (pc16[x & 0xFFFF] + pc16[(x >> 16) & 0xFFFF])
                    v = lut[num, den]
                    if v > hi:
                        hi = v
                phis[ag] = hi
            mn = phis[0]
            sm = np.int64(0)
            for ag in range(n_agents):
                v = phis[ag]
                if v < mn:
                    mn = v
                sm += v
                # insertion sort into buf[:ag+1]
                j = ag
                while j > 0 and buf[j - 1] > v:
                    buf[j] = buf[j - 1]
                    j -= 1
                buf[j] = v
            if n_agents % 2:
                med2 = 2 * buf[n_agents // 2]
            else:
                med2 = buf[n_agents // 2 - 1] + buf[n_agents // 2]
            for kind in range(3):
                if kind == 0:
                    agg = mn
                elif kind == 1:
                    agg = sm
                else:
                    agg = med2
                if agg < best_val[kind]:
                    continue
                c_pc = pc16[m & 0xFFFF] + pc16[(m >> 16) & 0xFFFF]
                if agg == best_val[kind]:
                    if c_pc > best_pc[kind]:
                        continue
                    if c_pc == best_pc[kind]:
                        rev = np.int64(0)
                        for j in range(t):
                            if (m >> j) & 1:
                                rev |= np.int64(1) << (t - 1 - j)
                        if rev <= best_rev[kind]:
                            continue
                        best_rev[kind] = rev
                        best_wit[kind] = m
                        continue
                rev = np.int64(0)
                for j in range(t):
                    if (m >> j) & 1:
                        rev |= np.int64(1) << (t - 1 - j)
                best_val[kind] = agg
                best_pc[kind] = c_pc
                best_rev[kind] = rev
                best_wit[kind] = m
        return best_val, best_wit

    _NB = (classify_dfs, search_degrees)
    return _NB


def _classify_nb(n: int, targets: np.ndarray, attackers: np.ndarray):
    classify_dfs, _ = _numba_impls()
    empty = np.empty(0, np.int64)
    nc, nn = classify_dfs(n, targets, attackers, empty, empty)
    comp = np.empty(nc, np.int64)
    nai = np.empty(nn, np.int64)
    classify_dfs(n, targets, attackers, comp, nai)
    comp.sort()
    nai.sort()
    return comp, nai


# ---------------------------------------------------------------------------
# dispatching entry points
# ---------------------------------------------------------------------------


def classify_subsets(n: int, targets: np.ndarray, attackers: np.ndarray):
    """Masks of all complete and all naive extensions, each sorted ascending."""
    if n > MAX_KERNEL_BITS:
        raise ValueError(f"kernel supports at most {MAX_KERNEL_BITS} arguments, got {n}")
    if n == 0:
        z = np.zeros(1, np.int64)
        return z, z.copy()
    if _BACKEND == "numba":
        return _classify_nb(n, targets, attackers)
    return _classify_np(n, targets, attackers)


def similarity_lut(t: int):
    """Common-denominator table: lut[num, den] == num/den scaled by lcm(1..t).

    Column den == 0 holds the degenerate value 1 (scaled), per the similarity
    case splits.  All similarity values over a t-element topic are exact
    multiples of 1/lcm(1..t), so int64 arithmetic stays exact for t <= 20.
    """
    scale = math.lcm(*range(1, t + 1)) if t else 1
    lut = np.zeros((t + 1, t + 1), dtype=np.int64)
    lut[:, 0] = scale
    for den in range(1, t + 1):
        step = scale // den
        for num in range(t + 1):
            lut[num, den] = num * step
    return scale, lut


def search_degrees(t: int, sim_kind: int, lut: np.ndarray,
                   ext_masks: np.ndarray, offsets: np.ndarray):
    """Maximize min/sum/median of per-agent best similarity over all 2**t masks.

    Returns (vals, wits): scaled best aggregates and their witness masks,
    indexed 0=min, 1=sum (mean numerator), 2=doubled median.  Witness ties are
    broken towards fewer bits, then towards the lexicographically smallest
    argument tuple (encoded: reversed-bit value, larger wins).
    """
    if t > MAX_KERNEL_BITS:
        raise ValueError(f"kernel supports at most {MAX_KERNEL_BITS} topic arguments, got {t}")
    if _BACKEND == "numba":
        _, impl = _numba_impls()
        return impl(t, sim_kind, lut, ext_masks, offsets, _PC16)
    return _search_degrees_np(t, sim_kind, lut, ext_masks, offsets)
