"""Intersection numbers of psi and kappa classes on moduli of stable curves."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cache import CACHE


@lru_cache(maxsize=None)
def double_factorial(m: int) -> int:
    """``m!!`` for ``m >= -1`` with ``(-1)!! = 1``."""
    if m <= 0:
        return 1
    return m * double_factorial(m - 2)


def _stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def psi_integral(g: int, exps) -> Fraction:
    """``<tau_{d_1} ... tau_{d_n}>_g``, the integral of ``prod psi_i^{d_i}``.

    >>> psi_integral(1, (0, 1, 2))
    Fraction(1, 12)
    >>> psi_integral(2, (4,))
    Fraction(1, 1152)
    """
    exps = tuple(int(d) for d in exps)
    n = len(exps)
    if not _stable(g, n):
        raise ValueError(f"(g,n)=({g},{n}) is not stable")
    if any(d < 0 for d in exps) or sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    return _psi(g, tuple(sorted(exps)))


def _psi(g, d):
    # d is sorted ascending and of the right degree
    key = (g, d)
    cache = CACHE
    val = cache.psi.get(key)
    if val is not None:
        return val
    val = _psi_compute(g, d)
    with cache.lock:
        cache.psi[key] = val
        cache.stats["psi_computed"] += 1
    return val


def _psi_any(g, exps):
    n = len(exps)
    if not _stable(g, n) or any(x < 0 for x in exps) or sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    return _psi(g, tuple(sorted(exps)))


def _psi_compute(g, d):
    n = len(d)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 24)
    if d[0] == 0 and _stable(g, n - 1):
        # string equation
        rest = d[1:]
        total = Fraction(0)
        for j, dj in enumerate(rest):
            if dj > 0:
                total += _psi_any(g, rest[:j] + (dj - 1,) + rest[j + 1:])
        return total
    if 1 in d and _stable(g, n - 1):
        # dilaton equation
        i = d.index(1)
        return (2 * g - 2 + n - 1) * _psi_any(g, d[:i] + d[i + 1:])
    # DVV / Virasoro recursion on the largest exponent
    k = d[-1] - 1
    rest = d[:-1]
    total = Fraction(0)
    for j, dj in enumerate(rest):
        coeff = Fraction(double_factorial(2 * k + 2 * dj + 1), double_factorial(2 * dj - 1))
        total += coeff * _psi_any(g, rest[:j] + (dj + k,) + rest[j + 1:])
    half = Fraction(0)
    m = len(rest)
    for a in range(k):
        b = k - 1 - a
        w = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
        inner = Fraction(0)
        if g >= 1:
            inner += _psi_any(g - 1, (a, b) + rest)
        for mask in range(1 << m):
            I = tuple(rest[i] for i in range(m) if mask >> i & 1)
            J = tuple(rest[i] for i in range(m) if not mask >> i & 1)
            for g1 in range(g + 1):
                g2 = g - g1
                if not (_stable(g1, len(I) + 1) and _stable(g2, len(J) + 1)):
                    continue
                x = _psi_any(g1, (a,) + I)
                if x:
                    inner += x * _psi_any(g2, (b,) + J)
        half += w * inner
    total += half / 2
    return total / double_factorial(2 * k + 3)


def kappa_psi_integral(g: int, n: int, kappa, psi) -> Fraction:
    """Integral of ``kappa_{a_1}...kappa_{a_m} * prod psi_i^{b_i}`` over M_{g,n}.

    ``kappa`` is the multiset ``(a_1, ..., a_m)``; ``psi`` has length ``n``.
    Each kappa class is traded for a psi class on an extra marking using
    ``kappa_a = pi_*(psi_{n+1}^{a+1})`` and ``kappa_a = pi^*kappa_a + psi_{n+1}^a``.
    """
    psi = tuple(int(b) for b in psi)
    if len(psi) != n:
        raise ValueError("psi exponent vector must have length n")
    if not _stable(g, n):
        raise ValueError(f"(g,n)=({g},{n}) is not stable")
    scalar = 1
    parts = []
    for a in kappa:
        if a == 0:
            scalar *= 2 * g - 2 + n
        else:
            parts.append(int(a))
    if not parts:
        return scalar * psi_integral(g, psi)
    if sum(parts) + sum(psi) != 3 * g - 3 + n:
        return Fraction(0)
    return scalar * _kappa(g, tuple(sorted(parts)), tuple(sorted(psi)))


def _kappa(g, parts, psi):
    key = (g, parts, psi)
    cache = CACHE
    val = cache.kappa.get(key)
    if val is not None:
        return val
    if not parts:
        val = _psi_any(g, psi)
    else:
        last = parts[-1]
        others = parts[:-1]
        val = Fraction(0)
        m = len(others)
        for mask in range(1 << m):
            taken = [others[i] for i in range(m) if mask >> i & 1]
            kept = tuple(others[i] for i in range(m) if not mask >> i & 1)
            e = last + 1 + sum(taken)
            sign = -1 if len(taken) % 2 else 1
            val += sign * _kappa(g, kept, tuple(sorted(psi + (e,))))
    with cache.lock:
        cache.kappa[key] = val
        cache.stats["kappa_computed"] += 1
    return val


def string_equation_rhs(g: int, exps) -> Fraction:
    """Right-hand side of the string equation for ``(0, exps)``."""
    exps = tuple(exps)
    total = Fraction(0)
    for j, dj in enumerate(exps):
        if dj > 0:
            total += psi_integral(g, exps[:j] + (dj - 1,) + exps[j + 1:])
    return total


__all__ = ["psi_integral", "kappa_psi_integral", "double_factorial", "string_equation_rhs"]
