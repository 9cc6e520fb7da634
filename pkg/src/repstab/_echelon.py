"""Incremental exact row echelon forms over the rationals.

Rows are kept as primitive integer vectors (sparse dicts) so that elimination
never touches ``Fraction`` objects; only the public conversions do.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Mapping, Sequence


def integerize(vec: Mapping) -> dict:
    """Scale a rational sparse vector to a primitive integer one (same line)."""
    out = {k: v for k, v in vec.items() if v}
    if not out:
        return {}
    den = 1
    for v in out.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den != 1:
        out = {k: int(v * den) for k, v in out.items()}
    else:
        out = {k: int(v) for k, v in out.items()}
    return _primitive(out)


def _primitive(vec: dict) -> dict:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {k: v // g for k, v in vec.items()}
    return vec


class Echelon:
    """Fully reduced row echelon form, built one vector at a time.

    The pivot of a row is its smallest key; pivot entries are positive and
    every pivot column vanishes in all other rows, so the form is unique for a
    given span (independent of insertion order).
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self._rows: dict[Hashable, dict] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: dict) -> dict:
        rows = self._rows
        hits = [k for k in vec if k in rows]
        for p in hits:
            b = vec.get(p)
            if not b:
                continue
            row = rows[p]
            a = row[p]
            if a != 1:
                vec = {k: a * v for k, v in vec.items()}
            for k, r in row.items():
                nv = vec.get(k, 0) - b * r
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return _primitive(vec) if vec else vec

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self._reduce(integerize(vec))
        if not r:
            return False
        piv = min(r)
        if r[piv] < 0:
            r = {k: -v for k, v in r.items()}
        a = r[piv]
        for p, row in list(self._rows.items()):
            b = row.get(piv)
            if not b:
                continue
            new = {k: a * v for k, v in row.items()}
            for k, v in r.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            new = _primitive(new)
            if new[p] < 0:
                new = {k: -v for k, v in new.items()}
            self._rows[p] = new
        self._rows[piv] = r
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self._reduce(integerize(vec))

    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list[dict]:
        """Rows normalized to pivot coefficient 1, sorted by pivot."""
        out = []
        for p in sorted(self._rows):
            row = self._rows[p]
            a = row[p]
            out.append({k: Fraction(v, a) for k, v in sorted(row.items())})
        return out

    def coordinates(self, vec: Mapping) -> dict:
        """Coefficients of ``vec`` on the normalized rows, keyed by pivot.

        Raises ValueError when ``vec`` is outside the span.
        """
        coords = {}
        rest = {k: Fraction(v) for k, v in vec.items() if v}
        for p in sorted(self._rows):
            c = rest.get(p)
            if not c:
                continue
            row = self._rows[p]
            coords[p] = c
            a = row[p]
            for k, r in row.items():
                nv = rest.get(k, 0) - c * Fraction(r, a)
                if nv:
                    rest[k] = nv
                else:
                    rest.pop(k, None)
        if rest:
            raise ValueError("vector is not in the span")
        return coords

    def trace(self, op: Callable[[dict], Mapping]) -> Fraction:
        """Trace of a linear operator that preserves the span.

        ``op`` receives a normalized row (dict) and returns its image.
        """
        total = Fraction(0)
        for p, row in zip(self.pivots(), self.rows()):
            img = op(row)
            # rows are fully reduced: the coordinate on this row is the
            # image's entry at the row's pivot
            total += Fraction(img.get(p, 0))
        return total


def orthogonal_complement(vectors: Iterable[Mapping], keys: Iterable) -> list[dict]:
    """Basis of {x supported on ``keys`` : <x, v> = 0 for every v}.

    One vector per non-pivot key, in key order.
    """
    ech = Echelon(vectors)
    pivots = ech.pivots()
    rows = ech.rows()
    pset = set(pivots)
    out = []
    for f in sorted(keys):
        if f in pset:
            continue
        x = {f: Fraction(1)}
        for p, row in zip(pivots, rows):
            c = row.get(f)
            if c:
                x[p] = -c
        out.append(dict(sorted(x.items())))
    return out


def express(vectors: Sequence[Mapping], target: Mapping) -> list[Fraction]:
    """Coefficients c with sum(c[i] * vectors[i]) == target.

    ``vectors`` must be linearly independent; raises ValueError otherwise or
    when ``target`` is outside their span.
    """
    aug = []
    for idx, v in enumerate(vectors):
        row = {(0, k): c for k, c in v.items() if c}
        row[(1, idx)] = 1
        aug.append(row)
    ech = Echelon(aug)
    coeffs = [Fraction(0)] * len(vectors)
    rest = {(0, k): Fraction(c) for k, c in target.items() if c}
    for p, row in zip(ech.pivots(), ech.rows()):
        if p[0] != 0:
            raise ValueError("vectors are linearly dependent")
        c = rest.get(p)
        if not c:
            continue
        for k, r in row.items():
            if k[0] == 0:
                nv = rest.get(k, 0) - c * r
                if nv:
                    rest[k] = nv
                else:
                    rest.pop(k, None)
            else:
                coeffs[k[1]] += c * r
    if rest:
        raise ValueError("target is not in the span")
    return coeffs
