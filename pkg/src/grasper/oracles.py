"""Independent integer-lattice oracles for the S^4 normal forms.

Nothing here touches the word or quotient machinery: group-ring elements of
``Z[t, t^-1]`` are plain ``{exponent: coefficient}`` dicts, and quotients are
computed by integer row reduction and Smith normal form.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

Matrix = list[list[int]]


def hermite_rows(rows: Iterable[Sequence[int]], ncols: int) -> tuple[Matrix, list[int]]:
    """Row-style Hermite normal form: echelon rows with positive pivots,
    entries above each pivot reduced into ``[0, pivot)``.  Returns rows and
    pivot columns."""
    work = [list(r) for r in rows if any(r)]
    out: Matrix = []
    pivots: list[int] = []
    for col in range(ncols):
        active = [r for r in work if r[col]]
        if not active:
            continue
        rest = [r for r in work if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            nxt = []
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                (nxt if r[col] else rest).append(r)
            active = [head] + nxt
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        for r in out:
            q = r[col] // pivot[col]
            if q:
                r[:] = [a - q * b for a, b in zip(r, pivot)]
        out.append(pivot)
        pivots.append(col)
        work = [r for r in rest if any(r)]
    return out, pivots


def reduce_mod_rows(vec: Sequence[int], rows: Matrix, pivots: list[int]) -> list[int]:
    v = list(vec)
    for r, col in zip(rows, pivots):
        q = v[col] // r[col]
        if q:
            v = [a - q * b for a, b in zip(v, r)]
    return v


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of the integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    invariants: list[int] = []
    t = 0
    while t < min(m, ncols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(entries)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        invariants.append(abs(a[t][t]))
        t += 1
    return invariants


# -- the kernel of r on Z[t, t^-1] ----------------------------------------------


def laurent_columns(bound: int) -> list[int]:
    """Column order t^0, t^-1..t^-N, t^1..t^N: pivots land on the first block."""
    return [0] + [-k for k in range(1, bound + 1)] + list(range(1, bound + 1))


def kernel_relations(bound: int) -> list[dict[int, int]]:
    """``1`` and ``t^k + t^(-k-1)`` with both exponents in ``[-N, N]``."""
    rels = [{0: 1}]
    for k in range(-bound, bound + 1):
        partner = -k - 1
        if -bound <= partner <= bound and k >= partner:
            rels.append({k: 1, partner: 1})
    return rels


class LaurentKernelOracle:
    """Normal forms in ``Z[t, t^-1]`` (exponents in ``[-N, N]``) modulo the kernel."""

    def __init__(self, bound: int = 12):
        self.bound = bound
        self.columns = laurent_columns(bound)
        self.index = {e: i for i, e in enumerate(self.columns)}
        rows = [self._vector(r) for r in kernel_relations(bound)]
        self.rows, self.pivots = hermite_rows(rows, len(self.columns))

    def _vector(self, poly: dict[int, int]) -> list[int]:
        v = [0] * len(self.columns)
        for e, c in poly.items():
            v[self.index[e]] += c
        return v

    @property
    def free_exponents(self) -> list[int]:
        return [e for i, e in enumerate(self.columns) if i not in self.pivots]

    @property
    def torsion_free(self) -> bool:
        return all(r[p] == 1 for r, p in zip(self.rows, self.pivots))

    def normal_form(self, poly: dict[int, int]) -> dict[int, int]:
        v = reduce_mod_rows(self._vector(poly), self.rows, self.pivots)
        return {self.columns[i]: c for i, c in enumerate(v) if c}


# -- the barbell symmetry lattice on Z<t, t^2, ...> ------------------------------


def implant_argument(letters: Sequence[tuple[str, int]]) -> dict[int, int]:
    """``sum e_i t^(n_i + ... + n_r)`` for an x,y word given as +-1 letters."""
    out: dict[int, int] = {}
    for i, (name, sign) in enumerate(letters):
        if name == "y":
            exp = sum(s for n, s in letters[i + 1 :] if n == "x")
            out[exp] = out.get(exp, 0) + sign
    return out


def dual_letters(letters: Sequence[tuple[str, int]]) -> list[tuple[str, int]]:
    swap = {"x": "y", "y": "x"}
    return [(swap[n], s) for n, s in reversed(letters)]


def s4_sref_vector(arg: dict[int, int], oracle: LaurentKernelOracle) -> dict[int, int]:
    sym: dict[int, int] = {}
    for e, c in arg.items():
        sym[e] = sym.get(e, 0) + c
        sym[-e] = sym.get(-e, 0) + c
    return oracle.normal_form(sym)


def xy_words(max_letters: int) -> Iterable[list[tuple[str, int]]]:
    alphabet = [("x", 1), ("x", -1), ("y", 1), ("y", -1)]
    for n in range(1, max_letters + 1):
        for letters in product(alphabet, repeat=n):
            reduced = all(
                not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(letters, letters[1:])
            )
            if reduced and any(n == "y" for n, _ in letters):
                yield list(letters)


def barbell_symmetry_relations(bound: int = 12, max_letters: int = 5) -> list[list[int]]:
    """Rows over ``t^1..t^N``: ``bg(W) + bg(dual W)`` for ``W = y x^i`` and all
    short x,y words whose exponents stay within the bound."""
    oracle = LaurentKernelOracle(bound + 1)
    words = [[("y", 1)] + [("x", 1)] * i for i in range(1, bound + 1)]
    words += [w for w in xy_words(max_letters)]
    rows = []
    for letters in words:
        vec: dict[int, int] = {}
        for side in (letters, dual_letters(letters)):
            for e, c in s4_sref_vector(implant_argument(side), oracle).items():
                vec[e] = vec.get(e, 0) + c
        if any(not 1 <= e <= bound for e in vec):
            continue
        row = [vec.get(e, 0) for e in range(1, bound + 1)]
        if any(row):
            rows.append(row)
    return rows
