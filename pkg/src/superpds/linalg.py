"""Exact linear algebra over Q[alpha] and Q(alpha) for the cochain blocks.

Rank computations run fraction-free over the polynomial ring (a singleton
cascade knocks out the many one-entry rows these block matrices have, then
Bareiss elimination finishes the dense core), recording every pivot
polynomial.  The roots of a pivot are the only alpha values at which a
specialized rank may drop, so the pivot list doubles as the exceptional-
parameter report.

Solving and kernel extraction run over the fraction field via a span
tracker that remembers how each reduced vector combines the inserted ones,
which hands back certificates (preimages, expansion coefficients) for free.
"""

from __future__ import annotations

from .scalars import AlphaPoly, POLY_ONE, Scalar


def scalar_to_poly(c: Scalar) -> AlphaPoly:
    """The numerator of a denominator-free, s-free scalar."""
    if c.bn.c or not c.ad.is_one():
        raise ValueError("expected a polynomial scalar, got %s" % (c,))
    return c.an


def _normalize_pivot(p: AlphaPoly) -> AlphaPoly:
    """Monic, content-free copy of a pivot for reporting."""
    return p.monic()


def poly_rank(rows, ncols, collect_pivots=True):
    """Rank of sparse rows (dicts col -> AlphaPoly) over Q(alpha).

    Returns (rank, pivots) where pivots are the monic non-constant pivot
    polynomials encountered (duplicates removed, order preserved).  The
    elimination prefers singleton rows and constant pivots (plain rational
    row operations, no degree growth); the few genuinely polynomial pivots
    use division-free cross-multiplication.
    """
    work = {}
    seen_rows = set()
    next_id = 0
    occupancy: dict = {}
    for r in rows:
        if not r:
            continue
        sig = frozenset(r.items())
        if sig in seen_rows:
            continue
        seen_rows.add(sig)
        work[next_id] = dict(r)
        for col in r:
            occupancy.setdefault(col, set()).add(next_id)
        next_id += 1

    rank = 0
    pivots = []
    seen_piv = set()

    def record(p: AlphaPoly):
        if not collect_pivots or p.degree() < 1:
            return
        q = _normalize_pivot(p)
        key = str(q)
        if key not in seen_piv:
            seen_piv.add(key)
            pivots.append(q)

    while work:
        # pick the cheapest pivot: constant before polynomial, then low
        # degree, then short rows
        best = None
        for rid, row in work.items():
            for col, p in row.items():
                d = p.degree()
                key = (d > 0, d, len(row))
                if best is None or key < best[0]:
                    best = (key, rid, col)
            if best[0][:2] == (False, 0) and best[0][2] == 1:
                break
        _, rid, col = best
        prow = work.pop(rid)
        piv = prow.pop(col)
        record(piv)
        rank += 1
        for c in prow:
            occupancy[c].discard(rid)
        touched = occupancy.pop(col, set())
        touched.discard(rid)
        constant_piv = piv.degree() == 0
        inv = (1 / piv.leading()) if constant_piv else None
        zero = AlphaPoly({})
        for tid in touched:
            trow = work[tid]
            head = trow.pop(col)
            if constant_piv:
                mult = head.scaled(-inv)  # t += mult * prow
                if mult.degree() == 0:
                    s = mult.leading()
                    updates = {c: p.scaled(s) for c, p in prow.items()}
                else:
                    updates = {c: p * mult for c, p in prow.items()}
            else:
                # t = piv * t - head * prow  (division-free)
                for c in list(trow):
                    trow[c] = piv * trow[c]
                updates = {c: -(head * p) for c, p in prow.items()}
            for c, add in updates.items():
                nv = trow.get(c, zero) + add
                if nv.c:
                    trow[c] = nv
                    occupancy.setdefault(c, set()).add(tid)
                elif c in trow:
                    del trow[c]
                    occupancy[c].discard(tid)
            if not trow:
                del work[tid]
    return rank, pivots


def rank_of_scalar_rows(rows, ncols) -> int:
    """Rank of rows of s-free scalars, clearing denominators row by row."""
    from .scalars import poly_lcm

    poly_rows = []
    for row in rows:
        entries = {col: c for col, c in row.items() if c}
        if not entries:
            continue
        lcm = POLY_ONE
        for c in entries.values():
            if c.bn.c:
                raise ValueError("rank over Q(alpha) only, got s term")
            if not c.ad.is_one():
                lcm = poly_lcm(lcm, c.ad)
        poly_rows.append(
            {col: c.an * lcm.exact_div(c.ad) for col, c in entries.items()}
        )
    rank, _ = poly_rank(poly_rows, ncols, collect_pivots=False)
    return rank


class SpanTracker:
    """Incremental reduced span of vectors over the scalar field.

    Vectors are dicts key -> Scalar over any hashable key space.  Inserting
    remembers the combination of original vectors each stored pivot row
    represents, so ``express`` returns exact coefficients when a query lies
    in the span.
    """

    def __init__(self):
        self.rows = {}  # pivot key -> (vector, combination dict tag -> Scalar)

    def _reduce(self, vec: dict, comb: dict):
        vec = dict(vec)
        for pivot, (row, row_comb) in self.rows.items():
            c = vec.get(pivot)
            if not c:
                continue
            for k, v in row.items():
                nv = vec.get(k, _ZERO) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for tag, v in row_comb.items():
                nv = comb.get(tag, _ZERO) - c * v
                if nv:
                    comb[tag] = nv
                else:
                    comb.pop(tag, None)
        return vec, comb

    def insert(self, vec: dict, tag) -> bool:
        """Add a vector; True when it enlarged the span."""
        vec = {k: v for k, v in vec.items() if v}
        comb = {tag: Scalar.from_fraction(1)}
        vec, comb = self._reduce(vec, comb)
        if not vec:
            return False
        pivot = next(iter(vec))
        inv = vec[pivot].inv()
        vec = {k: v * inv for k, v in vec.items()}
        comb = {k: v * inv for k, v in comb.items()}
        # back-substitute into stored rows to keep the tracker reduced
        for p, (row, row_comb) in list(self.rows.items()):
            c = row.get(pivot)
            if not c:
                continue
            new_row = dict(row)
            for k, v in vec.items():
                nv = new_row.get(k, _ZERO) - c * v
                if nv:
                    new_row[k] = nv
                else:
                    new_row.pop(k, None)
            new_comb = dict(row_comb)
            for k, v in comb.items():
                nv = new_comb.get(k, _ZERO) - c * v
                if nv:
                    new_comb[k] = nv
                else:
                    new_comb.pop(k, None)
            self.rows[p] = (new_row, new_comb)
        self.rows[pivot] = (vec, comb)
        return True

    def express(self, vec: dict):
        """Coefficients {tag: Scalar} with vec = sum coeff * inserted[tag],
        or None when the vector is outside the span."""
        vec = {k: v for k, v in vec.items() if v}
        residual, comb = self._reduce(vec, {})
        if residual:
            return None
        return {tag: -v for tag, v in comb.items()}

    def rank(self) -> int:
        return len(self.rows)


_ZERO = Scalar.from_fraction(0)


def kernel_basis(columns, row_space_vectors=None):
    """Kernel of the linear map sending unit column i to ``columns[i]``.

    ``columns`` is a list of vectors (dicts key -> Scalar).  Returns a list
    of coefficient dicts {column_index: Scalar} spanning the kernel.
    """
    tracker = SpanTracker()
    kernel_vecs = []
    for i, col in enumerate(columns):
        expr = tracker.express(col)
        if expr is not None:
            coeffs = dict(expr)
            coeffs[i] = Scalar.from_fraction(-1)
            kernel_vecs.append({k: -v for k, v in coeffs.items()})
        else:
            tracker.insert(col, i)
    return kernel_vecs
