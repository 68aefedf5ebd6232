"""Weight-zero bigraded blocks of the degree-one Chevalley-Eilenberg complex.

A 1-cochain c of bidegree (k, n) sends each basis element X of the embedded
17-dimensional algebra to a module element with

    k-degree k,   n-degree n(X) + n,   weight w(X),   parity p(X),

so each block is finite dimensional and H^1 decomposes as the direct sum
over blocks.  Coefficients may be the full symbol algebra P, differential-
operator symbols P+, the contact algebra K4 (the k-degree-2 part) or its
derived ideal K4'.

Differential conventions (the zero convention is pinned by d1 o d0 = 0):

    (d0 m)(X)    = [X, m]
    (d1 c)(X, Y) = [X, c(Y)] + [c(X), Y] - c([X, Y])

with the bracket of the acting copy taken through the embedding, and
c([X, Y]) expanded through the cached structure-constant table.  Ranks are
computed fraction-free over Q[alpha]; the recorded pivot polynomials are the
only places a specialized alpha can change a dimension.

The same machinery runs for the h-deformed algebra: an engine bundles the
basis, the bracket, the structure table and the h-grading conventions, so
the star-product analogue reuses every formula with [.,.]_h substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import d21
from .d21 import BASIS_NAMES, PARITY
from .linalg import SpanTracker, poly_rank
from .scalars import POLY_ONE, S_HALF, Scalar, poly_lcm
from .symbols import SYM_ZERO, Symbol

TARGETS = ("P", "P+", "K4", "K4'")

_GAP_KEY3 = (-1, -1, 0b1111)  # spans K4 / K4'


@dataclass(frozen=True)
class BlockSpec:
    """One bigraded piece of the cochain complex."""

    k: int
    n: int
    target: str
    weight_zero: bool = True

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError("target must be one of %s" % (TARGETS,))
        if self.target in ("K4", "K4'") and self.k != 2:
            raise ValueError("K4-valued blocks require k = 2")

    def to_payload(self):
        return {"k": self.k, "n": self.n, "target": self.target}


class Cochain1:
    """Even 1-cochain: map from basis names to module elements."""

    __slots__ = ("images", "block")

    def __init__(self, images: dict, block: BlockSpec | None = None):
        self.images = {name: sym for name, sym in images.items() if sym}
        for name in self.images:
            if name not in PARITY:
                raise ValueError("unknown basis name %r" % (name,))
        self.block = block

    def image(self, name: str) -> Symbol:
        return self.images.get(name, SYM_ZERO)

    def __bool__(self):
        return bool(self.images)

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return self.images == other.images

    def __add__(self, other: "Cochain1") -> "Cochain1":
        out = dict(self.images)
        for name, sym in other.images.items():
            out[name] = out.get(name, SYM_ZERO) + sym
        return Cochain1(out, self.block or other.block)

    def __sub__(self, other: "Cochain1") -> "Cochain1":
        out = dict(self.images)
        for name, sym in other.images.items():
            out[name] = out.get(name, SYM_ZERO) - sym
        return Cochain1(out, self.block or other.block)

    def scale(self, coeff) -> "Cochain1":
        return Cochain1(
            {name: sym * coeff for name, sym in self.images.items()}, self.block
        )

    def specialize(self, alpha_value) -> "Cochain1":
        return Cochain1(
            {name: sym.specialize(alpha_value) for name, sym in self.images.items()},
            self.block,
        )

    def to_payload(self):
        payload = {"images": {n: str(s) for n, s in sorted(self.images.items())}}
        if self.block is not None:
            payload["block"] = self.block.to_payload()
        return payload

    def __repr__(self):
        return "Cochain1(%s)" % ({n: str(s) for n, s in self.images.items()},)


class Engine:
    """Bracket engine: basis, bracket, structure table, h conventions."""

    def __init__(self, kind, basis, bracket, struct, h_k_weight, h_depth, alpha):
        self.kind = kind
        self.basis = basis
        self.bracket = bracket
        self.struct = struct
        self.h_k_weight = h_k_weight
        self.h_depth = h_depth
        self.alpha = alpha
        self.metadata = d21.basis_metadata()
        names = list(BASIS_NAMES)
        self.pairs = [
            (names[i], names[j])
            for i in range(len(names))
            for j in range(i, len(names))
            if i != j or PARITY[names[i]]
        ]

    def k_degree(self, sym: Symbol):
        """k-degree with h counted at the engine's weight (None if mixed)."""
        value = None
        for (t, u, m, _b, h) in sym.terms:
            v = t + u + m.bit_count() + self.h_k_weight * h
            if value is None:
                value = v
            elif value != v:
                return None
        return 0 if value is None else value

    def validate_cochain(self, c: Cochain1, block: BlockSpec):
        for name, sym in c.images.items():
            par, n_deg, w = self.metadata[name]
            if not sym.in_subalgebra(block.target):
                raise ValueError("%s image leaves %s" % (name, block.target))
            if sym.parity() != par:
                raise ValueError("%s image has wrong parity" % (name,))
            if self.k_degree(sym) != block.k:
                raise ValueError("%s image has wrong k-degree" % (name,))
            if sym.n_degree() != n_deg + block.n:
                raise ValueError("%s image has wrong n-degree" % (name,))
            if block.weight_zero and sym.weight() != w:
                raise ValueError("%s image has wrong weight" % (name,))


@lru_cache(maxsize=None)
def poisson_engine(alpha=None) -> Engine:
    basis = d21.embedded_basis()
    struct = d21.structure_table()
    if alpha is not None:
        alpha = Fraction(alpha)
        basis = {n: s.specialize(alpha) for n, s in basis.items()}
        struct = d21.specialize_table(struct, alpha)
    return Engine(
        kind="poisson",
        basis=basis,
        bracket=lambda a, b: a.poisson(b),
        struct=struct,
        h_k_weight=0,
        h_depth=0,
        alpha=alpha,
    )


@lru_cache(maxsize=None)
def quantized_engine(alpha=None, h_depth=None) -> Engine:
    """Engine for the h-deformed algebra of differential-operator symbols.

    One h power carries k-degree 2; the structure constants match the
    Poisson ones (checked by quantize.verify_h_structure_match, exercised in
    the test suite).  h powers in a block are bounded by the operator
    constraint; pass h_depth to cap them harder.
    """
    from . import quantize

    basis = quantize.gamma_h_basis()
    struct = d21.structure_table()
    if alpha is not None:
        alpha = Fraction(alpha)
        basis = {n: s.specialize(alpha) for n, s in basis.items()}
        struct = d21.specialize_table(struct, alpha)
    return Engine(
        kind="star",
        basis=basis,
        bracket=quantize.h_bracket,
        struct=struct,
        h_k_weight=2,
        h_depth=h_depth,
        alpha=alpha,
    )


def _mask_weight(mask: int):
    return ((mask & 1) - (mask >> 2 & 1), (mask >> 1 & 1) - (mask >> 3 & 1))


def _monomials(block: BlockSpec, engine: Engine, want_n, weight, parity):
    """Monomial keys in the target with the requested degrees.

    In the star engine one h power carries k-degree 2, and the operator
    constraint tau_exp >= 0 bounds the h power inside a block, so blocks
    stay finite dimensional and closed under the differentials with no
    artificial depth cutoff (engine.h_depth only lowers the bound further).
    """
    out = []
    for mask in range(16):
        if mask.bit_count() & 1 != parity:
            continue
        if block.weight_zero and _mask_weight(mask) != weight:
            continue
        if engine.h_k_weight:
            hi = (block.k - mask.bit_count() - want_n) // 2
            if engine.h_depth is not None:
                hi = min(hi, engine.h_depth)
        else:
            hi = 0
        for h in range(hi + 1):
            rem = block.k - mask.bit_count() - engine.h_k_weight * h
            if (rem + want_n) & 1:
                continue
            t = (rem + want_n) // 2
            u = (rem - want_n) // 2
            if block.target == "P+" and u < 0:
                continue
            if block.target == "K4'" and (t, u, mask) == _GAP_KEY3:
                continue
            if engine.kind == "star" and u < 0:
                continue
            out.append((t, u, mask, 0, h))
    return out


def enumerate_c0(block: BlockSpec, engine: Engine | None = None):
    """Weight-zero even monomials of the block's (k, n) inside the target."""
    engine = engine or poisson_engine()
    return _monomials(block, engine, want_n=block.n, weight=(0, 0), parity=0)


def enumerate_c1(block: BlockSpec, engine: Engine | None = None):
    """Elementary cochain slots (name, monomial key) spanning the block."""
    engine = engine or poisson_engine()
    out = []
    for name in BASIS_NAMES:
        par, n_deg, w = engine.metadata[name]
        for key in _monomials(block, engine, n_deg + block.n, w, par):
            out.append((name, key))
    return out


def d0(m: Symbol, engine: Engine | None = None, block: BlockSpec | None = None) -> Cochain1:
    engine = engine or poisson_engine()
    return Cochain1(
        {name: engine.bracket(engine.basis[name], m) for name in BASIS_NAMES}, block
    )


def d1(c: Cochain1, engine: Engine | None = None) -> dict:
    """Values of the coboundary on the canonical ordered basis pairs."""
    engine = engine or poisson_engine()
    out = {}
    for (x, y) in engine.pairs:
        val = engine.bracket(engine.basis[x], c.image(y))
        val = val + engine.bracket(c.image(x), engine.basis[y])
        for name, coeff in engine.struct[(x, y)].items():
            img = c.image(name)
            if img:
                val = val - img * coeff
        out[(x, y)] = val
    return out


def cup(phi: Cochain1, phi_prime: Cochain1, engine: Engine | None = None) -> dict:
    """[[phi, phi']](X, Y) = [phi X, phi' Y] + [phi' X, phi Y] per pair."""
    engine = engine or poisson_engine()
    out = {}
    for (x, y) in engine.pairs:
        val = engine.bracket(phi.image(x), phi_prime.image(y))
        val = val + engine.bracket(phi_prime.image(x), phi.image(y))
        out[(x, y)] = val
    return out


def pairmap_is_zero(pm: dict) -> bool:
    return not any(pm.values())


# ---------------------------------------------------------------------------
# block assembly
# ---------------------------------------------------------------------------


def _bracket_cache(engine: Engine, keys):
    cache = {}
    for key in keys:
        m = Symbol({key: Scalar.from_fraction(1)})
        for name in BASIS_NAMES:
            cache[(name, key)] = engine.bracket(engine.basis[name], m)
    return cache


def _d1_columns(block: BlockSpec, engine: Engine):
    """Elementary cochains of the block and their coboundary vectors.

    Returns (slots, columns) where slots = [(name, key)] and columns[i] is a
    dict (pair_index, monomial_key) -> Scalar.
    """
    slots = enumerate_c1(block, engine)
    keys = {key for _, key in slots}
    br = _bracket_cache(engine, keys)
    columns = []
    for (name0, key0) in slots:
        m0 = Symbol({key0: Scalar.from_fraction(1)})
        vec = {}
        for pi, (x, y) in enumerate(engine.pairs):
            val = SYM_ZERO
            if y == name0:
                val = val + br[(x, key0)]
            if x == name0:
                # [c(X), Y] = -(-1)^(p(c X) p(Y)) [Y, c(X)]
                if PARITY[name0] and PARITY[y]:
                    val = val + br[(y, key0)]
                else:
                    val = val - br[(y, key0)]
            coeff = engine.struct[(x, y)].get(name0)
            if coeff:
                val = val - m0 * coeff
            for mk, c in val.terms.items():
                vec[(pi, mk)] = c
        columns.append(vec)
    return slots, columns


def _d0_columns(block: BlockSpec, engine: Engine):
    """C0 monomial keys and their coboundary vectors in (name, key) space."""
    mon0 = enumerate_c0(block, engine)
    br = _bracket_cache(engine, set(mon0))
    columns = []
    for key in mon0:
        vec = {}
        for name in BASIS_NAMES:
            for mk, c in br[(name, key)].terms.items():
                vec[(name, mk)] = c
        columns.append(vec)
    return mon0, columns


def _to_poly_row(row: dict) -> dict:
    """Clear denominators of a scalar row (rescaling preserves rank)."""
    lcm = POLY_ONE
    for c in row.values():
        if c.bn.c:
            raise ValueError("unexpected s in a cochain matrix")
        if not c.ad.is_one():
            lcm = poly_lcm(lcm, c.ad)
    return {j: c.an * lcm.exact_div(c.ad) for j, c in row.items()}


def _vectors_to_poly_rows(columns):
    """Transpose coordinate vectors into sparse polynomial rows."""
    rows: dict = {}
    for j, vec in enumerate(columns):
        for rk, c in vec.items():
            rows.setdefault(rk, {})[j] = c
    return [_to_poly_row(row) for row in rows.values()]


@dataclass
class CohomologyReport:
    """Dimensions and witnesses for one block."""

    block: BlockSpec
    dim_cocycles: int
    dim_coboundaries: int
    dim_h1: int
    representatives: list
    pivot_polynomials: list

    def to_payload(self):
        return {
            "block": self.block.to_payload(),
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_h1": self.dim_h1,
            "representatives": [c.to_payload()["images"] for c in self.representatives],
            "pivot_polynomials": [str(p) for p in self.pivot_polynomials],
        }


def _slots_to_cochain(slots, coeffs: dict, block: BlockSpec) -> Cochain1:
    images: dict = {}
    for j, c in coeffs.items():
        if not c:
            continue
        name, key = slots[j]
        add = Symbol({key: c})
        images[name] = images.get(name, SYM_ZERO) + add
    return Cochain1(images, block)


def h1_block(block: BlockSpec, engine: Engine | None = None, representatives: bool = True) -> CohomologyReport:
    """Cocycle, coboundary and H^1 dimensions of one block.

    Representatives, when requested and the block is nontrivial, are kernel
    vectors of d1 certified independent modulo the coboundary span.
    """
    engine = engine or poisson_engine()
    slots, columns = _d1_columns(block, engine)
    if not slots:
        return CohomologyReport(block, 0, 0, 0, [], [])
    ncols = len(columns)
    rank_d1, pivots1 = poly_rank(_vectors_to_poly_rows(columns), ncols)
    dim_z = ncols - rank_d1

    mon0, bcols = _d0_columns(block, engine)
    col_index = {slot: i for i, slot in enumerate(slots)}
    bcols_indexed = []
    for vec in bcols:
        out = {}
        for (name, mk), c in vec.items():
            slot = (name, mk)
            if slot not in col_index:
                raise AssertionError(
                    "coboundary leaves the enumerated block: %s %s" % (name, mk)
                )
            out[col_index[slot]] = c
        bcols_indexed.append(out)
    rank_d0, pivots0 = poly_rank(
        [_to_poly_row(v) for v in bcols_indexed if v], ncols
    )
    dim_h1 = dim_z - rank_d0
    if dim_h1 < 0:
        raise AssertionError("negative H^1 dimension in block %s" % (block,))

    pivot_polys = []
    seen = set()
    for p in pivots1 + pivots0:
        if str(p) not in seen:
            seen.add(str(p))
            pivot_polys.append(p)

    reps = []
    if representatives and dim_h1 > 0:
        from .linalg import kernel_basis

        kvecs = kernel_basis(columns)
        tracker = SpanTracker()
        for i, vec in enumerate(bcols_indexed):
            tracker.insert(vec, ("b", i))
        for kv in kvecs:
            if len(reps) == dim_h1:
                break
            if tracker.insert(kv, ("z", len(reps))):
                reps.append(_slots_to_cochain(slots, kv, block))
        if len(reps) != dim_h1:
            raise AssertionError("found %d of %d representatives" % (len(reps), dim_h1))
    return CohomologyReport(block, dim_z, rank_d0, dim_h1, reps, pivot_polys)


def h1_scan(k_range, n_range, target: str, engine: Engine | None = None, representatives: bool = True):
    """Reports for every block in the window (K4 targets pin k = 2)."""
    engine = engine or poisson_engine()
    if target in ("K4", "K4'"):
        blocks = [BlockSpec(2, n, target) for n in n_range]
    else:
        blocks = [BlockSpec(k, n, target) for k in k_range for n in n_range]
    reports = []
    for block in blocks:
        rpt = h1_block(block, engine, representatives=False)
        if rpt.dim_h1 and representatives:
            rpt = h1_block(block, engine, representatives=True)
        reports.append(rpt)
    return reports


# ---------------------------------------------------------------------------
# named cocycles
# ---------------------------------------------------------------------------


def _sym(t=0, tau=0, mask=0, h=0, coeff=1):
    return Symbol.monomial(t=t, tau=tau, mask=mask, h=h, coeff=coeff)


@lru_cache(maxsize=None)
def named_cocycle(name: str) -> Cochain1:
    """The distinguished weight-zero cocycles, by their conventional names.

    theta1 spans H^1 with differential-operator coefficients, theta2 joins
    it for the full symbol coefficients, theta spans the K4'-valued block,
    thetabar1 is the h-deformed counterpart of theta1.
    """
    from .scalars import ALPHA, S_ONE

    a = ALPHA
    if name == "theta1":
        return Cochain1(
            {
                "D1": _sym(t=-1, mask=0b0001),
                "D2": _sym(t=-1, mask=0b0010),
                "D3": _sym(t=-1, mask=0b0100),
                "D4": _sym(t=-1, mask=0b1000),
                "F1": _sym(t=-1, tau=1, coeff=2),
                "H1": _sym(),
            },
            BlockSpec(0, 0, "P+"),
        )
    if name == "theta2":
        return Cochain1(
            {
                "T3": _sym(tau=-1, mask=0b0001) - _sym(t=-1, tau=-2, mask=0b1011),
                "T4": _sym(tau=-1, mask=0b0010) + _sym(t=-1, tau=-2, mask=0b0111),
                "D1": _sym(t=-1, mask=0b0001),
                "D2": _sym(t=-1, mask=0b0010),
                "D3": _sym(t=-2, tau=-1, mask=0b1110, coeff=-(S_ONE + a)),
                "D4": _sym(t=-2, tau=-1, mask=0b1101, coeff=S_ONE + a),
                "E1": _sym(t=1, tau=-1)
                - _sym(tau=-2, mask=0b0101)
                - _sym(tau=-2, mask=0b1010)
                - _sym(t=-1, tau=-3, mask=0b1111, coeff=2),
                "E2": _sym(t=-1, tau=-1, mask=0b0011),
                "F1": _sym(t=-1, tau=1)
                + _sym(t=-2, mask=0b0101)
                + _sym(t=-2, mask=0b1010)
                + _sym(t=-3, tau=-1, mask=0b1111, coeff=2 * (S_ONE + a)),
                "F2": _sym(t=-1, tau=-1, mask=0b1100, coeff=-1),
                "H1": _sym(),
            },
            BlockSpec(0, 0, "P"),
        )
    if name == "theta":
        return Cochain1(
            {
                "T1": _sym(tau=-1, mask=0b1110),
                "T2": -_sym(tau=-1, mask=0b1101),
                "T3": _sym(tau=-1, mask=0b1011),
                "T4": -_sym(tau=-1, mask=0b0111),
                "D1": _sym(t=-1, mask=0b1011),
                "D2": -_sym(t=-1, mask=0b0111),
                "D3": _sym(t=-1, mask=0b1110),
                "D4": -_sym(t=-1, mask=0b1101),
                "E1": _sym(tau=-2, mask=0b1111, coeff=2),
                "F1": _sym(t=-2, mask=0b1111, coeff=-2),
            },
            BlockSpec(2, 0, "K4'"),
        )
    if name == "thetabar1":
        return Cochain1(
            {
                "D1": _sym(t=-1, mask=0b0001),
                "D2": _sym(t=-1, mask=0b0010),
                "D3": _sym(t=-1, mask=0b0100),
                "D4": _sym(t=-1, mask=0b1000),
                "F1": _sym(t=-1, tau=1, coeff=2) + _sym(t=-2, h=1, coeff=a - S_ONE),
                "H1": _sym(),
            },
            BlockSpec(0, 0, "P+"),
        )
    raise ValueError("unknown cocycle %r" % (name,))


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


def is_coboundary(c: Cochain1, engine: Engine | None = None, block: BlockSpec | None = None):
    """A module element m with d0(m) = c, or None.

    The search space is the weight-zero C^0 slice of the cochain's block.
    """
    engine = engine or poisson_engine()
    block = block or c.block
    if block is None:
        raise ValueError("cochain carries no block")
    mon0, bcols = _d0_columns(block, engine)
    tracker = SpanTracker()
    for i, vec in enumerate(bcols):
        tracker.insert(vec, i)
    target = {
        (name, mk): coeff
        for name, img in c.images.items()
        for mk, coeff in img.terms.items()
    }
    expr = tracker.express(target)
    if expr is None:
        return None
    out = SYM_ZERO
    for i, coeff in expr.items():
        out = out + Symbol({mon0[i]: coeff})
    return out


def express_modulo_coboundaries(c: Cochain1, generators, block: BlockSpec, engine: Engine | None = None):
    """Write c = sum a_i * generators[i] + d0(m) inside the block.

    Returns (coefficients list, preimage Symbol) or None when impossible.
    """
    engine = engine or poisson_engine()
    mon0, bcols = _d0_columns(block, engine)
    tracker = SpanTracker()
    for j, gen in enumerate(generators):
        vec = {
            (name, mk): coeff
            for name, img in gen.images.items()
            for mk, coeff in img.terms.items()
        }
        tracker.insert(vec, ("g", j))
    for i, vec in enumerate(bcols):
        tracker.insert(vec, ("m", i))
    target = {
        (name, mk): coeff
        for name, img in c.images.items()
        for mk, coeff in img.terms.items()
    }
    expr = tracker.express(target)
    if expr is None:
        return None
    coeffs = [Scalar.from_fraction(0)] * len(generators)
    preimage = SYM_ZERO
    for tag, coeff in expr.items():
        kind, idx = tag
        if kind == "g":
            coeffs[idx] = coeff
        else:
            preimage = preimage + Symbol({mon0[idx]: coeff})
    return coeffs, preimage


def solve_obstruction(rho1: Cochain1, order_block: BlockSpec, engine: Engine | None = None):
    """Solve d1(rho2) = -1/2 [[rho1, rho1]] inside the given block.

    Returns a Cochain1 solution or None when the block contains none.
    """
    engine = engine or poisson_engine()
    rhs_pairs = cup(rho1, rho1, engine)
    rhs_vec = {}
    for pi, (x, y) in enumerate(engine.pairs):
        val = rhs_pairs[(x, y)] * (-S_HALF)
        for mk, coeff in val.terms.items():
            rhs_vec[(pi, mk)] = coeff
    slots, columns = _d1_columns(order_block, engine)
    tracker = SpanTracker()
    for j, vec in enumerate(columns):
        tracker.insert(vec, j)
    expr = tracker.express(rhs_vec)
    if expr is None:
        return None
    return _slots_to_cochain(slots, expr, order_block)
