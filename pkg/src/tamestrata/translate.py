"""Datum-skeleton translation, filtration tables and the index ledger.

A BK skeleton is the arithmetic part of one construction's datum: the order,
a verified defining sequence, and per-level character realisation data.  A
Yu skeleton is the arithmetic part of the other: twisted-Levi dimensions,
a depth vector, and per-level realizing elements.  Translation is total on
these skeletons; representation-level objects are carried as explicit
out-of-scope markers.

Character statements never touch complex values: a character psi_c is
trivial on a filtration subgroup exactly when the trace module valuation
clears the conductor, so triviality questions are integer inequalities.

Filtration tables list factors (level, exponent); a factor means the
exponent-th congruence unit group of the order at that chain level.  For
the prefix-type tables compared here (increasing exponents along growing
levels) the corresponding lattice is the plain sum of the factors'
radical powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    BadLevel, DepthMismatch, NotMinimalSummand, OracleRequired, OrderMismatch,
    VerificationFailed, ZeroToPrecision,
)
from .minimal import is_minimal
from .strata import DefiningSeq, OrderDesc, build_defining_sequence, nu_A
from .tame import TameSeries, series_equal


OUT_OF_SCOPE = "out-of-scope (representation-level)"


@dataclass(frozen=True)
class CharFactor:
    """Realisation data for one factor of a simple character."""
    level: int
    c: TameSeries
    depth: Fraction
    det_domain: tuple          # factors where the piece is phi o det
    psi_domain: tuple          # factors where the piece is psi_c
    low_unit_values: Optional[dict] = None   # undetermined shallow range


@dataclass(frozen=True)
class FiltrationTable:
    name: str
    order: OrderDesc
    factors: tuple             # (level, exponent, depth label or None)

    def pairs(self):
        return tuple((lvl, m) for lvl, m, _ in self.factors)


@dataclass(frozen=True)
class LogIndex:
    name: str
    value: int                 # the index is p^value
    provenance: str            # "closed-form" | "oracle"


@dataclass(frozen=True)
class BKDatumSkeleton:
    order: OrderDesc
    kind: str                  # "a" (simple stratum) or "b" (depth zero)
    seq: Optional[DefiningSeq]
    theta_factors: tuple
    notes: dict = field(default_factory=lambda: {
        "kappa": OUT_OF_SCOPE, "sigma": OUT_OF_SCOPE, "Lambda": OUT_OF_SCOPE})


@dataclass(frozen=True)
class YuDatumSkeleton:
    point: OrderDesc           # stands for the building point y
    dims: tuple                # m_i = N / [E_i : F] along the Levi sequence
    depths: tuple              # r_0 < ... < r_{d-1} <= r_d
    characters: tuple          # (level, realizing element or None, depth)
    case: str                  # "A": folded nontrivial top character; "B": trivial
    rho_slot: str = OUT_OF_SCOPE

    @property
    def d(self) -> int:
        return len(self.dims) - 1


def _depths_ok(depths, case) -> bool:
    if len(depths) == 1:
        return depths[0] >= 0
    head = depths[:-1]
    if head[0] <= 0:
        return False
    if any(a >= b for a, b in zip(head, head[1:])):
        return False
    if case == "A":
        return head[-1] < depths[-1]
    return head[-1] == depths[-1]


def make_bk_datum(order: OrderDesc, c_list) -> BKDatumSkeleton:
    """Type (a) skeleton from blocks; builds, verifies and factors."""
    seq = build_defining_sequence(order, c_list)
    factors = tuple(char_factor_from_seq(seq, i) for i in range(seq.s + 1))
    return BKDatumSkeleton(order, "a", seq, factors)


def make_bk_datum_b(order: OrderDesc) -> BKDatumSkeleton:
    """Type (b) skeleton: maximal order, depth-zero slots only."""
    return BKDatumSkeleton(order, "b", None, ())


# ---------------------------------------------------------------------------
# group tables
# ---------------------------------------------------------------------------

def _seq_levels_nus(seq: DefiningSeq):
    """Levels and depths -nu_A(c_i) of the blocks, plus the Case B top."""
    levels = [e.level for e in seq.entries]
    nus = [-nu_A(seq.order, e.c) for e in seq.entries]
    return levels, nus


def h_group_table(seq: DefiningSeq):
    """Closed-form tables for H^1, J^1 and J^0 as factor lists."""
    tower = seq.order.tower
    levels, nus = _seq_levels_nus(seq)
    case_b = seq.case == "B"

    def build(name, first_exp, exp):
        factors = [(levels[0], first_exp, None)]
        for i in range(1, seq.s + 1):
            factors.append((levels[i], exp(nus[i - 1]), None))
        if case_b:
            factors.append((tower.d, exp(nus[seq.s]), None))
        return FiltrationTable(name, seq.order, tuple(factors))

    h1 = build("H1", 1, lambda v: v // 2 + 1)
    j1 = build("J1", 1, lambda v: (v + 1) // 2)
    j0 = build("J0", 0, lambda v: (v + 1) // 2)
    return {"H1": h1, "J1": j1, "J0": j0}


def _mp_exponent(depth: Fraction, e_A: int, plus: bool) -> int:
    """Filtration depth to congruence exponent at a chain level."""
    x = depth * e_A
    if plus:
        return x.numerator // x.denominator + 1
    return -((-x.numerator) // x.denominator)


def yu_group_table(yu: YuDatumSkeleton):
    """Tables for K^d_+, the maximal compact oK^d, and each J^i, J^i_+."""
    order = yu.point
    tower = order.tower
    e_A = order.e_A
    levels = [lvl for lvl, _, _ in yu.characters]
    depths = yu.depths
    d = yu.d
    tables = {}

    kd_factors = [(levels[0], 1, "0+")]
    okd_factors = [(levels[0], 0, "0")]
    for i in range(1, d + 1):
        s_prev = depths[i - 1] / 2
        kd_factors.append((levels[i], _mp_exponent(s_prev, e_A, True),
                           f"{s_prev}+"))
        okd_factors.append((levels[i], _mp_exponent(s_prev, e_A, False),
                            f"{s_prev}"))
    tables["Kd+"] = FiltrationTable("Kd+", order, tuple(kd_factors))
    tables["oKd"] = FiltrationTable("oKd", order, tuple(okd_factors))

    for i in range(1, d + 1):
        r_prev = depths[i - 1]
        s_prev = r_prev / 2
        j = [(levels[i - 1], _mp_exponent(r_prev, e_A, False), f"{r_prev}"),
             (levels[i], _mp_exponent(s_prev, e_A, False), f"{s_prev}")]
        jp = [(levels[i - 1], _mp_exponent(r_prev, e_A, False), f"{r_prev}"),
              (levels[i], _mp_exponent(s_prev, e_A, True), f"{s_prev}+")]
        tables[f"J{i}"] = FiltrationTable(f"J{i}", order, tuple(j))
        tables[f"J{i}+"] = FiltrationTable(f"J{i}+", order, tuple(jp))
    return tables


def normalize_table(table: FiltrationTable) -> tuple:
    """Drop factors contained in another: (i, m) ⊆ (j, m') iff j >= i, m >= m'."""
    pairs = {}
    for lvl, m, _ in table.factors:
        if lvl not in pairs or m < pairs[lvl]:
            pairs[lvl] = m
    items = sorted(pairs.items())
    kept = []
    for lvl, m in items:
        if any(other_lvl >= lvl and m >= other_m and (other_lvl, other_m) != (lvl, m)
               for other_lvl, other_m in items):
            continue
        kept.append((lvl, m))
    return tuple(kept)


def table_compare(a: FiltrationTable, b: FiltrationTable, model=None) -> bool:
    """Equality of the groups two prefix-type tables present.

    Closed-form normalization decides the common cases; with a matrix model
    the corresponding lattices are compared directly, which also settles
    any case absorption cannot.
    """
    if a.order is not b.order and a.order != b.order:
        raise OrderMismatch("tables over different orders")
    na, nb = normalize_table(a), normalize_table(b)
    if na == nb:
        if model is not None:
            return _oracle_tables_equal(model, a, b)
        return True
    if model is not None:
        return _oracle_tables_equal(model, a, b)
    return False


def _oracle_tables_equal(model, a, b) -> bool:
    from .oracle import oracle_table_lattice
    M = max([m for _, m, _ in a.factors + b.factors] + [1]) + model.e_A
    la = oracle_table_lattice(model, a.pairs(), M)
    lb = oracle_table_lattice(model, b.pairs(), M)
    return la.space == lb.space


# ---------------------------------------------------------------------------
# character factors and module valuations
# ---------------------------------------------------------------------------

def char_factor_from_seq(seq: DefiningSeq, i: int) -> CharFactor:
    if not 0 <= i <= seq.s:
        raise BadLevel(f"factor index {i} outside 0..{seq.s}")
    tables = h_group_table(seq)
    h1 = tables["H1"].factors
    det = h1[:i + 1]
    psi = h1[i + 1:]
    if seq.case == "A" and i == seq.s:
        det, psi = h1, ()
    c = seq.entries[i].c
    depth = Fraction(-nu_A(seq.order, c), seq.order.e_A)
    return CharFactor(seq.entries[i].level, c, depth,
                      tuple(det), tuple(psi))


def char_factor(bk: BKDatumSkeleton, i: int) -> CharFactor:
    if bk.kind != "a":
        raise BadLevel("type (b) data carry no character factors")
    return char_factor_from_seq(bk.seq, i)


def char_module_valuation(c: TameSeries, factor, order: OrderDesc) -> int:
    """Min ord over F of Tr(c * Q_level^exponent): ceil((m + nu_A(c))/e_A).

    The character psi_c is trivial on the factor's unit group exactly when
    this value is at least 1.
    """
    level, m = factor[0], factor[1]
    order.tower.check_level(level)
    if not c.terms:
        raise ZeroToPrecision("no visible terms in the realizing element")
    v = m + nu_A(order, c)
    return -((-v) // order.e_A)


# ---------------------------------------------------------------------------
# translation
# ---------------------------------------------------------------------------

def bk_to_yu(bk: BKDatumSkeleton) -> YuDatumSkeleton:
    order = bk.order
    tower = order.tower
    if bk.kind == "b":
        return YuDatumSkeleton(order, (order.N,), (Fraction(0),),
                               ((tower.d, None, Fraction(0)),), "B")
    seq = bk.seq
    if seq is None:
        raise VerificationFailed("type (a) skeleton without a sequence")
    levels, nus = _seq_levels_nus(seq)
    depths = [Fraction(v, order.e_A) for v in nus]
    dims = [order.N // tower.level_degree(lvl) for lvl in levels]
    chars = [(levels[i], seq.entries[i].c, depths[i]) for i in range(seq.s + 1)]
    if seq.case == "A":
        yu = YuDatumSkeleton(order, tuple(dims), tuple(depths),
                             tuple(chars), "A")
    else:
        dims.append(order.N)
        depths.append(depths[-1])
        chars.append((tower.d, None, depths[-1]))
        yu = YuDatumSkeleton(order, tuple(dims), tuple(depths),
                             tuple(chars), "B")
    if not _depths_ok(yu.depths, yu.case):
        raise VerificationFailed("translated depths violate the ordering")
    return yu


def yu_to_bk(yu: YuDatumSkeleton) -> BKDatumSkeleton:
    order = yu.point
    tower = order.tower
    if not _depths_ok(yu.depths, yu.case):
        raise DepthMismatch("depth vector violates the required ordering")
    if yu.d == 0 and yu.characters[0][1] is None:
        return make_bk_datum_b(order)
    realized = [(lvl, c, r) for lvl, c, r in yu.characters if c is not None]
    if yu.case == "B" and yu.characters[-1][1] is not None:
        raise DepthMismatch("Case B requires a trivial top character")
    c_list = []
    for i, (lvl, c, r) in enumerate(realized):
        if c.is_zero_to_prec():
            raise ZeroToPrecision(f"realizing element {i} has no visible terms")
        if -c.ord() != r:
            raise DepthMismatch(f"ord(c_{i}) = {c.ord()} but depth is {r}")
        low = realized[i + 1][0] if i + 1 < len(realized) else tower.d
        if not is_minimal(c, lvl, low).minimal:
            raise NotMinimalSummand(
                f"realizing element {i} is not minimal for levels {lvl}/{low}")
        c_list.append((lvl, c))
    return make_bk_datum(order, c_list)


def skeletons_agree(a, b) -> bool:
    """Field-by-field agreement of two skeletons of the same flavour."""
    if isinstance(a, YuDatumSkeleton) and isinstance(b, YuDatumSkeleton):
        if (a.dims, a.depths, a.case) != (b.dims, b.depths, b.case):
            return False
        for (l1, c1, r1), (l2, c2, r2) in zip(a.characters, b.characters):
            if (l1, r1) != (l2, r2):
                return False
            if (c1 is None) != (c2 is None):
                return False
            if c1 is not None and not series_equal(c1, c2):
                return False
        return True
    if isinstance(a, BKDatumSkeleton) and isinstance(b, BKDatumSkeleton):
        if (a.kind, a.order.N) != (b.kind, b.order.N):
            return False
        if a.kind == "b":
            return True
        sa, sb = a.seq, b.seq
        if (sa.n, sa.s, sa.case) != (sb.n, sb.s, sb.case):
            return False
        for ea, eb in zip(sa.entries, sb.entries):
            if (ea.r, ea.level) != (eb.r, eb.level):
                return False
            if not series_equal(ea.c, eb.c):
                return False
        return True
    return False


# ---------------------------------------------------------------------------
# the index ledger
# ---------------------------------------------------------------------------

def single_index_log(order: OrderDesc, level: int, a: int, b: int) -> int:
    """log_p [U^a(B_level) : U^b(B_level)] in closed form (1 <= a <= b)."""
    tower = order.tower
    if not 1 <= a <= b:
        raise BadLevel("need 1 <= a <= b")
    m_i = order.m[level]
    e_B = order.e_B(level)
    deg = tower.level_residue_degree(level)
    num = deg * (b - a) * m_i * m_i
    assert num % e_B == 0
    return num // e_B


def ledger_indices(bk: BKDatumSkeleton, yu: YuDatumSkeleton, model=None):
    """Index ledger plus verdicts.

    Single-group indices come in closed form (checked against the oracle
    when a model is given); composite quotients need the oracle.  Verdicts:
    the product identity between the Yu-side Heisenberg quotients and the
    single quotient J^1/H^1, and evenness of the exponents so that the
    dimension square roots are integral powers of p.
    """
    order = bk.order
    if yu.point is not order and yu.point != order:
        raise OrderMismatch("skeletons over different orders")
    entries = []
    verdicts = {"product_identity": True, "even_exponents": True,
                "singles_match_oracle": None}
    if bk.kind == "b":
        return entries, verdicts

    from .oracle import oracle_hj, oracle_index, LatticeHandle

    levels = [lvl for lvl, _, _ in yu.characters]
    depths = yu.depths
    d = yu.d

    singles_ok = True
    per_level = {}
    for i in range(1, d + 1):
        v = int(depths[i - 1] * order.e_A)
        a_exp = (v + 1) // 2
        b_exp = v // 2 + 1
        for lvl in (levels[i - 1], levels[i]):
            if a_exp < 1 or a_exp == b_exp:
                continue
            log = single_index_log(order, lvl, a_exp, b_exp)
            prov = "closed-form"
            if model is not None:
                quot = model.quotient_context(b_exp + model.e_A)
                la = LatticeHandle(quot.order_level(lvl, a_exp), quot.M)
                lb = LatticeHandle(quot.order_level(lvl, b_exp), quot.M)
                if oracle_index(model, la, lb) != log:
                    singles_ok = False
                prov = "oracle"
            per_level[(lvl, a_exp, b_exp)] = log
            entries.append(LogIndex(f"[U^{a_exp}(B_{lvl}):U^{b_exp}(B_{lvl})]",
                                    log, prov))
    verdicts["singles_match_oracle"] = singles_ok if model is not None else None

    if model is None:
        if d > 0:
            raise OracleRequired("composite indices need the matrix model")
        return entries, verdicts

    hj = oracle_hj(model, bk.seq)
    quot = hj["quotient"]
    p1 = quot.radical_power(1)
    j1 = LatticeHandle(hj["j"].space.intersect(p1), hj["j"].M)
    h1 = LatticeHandle(hj["h"].space.intersect(p1), hj["h"].M)
    log_j1h1 = oracle_index(model, j1, h1)
    entries.append(LogIndex("[J1:H1]", log_j1h1, "oracle"))
    if log_j1h1 % 2:
        verdicts["even_exponents"] = False

    total = 0
    for i in range(1, d + 1):
        v = int(depths[i - 1] * order.e_A)
        a_exp = (v + 1) // 2
        b_exp = v // 2 + 1
        big_quot = model.quotient_context(b_exp + model.e_A)
        la_i = LatticeHandle(big_quot.order_level(levels[i], a_exp), big_quot.M)
        lb_i = LatticeHandle(big_quot.order_level(levels[i], b_exp), big_quot.M)
        la_prev = LatticeHandle(big_quot.order_level(levels[i - 1], a_exp),
                                big_quot.M)
        lb_prev = LatticeHandle(big_quot.order_level(levels[i - 1], b_exp),
                                big_quot.M)
        log = (oracle_index(model, la_i, lb_i)
               - oracle_index(model, la_prev, lb_prev))
        entries.append(LogIndex(f"[J^{i}:J^{i}+]", log, "oracle"))
        if log % 2:
            verdicts["even_exponents"] = False
        total += log
    verdicts["product_identity"] = (total == log_j1h1)
    return entries, verdicts
