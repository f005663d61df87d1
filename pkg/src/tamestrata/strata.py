"""Strata over the maximal compatible hereditary order.

The order is determined by the tower and the space dimension N: V is an
E_0-space of dimension m_0 = N/[E_0:F], the lattice chain is the powers of
the maximal order of E_0 acting on V, and the chain period over o_F equals
e(E_0|F).  On elements of tower levels the order valuation is then just
e_A * ord, which is what the brute-force matrix oracle re-derives.

Defining sequences are built from split-form elements: every term of beta
must lie in a chain level, blocks of consecutive terms are assigned levels
by their exact stabilisers, and the result is accepted only when the full
list of sequence conditions verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    BadLevel, NotDecomposable, NotInLevel, NotMinimalSummand, NotSplitForm,
    TooLarge, ValuationOrder, VerificationFailed, ZeroToPrecision,
)
from .minimal import is_minimal, minimal_over
from .tame import TameSeries, Tower, stabilizer_within

_MAX_SPLIT_TERMS = 48


@dataclass(frozen=True)
class OrderDesc:
    """Hereditary order descriptor: N, per-level matrix sizes, period."""
    tower: Tower
    N: int
    m: tuple          # m_i = N / [E_i : F]
    e_A: int          # chain period over o_F, = e(E_0 | F)
    q: int            # residue cardinality of F

    def key(self):
        return (id(self.tower), self.N)

    def e_B(self, level: int) -> int:
        """Chain period of the level's order over its own integers."""
        return self.e_A // self.tower.level_e(level)


def make_order(tower: Tower, N: int) -> OrderDesc:
    deg0 = tower.level_degree(0)
    if N % deg0:
        raise BadLevel(f"[E_0:F]={deg0} must divide N={N}")
    m = tuple(N // tower.level_degree(i) for i in range(tower.d + 1))
    return OrderDesc(tower, N, m, tower.level_e(0), tower.q)


@dataclass(frozen=True)
class Stratum:
    order: OrderDesc
    n: int
    r: int
    beta: TameSeries


@dataclass(frozen=True)
class SeqEntry:
    r: int
    beta: TameSeries
    level: int
    c: TameSeries


@dataclass(frozen=True)
class DefiningSeq:
    order: OrderDesc
    n: int
    entries: tuple    # SeqEntry, i = 0..s
    s: int
    case: str         # "A" if the terminal block lies in F, else "B"


@dataclass(frozen=True)
class VerifyReport:
    checks: dict
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def nu_A(order: OrderDesc, x: TameSeries) -> int:
    """Order valuation of a tower-level element: e_A * ord(x)."""
    if not x.terms:
        raise ZeroToPrecision("valuation of a series with no visible terms")
    v = x.ord() * order.e_A
    if v.denominator != 1:
        raise NotInLevel("element is not in a level of this order's tower")
    return int(v)


_K0_CACHE: dict = {}


def k0_closed(order: OrderDesc, beta: TameSeries) -> Optional[int]:
    """Critical exponent; None encodes -infinity (central beta)."""
    # keyed on the order itself so cached towers stay alive
    key = (order, beta.key())
    if key in _K0_CACHE:
        return _K0_CACHE[key]
    tw = order.tower
    if beta.is_zero_to_prec() or beta.in_level(tw.d):
        result = None
    elif _minimal_over_F(tw, beta):
        result = nu_A(order, beta)
    else:
        blocks = decompose_split_form(order, beta)
        result = nu_A(order, blocks[0][1])
    _K0_CACHE[key] = result
    return result


def _minimal_over_F(tw: Tower, beta: TameSeries) -> bool:
    return minimal_over(beta, tw.group)


def stratum_classify(st: Stratum) -> str:
    """'simple', 'pure' (pure but not simple) or 'neither'."""
    order = st.order
    if st.n <= st.r or st.r < 0:
        return "neither"
    if nu_A(order, st.beta) != -st.n:
        return "neither"
    k0 = k0_closed(order, st.beta)
    if k0 is None or st.r < -k0:
        return "simple"
    return "pure"


def decompose_split_form(order: OrderDesc, beta: TameSeries):
    """Split beta into minimal blocks assigned to chain levels.

    Terms are scanned from deepest to shallowest and grouped into
    consecutive blocks; the deepest block takes the smallest field
    containing it and each following block must generate a strictly
    larger chain field over the previous one.  Cut positions are searched
    join-first with backtracking (never more blocks than the chain has
    steps), and a candidate split is accepted only when the induced
    defining sequence verifies in full.
    """
    tw = order.tower
    if beta.is_zero_to_prec():
        raise ZeroToPrecision("cannot decompose a series with no visible terms")
    term_series = []
    for k, c in beta.terms:
        try:
            ser = tw.monomial(c, Fraction(k, tw.e))
        except NotInLevel as exc:
            raise NotSplitForm(f"term at exponent {Fraction(k, tw.e)} "
                               "lies in no chain level") from exc
        term_series.append(ser)
    T = len(term_series)
    if T > _MAX_SPLIT_TERMS:
        raise TooLarge(f"{T} terms exceeds the split-search bound")

    def blocks_from_cuts(cuts):
        # cuts: ascending positions in 1..T-1; blocks deepest-first
        out, start = [], 0
        for cut in list(cuts) + [T]:
            blk = term_series[start]
            for t in term_series[start + 1:cut]:
                blk = blk + t
            out.append(blk)
            start = cut
        return out

    def assign_levels(blocks):
        # deepest block first; fields must grow strictly
        levels = []
        H_prev = None
        for blk in blocks:
            if H_prev is None:
                stab = stabilizer_within(blk, tw.group)
            else:
                stab = stabilizer_within(blk, H_prev) & H_prev
            idx = _chain_index(tw, stab)
            if idx is None:
                return None
            if levels and idx >= levels[-1]:
                return None
            levels.append(idx)
            H_prev = tw.chain[idx]
        return levels

    max_cuts = tw.d          # block levels strictly increase along the chain

    def search(pos, cuts):
        if pos == T:
            blocks = blocks_from_cuts(cuts)
            levels = assign_levels(blocks)
            if levels is None:
                return None
            c_list = list(zip(reversed(levels), reversed(blocks)))
            try:
                build_defining_sequence(order, c_list)
            except (NotMinimalSummand, ValuationOrder, VerificationFailed,
                    NotInLevel):
                return None
            return c_list
        choices = (cuts,) if len(cuts) >= max_cuts else (cuts, cuts + [pos])
        for choice in choices:   # join first, then cut
            result = search(pos + 1, choice)
            if result is not None:
                return result
        return None

    result = search(1, [])
    if result is None:
        raise NotDecomposable("no block split of beta verifies")
    return result


def _chain_index(tw: Tower, subgroup):
    for i, H in enumerate(tw.chain):
        if H == subgroup:
            return i
    return None


def build_defining_sequence(order: OrderDesc, c_list) -> DefiningSeq:
    """Assemble beta_i = sum of the blocks from i on, with checks.

    c_list is [(level, c)] ordered shallowest block first; levels must be
    strictly increasing (fields strictly decreasing) and block depths
    -nu_A(c_i) strictly increasing.
    """
    tw = order.tower
    s = len(c_list) - 1
    if s < 0:
        raise ValuationOrder("empty block list")
    levels = [lvl for lvl, _ in c_list]
    cs = [c for _, c in c_list]
    for i, (lvl, c) in enumerate(c_list):
        tw.check_level(lvl)
        if not c.in_level(lvl):
            raise NotInLevel(f"block {i} does not lie in level {lvl}")
    if any(a >= b for a, b in zip(levels, levels[1:])):
        raise ValuationOrder("block levels must strictly increase")
    nus = [nu_A(order, c) for c in cs]
    if any(-a >= -b for a, b in zip(nus, nus[1:])):
        raise ValuationOrder("block depths -nu_A(c_i) must strictly increase")

    for i in range(s + 1):
        low = levels[i + 1] if i < s else tw.d
        if not is_minimal(cs[i], levels[i], low).minimal:
            raise NotMinimalSummand(
                f"block {i} is not minimal relative to levels {levels[i]}/{low}")

    n = -nus[s]
    entries = []
    for i in range(s + 1):
        beta_i = cs[i]
        for cj in cs[i + 1:]:
            beta_i = beta_i + cj
        r_i = 0 if i == 0 else -nus[i - 1]
        entries.append(SeqEntry(r_i, beta_i, levels[i], cs[i]))
    case = "A" if levels[s] == tw.d else "B"
    seq = DefiningSeq(order, n, tuple(entries), s, case)
    report = verify_defining_sequence(seq)
    if not report.passed:
        failed = [k for k, ok in report.checks.items() if not ok]
        raise VerificationFailed(f"sequence checks failed: {failed}; "
                                 f"{report.details}")
    return seq


def case_of(seq: DefiningSeq) -> str:
    return "A" if seq.entries[seq.s].level == seq.order.tower.d else "B"


def verify_defining_sequence(seq: DefiningSeq) -> VerifyReport:
    """Named checks for a defining sequence.

    (a) every [A, n, r_i, beta_i] is simple
    (b) r_0 < r_1 < ... < r_s < n
    (c) fields F[beta_i] match the assigned levels, strictly nested
    (d) r_{i+1} = -k0(beta_i) and nu_A(beta_i - beta_{i+1}) = -r_{i+1}
    (e) k0(beta_s) is -n or -infinity
    (f) each derived stratum is simple: c_i minimal for its step and
        nu_A(c_i) = -r_{i+1}

    k0 of the intermediate beta_i is evaluated from the sequence tail
    (-r_{i+1} once the tail conditions hold), which is exactly the
    closed-form recursion; the independent check is the matrix oracle.
    """
    order, tw = seq.order, seq.order.tower
    s, entries, n = seq.s, seq.entries, seq.n
    checks, details = {}, {}

    def k0_seq(i):
        # justified by the tail checks (e)/(f); -inf encoded as None
        if i == s:
            beta_s = entries[s].beta
            if beta_s.in_level(tw.d):
                return None
            if _minimal_over_F(tw, beta_s):
                return nu_A(order, beta_s)
            return 0  # forces failure of (a)/(e)
        return -entries[i + 1].r

    ok = True
    for i in range(s + 1):
        pure = nu_A(order, entries[i].beta) == -n
        k0 = k0_seq(i)
        simple = pure and (k0 is None or entries[i].r < -k0)
        if not simple:
            ok = False
    checks["a_strata_simple"] = ok

    rs = [e.r for e in entries]
    checks["b_levels_increase"] = all(a < b for a, b in zip(rs, rs[1:])) and rs[-1] < n

    ok = True
    prev_stab = None
    for i in range(s + 1):
        stab = stabilizer_within(entries[i].beta, tw.group)
        if stab != tw.chain[entries[i].level]:
            ok = False
            details.setdefault("c", []).append(
                f"F[beta_{i}] is not the level-{entries[i].level} field")
        if prev_stab is not None and not (prev_stab < stab):
            ok = False
            details.setdefault("c", []).append(f"fields not strictly nested at {i}")
        prev_stab = stab
    checks["c_fields_nested"] = ok

    ok = True
    for i in range(s):
        r_next = entries[i + 1].r
        diff = entries[i].beta - entries[i + 1].beta
        if nu_A(order, diff) != -r_next:
            ok = False
        if k0_seq(i) != -r_next:
            ok = False
    checks["d_k0_steps"] = ok

    k0s = k0_seq(s)
    checks["e_terminal_k0"] = k0s is None or k0s == -n

    ok = True
    for i in range(s + 1):
        low = entries[i + 1].level if i < s else tw.d
        r_derived = entries[i + 1].r if i < s else n
        try:
            rep = is_minimal(entries[i].c, entries[i].level, low)
        except (ZeroToPrecision, NotInLevel):
            ok = False
            continue
        if not rep.minimal or nu_A(order, entries[i].c) != -r_derived:
            ok = False
    checks["f_derived_simple"] = ok

    return VerifyReport(checks, details)
